"""Inspecting the branch-curve singularities behind a verdict.

For a squarefree bivariate radicand f of even degree the double cover
W^2 = f(X, Y) is a surface whose rationality is governed by the plane curve
f = 0 (the branch curve).  When every singular point of that curve is
simple -- type A_mu, D_mu, or E6/E7/E8 in the ADE classification -- the
cover is rational exactly when deg f <= 4.  This demo classifies the
singularities directly.

Run with:  python demos/03_singularities.py
"""

from ratsqrt import parse_poly
from ratsqrt.geometry import all_simple, build_model, milnor_sum
from ratsqrt.mpoly import squarefree_part


def table(title, f):
    model = build_model(f)
    ok, records = all_simple(model)
    D = model.B.total_degree()
    print(f"\n=== {title} (branch degree {D}) ===")
    if not records:
        print("  smooth: no singular points")
        return
    for r in records:
        pt = ", ".join(r.point.coords_str())
        extra = f" x{r.point.class_size}" if r.point.class_size != 1 else ""
        print(f"  [{r.point.chart}] ({pt}){extra}:"
              f" {r.label}, multiplicity {r.multiplicity}, mu={r.mu}")
    print(f"  all simple: {ok};"
          f" total Milnor number {milnor_sum(records)}"
          f" (genus-based cap at this degree: {(D - 1) * (D - 2)})")


# the Bhabha branch curve: seven singular points, all simple, so the
# degree-6 double cover is provably not rational
p = parse_poly("(X + Y)*(1 + X*Y)", ("X", "Y"))
q = parse_poly("X + Y - 4*X*Y + X^2*Y + X*Y^2", ("X", "Y"))
table("Bhabha radicand", squarefree_part(p * q))

# a nodal cubic: one A1 point
table("nodal cubic Y^2 - X^2*(X + 1)",
      parse_poly("Y^2 - X^2*(X + 1)", ("X", "Y")))

# the Fermat quartic cone has a non-simple point (multiplicity 4 at the
# origin of the dehomogenized chart), so the simple-singularity criterion
# cannot be applied to it
table("Fermat quartic X^4 + Y^4", parse_poly("X^4 + Y^4", ("X", "Y")))
