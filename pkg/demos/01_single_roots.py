"""Deciding single square roots: witnesses, certificates, and traces.

Run with:  python demos/01_single_roots.py
"""

from ratsqrt import decide, parse_poly, parse_rational
from ratsqrt.mpoly import rf_str
from ratsqrt.witness import verify_witness


def show(title, verdict, radicand=None):
    print(f"\n=== {title} ===")
    print(f"outcome: {verdict.outcome}")
    for step in verdict.steps:
        print(f"  rule: {step.rule}")
    if verdict.witness is not None:
        for v, g in sorted(verdict.witness.assignments.items()):
            print(f"  witness: {v} -> {rf_str(g)}")
        print(f"  sqrt of image: {rf_str(verdict.witness_sqrt)}")
        if radicand is not None:
            assert verify_witness(verdict.witness, radicand) is not None
            print("  (witness re-verified independently)")


# the unit circle: sqrt(1 - X^2) becomes rational after the classical
# half-angle substitution, which the engine rediscovers by projecting the
# conic W^2 + X^2 = 1 from one of its rational points
f = parse_poly("1 - X^2", ("X",))
show("sqrt(1 - X^2)", decide(f), f)

# one degree higher the answer flips: W^2 = 1 - X^3 is an elliptic curve,
# and no rational substitution can rationalize the square root
show("sqrt(1 - X^3)", decide(parse_poly("1 - X^3", ("X",))))

# rational-function radicands work too; only the square class of
# numerator * denominator matters.  This one arises in 2-loop Bhabha
# scattering: the reduced radicand has degree 6 and its branch curve has
# only simple (ADE) singularities, which settles non-rationalizability.
r = parse_rational(
    "(X + Y)*(1 + X*Y)/(X + Y - 4*X*Y + X^2*Y + X*Y^2)", ("X", "Y")
)
v = decide(r.num, r.den)
show("sqrt of the Bhabha ratio", v)
print(f"  singular points found: {len(v.singularities)}")
for rec in v.singularities:
    print(f"    {rec.label}  (multiplicity {rec.multiplicity}, mu={rec.mu})")

# even homogeneous radicands are reduced by setting one variable to 1,
# deciding the dehomogenized root, and lifting any witness back
show("sqrt(X1^4 + X2^4 + X3^4)",
     decide(parse_poly("X1^4 + X2^4 + X3^4", ("X1", "X2", "X3"))))
