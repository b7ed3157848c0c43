"""Projective models attached to a square root and their singularity data.

For a squarefree radicand f of degree d in n variables this module builds:

* the hypersurface model: the projective closure of W^2 = f, an equation of
  degree D = max(d, 2) in n + 2 coordinates (z, x_1..x_n, w);
* for n = 2, the branch curve B = s^(2r-d) * F of the double cover
  u^2 = s^(2r) f(y/s) with r = ceil(d/2): a plane projective curve of even
  degree 2r whose singular points carry the whole classification (the cover
  is singular exactly over the singular points of B, with germs of the same
  ADE type).

Singular points of B are found by resultant elimination chart by chart and
grouped into Galois conjugacy classes; each class is classified once over a
number-field tower of height at most two (:mod:`ratsqrt.localanalysis`).

The module also searches hypersurfaces for points of multiplicity D - 1
(projection centres for explicit witnesses): the order-(D-2) partial
derivatives are quadrics, so a full-rank quadric span certifies emptiness,
and otherwise a recursive resultant elimination with exact back-substitution
finds points or refutes their existence for up to three chart unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import sympy as sp

from . import unipoly as up
from .errors import NonReduced, TowerTooDeep
from .localanalysis import (
    classify_germ,
    field_coerce,
    field_one,
    lp_derivative,
    lp_multiplicity,
)
from .mpoly import (
    MultiPoly,
    homogenize,
    is_squarefree,
)
from .numberfield import (
    NumberField,
    elem_str,
    factor_over_height1,
)


def fresh_name(base, taken):
    name = base
    while name in taken:
        name = name + "_"
    return name


# --------------------------------------------------------------------------
# conversions between MultiPoly and exponent-dict form over Fraction


def to_frac_terms(p: MultiPoly):
    out = {}
    for e, c in p.terms.items():
        if not c.is_Rational:
            raise ValueError("geometric analysis requires rational coefficients")
        out[e] = Fraction(c.p, c.q)
    return out


def _lift_terms(terms, field):
    if field is None:
        return dict(terms)
    return {e: field.from_rational(c) for e, c in terms.items()}


def restrict_chart(terms, index):
    """Set coordinate `index` to 1 in an exponent-dict polynomial."""
    out = {}
    for e, c in terms.items():
        ne = e[:index] + e[index + 1 :]
        out[ne] = out.get(ne, Fraction(0)) + c
    return {e: c for e, c in out.items() if c}


def nvar_translate(terms, shift, field):
    """f(x + a) for an exponent-dict polynomial and a point over `field`."""
    cur = {e: field_coerce(field, c) for e, c in terms.items()}
    one = field_one(field)
    for k, a in enumerate(shift):
        a = field_coerce(field, a)
        if not a:
            continue
        nxt = {}
        for e, c in cur.items():
            i = e[k]
            for t in range(i + 1):
                coeff = c * (comb(i, t) * (a ** (i - t) if i > t else one))
                ne = e[:k] + (t,) + e[k + 1 :]
                s = nxt.get(ne, 0) + coeff if ne in nxt else coeff
                if s:
                    nxt[ne] = s
                elif ne in nxt:
                    del nxt[ne]
        cur = nxt
    return cur


# --------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class AlgebraicPoint:
    """A projective point over a number-field tower of height <= 2.

    `proj` is the full coordinate tuple with the pivot (chart) coordinate
    equal to 1 and every earlier coordinate zero; `class_size` is the number
    of Galois conjugates represented by this point.
    """

    field: object  # None (rationals) or NumberField
    proj: tuple
    chart: int
    class_size: int = 1

    def is_rational(self):
        return self.field is None

    def coords_str(self):
        return tuple(elem_str(c) for c in self.proj)

    def field_str(self):
        if self.field is None:
            return "QQ"
        gens = ", ".join(
            f"{g}: {'+'.join(f'{elem_str(c)}*t^{i}' for i, c in enumerate(m) if c)}"
            for g, m in self.field.describe()
        )
        return f"QQ[{gens}]"

    def sort_key(self):
        return (self.chart, _tower_key(self.field), _coords_key(self.proj))

    def to_json(self):
        out = {"chart": self.chart, "coordinates": list(self.coords_str())}
        if self.field is not None:
            out["field"] = [
                {"generator": g, "min_poly": [elem_str(c) for c in m]}
                for g, m in self.field.describe()
            ]
        if self.class_size != 1:
            out["conjugates"] = self.class_size
        return out


def _tower_key(field):
    if field is None:
        return ()
    return tuple(
        (g, tuple(_elem_key(c) for c in m)) for g, m in field.describe()
    )


def _elem_key(e):
    if isinstance(e, Fraction):
        return (e,)
    if hasattr(e, "rep"):
        return tuple(_elem_key(c) for c in e.rep)
    return (Fraction(e),)


def _coords_key(coords):
    return tuple(_elem_key(c) for c in coords)


@dataclass(frozen=True)
class SingularityRecord:
    point: AlgebraicPoint
    multiplicity: int
    mu: int | None
    label: str
    cone_shape: str | None = None

    @property
    def simple(self):
        return self.label != "NonSimple"

    def to_json(self):
        return {
            "point": self.point.to_json(),
            "multiplicity": self.multiplicity,
            "milnor": self.mu,
            "class": self.label,
        }


@dataclass(frozen=True)
class GeometricModel:
    f: MultiPoly
    d: int
    r: int
    F: MultiPoly  # homogenization of f, degree d
    V: MultiPoly  # hypersurface equation, degree D = max(d, 2)
    B: MultiPoly | None  # branch curve, bivariate case only
    hom_var: str = "z"
    w_var: str = "w"
    branch_var: str = "s"


def build_model(f: MultiPoly) -> GeometricModel:
    """Hypersurface closure of W^2 = f, plus the branch curve when bivariate."""
    eff = [v for v in f.vars if f.degree_in(v) > 0]
    fr = f.with_vars(tuple(eff)) if tuple(eff) != f.vars else f
    d = fr.total_degree()
    r = (d + 1) // 2
    zname = fresh_name("z", fr.vars)
    wname = fresh_name("w", fr.vars)
    F = homogenize(fr, zname)
    wring = fr.vars + (wname,)
    w = MultiPoly.var(wring, wname)
    V = homogenize(w * w - fr.with_vars(wring), zname)
    B = None
    if len(fr.vars) == 2:
        sname = fresh_name("s", fr.vars)
        Fs = homogenize(fr, sname)
        s = MultiPoly.var(Fs.vars, sname)
        B = s ** (2 * r - d) * Fs
    return GeometricModel(fr, d, r, F, V, B, zname, wname,
                          B.vars[0] if B is not None else "s")


# --------------------------------------------------------------------------
# singular points of the branch curve


def _spec_univ(terms, alpha, axis, field):
    """Specialize one variable of a bivariate exponent-dict at a field element,
    returning a coefficient list in the other variable."""
    alpha = field_coerce(field, alpha)
    zero = field_coerce(field, 0)
    n = 1 + max((e[1 - axis] for e in terms), default=0)
    out = [zero] * n
    for e, c in terms.items():
        out[e[1 - axis]] = out[e[1 - axis]] + field_coerce(field, c) * (
            alpha ** e[axis] if e[axis] else field_one(field)
        )
    return up.trim(out)


_SPX, _SPY = sp.symbols("_gx _gy")


def _to_sympy_bivar(terms):
    expr = sp.Integer(0)
    for (i, j), c in terms.items():
        expr += sp.Rational(c) * _SPX**i * _SPY**j
    return expr


def _resultant_y(a, b):
    """Resultant in the second variable of two bivariate Fraction dicts,
    returned as a Fraction coefficient list in the first variable."""
    res = sp.resultant(
        sp.Poly(_to_sympy_bivar(a), _SPY), sp.Poly(_to_sympy_bivar(b), _SPY)
    )
    poly = sp.Poly(sp.expand(res), _SPX)
    return up.trim([Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())])


def _affine_singular_points(g):
    """Conjugacy classes of singular points of the affine curve {g = 0}.

    g is a bivariate Fraction dict, squarefree.  Returns a list of
    (field, (x0, y0), class_size) with tower height <= 2.
    """
    gx = lp_derivative(g, 0)
    gy = lp_derivative(g, 1)
    degx = max((i for i, j in g), default=0)
    degy = max((j for i, j in g), default=0)
    if degx == 0 or degy == 0:
        # effectively univariate; squarefree curves of this shape are smooth
        # except that a product of parallel lines needs the other partial:
        # g(x) squarefree has gcd(g, g') = 1, so no singular points
        return []
    # x-coordinates of singular points are roots of both resultants below;
    # the one against the y-partial never vanishes identically (g stays
    # squarefree over the rational-function field in x)
    r2 = _resultant_y(g, gy)
    if not r2:
        raise NonReduced("curve shares a component with its y-partial")
    r1 = _resultant_y(g, gx)
    E = up.gcd(r1, r2) if r1 else r2
    E = up.radical(E) if up.deg(E) >= 1 else E
    if up.deg(E) < 1:
        return []
    out = []
    _, xfactors = up.factor_rational(E)
    for mx, _m in xfactors:
        if up.deg(mx) == 1:
            K1 = None
            alpha = -mx[0]
        else:
            K1 = NumberField(None, "a", mx)
            alpha = K1.gen()
        polys = [_spec_univ(t, alpha, 0, K1) for t in (g, gx, gy)]
        G = polys[0]
        for pth in polys[1:]:
            G = up.gcd(G, pth)
        if up.deg(G) < 1:
            continue
        G = up.radical(up.monic(G))
        if K1 is None:
            _, yfactors = up.factor_rational([Fraction(c) for c in G])
            yfactors = [f for f, _ in yfactors]
        else:
            yfactors = factor_over_height1(K1, G)
        for fy in yfactors:
            if up.deg(fy) == 1:
                fld = K1
                y0 = -fy[0] / fy[1]
                x0 = alpha
            else:
                gen2 = "a" if K1 is None else "b"
                fld = NumberField(K1, gen2, up.monic(fy))
                y0 = fld.gen()
                x0 = fld.lift(alpha)
            size = up.deg(mx) * up.deg(fy)
            out.append((fld, (x0, y0), size))
    return out


def singular_points(B: MultiPoly):
    """All singular points of a reduced plane projective curve, one
    representative per Galois conjugacy class, with multiplicities.

    Chart layout for coordinates (s, y1, y2): chart 0 covers s != 0,
    chart 1 covers s = 0, y1 != 0, chart 2 only the point (0:0:1); the
    charts partition the plane, so no cross-chart duplicates arise.
    """
    if len(B.vars) != 3:
        raise ValueError("singular_points expects a plane projective curve")
    if not is_squarefree(B):
        raise NonReduced("branch curve must be squarefree")
    terms = to_frac_terms(B)
    results = []
    # chart 0: s = 1
    g0 = restrict_chart(terms, 0)
    for fld, (x0, y0), size in _affine_singular_points(g0):
        pt = AlgebraicPoint(fld, (field_coerce(fld, 1), x0, y0), 0, size)
        m = _chart_multiplicity(g0, (x0, y0), fld)
        results.append((pt, m))
    # chart 1: y1 = 1, restricted to s = 0
    g1 = restrict_chart(terms, 1)  # variables (s, y2)
    u0 = _spec_univ(g1, Fraction(0), 0, None)          # g1(0, y)
    u1 = _spec_univ(lp_derivative(g1, 0), Fraction(0), 0, None)
    u2 = up.derivative(u0)
    G = []
    for u in (u0, u1, u2):
        if u:
            G = up.gcd(G, u) if G else up.monic(list(u))
    if up.deg(G) >= 1:
        G = up.radical(G)
        _, yfactors = up.factor_rational(G)
        for fy, _m in yfactors:
            if up.deg(fy) == 1:
                fld = None
                y0 = -fy[0]
            else:
                fld = NumberField(None, "a", fy)
                y0 = fld.gen()
            m = _chart_multiplicity(g1, (field_coerce(fld, 0), y0), fld)
            if m >= 2:
                pt = AlgebraicPoint(
                    fld,
                    (field_coerce(fld, 0), field_coerce(fld, 1), y0),
                    1,
                    up.deg(fy),
                )
                results.append((pt, m))
    # chart 2: the single point (0:0:1)
    g2 = restrict_chart(terms, 2)  # variables (s, y1)
    m = lp_multiplicity(g2) if g2 else 0
    if g2 and m >= 2:
        pt = AlgebraicPoint(
            None, (Fraction(0), Fraction(0), Fraction(1)), 2, 1
        )
        results.append((pt, m))
    results.sort(key=lambda pm: pm[0].sort_key())
    return results


def _chart_multiplicity(chart_terms, affine_coords, fld):
    lifted = _lift_terms(chart_terms, fld)
    germ = nvar_translate(lifted, affine_coords, fld)
    germ = {e: c for e, c in germ.items() if c}
    return lp_multiplicity(germ) if germ else 0


def multiplicity_at(g: MultiPoly, p: AlgebraicPoint) -> int:
    """Least total degree after translating p to the origin of its chart;
    0 means the point is not on {g = 0}."""
    terms = to_frac_terms(g)
    chart_terms = restrict_chart(terms, p.chart)
    coords = tuple(c for i, c in enumerate(p.proj) if i != p.chart)
    lifted = _lift_terms(chart_terms, p.field)
    germ = nvar_translate(lifted, coords, p.field)
    germ = {e: c for e, c in germ.items() if c}
    return lp_multiplicity(germ) if germ else 0


def classify_singularity(B: MultiPoly, p: AlgebraicPoint) -> SingularityRecord:
    """ADE classification of the branch-curve germ at p."""
    terms = to_frac_terms(B)
    chart_terms = restrict_chart(terms, p.chart)
    coords = tuple(c for i, c in enumerate(p.proj) if i != p.chart)
    lifted = _lift_terms(chart_terms, p.field)
    germ = nvar_translate(lifted, coords, p.field)
    germ = {e: c for e, c in germ.items() if c}
    cls = classify_germ(germ, p.field)
    return SingularityRecord(
        p, cls.multiplicity, cls.mu, cls.label(), cls.cone_shape
    )


def all_simple(model: GeometricModel):
    """(every branch-curve singularity is simple, full record list).

    The double cover u^2 = B is singular exactly above singular points of
    the reduced branch curve (the u-partial forces u = 0), and the germ
    u^2 = g(x, y) is a Du Val singularity of the same letter and index as
    the plane germ g; so the surface-side hypothesis is checked entirely
    on B.
    """
    if model.B is None:
        raise ValueError("all_simple requires the bivariate branch curve")
    records = []
    ok = True
    for pt, _m in singular_points(model.B):
        rec = classify_singularity(model.B, pt)
        records.append(rec)
        if not rec.simple:
            ok = False
    return ok, records


# --------------------------------------------------------------------------
# small exact linear algebra over the rationals


def _kernel_vector(rows, ncols):
    """A nonzero rational kernel vector of the row system, or None."""
    mat = [list(r) for r in rows]
    pivots = {}
    rank_rows = []
    for row in mat:
        row = list(row)
        for col, prow in pivots.items():
            if row[col]:
                c = row[col]
                row = [x - c * y for x, y in zip(row, prow)]
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is not None:
            inv = row[piv]
            row = [x / inv for x in row]
            pivots[piv] = row
    free = [i for i in range(ncols) if i not in pivots]
    if not free:
        return None
    j = free[0]
    vec = [Fraction(0)] * ncols
    vec[j] = Fraction(1)
    for col, prow in pivots.items():
        vec[col] = -prow[j]
    return vec


def _rank(rows):
    pivots = {}
    for row in rows:
        row = list(row)
        for col, prow in pivots.items():
            if row[col]:
                c = row[col]
                row = [x - c * y for x, y in zip(row, prow)]
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is not None:
            inv = row[piv]
            pivots[piv] = [x / inv for x in row]
    return len(pivots)


# --------------------------------------------------------------------------
# multiplicity-3 points of plane cubics


def triple_point_of_cubic(F: MultiPoly):
    """A point where all second partials of a squarefree plane cubic vanish.

    The second partials of a cubic are linear forms, so this is exact
    kernel computation; by the Euler identity a common zero of all
    order-2 partials of a homogeneous cubic has multiplicity exactly 3.
    """
    if len(F.vars) != 3 or F.total_degree() != 3:
        raise ValueError("expected a homogeneous cubic in three variables")
    if not is_squarefree(F):
        raise NonReduced("cubic must be squarefree")
    terms = to_frac_terms(F)
    rows = []
    for i, j in combinations_with_replacement(range(3), 2):
        d = lpn_derivative(lpn_derivative(terms, i), j)
        row = [Fraction(0)] * 3
        for e, c in d.items():
            row[e.index(1)] = c
        rows.append(row)
    vec = _kernel_vector(rows, 3)
    if vec is None:
        return None
    piv = next(i for i, x in enumerate(vec) if x)
    vec = [x / vec[piv] for x in vec]
    pt = AlgebraicPoint(None, tuple(vec), piv, 1)
    assert multiplicity_at(F, pt) == 3
    return pt


def lpn_derivative(terms, axis):
    out = {}
    for e, c in terms.items():
        if e[axis] > 0:
            ne = e[:axis] + (e[axis] - 1,) + e[axis + 1 :]
            out[ne] = out.get(ne, Fraction(0)) + c * e[axis]
    return {e: c for e, c in out.items() if c}


# --------------------------------------------------------------------------
# search for points of multiplicity D - 1 on a hypersurface


def _order_partials(terms, order, nvars):
    """All distinct nonzero order-`order` partial derivatives."""
    seen = {}
    for combo in combinations_with_replacement(range(nvars), order):
        d = dict(terms)
        for axis in combo:
            d = lpn_derivative(d, axis)
            if not d:
                break
        if d:
            key = tuple(sorted(d.items()))
            seen[key] = d
    return [seen[k] for k in sorted(seen)]


def _poly_key(p):
    return tuple(sorted(p.items()))


class _SystemSolution:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(coords)


def _specialize_all_but_last(terms, sol):
    """Plug a solution for all variables except the last; coefficient list."""
    fld = sol.field
    zero = field_coerce(fld, 0)
    one = field_one(fld)
    n = 1 + max((e[-1] for e in terms), default=0)
    out = [zero] * n
    for e, c in terms.items():
        val = field_coerce(fld, c)
        for k, a in enumerate(sol.coords):
            if e[k]:
                val = val * (a ** e[k])
        out[e[-1]] = out[e[-1]] + val
    return up.trim(out)


def _sym_list(k):
    return sp.symbols(f"_e0:{k}")


def _terms_to_sympy(terms, syms):
    expr = sp.Integer(0)
    for e, c in terms.items():
        mono = sp.Rational(c)
        for s, i in zip(syms, e):
            if i:
                mono *= s**i
        expr += mono
    return expr


def _eliminate_last(polys, k):
    """Resultant projection of a system onto the first k-1 variables.

    Returns (projected system, had_pivot).  Completeness: every common zero
    of the input projects to a common zero of the output.
    """
    syms = _sym_list(k)
    with_t = [p for p in polys if any(e[-1] for e in p)]
    without_t = [
        {e[:-1]: c for e, c in p.items()} for p in polys if not any(e[-1] for e in p)
    ]
    if not with_t:
        return without_t, False
    pivot = min(with_t, key=lambda p: max(e[-1] for e in p))
    piv_expr = sp.Poly(_terms_to_sympy(pivot, syms), syms[-1])
    projected = list(without_t)
    for p in with_t:
        if p is pivot:
            continue
        res = sp.resultant(piv_expr, sp.Poly(_terms_to_sympy(p, syms), syms[-1]))
        res = sp.expand(res)
        if res == 0:
            continue
        if k == 1:
            projected.append({(): Fraction(sp.Rational(res))})
            continue
        poly = sp.Poly(res, *syms[:-1])
        projected.append(
            {e: Fraction(c.p, c.q) for e, c in poly.terms()}
        )
    return projected, True


def _solve_univariate(polys, base_field):
    """Solutions of a univariate system over `base_field` (None or height-1).

    Returns (solutions, complete, exists): complete means the list provably
    covers every solution over the algebraic closure.
    """
    lists = []
    for p in polys:
        n = 1 + max((e[0] for e in p), default=0)
        zero = field_coerce(base_field, 0)
        out = [zero] * n
        for e, c in p.items():
            out[e[0]] = out[e[0]] + field_coerce(base_field, c)
        lists.append(up.trim(out))
    nonzero = [l for l in lists if l]
    if len(nonzero) < len(lists):
        pass  # identically-zero equations impose nothing
    if not nonzero:
        # unconstrained line: infinitely many solutions; report one
        return [_SystemSolution(base_field, (field_coerce(base_field, 0),))], False, True
    g = nonzero[0]
    for l in nonzero[1:]:
        g = up.gcd(g, l)
    if up.deg(g) < 1:
        return [], (up.deg(g) == 0), up.deg(g) < 0
    g = up.radical(up.monic(g))
    sols = []
    complete = True
    if base_field is None:
        _, factors = up.factor_rational([Fraction(c) for c in g])
        for f, _m in factors:
            if up.deg(f) == 1:
                sols.append(_SystemSolution(None, (-f[0],)))
            else:
                K = NumberField(None, "a", f)
                sols.append(_SystemSolution(K, (K.gen(),)))
    elif base_field.height == 1:
        for f in factor_over_height1(base_field, g):
            if up.deg(f) == 1:
                sols.append(_SystemSolution(base_field, (-f[0] / f[1],)))
            else:
                K = NumberField(base_field, "b", up.monic(f))
                sols.append(_SystemSolution(K, (K.gen(),)))
    else:
        # solutions exist but the tower is already at maximal height
        complete = False
    return sols, complete, True


def _solve_system(polys, k):
    """Common zeros of a polynomial system over the rationals, k variables.

    Returns (solutions, complete, exists).  `complete` certifies the
    solution list is exhaustive up to Galois conjugacy; `exists` is True
    when common zeros provably exist even if none could be extracted.
    """
    polys = [p for p in polys if p]
    for p in polys:
        if all(sum(e) == 0 for e in p):
            return [], True, False  # a nonzero constant equation
    if not polys:
        zero = Fraction(0)
        return [_SystemSolution(None, (zero,) * k)], False, True
    if k == 1:
        return _solve_univariate(polys, None)
    projected, had_pivot = _eliminate_last(polys, k)
    projected = [p for p in projected if p]
    if not had_pivot:
        # last variable unconstrained; solve the rest and append t = 0
        subs, complete, exists = _solve_system(projected, k - 1)
        out = [
            _SystemSolution(s.field, s.coords + (field_coerce(s.field, 0),))
            for s in subs
        ]
        return out, False, exists
    if not projected:
        # projection degenerated (shared factors or a single equation):
        # common zeros exist on a hypersurface; extract one by scanning
        sol = _scan_for_solution(polys, k)
        return ([sol] if sol else []), False, True
    cands, complete, _ = _solve_system(projected, k - 1)
    sols = []
    exists = False
    for cand in cands:
        restrictions = [_specialize_all_but_last(p, cand) for p in polys]
        nonzero = [r for r in restrictions if r]
        if not nonzero:
            sols.append(
                _SystemSolution(
                    cand.field, cand.coords + (field_coerce(cand.field, 0),)
                )
            )
            exists = True
            complete = False  # a positive-dimensional fibre was truncated
            continue
        g = nonzero[0]
        for r in nonzero[1:]:
            g = up.gcd(g, r)
        if up.deg(g) < 1:
            continue
        exists = True
        g = up.radical(up.monic(g))
        fld = cand.field
        height = 0 if fld is None else fld.height
        if fld is None:
            _, factors = up.factor_rational([Fraction(c) for c in g])
            for f, _m in factors:
                if up.deg(f) == 1:
                    sols.append(_SystemSolution(None, cand.coords + (-f[0],)))
                else:
                    K = NumberField(None, "a", f)
                    sols.append(
                        _SystemSolution(
                            K,
                            tuple(K.from_rational(c) for c in cand.coords)
                            + (K.gen(),),
                        )
                    )
        elif height == 1:
            for f in factor_over_height1(fld, g):
                if up.deg(f) == 1:
                    sols.append(
                        _SystemSolution(fld, cand.coords + (-f[0] / f[1],))
                    )
                else:
                    K = NumberField(fld, "b", up.monic(f))
                    sols.append(
                        _SystemSolution(
                            K,
                            tuple(K.lift(c) for c in cand.coords) + (K.gen(),),
                        )
                    )
        else:
            # roots exist over the closure but exceed the tower cap
            complete = False
    return sols, complete, exists


def _scan_for_solution(polys, k, height=6):
    """Bounded-height rational scan for a common zero; None if not found."""
    values = [Fraction(0)]
    for h in range(1, height + 1):
        for d in range(1, h + 1):
            for n in range(-h, h + 1):
                q = Fraction(n, d)
                if max(abs(q.numerator), q.denominator) == h and q not in values:
                    values.append(q)

    def rec(assign):
        if len(assign) == k:
            for p in polys:
                total = Fraction(0)
                for e, c in p.items():
                    term = c
                    for a, exp in zip(assign, e):
                        if exp:
                            term *= a**exp
                    total += term
                if total:
                    return None
            return tuple(assign)
        for v in values:
            r = rec(assign + [v])
            if r is not None:
                return r
        return None

    got = rec([])
    return _SystemSolution(None, got) if got else None


def high_mult_point_search(H: MultiPoly, height=50):
    """Search for a point of multiplicity D - 1 on the degree-D hypersurface H.

    Returns (point or None, certified_empty).  By the Euler identity the
    multiplicity-(D-1) locus is the common zero set of the order-(D-2)
    partials, which are quadrics: a full-rank quadric span certifies
    emptiness immediately; otherwise each affine chart is solved by
    recursive resultant elimination with exact back-substitution (fully
    certified for up to 3 chart unknowns).  A missing point is only a
    nonexistence proof when certified_empty is True.
    """
    terms = to_frac_terms(H)
    nvars = len(H.vars)
    D = H.total_degree()
    if D < 2:
        raise ValueError("hypersurface degree must be at least 2")
    quadrics = _order_partials(terms, D - 2, nvars)
    if not quadrics:
        return None, False
    # full-span shortcut: the only common zero of a complete quadric system
    # is the origin, which is not a projective point
    monos = list(combinations_with_replacement(range(nvars), 2))
    mono_index = {}
    for i, j in monos:
        e = [0] * nvars
        e[i] += 1
        e[j] += 1
        mono_index[tuple(e)] = len(mono_index)
    rows = []
    for q in quadrics:
        row = [Fraction(0)] * len(mono_index)
        for e, c in q.items():
            row[mono_index[e]] = c
        rows.append(row)
    if _rank(rows) == len(mono_index):
        return None, True
    best = None
    certified = True
    k = nvars - 1
    for chart in range(nvars):
        chart_polys = [restrict_chart(q, chart) for q in quadrics]
        if k <= 3:
            sols, complete, exists = _solve_system(chart_polys, k)
        else:
            sol = _scan_for_solution(chart_polys, k)
            sols, complete, exists = ([sol] if sol else []), False, sol is not None
        if not complete:
            certified = False
        for s in sols:
            proj = s.coords[:chart] + (field_coerce(s.field, 1),) + s.coords[chart:]
            piv = next(i for i, c in enumerate(proj) if c)
            if piv != chart:
                continue  # canonical form handled by an earlier chart
            pt = AlgebraicPoint(s.field, proj, chart, 1)
            try:
                m = multiplicity_at(H, pt)
            except TowerTooDeep:
                continue
            if m != D - 1:
                continue
            if s.field is None:
                return pt, False
            if best is None:
                best = pt
        if exists and not sols:
            certified = False
    if best is not None:
        return best, False
    return None, certified


def milnor_sum(records):
    """Sum of Milnor numbers weighted by conjugacy-class size."""
    total = 0
    for rec in records:
        if rec.mu is not None:
            total += rec.mu * rec.point.class_size
    return total
