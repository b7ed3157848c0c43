"""Number-field towers of height at most two, with exact arithmetic.

Algebraic numbers enter this package only as coordinates of singular points
of plane curves: an x-coordinate algebraic over the rationals and, above it,
a y-coordinate algebraic over that first extension.  A tower of height two
is therefore all we ever need; asking for more raises
:class:`~ratsqrt.errors.TowerTooDeep`.

Representation.  A :class:`NumberField` stores, per level, a generator name
and a monic irreducible minimal polynomial over the level below (coefficient
lists as in :mod:`ratsqrt.unipoly`).  An element is a dense coefficient list
over the level below, reduced modulo the minimal polynomial, wrapped in
:class:`NFElem` so the generic polynomial routines can use ordinary
operators.  Zero testing is canonical: the reduced representation of zero is
the all-zero list.

Splitting a polynomial over a height-one field uses Trager's norm method:
push the problem down to the rationals with a resultant, factor there
(sympy), and pull the factors back with gcds over the extension.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from . import unipoly as up
from .errors import TowerTooDeep, ZeroInversion

MAX_HEIGHT = 2


class NumberField:
    """A tower QQ ( = height 0) or QQ(a) or QQ(a)(b)."""

    def __init__(self, base, gen_name, minpoly):
        if base is not None and base.height >= MAX_HEIGHT:
            raise TowerTooDeep("number-field towers are capped at height 2")
        if len(minpoly) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if minpoly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.base = base  # None means the rationals
        self.gen_name = gen_name
        self.minpoly = list(minpoly)
        self.top_degree = up.deg(minpoly)
        self.height = 1 if base is None else base.height + 1

    # -- element construction -------------------------------------------

    def _base_zero(self):
        return Fraction(0) if self.base is None else self.base.zero()

    def _base_one(self):
        return Fraction(1) if self.base is None else self.base.one()

    def _base_from_rational(self, c):
        c = Fraction(c)
        return c if self.base is None else self.base.from_rational(c)

    def zero(self):
        return NFElem(self, [])

    def one(self):
        return NFElem(self, [self._base_one()])

    def from_rational(self, c):
        c = Fraction(c)
        if not c:
            return self.zero()
        return NFElem(self, [self._base_from_rational(c)])

    def gen(self):
        return NFElem(self, [self._base_zero(), self._base_one()])

    def from_coeffs(self, coeffs):
        """Element from a coefficient list over the base level (reduced)."""
        lifted = []
        for c in coeffs:
            if isinstance(c, NFElem):
                lifted.append(c)
            else:
                lifted.append(self._base_from_rational(c))
        return NFElem(self, up.rem(up.trim(lifted), self.minpoly))

    def lift(self, e):
        """Coerce an element of a lower level (or a rational) into this field."""
        if isinstance(e, NFElem):
            if e.field is self:
                return e
            if self.base is not None and e.field is self.base:
                return NFElem(self, [e])
            raise ValueError("element does not belong to this tower")
        return self.from_rational(e)

    def absolute_degree(self):
        d = self.top_degree
        return d if self.base is None else d * self.base.absolute_degree()

    def describe(self):
        """Human-readable tower description, deterministic."""
        levels = []
        f = self
        while f is not None:
            levels.append((f.gen_name, list(f.minpoly)))
            f = f.base
        levels.reverse()
        return levels

    def __repr__(self):
        names = [g for g, _ in self.describe()]
        return f"NumberField(QQ({', '.join(names)}))"


class NFElem:
    """Element of a NumberField; immutable once built."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = tuple(up.trim(list(rep)))

    # -- coercion --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field is self.field:
                return other
            if other.field is self.field.base:
                return self.field.lift(other)
            if self.field is other.field.base:
                return NotImplemented  # let the taller element handle it
            raise ValueError("elements of unrelated number fields")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NFElem(self.field, up.add(list(self.rep), list(o.rep)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, up.neg(list(self.rep)))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prod = up.mul(list(self.rep), list(o.rep))
        return NFElem(self.field, up.rem(prod, self.field.minpoly))

    __rmul__ = __mul__

    def inverse(self):
        if not self.rep:
            raise ZeroInversion("cannot invert zero in a number field")
        g, s, _t = up.gcdex(list(self.rep), self.field.minpoly)
        if up.deg(g) != 0:
            raise ZeroInversion("element is a zero divisor (minpoly not irreducible?)")
        inv_g = 1 / g[0] if isinstance(g[0], Fraction) else g[0].inverse()
        return NFElem(self.field, up.rem(up.scale(s, inv_g), self.field.minpoly))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElem)):
            o = self._coerce(other)
            if o is NotImplemented:
                return NotImplemented
            return self.rep == o.rep
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def is_rational(self):
        return len(self.rep) <= 1 and all(
            (c.is_rational() if isinstance(c, NFElem) else True) for c in self.rep
        )

    def to_fraction(self):
        if not self.rep:
            return Fraction(0)
        c = self.rep[0]
        if len(self.rep) > 1:
            raise ValueError("element is not rational")
        return c.to_fraction() if isinstance(c, NFElem) else Fraction(c)

    def __repr__(self):
        return f"NFElem({self.field.gen_name}: {self.rep})"


# --------------------------------------------------------------------------
# module-level convenience wrappers


def nf_invert(e: NFElem) -> NFElem:
    """Multiplicative inverse via extended Euclid against the minimal polynomial."""
    return e.inverse()


# --------------------------------------------------------------------------
# Trager norm-based splitting over a height-one field


def _elem_to_expr(e, sym):
    """Height-one element -> sympy polynomial expression in sym."""
    if isinstance(e, NFElem):
        coeffs = [Fraction(c) for c in e.rep]
    else:
        coeffs = [Fraction(e)]
    return sum((sp.Rational(c) * sym**i for i, c in enumerate(coeffs)), sp.Integer(0))


def factor_over_height1(field: NumberField, poly):
    """Split a monic squarefree polynomial over a height-one field.

    `poly` is a coefficient list of NFElem over `field` (monic, squarefree).
    Returns a list of monic irreducible factors (coefficient lists), sorted
    deterministically.  Raises TowerTooDeep if `field` is not height one.
    """
    if field.height != 1:
        raise TowerTooDeep("norm factorization implemented for height-one fields")
    poly = [field.lift(c) for c in poly]
    if up.deg(poly) <= 1:
        return [poly]
    x, y = sp.symbols("_nfx _nfy")
    m_expr = sum(sp.Rational(c) * x**i for i, c in enumerate(field.minpoly))
    alpha = field.gen()
    for s in range(0, 40):
        # G_s(x, y) = poly with the generator replaced by x and y -> y - s*x
        g_expr = sum(
            _elem_to_expr(c, x) * (y - s * x) ** i for i, c in enumerate(poly)
        )
        norm = sp.Poly(sp.resultant(m_expr, sp.expand(g_expr), x), y)
        if sp.degree(sp.gcd(norm, norm.diff(y)), y) == 0:
            break
    else:  # pragma: no cover - shift always found at desk scale
        raise TowerTooDeep("no squarefree norm shift found")
    _, rat_factors = norm.factor_list()
    factors = []
    shift_arg = [Fraction(s) * alpha, field.one()]  # y + s*alpha
    for nf_poly, _m in rat_factors:
        coeffs = [Fraction(c.p, c.q) for c in reversed(nf_poly.all_coeffs())]
        # n_i(y + s*alpha) over the field, by Horner composition
        comp = []
        for c in reversed(coeffs):
            comp = up.add(up.mul(comp, shift_arg), [field.from_rational(c)])
        g = up.gcd(poly, comp)
        if up.deg(g) >= 1:
            factors.append(g)
    total = [field.one()]
    for f in factors:
        total = up.mul(total, f)
    assert up.trim(total) == up.trim(poly), "norm factorization lost a factor"
    factors.sort(key=lambda f: (up.deg(f), _sort_key(f)))
    return factors


def _sort_key(poly):
    out = []
    for c in poly:
        if isinstance(c, NFElem):
            out.append(tuple(Fraction(x) for x in c.rep))
        else:
            out.append((Fraction(c),))
    return tuple(out)


def elem_str(e):
    """Deterministic human-readable form of a Fraction or NFElem."""
    if not isinstance(e, NFElem):
        return str(Fraction(e))
    gen = e.field.gen_name
    parts = []
    for i, c in enumerate(e.rep):
        cs = elem_str(c)
        if cs == "0":
            continue
        if i == 0:
            parts.append(cs)
        else:
            head = gen if i == 1 else f"{gen}^{i}"
            if cs == "1":
                parts.append(head)
            elif "+" in cs or cs.startswith("-"):
                parts.append(f"({cs})*{head}")
            else:
                parts.append(f"{cs}*{head}")
    return " + ".join(parts) if parts else "0"


def roots_in_field(field, poly):
    """Roots of `poly` lying in `field` (height <= 1), via linear factors."""
    if field is None:
        rational = []
        frac_poly = [Fraction(c) for c in poly]
        return up.rational_roots(frac_poly) if frac_poly else rational
    factors = factor_over_height1(field, poly)
    roots = []
    for f in factors:
        if up.deg(f) == 1:
            roots.append(-f[0] / f[1])
    return roots
