"""Sparse multivariate polynomials, rational functions and substitution maps.

MultiPoly is the radicand universe: an ordered variable tuple plus a mapping
from exponent vectors to nonzero coefficients.  Coefficients are sympy
expressions, normally rational numbers; a single quadratic irrationality
(e.g. sqrt(-7)) is allowed so that substitution witnesses built from
non-rational quadric points stay exact.  The canonical term order is graded
lexicographic in the declared variable order, which makes equality, hashing
and printing representational.

Heavy kernels (gcd, squarefree decomposition, factorization) are delegated
to sympy behind the operation surface of this module; everything layered on
top only uses the functions exported here.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .errors import (
    OddDegree,
    UndefinedVariable,
    ZeroDenominator,
    ZeroRadicand,
)

_SYMBOLS: dict[str, sp.Symbol] = {}


def _sym(name: str) -> sp.Symbol:
    if name not in _SYMBOLS:
        _SYMBOLS[name] = sp.Symbol(name)
    return _SYMBOLS[name]


def _canon_coeff(c):
    if isinstance(c, Fraction):
        return sp.Rational(c.numerator, c.denominator)
    if isinstance(c, int):
        return sp.Integer(c)
    return sp.expand(sp.sympify(c))


def grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Immutable sparse polynomial over an ordered variable tuple."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        clean = {}
        for exp, c in terms.items():
            c = _canon_coeff(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = clean
        object.__setattr__ if False else None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def from_sympy(cls, expr, variables):
        variables = tuple(variables)
        syms = [_sym(v) for v in variables]
        poly = sp.Poly(sp.expand(expr), *syms) if syms else None
        if poly is None:
            return cls.const(variables, sp.expand(expr))
        terms = {exp: c for exp, c in poly.terms()}
        return cls(variables, terms)

    # -- basic structure -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), sp.Integer(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def leading_coeff(self):
        return self.leading_term()[1] if self.terms else sp.Integer(0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficients_rational(self):
        return all(c.is_Rational for c in self.terms.values())

    # -- ring operations -----------------------------------------------------

    def _check_vars(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check_vars(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, sp.Integer(0)) + c
        return MultiPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check_vars(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, sp.Integer(0)) + c1 * c2
        return MultiPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c):
        return MultiPoly(self.vars, {e: co * c for e, co in self.terms.items()})

    def monic(self):
        """Normalize the graded-lex leading coefficient to 1."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        return self.scale(sp.Integer(1) / lc)

    def derivative(self, name):
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.vars, terms)

    # -- variable plumbing -----------------------------------------------------

    def with_vars(self, variables):
        """Re-read in a new variable tuple (superset/permutation of the old)."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if self.degree_in(v) > 0 and v not in variables:
                raise ValueError(f"cannot drop effective variable {v}")
            idx.append(variables.index(v) if v in variables else None)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, exp in enumerate(e):
                if exp:
                    ne[idx[i]] = exp
            terms[tuple(ne)] = c
        return MultiPoly(variables, terms)

    def eval_at(self, values):
        """Full evaluation; values maps every effective variable to a coefficient."""
        total = sp.Integer(0)
        vals = [
            _canon_coeff(values[v]) if v in values else None for v in self.vars
        ]
        for e, c in self.terms.items():
            term = c
            for i, exp in enumerate(e):
                if exp:
                    if vals[i] is None:
                        raise UndefinedVariable(self.vars[i])
                    term = term * vals[i] ** exp
            total += term
        return sp.expand(total)

    def subs_var(self, name, value):
        """Partially substitute one variable by a constant; result keeps vars."""
        i = self.vars.index(name)
        terms = {}
        value = _canon_coeff(value)
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            coeff = c * value ** e[i]
            terms[ne] = terms.get(ne, sp.Integer(0)) + coeff
        return MultiPoly(self.vars, terms)

    # -- sympy bridge -----------------------------------------------------------

    def to_sympy(self):
        expr = sp.Integer(0)
        for e, c in self.terms.items():
            mono = c
            for i, exp in enumerate(e):
                if exp:
                    mono = mono * _sym(self.vars[i]) ** exp
            expr += mono
        return expr

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0])))
            )
        return self._hash

    def __repr__(self):
        return f"MultiPoly({poly_str(self)!r})"


# --------------------------------------------------------------------------
# printing in the parser grammar


def _coeff_str(c):
    if c.is_Rational:
        return str(c)
    # linear combination over a quadratic irrationality
    return str(c).replace(" ", "")


def poly_str(p: MultiPoly) -> str:
    """Canonical string in the input grammar (round-trippable)."""
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for name, exp in zip(p.vars, e):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        neg = c.is_Rational and c < 0
        mag = -c if neg else c
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = _coeff_str(mag) + "*" + "*".join(factors)
        else:
            body = _coeff_str(mag)
        if not c.is_Rational:
            body = "(" + _coeff_str(c) + ")" + ("*" + "*".join(factors) if factors else "")
            neg = False
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# sympy-backed kernels


def _to_poly(p: MultiPoly, extra=()):
    syms = [_sym(v) for v in p.vars] + [_sym(v) for v in extra]
    if p.coefficients_rational():
        return sp.Poly(p.to_sympy(), *syms, domain="QQ")
    return sp.Poly(p.to_sympy(), *syms, extension=True)


def mgcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to graded-lex leading coefficient 1."""
    a._check_vars(b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    g = sp.gcd(_to_poly(a), _to_poly(b))
    return MultiPoly.from_sympy(g.as_expr(), a.vars).monic()


def factor_list(p: MultiPoly):
    """(constant, [(MultiPoly factor, multiplicity), ...]) with monic factors,
    deterministically sorted."""
    poly = _to_poly(p)
    const, factors = poly.factor_list()
    out = []
    c = sp.sympify(const)
    for f, m in factors:
        mp = MultiPoly.from_sympy(f.as_expr(), p.vars)
        lc = mp.leading_coeff()
        c *= lc**m
        out.append((mp.monic(), m))
    out.sort(key=lambda fm: (fm[0].total_degree(), poly_str(fm[0])))
    return sp.expand(c), out


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """The squarefree f with p = f * h^2 exactly (h polynomial).

    The constant factor is carried along so that p and f differ by a genuine
    polynomial square: a witness verified against f is then automatically a
    witness for p.  Factor order is canonical, making the output a
    deterministic representative of p modulo square multiples.
    """
    if p.is_zero():
        raise ZeroRadicand("squarefree part of zero is undefined")
    if p.is_constant():
        return p
    const, factors = sp.sqf_list(_to_poly(p))
    out = MultiPoly.const(p.vars, sp.sympify(const))
    for f, m in factors:
        fp = MultiPoly.from_sympy(f.as_expr(), p.vars)
        if m % 2 == 1:
            out = out * fp
    return out


def radical(p: MultiPoly) -> MultiPoly:
    """Product of all distinct irreducible factors (reduced form), monic."""
    if p.is_zero():
        raise ZeroRadicand("radical of zero is undefined")
    if p.is_constant():
        return MultiPoly.const(p.vars, 1)
    _, factors = sp.sqf_list(_to_poly(p))
    out = MultiPoly.const(p.vars, 1)
    for f, _m in factors:
        out = out * MultiPoly.from_sympy(f.as_expr(), p.vars)
    return out.monic()


def is_squarefree(p: MultiPoly) -> bool:
    if p.is_zero():
        return False
    if p.is_constant():
        return True
    _, factors = sp.sqf_list(_to_poly(p))
    return all(m == 1 for _f, m in factors)


def radicand_reduce(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Squarefree polynomial whose square root is equivalent to sqrt(p/q).

    Multiplying by the square of the denominator and stripping even powers
    preserves rationalizability in both directions.
    """
    if p.is_zero():
        raise ZeroRadicand("sqrt(0) is trivially rational")
    if q.is_zero():
        raise ZeroDenominator("denominator polynomial is zero")
    return squarefree_part(p * q)


def effective_vars(f: MultiPoly):
    return [v for v in f.vars if f.degree_in(v) > 0]


def is_homogeneous(f: MultiPoly):
    """Total degree if all terms share it, else None."""
    if f.is_zero():
        raise ZeroRadicand("homogeneity of zero is undefined")
    degs = {sum(e) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


def homogenize(f: MultiPoly, new_var: str, degree=None) -> MultiPoly:
    """Homogenize with a fresh variable, prepended to the variable tuple."""
    if new_var in f.vars:
        raise ValueError(f"{new_var} already occurs")
    d = f.total_degree() if degree is None else degree
    variables = (new_var,) + f.vars
    terms = {}
    for e, c in f.terms.items():
        terms[(d - sum(e),) + e] = c
    return MultiPoly(variables, terms)


def dehomogenize(f: MultiPoly, var: str) -> MultiPoly:
    """Set `var` to 1 and squarefree-reduce; valid only for even total degree.

    For even degree the square roots of f and of the result are
    rationalizable together; no such equivalence is available for odd degree,
    so that case is rejected.
    """
    d = is_homogeneous(f)
    if d is None:
        raise ValueError("input is not homogeneous")
    if d % 2 == 1:
        raise OddDegree("dehomogenization equivalence requires even total degree")
    if var not in f.vars:
        raise ValueError(f"{var} is not a variable of the ring")
    g = f.subs_var(var, 1)
    rest = tuple(v for v in f.vars if v != var)
    if not rest:
        rest = (var,)  # univariate homogeneous: keep ring nonempty
    g = g.with_vars(rest)
    if g.is_zero():
        raise ZeroRadicand("dehomogenization vanished (var divides f to top degree)")
    return squarefree_part(g)


# --------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Reduced fraction of MultiPoly; denominator graded-lex monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, reduce=True):
        num._check_vars(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if reduce and not num.is_zero():
            g = sp.cancel(num.to_sympy() / den.to_sympy())
            n_expr, d_expr = sp.fraction(sp.together(g))
            num = MultiPoly.from_sympy(n_expr, num.vars)
            den = MultiPoly.from_sympy(d_expr, den.vars)
        if num.is_zero():
            den = MultiPoly.const(den.vars, 1)
        lc = den.leading_coeff()
        if lc != 1:
            inv = sp.Integer(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: MultiPoly):
        return cls(p, MultiPoly.const(p.vars, 1), reduce=False)

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({rf_str(self)!r})"


def rf_str(g: RationalFunction) -> str:
    if g.den.is_constant() and g.den.constant_value() == 1:
        return poly_str(g.num)
    return f"({poly_str(g.num)})/({poly_str(g.den)})"


# --------------------------------------------------------------------------
# substitution maps


class RationalMap:
    """Assignment of one rational function to each source variable.

    `extension` optionally records a quadratic irrationality (a sympy sqrt
    expression) generating the coefficient field of the assignments.
    """

    __slots__ = ("source_vars", "assignments", "extension")

    def __init__(self, source_vars, assignments, extension=None):
        self.source_vars = tuple(source_vars)
        self.assignments = dict(assignments)
        self.extension = extension
        for v, g in self.assignments.items():
            if not isinstance(g, RationalFunction):
                raise TypeError(f"assignment for {v} is not a RationalFunction")

    @classmethod
    def identity(cls, variables):
        variables = tuple(variables)
        return cls(
            variables,
            {
                v: RationalFunction.from_poly(MultiPoly.var(variables, v))
                for v in variables
            },
        )

    def is_nonconstant(self):
        return any(not g.is_constant() for g in self.assignments.values())

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return (
            self.source_vars == other.source_vars
            and self.assignments == other.assignments
        )

    def __repr__(self):
        body = ", ".join(
            f"{v} -> {rf_str(g)}" for v, g in sorted(self.assignments.items())
        )
        return f"RationalMap({body})"

    def to_json(self):
        out = {
            "variables": list(self.source_vars),
            "assignments": {
                v: rf_str(g) for v, g in sorted(self.assignments.items())
            },
        }
        if self.extension is not None:
            out["extension"] = str(self.extension)
        return out


def substitute(f: MultiPoly, m: RationalMap) -> RationalFunction:
    """Image of f under the homomorphism defined by m, in lowest terms."""
    needed = effective_vars(f)
    for v in needed:
        if v not in m.assignments:
            raise UndefinedVariable(f"no assignment for effective variable {v}")
    if not needed:
        return RationalFunction.from_poly(
            MultiPoly.const(m.source_vars or f.vars, f.constant_value())
        )
    target_vars = m.assignments[needed[0]].vars
    degs = {v: f.degree_in(v) for v in f.vars}
    nums = {}
    dens = {}
    for v in needed:
        g = m.assignments[v]
        nums[v] = g.num.with_vars(target_vars)
        dens[v] = g.den.with_vars(target_vars)
    total_num = MultiPoly.zero(target_vars)
    for e, c in f.terms.items():
        term = MultiPoly.const(target_vars, c)
        for i, exp in enumerate(e):
            v = f.vars[i]
            if degs[v] == 0:
                continue
            term = term * nums[v] ** exp * dens[v] ** (degs[v] - exp)
        total_num = total_num + term
    total_den = MultiPoly.const(target_vars, 1)
    for v in needed:
        total_den = total_den * dens[v] ** degs[v]
    return RationalFunction(total_num, total_den)


# --------------------------------------------------------------------------
# perfect-square testing


def _rational_sqrt(c):
    """Exact square root of a nonnegative sympy Rational, or None."""
    if not c.is_Rational or c < 0:
        return None
    p, q = sp.Integer(c.p), sp.Integer(c.q)
    rp, rq = sp.integer_nthroot(p, 2), sp.integer_nthroot(q, 2)
    if rp[1] and rq[1]:
        return sp.Rational(rp[0], rq[0])
    return None


def _field_sqrt(c):
    """Square root of a constant within QQ or QQ(sqrt(r)), or None.

    c is a sympy expression of the form a + b*sqrt(r) with a, b, r rational.
    """
    c = sp.expand(c)
    if c == 0:
        return sp.Integer(0)
    if c.is_Rational:
        return _rational_sqrt(c)
    # decompose as a + b*sqrt(r)
    rad = None
    for node in sp.preorder_traversal(c):
        if node.is_Pow and node.exp == sp.Rational(1, 2):
            rad = node
            break
    if rad is None:
        return None
    r = rad.base
    a = c.subs(rad, 0)
    b = sp.expand((c - a) / rad)
    if not (a.is_Rational and b.is_Rational and r.is_Rational):
        return None
    # (p + q*sqrt(r))^2 = p^2 + r q^2 + 2pq sqrt(r)
    disc = _rational_sqrt(a * a - r * b * b)
    if disc is None:
        return None
    for p2 in ((a + disc) / 2, (a - disc) / 2):
        p = _rational_sqrt(p2)
        if p is not None and p != 0:
            q = b / (2 * p)
            if sp.expand((p + q * rad) ** 2 - c) == 0:
                return p + q * rad
    if b == 0:
        # purely radical square root: c = r*q^2 form
        q = _rational_sqrt(a / r)
        if q is not None:
            return q * rad
    return None


def _sign_normalize(h: RationalFunction) -> RationalFunction:
    lc = h.num.leading_coeff()
    if lc.is_Rational:
        negative = lc < 0
    else:
        rat = lc.subs([(n, 0) for n in lc.atoms(sp.Pow)])
        negative = rat < 0 if rat != 0 else sp.expand(lc - rat).could_extract_minus_sign()
    if negative:
        return RationalFunction(-h.num, h.den, reduce=False)
    return h


def is_perfect_square(g: RationalFunction):
    """Return h with h^2 = g when it exists, else None.

    g = N/D is a square iff N*D = c * s^2 with c a square constant of the
    coefficient field; then h = sqrt(c) * s / D, reduced.
    """
    if g.num.is_zero():
        return RationalFunction.from_poly(MultiPoly.zero(g.vars))
    prod = g.num * g.den
    const, factors = factor_list(prod)
    s = MultiPoly.const(g.vars, 1)
    for f, m in factors:
        if m % 2 == 1:
            return None
        s = s * f ** (m // 2)
    root_c = _field_sqrt(const)
    if root_c is None:
        return None
    h = RationalFunction(s.scale(root_c), g.den)
    return _sign_normalize(h)
