"""Dense univariate polynomial arithmetic over an arbitrary exact field.

A polynomial is a plain list of coefficients, lowest degree first, with the
top coefficient nonzero (the zero polynomial is the empty list).  The
coefficient type only needs exact field arithmetic through the usual
operators (+, -, *, /) and truthiness for the zero test.  This makes every
routine here work uniformly over the rationals (fractions.Fraction) and over
the number-field towers of :mod:`ratsqrt.numberfield`.

Monic-gcd, extended Euclid and squarefree part are the workhorses used by
the higher-level modules; factorization over the rationals is delegated to
sympy in :func:`factor_rational`.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp


def trim(p):
    """Drop trailing zero coefficients so the invariant lc != 0 holds."""
    while p and not p[-1]:
        p.pop()
    return p


def deg(p):
    return len(p) - 1  # -1 for the zero polynomial


def is_zero(p):
    return not p


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    if not c:
        return []
    return trim([a * c for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    # normalize plain-int zeros introduced above to field elements
    return trim([c if c else p[0] - p[0] for c in out])


def shift(p, k):
    """Multiply by x^k."""
    if not p:
        return []
    zero = p[0] - p[0]
    return [zero] * k + list(p)


def divmod_poly(p, q):
    """Exact field division with remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    trim(r)
    quo = []
    dq = deg(q)
    lc = q[-1]
    while deg(r) >= dq and r:
        c = r[-1] / lc
        k = deg(r) - dq
        quo.append((k, c))
        for i in range(len(q)):
            r[k + i] = r[k + i] - c * q[i]
        r.pop()  # leading term cancels exactly
        trim(r)
    if quo:
        zero = lc - lc
        out = [zero] * (max(k for k, _ in quo) + 1)
        for k, c in quo:
            out[k] = c
    else:
        out = []
    return trim(out), r


def rem(p, q):
    return divmod_poly(p, q)[1]


def monic(p):
    if not p:
        return []
    inv = 1 / p[-1] if isinstance(p[-1], Fraction) else p[-1].inverse()
    return [c * inv for c in p]


def gcd(p, q):
    """Monic greatest common divisor; gcd(0, 0) = 0 by convention."""
    a, b = list(p), list(q)
    trim(a)
    trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def gcdex(p, q):
    """Extended Euclid: returns (g, s, t) with s*p + t*q = g, g monic."""
    a, b = list(p), list(q)
    trim(a)
    trim(b)
    one_src = (a or b)
    if not one_src:
        return [], [], []
    zero = one_src[0] - one_src[0]
    one = one_src[-1] / one_src[-1]
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while b:
        quo, r = divmod_poly(a, b)
        a, b = b, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not a:
        return [], [], []
    lc = a[-1]
    inv = 1 / lc if isinstance(lc, Fraction) else lc.inverse()
    return scale(a, inv), scale(s0, inv), scale(t0, inv)


def derivative(p):
    if len(p) <= 1:
        return []
    return trim([p[i] * i for i in range(1, len(p))])


def radical(p):
    """Product of the distinct irreducible factors, made monic.

    Note this differs from the odd-multiplicity part used for radicand
    reduction: factors of even multiplicity do appear in the radical.
    """
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    if deg(p) == 0:
        return monic(p)
    g = gcd(p, derivative(p))
    quo, r = divmod_poly(p, g)
    assert not r
    return monic(quo)


def evaluate(p, x):
    """Horner evaluation at a field element x."""
    if not p:
        return x - x
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def valuation(p):
    """Order of vanishing at 0 (index of lowest nonzero coefficient)."""
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("valuation of the zero polynomial")


# --- rational-coefficient helpers backed by sympy ---------------------------

_T = sp.Symbol("_t")


def to_sympy(p):
    return sp.Poly.from_list(list(reversed([sp.Rational(c) for c in p])) or [0], _T)


def from_sympy(poly):
    return trim([Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())])


def factor_rational(p):
    """Factor a nonzero polynomial over the rationals.

    Returns (content, [(factor, multiplicity), ...]) where each factor is a
    monic coefficient list and content * prod(factor^mult) == p.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if deg(p) == 0:
        return p[0], []
    content, factors = to_sympy(p).factor_list()
    out = []
    cont = Fraction(content.p, content.q)
    for f, m in sorted(factors, key=lambda fm: (fm[0].degree(), fm[0].all_coeffs())):
        coeffs = from_sympy(f)
        lc = coeffs[-1]
        cont *= lc**m
        out.append(([c / lc for c in coeffs], m))
    return cont, out


def rational_roots(p):
    """All rational roots of p (without multiplicity), sorted."""
    _, factors = factor_rational(p)
    roots = []
    for f, _m in factors:
        if deg(f) == 1:
            roots.append(-f[0] / f[1])
    return sorted(set(roots))
