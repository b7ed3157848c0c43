"""Construction, composition, and verification of rationalizing maps."""

import pytest
import sympy as sp

from ratsqrt.errors import WrongMultiplicity
from ratsqrt.geometry import build_model, high_mult_point_search
from ratsqrt.mpoly import (
    MultiPoly,
    RationalMap,
    is_perfect_square,
    substitute,
)
from ratsqrt.parser import parse_poly, parse_rational
from ratsqrt.witness import (
    compose,
    homogeneous_lift,
    parametrize_from_point,
    point_on_quadric,
    projection_witness,
    quadric_witness,
    verify_witness,
)


class TestQuadricWitness:
    def test_unit_circle(self):
        f = parse_poly("1 - X^2", ("X",))
        res = quadric_witness(f)
        assert res is not None
        m, h = res
        assert h * h == substitute(f, m)

    def test_linear(self):
        f = parse_poly("X - 1", ("X",))
        res = quadric_witness(f)
        assert res is not None
        m, h = res
        assert verify_witness(m, f) is not None

    def test_bivariate_quadric(self):
        f = parse_poly("X*Y + 1", ("X", "Y"))
        res = quadric_witness(f)
        assert res is not None

    def test_extension_fallback(self):
        # X - 7 has no rational point with small height on w^2 = x - 7
        # unless the scan finds one; either way the witness must verify
        f = parse_poly("X - 7", ("X",))
        res = quadric_witness(f, height=3)
        assert res is not None
        m, _h = res
        assert verify_witness(m, f) is not None


class TestPointOnQuadric:
    def test_point_satisfies_equation(self):
        f = parse_poly("1 - X^2", ("X",))
        coords, ext = point_on_quadric(f)
        # coords = (1, x..., w) with w^2 = f(x)
        x = coords[1]
        w = coords[-1]
        assert sp.simplify(w * w - (1 - x * x)) == 0


class TestParametrize:
    def test_wrong_multiplicity_rejected(self):
        # centre not of multiplicity D-1 leaves higher powers of the line
        # parameter in the expansion
        V = build_model(parse_poly("X^4 + Y^4 + 1", ("X", "Y"))).V
        with pytest.raises(WrongMultiplicity):
            parametrize_from_point(V, [1, 0, 0, 0])

    def test_projection_from_node(self):
        f = parse_poly("X^2*(X + 1) - Y^2", ("X", "Y"))
        V = build_model(f).V
        pt, _c = high_mult_point_search(V, 10)
        assert pt is not None and pt.field is None
        m = projection_witness(V, pt)
        assert m is not None
        assert verify_witness(m, f) is not None


class TestVerify:
    def test_rejects_missing_assignment(self):
        f = parse_poly("X*Y + 1", ("X", "Y"))
        m = RationalMap(("X",), {"X": parse_rational("X^2", ("X",))})
        assert verify_witness(m, f) is None

    def test_rejects_constant_map(self):
        f = parse_poly("X - 1", ("X",))
        m = RationalMap(("X",), {"X": parse_rational("4", ("X",))})
        assert verify_witness(m, f) is None

    def test_rejects_non_square_image(self):
        f = parse_poly("X", ("X",))
        m = RationalMap(("X",), {"X": parse_rational("X^3", ("X",))})
        assert verify_witness(m, f) is None

    def test_accepts_square_image(self):
        f = parse_poly("X", ("X",))
        m = RationalMap(("X",), {"X": parse_rational("X^2", ("X",))})
        h = verify_witness(m, f)
        assert h is not None and h * h == substitute(f, m)


class TestCompose:
    def test_substitution_order(self):
        f = parse_poly("X - 2", ("X",))
        outer = RationalMap(("X",), {"X": parse_rational("X^2 + 1", ("X",))})
        inner = RationalMap(("X",), {"X": parse_rational("(X^2 + 1)/(2*X)", ("X",))})
        c = compose(outer, inner)
        lhs = substitute(f, c)
        step = substitute(f, outer)
        rhs_num = substitute(step.num, inner)
        rhs_den = substitute(step.den, inner)
        assert lhs == rhs_num / rhs_den

    def test_composite_rationalizes_both(self):
        # the standard two-step solution for {X-1, X-2}
        outer = RationalMap(("X",), {"X": parse_rational("X^2 + 1", ("X",))})
        inner = RationalMap(("X",), {"X": parse_rational("(X^2 + 1)/(2*X)", ("X",))})
        c = compose(outer, inner)
        for text in ("X - 1", "X - 2"):
            assert verify_witness(c, parse_poly(text, ("X",))) is not None


class TestHomogeneousLift:
    def test_lift_verifies(self):
        hom = parse_poly("X1^2 - X2^2", ("X1", "X2"))
        inner_f = parse_poly("X1^2 - 1", ("X1",))
        res = quadric_witness(inner_f)
        assert res is not None
        lifted = homogeneous_lift(res[0], hom, "X2")
        assert lifted is not None
        m, h = lifted
        assert h * h == substitute(hom, m)

    def test_lift_quartic(self):
        hom = parse_poly("X1^4 + X2^4 + X3^4", ("X1", "X2", "X3"))
        from ratsqrt.engine import decide

        v = decide(hom)
        assert v.outcome == "Rationalizable"
        if v.witness is not None:
            assert verify_witness(v.witness, hom) is not None
