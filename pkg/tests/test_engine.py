"""Decision cascade for single square roots."""

import pytest

from ratsqrt.engine import (
    INCONCLUSIVE,
    NOT_RATIONALIZABLE,
    RATIONALIZABLE,
    RULE_REFS,
    Config,
    decide,
)
from ratsqrt.errors import ZeroDenominator
from ratsqrt.mpoly import MultiPoly, substitute
from ratsqrt.parser import parse_poly, parse_rational
from ratsqrt.witness import verify_witness


def rules(v):
    return [s.rule for s in v.steps]


def assert_witness_ok(v, p, q=None):
    assert v.witness is not None
    g = substitute(p, v.witness)
    if q is not None:
        g = g / substitute(q, v.witness)
    from ratsqrt.mpoly import is_perfect_square

    assert is_perfect_square(g) is not None


class TestReduction:
    def test_constant_radicand(self):
        v = decide(parse_poly("4", ("X",)))
        assert v.outcome == RATIONALIZABLE
        assert "constant-radicand" in rules(v)

    def test_zero_radicand(self):
        v = decide(MultiPoly.zero(("X",)))
        assert v.outcome == RATIONALIZABLE

    def test_square_multiple_reduces_to_constant(self):
        v = decide(parse_poly("(X + 1)^2", ("X",)))
        assert v.outcome == RATIONALIZABLE
        assert "constant-radicand" in rules(v)

    def test_effective_variable_pruning(self):
        v = decide(parse_poly("X^2 + 1", ("X", "Y", "Z")))
        assert "effective-variables" in rules(v)
        assert v.outcome == RATIONALIZABLE

    def test_denominator_contributes(self):
        # sqrt((1-X)/(1+X)) reduces to sqrt(1 - X^2) up to a square
        p = parse_poly("1 - X", ("X",))
        q = parse_poly("1 + X", ("X",))
        v = decide(p, q)
        assert v.outcome == RATIONALIZABLE
        assert_witness_ok(v, p, q)


class TestUnivariate:
    def test_degree_one(self):
        p = parse_poly("X - 1", ("X",))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE
        assert_witness_ok(v, p)

    def test_degree_two(self):
        p = parse_poly("1 - X^2", ("X",))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE
        assert_witness_ok(v, p)

    def test_degree_three_not(self):
        v = decide(parse_poly("1 - X^3", ("X",)))
        assert v.outcome == NOT_RATIONALIZABLE
        assert rules(v)[-1] == "univariate-degree"

    def test_degree_four_not(self):
        v = decide(parse_poly("X^4 + 1", ("X",)))
        assert v.outcome == NOT_RATIONALIZABLE

    def test_three_odd_roots_not(self):
        # (1 + 4X) X (X - 4): three zeros of odd multiplicity
        v = decide(parse_poly("(1 + 4*X)*X*(X - 4)", ("X",)))
        assert v.outcome == NOT_RATIONALIZABLE


class TestHomogeneous:
    def test_fermat_two_vars(self):
        v = decide(parse_poly("X1^4 + X2^4", ("X1", "X2")))
        assert v.outcome == NOT_RATIONALIZABLE
        assert "homogeneous-reduction" in rules(v)
        assert "univariate-degree" in rules(v)

    def test_fermat_three_vars(self):
        p = parse_poly("X1^4 + X2^4 + X3^4", ("X1", "X2", "X3"))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE
        assert "homogeneous-reduction" in rules(v)
        if v.witness is not None:
            assert verify_witness(v.witness, p) is not None

    def test_quadratic_homogeneous_uses_quadric(self):
        p = parse_poly("X1^2 - X2^2", ("X1", "X2"))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE
        assert_witness_ok(v, p)


class TestBivariate:
    def test_cubic_with_triple_point(self):
        v = decide(parse_poly("X*Y*(X + Y)", ("X", "Y")))
        assert v.outcome == NOT_RATIONALIZABLE
        assert rules(v)[-1] == "cubic-triple-point"

    def test_cubic_without_triple_point(self):
        p = parse_poly("X^2*(X + 1) - Y^2", ("X", "Y"))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE
        assert_witness_ok(v, p)

    def test_bhabha_not_rationalizable(self):
        p = parse_poly("(X + Y)*(1 + X*Y)", ("X", "Y"))
        q = parse_poly("X + Y - 4*X*Y + X^2*Y + X*Y^2", ("X", "Y"))
        v = decide(p, q)
        assert v.outcome == NOT_RATIONALIZABLE
        terminal = v.steps[-1]
        assert terminal.rule == "simple-singularities"
        assert terminal.data["all_simple"] is True
        assert terminal.data["degree"] == 6
        assert v.singularities is not None

    def test_quartic_all_simple_rationalizable(self):
        # degree-4 bivariate with only simple singularities
        p = parse_poly("(X^2 - 1)*(Y^2 - 1)", ("X", "Y"))
        v = decide(p)
        assert v.outcome == RATIONALIZABLE

    def test_nonsimple_falls_through(self):
        # X^4 + Y^4: multiplicity-4 branch point; the degree criterion does
        # not apply and no multiplicity-3 point exists on the closure
        v = decide(parse_poly("X^4 + Y^4 + X^2", ("X", "Y")))
        assert v.outcome in (RATIONALIZABLE, INCONCLUSIVE)


class TestCertificates:
    def test_steps_have_known_rules(self):
        for text in ("1 - X^2", "1 - X^3", "X1^4 + X2^4"):
            v = decide(parse_poly(text))
            for s in v.steps:
                assert s.rule in RULE_REFS
                assert isinstance(s.to_json()["paper_ref"], str)

    def test_timings_recorded(self):
        v = decide(parse_poly("1 - X^2", ("X",)))
        assert "radicand-reduction" in v.timings

    def test_witness_always_verified_when_present(self):
        for text in ("X - 7", "X*(X - 4)", "X*Y + 1", "1 - X^2"):
            p = parse_poly(text)
            v = decide(p)
            if v.witness is not None:
                assert verify_witness(v.witness, p) is not None

    def test_config_respected(self):
        v = decide(parse_poly("1 - X^2", ("X",)), config=Config(max_height=5))
        assert v.outcome == RATIONALIZABLE


class TestInconclusive:
    def test_drell_yan_products(self):
        # degree-6 product with a non-simple branch point: the implemented
        # criteria cannot decide it and must say so
        f2 = parse_poly("-X1*X2*(4*X3*(X3 + X2) - X1*X2)", ("X1", "X2", "X3"))
        f3 = parse_poly(
            "X1*(X2^2*(X1 - 4*X3) + X3*X1*(X3 - 2*X2))", ("X1", "X2", "X3")
        )
        v = decide(f2 * f3)
        assert v.outcome == INCONCLUSIVE
        assert rules(v)[-1] == "inconclusive"
        assert any(
            s.rule == "simple-singularities" and not s.data["all_simple"]
            for s in v.steps
        )
