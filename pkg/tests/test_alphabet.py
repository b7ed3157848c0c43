"""Simultaneous rationalizability of root sets."""

import pytest

from ratsqrt.alphabet import (
    decide_alphabet,
    sequential_rationalize,
    subset_products,
)
from ratsqrt.engine import (
    INCONCLUSIVE,
    NOT_RATIONALIZABLE,
    RATIONALIZABLE,
    Config,
)
from ratsqrt.errors import TooManyRoots
from ratsqrt.mpoly import RationalMap, is_squarefree
from ratsqrt.parser import parse_poly, parse_rational
from ratsqrt.witness import verify_witness


def roots(*texts, vs=("X",)):
    return [(f"f{i+1}", parse_poly(t, vs)) for i, t in enumerate(texts)]


HIGGS = roots("X", "1 + 4*X", "X*(X - 4)")
PAIR = roots("X - 1", "X - 2")
DIJET = roots(
    "X + 1", "X - 1", "Y + 1", "X + Y + 1", "16*X + (4 + Y)^2",
    vs=("X", "Y"),
)


class TestSubsetProducts:
    def test_count_and_reduction(self):
        polys = [f for _l, f in HIGGS]
        out = list(subset_products(polys))
        assert len(out) == 7
        for _J, prod in out:
            assert is_squarefree(prod)

    def test_enumeration_order(self):
        polys = [f for _l, f in HIGGS]
        sizes = [len(J) for J, _p in subset_products(polys)]
        assert sizes == sorted(sizes)
        singles = [J for J, _p in subset_products(polys) if len(J) == 1]
        assert singles == [(0,), (1,), (2,)]

    def test_singletons_reproduce_inputs(self):
        polys = [f for _l, f in PAIR]
        for J, prod in subset_products(polys):
            if len(J) == 1:
                assert prod.monic() == polys[J[0]].monic()

    def test_cap_enforced(self):
        polys = [parse_poly(f"X - {k}", ("X",)) for k in range(13)]
        with pytest.raises(TooManyRoots):
            list(subset_products(polys))
        small = [parse_poly(f"X - {k}", ("X",)) for k in range(5)]
        assert len(list(subset_products(small, cap=5))) == 2 ** 5 - 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            list(subset_products([]))


class TestDecideAlphabet:
    def test_higgs_certificate(self):
        v = decide_alphabet(HIGGS)
        assert v.outcome == NOT_RATIONALIZABLE
        c = v.certificate
        assert c is not None
        assert c.reduced_product.total_degree() == 3
        assert len(c.reduced_product.vars) == 1 or len(
            [x for x in c.reduced_product.vars if c.reduced_product.degree_in(x)]
        ) == 1
        assert c.inner.outcome == NOT_RATIONALIZABLE

    def test_pair_composite_witness(self):
        v = decide_alphabet(PAIR)
        assert v.outcome == RATIONALIZABLE
        assert v.witness is not None
        for _l, f in PAIR:
            assert verify_witness(v.witness, f) is not None
        assert set(v.root_squares) == {"f1", "f2"}

    def test_dijet_full_subset_certificate(self):
        v = decide_alphabet(DIJET)
        assert v.outcome == NOT_RATIONALIZABLE
        assert v.certificate.reduced_product.total_degree() == 6
        # the inner verdict rests on the all-simple degree criterion
        assert any(
            s.rule == "simple-singularities" and s.data["all_simple"]
            for s in v.certificate.inner.steps
        )

    def test_drell_yan_inconclusive_with_trace(self):
        dy = roots(
            "X1*(X1 - 4*X3)",
            "-X1*X2*(4*X3*(X3 + X2) - X1*X2)",
            "X1*(X2^2*(X1 - 4*X3) + X3*X1*(X3 - 2*X2))",
            vs=("X1", "X2", "X3"),
        )
        v = decide_alphabet(dy)
        assert v.outcome == INCONCLUSIVE
        assert any(n.startswith("all roots homogeneous") for n in v.notes)
        blocked = [e for e in v.trace if e["outcome"] == INCONCLUSIVE]
        assert {e["degree"] for e in blocked} == {6, 8}
        for e in blocked:
            assert e["obstruction"]["reason"].startswith("branch curve")

    def test_monotonicity_superset_stays_not_rationalizable(self):
        bigger = HIGGS + roots("X + 9")[:1]
        bigger = HIGGS + [("g1", parse_poly("X + 9", ("X",)))]
        v = decide_alphabet(bigger)
        assert v.outcome == NOT_RATIONALIZABLE

    def test_singleton_alphabet(self):
        v = decide_alphabet(roots("X - 1"))
        assert v.outcome == RATIONALIZABLE
        assert v.witness is not None

    def test_permutation_invariant_outcome(self):
        import itertools

        for perm in itertools.permutations(PAIR):
            assert decide_alphabet(list(perm)).outcome == RATIONALIZABLE
        for perm in itertools.permutations(HIGGS):
            assert decide_alphabet(list(perm)).outcome == NOT_RATIONALIZABLE


class TestSequentialSearch:
    def test_pair_solution_verifies(self):
        polys = [f for _l, f in PAIR]
        m = sequential_rationalize(polys)
        assert m is not None
        for f in polys:
            assert verify_witness(m, f) is not None

    def test_dead_end_recovery(self):
        # X -> X^4 + 1 rationalizes X - 1 but turns X - 2 into the
        # non-rationalizable X^4 - 1; the search must backtrack past it
        bad = RationalMap(("X",), {"X": parse_rational("X^4 + 1", ("X",))})
        polys = [f for _l, f in PAIR]
        assert verify_witness(bad, polys[0]) is not None
        assert verify_witness(bad, polys[1]) is None
        m = sequential_rationalize(polys, extra_witnesses=[bad])
        assert m is not None
        for f in polys:
            assert verify_witness(m, f) is not None

    def test_single_root(self):
        m = sequential_rationalize([parse_poly("X - 1", ("X",))])
        assert m is not None

    def test_failure_is_none_not_a_proof(self):
        # roots that are individually fine but given no ordering budget
        polys = [f for _l, f in PAIR]
        cfg = Config()
        cfg.ordering_budget = 0
        assert sequential_rationalize(polys, cfg) is None
