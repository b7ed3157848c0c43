"""Decision cascade for the rationalizability of a single square root.

Given sqrt(p/q), the radicand is first replaced by the squarefree
(odd-multiplicity) part f of p*q, which preserves the verdict in both
directions.  The criteria are then applied in a fixed order:

1. constant radicand -> rationalizable trivially;
2. unused variables dropped;
3. degree <= 2 -> rationalizable, with a quadric-parametrization witness;
4. even-degree homogeneous -> dehomogenize and recurse (witness lifted back);
5. one variable -> rationalizable iff degree <= 2 (so: not rationalizable);
6. two variables, degree 3 -> rationalizable iff the projective cubic has
   no multiplicity-3 point;
7. two variables, other degree -> if every singularity of the branch curve
   of the double cover is simple (ADE), rationalizable iff degree <= 4;
8. a point of multiplicity D-1 on the hypersurface closure of W^2 = f
   -> rationalizable by projection from that point;
9. otherwise Inconclusive.

Every step is recorded in a replayable certificate; resource or tower
limits surface as Inconclusive with an explanatory step, never as a wrong
verdict.  An emitted witness always passes symbolic verification first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import (
    RatsqrtError,
    ResourceLimit,
    TowerTooDeep,
    ZeroRadicand,
)
from .geometry import (
    all_simple,
    build_model,
    high_mult_point_search,
    milnor_sum,
    triple_point_of_cubic,
)
from .mpoly import (
    MultiPoly,
    RationalMap,
    dehomogenize,
    effective_vars,
    is_homogeneous,
    poly_str,
    radicand_reduce,
    rf_str,
)
from .witness import (
    homogeneous_lift,
    projection_witness,
    quadric_witness,
    verify_witness,
)

RATIONALIZABLE = "Rationalizable"
NOT_RATIONALIZABLE = "NotRationalizable"
INCONCLUSIVE = "Inconclusive"

RULE_REFS = {
    "radicand-reduction": "square factors under the root are irrelevant: the"
    " radicand is replaced by the odd-multiplicity part of numerator times"
    " denominator",
    "constant-radicand": "a constant radicand is a square over the"
    " algebraically closed constant field",
    "effective-variables": "variables that do not occur in the reduced"
    " radicand are dropped before analysis",
    "degree-at-most-2": "for degree at most 2 the quadric W^2 = f is a"
    " rational hypersurface; projection from a regular point gives a"
    " rationalizing substitution",
    "homogeneous-reduction": "an even-degree homogeneous radicand is"
    " rationalizable exactly when its dehomogenization in one fewer"
    " variable is",
    "univariate-degree": "with one variable, the square root is"
    " rationalizable exactly when the squarefree radicand has degree at"
    " most 2",
    "cubic-triple-point": "for a bivariate cubic the square root is"
    " rationalizable exactly when the projective cubic has no point of"
    " multiplicity 3",
    "simple-singularities": "when every singularity of the branch curve of"
    " the double cover is simple (ADE), the square root is rationalizable"
    " exactly when the degree is at most 4",
    "high-multiplicity-point": "a point of multiplicity D-1 on the"
    " degree-D hypersurface closure of W^2 = f makes the hypersurface"
    " rational via projection, so the square root is rationalizable",
    "inconclusive": "no implemented criterion decides this radicand; absence"
    " of a multiplicity-(D-1) point is not a proof of non-rationalizability",
    "resource-limit": "a resource limit was reached before any criterion"
    " could decide; the outcome is reported as Inconclusive",
}


@dataclass(frozen=True)
class Step:
    rule: str
    data: dict

    @property
    def ref(self):
        return RULE_REFS[self.rule]

    def to_json(self):
        return {"rule": self.rule, "paper_ref": self.ref, "data": self.data}


@dataclass
class Verdict:
    outcome: str
    witness: RationalMap | None = None
    witness_sqrt: object | None = None
    steps: list = field(default_factory=list)
    singularities: list | None = None
    timings: dict = field(default_factory=dict)


@dataclass
class Config:
    max_height: int = 50
    max_subset_size: int = 12
    ordering_budget: int = 24
    timeout: float = 30.0
    threads: int = 1

    def to_json(self):
        return {
            "max_height": self.max_height,
            "max_subset_size": self.max_subset_size,
            "ordering_budget": self.ordering_budget,
            "timeout": self.timeout,
            "threads": self.threads,
        }


DEFAULT_CONFIG = Config()


class _RuleClock:
    """Soft per-rule timing: records durations and raises ResourceLimit when
    a completed rule exceeded the configured budget."""

    def __init__(self, timeout, timings):
        self.timeout = timeout
        self.timings = timings

    def run(self, rule, fn):
        t0 = time.monotonic()
        try:
            return fn()
        finally:
            dt = time.monotonic() - t0
            self.timings[rule] = self.timings.get(rule, 0.0) + dt
            if self.timeout and dt > self.timeout:
                raise ResourceLimit(f"rule '{rule}' exceeded {self.timeout}s")


def decide(p: MultiPoly, q: MultiPoly | None = None, config: Config = None) -> Verdict:
    """Verdict for sqrt(p/q) (q omitted means denominator 1)."""
    config = config or DEFAULT_CONFIG
    steps = []
    timings = {}
    clock = _RuleClock(config.timeout, timings)
    if q is None:
        q = MultiPoly.const(p.vars, 1)
    if p.is_zero():
        ident = RationalMap.identity(p.vars) if p.vars else None
        steps.append(Step("radicand-reduction", {"reduced": "0", "note":
                                                 "sqrt(0) = 0 is rational"}))
        from .mpoly import RationalFunction
        h = RationalFunction.from_poly(MultiPoly.zero(p.vars)) if p.vars else None
        return Verdict(RATIONALIZABLE, ident, h, steps, None, timings)
    try:
        f = clock.run("radicand-reduction", lambda: radicand_reduce(p, q))
    except ZeroRadicand:
        raise
    steps.append(
        Step(
            "radicand-reduction",
            {"input": f"({poly_str(p)})/({poly_str(q)})", "reduced": poly_str(f),
             "degree": f.total_degree()},
        )
    )
    try:
        return _decide_reduced(f, steps, clock, config, timings)
    except (ResourceLimit, TowerTooDeep) as e:
        steps.append(Step("resource-limit", {"detail": str(e)}))
        return Verdict(INCONCLUSIVE, None, None, steps, None, timings)


def _decide_reduced(f, steps, clock, config, timings):
    # rule 1: constant radicand
    if f.is_constant():
        steps.append(Step("constant-radicand", {"value": str(f.constant_value())}))
        m, h = _identity_witness(f)
        return Verdict(RATIONALIZABLE, m, h, steps, None, timings)
    # rule 2: effective variables
    eff = effective_vars(f)
    if tuple(eff) != f.vars:
        steps.append(Step("effective-variables", {"kept": eff}))
        f = f.with_vars(tuple(eff))
    d = f.total_degree()
    # rule 3: degree <= 2
    if d <= 2:
        res = clock.run("degree-at-most-2",
                        lambda: quadric_witness(f, config.max_height))
        data = {"degree": d}
        m = h = None
        if res is not None:
            m, h = res
            data["witness"] = m.to_json()
            data["square_root"] = rf_str(h)
        steps.append(Step("degree-at-most-2", data))
        return Verdict(RATIONALIZABLE, m, h, steps, None, timings)
    # rule 4: even-degree homogeneous reduction
    if is_homogeneous(f) == d and d % 2 == 0:
        var = eff[-1]
        g = clock.run("homogeneous-reduction", lambda: dehomogenize(f, var))
        steps.append(
            Step(
                "homogeneous-reduction",
                {"variable": var, "dehomogenized": poly_str(g),
                 "degree": g.total_degree()},
            )
        )
        inner = _decide_reduced(g, steps, clock, config, timings)
        if inner.outcome == RATIONALIZABLE and inner.witness is not None:
            lifted = clock.run(
                "homogeneous-reduction",
                lambda: homogeneous_lift(inner.witness, f, var),
            )
            if lifted is not None:
                inner.witness, inner.witness_sqrt = lifted
            else:
                inner.witness = inner.witness_sqrt = None
        elif inner.outcome == RATIONALIZABLE:
            inner.witness = inner.witness_sqrt = None
        return inner
    # rule 5: univariate
    if len(eff) == 1:
        steps.append(Step("univariate-degree", {"degree": d}))
        return Verdict(NOT_RATIONALIZABLE, None, None, steps, None, timings)
    model = clock.run("build-model", lambda: build_model(f)) if len(eff) == 2 else None
    # rule 6: bivariate cubic
    if len(eff) == 2 and d == 3:
        F = model.F
        tp = clock.run("cubic-triple-point", lambda: triple_point_of_cubic(F))
        if tp is not None:
            steps.append(
                Step("cubic-triple-point",
                     {"triple_point": tp.to_json(), "decides": "not rationalizable"})
            )
            return Verdict(NOT_RATIONALIZABLE, None, None, steps, None, timings)
        m, h, pdata = _projection_attempt(model, f, clock, config)
        data = {"triple_point": None, "decides": "rationalizable"}
        data.update(pdata)
        steps.append(Step("cubic-triple-point", data))
        return Verdict(RATIONALIZABLE, m, h, steps, None, timings)
    # rule 7: bivariate, all-simple branch curve
    records = None
    if len(eff) == 2:
        ok, records = clock.run("simple-singularities", lambda: all_simple(model))
        data = {
            "degree": d,
            "branch_degree": model.B.total_degree(),
            "all_simple": ok,
            "milnor_sum": milnor_sum(records),
            "singularities": [r.to_json() for r in records],
        }
        if ok:
            outcome = RATIONALIZABLE if d <= 4 else NOT_RATIONALIZABLE
            m = h = None
            if outcome == RATIONALIZABLE:
                m, h, pdata = _projection_attempt(model, f, clock, config)
                data.update(pdata)
            steps.append(Step("simple-singularities", data))
            return Verdict(outcome, m, h, steps, records, timings)
        steps.append(Step("simple-singularities", data))
    # rule 8: high-multiplicity point on the hypersurface closure
    if len(eff) == 2:
        V = model.V
    else:
        V = build_model(f).V
    pt, certified = clock.run(
        "high-multiplicity-point", lambda: high_mult_point_search(V, config.max_height)
    )
    if pt is not None:
        data = {"point": pt.to_json(), "hypersurface_degree": V.total_degree()}
        m = h = None
        if pt.field is None:
            m = projection_witness(V, pt)
            if m is not None:
                h = verify_witness(m, f)
                if h is None:
                    m = None
            if m is not None:
                data["witness"] = m.to_json()
                data["square_root"] = rf_str(h)
        steps.append(Step("high-multiplicity-point", data))
        return Verdict(RATIONALIZABLE, m, h, steps, records, timings)
    # rule 9: inconclusive
    steps.append(
        Step(
            "inconclusive",
            {"high_mult_search_certified_empty": certified,
             "hypersurface_degree": V.total_degree()},
        )
    )
    return Verdict(INCONCLUSIVE, None, None, steps, records, timings)


def _identity_witness(f):
    """Identity witness for a constant radicand, when it verifies."""
    if not f.vars:
        return None, None
    m = RationalMap.identity(f.vars)
    h = verify_witness(m, f)
    if h is None:
        return None, None
    return m, h


def _projection_attempt(model, f, clock, config):
    """Try to realize rationalizability by an explicit projection witness."""
    pt, _cert = clock.run(
        "high-multiplicity-point",
        lambda: high_mult_point_search(model.V, config.max_height),
    )
    if pt is None:
        return None, None, {"witness": None, "note": "existence by criterion;"
                            " no projection centre found"}
    if pt.field is not None:
        return None, None, {"witness": None, "note": "projection centre is"
                            " not rational; witness omitted"}
    m = projection_witness(model.V, pt)
    if m is None:
        return None, None, {"witness": None, "note": "projection degenerated"}
    h = verify_witness(m, f)
    if h is None:
        return None, None, {"witness": None, "note": "candidate failed"
                            " verification and was discarded"}
    return m, h, {"witness": m.to_json(), "square_root": rf_str(h),
                  "projection_centre": pt.to_json()}


def decide_univariate(f: MultiPoly, config: Config = None) -> Verdict:
    """Verdict for a squarefree radicand in one effective variable."""
    if len(effective_vars(f)) != 1:
        raise ValueError("decide_univariate expects one effective variable")
    return decide(f, None, config)


def decide_bivariate(f: MultiPoly, config: Config = None) -> Verdict:
    """Verdict for a squarefree radicand in two effective variables."""
    if len(effective_vars(f)) != 2:
        raise ValueError("decide_bivariate expects two effective variables")
    return decide(f, None, config)
