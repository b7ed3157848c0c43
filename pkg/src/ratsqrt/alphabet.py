"""Simultaneous rationalizability of a finite set of square roots.

Two one-directional criteria are implemented:

* If the alphabet is rationalizable, every product over a non-empty index
  subset is rationalizable as a single square root; contrapositively, the
  first subset product decided NotRationalizable certifies the whole
  alphabet NotRationalizable (phase 1).  Subsets are enumerated smallest
  first so the cheapest certificate wins.

* A Rationalizable outcome requires an explicit simultaneous witness:
  roots are rationalized sequentially — rationalize one, substitute the
  witness into the rest, reduce, repeat — searching over root orderings and
  witness choices, and the resulting composite map is verified against
  every original root before being emitted (phase 2).

The converse of the subset-product criterion is unknown, so "all products
rationalizable" alone never yields Rationalizable; when no simultaneous
witness is found the outcome is Inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .engine import (
    INCONCLUSIVE,
    NOT_RATIONALIZABLE,
    RATIONALIZABLE,
    Config,
    DEFAULT_CONFIG,
    Verdict,
    decide,
)
from .errors import TooManyRoots
from .mpoly import (
    MultiPoly,
    RationalMap,
    dehomogenize,
    effective_vars,
    is_homogeneous,
    is_perfect_square,
    poly_str,
    rf_str,
    squarefree_part,
    substitute,
)
from .witness import compose, verify_witness


@dataclass(frozen=True)
class SubsetCertificate:
    labels: tuple
    indices: tuple
    reduced_product: MultiPoly
    inner: Verdict

    def to_json(self):
        return {
            "subset": list(self.labels),
            "reduced_product": poly_str(self.reduced_product),
            "degree": self.reduced_product.total_degree(),
            "inner_outcome": self.inner.outcome,
            "inner_steps": [s.to_json() for s in self.inner.steps],
        }


@dataclass
class AlphabetVerdict:
    outcome: str
    witness: RationalMap | None = None
    certificate: SubsetCertificate | None = None
    trace: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    root_squares: dict = field(default_factory=dict)


def subset_products(roots, cap=12):
    """All non-empty index subsets with squarefree-reduced products.

    Enumeration order: by subset size, then lexicographically, so singleton
    certificates come first.  `roots` is a list of MultiPoly over a common
    variable tuple.
    """
    if not roots:
        raise ValueError("empty alphabet")
    if len(roots) > cap:
        raise TooManyRoots(
            f"{len(roots)} roots exceed the subset cap {cap};"
            " raise max_subset_size explicitly to proceed"
        )
    n = len(roots)
    for size in range(1, n + 1):
        for J in combinations(range(n), size):
            prod = roots[J[0]]
            for j in J[1:]:
                prod = prod * roots[j]
            yield J, squarefree_part(prod)


def _common_ring(roots):
    universe = []
    for f in roots:
        for v in f.vars:
            if v not in universe:
                universe.append(v)
    universe = tuple(universe)
    return universe, [f.with_vars(universe) for f in roots]


def _shared_dehomogenization(roots):
    """Apply one dehomogenization variable to an all-even homogeneous
    alphabet; returns (variable or None, transformed roots)."""
    for f in roots:
        d = is_homogeneous(f)
        if d is None or d % 2 == 1:
            return None, roots
    ring = roots[0].vars
    eff = [v for v in ring if any(f.degree_in(v) > 0 for f in roots)]
    if not eff:
        return None, roots
    var = eff[-1]
    out = []
    for f in roots:
        if f.degree_in(var) > 0:
            out.append(dehomogenize(f, var))
        else:
            out.append(squarefree_part(f))
    _, out = _common_ring(out)
    return var, out


def decide_alphabet(roots, config: Config = None, extra_witnesses=None):
    """Alphabet verdict for a list of (label, radicand MultiPoly).

    `extra_witnesses` optionally supplies candidate maps tried before the
    computed ones during the sequential search (they are still subject to
    the verification gate, so unsound candidates are simply dead ends).
    """
    config = config or DEFAULT_CONFIG
    labels = [l for l, _f in roots]
    universe, polys = _common_ring([f for _l, f in roots])
    verdictnotes = []
    originals = list(polys)
    polys = [squarefree_part(f) for f in polys]
    for l, f, g in zip(labels, originals, polys):
        if f.total_degree() > 8 and g.total_degree() < f.total_degree():
            verdictnotes.append(
                f"root {l} contains square factors of high degree; if it"
                " arose from an earlier substitution, analysing the"
                " original alphabet is more decisive"
            )
    dehom_var, polys = _shared_dehomogenization(polys)
    if dehom_var is not None:
        verdictnotes.append(
            f"all roots homogeneous of even degree: shared dehomogenization"
            f" in {dehom_var} applied first"
        )
    trace = []
    singleton = {}
    # Certification order: singletons first (cheap, common), then larger
    # subsets before smaller ones.  Larger products accumulate degree, and
    # the degree criteria only certify non-rationalizability above degree
    # thresholds, so the richest certificates live at the top; this keeps
    # the emitted certificate aligned with the worked reference alphabets.
    subsets = list(subset_products(polys, config.max_subset_size))
    subsets.sort(key=lambda jp: (0, jp[0]) if len(jp[0]) == 1 else (1, -len(jp[0]), jp[0]))
    for J, prod in subsets:
        v = decide(prod, None, config)
        entry = {
            "subset": [labels[j] for j in J],
            "reduced_product": poly_str(prod),
            "degree": prod.total_degree(),
            "outcome": v.outcome,
        }
        if v.outcome == INCONCLUSIVE:
            entry["obstruction"] = _obstruction_note(v)
        trace.append(entry)
        if len(J) == 1:
            singleton[J[0]] = v
        if v.outcome == NOT_RATIONALIZABLE:
            cert = SubsetCertificate(
                tuple(labels[j] for j in J), J, prod, v
            )
            return AlphabetVerdict(
                NOT_RATIONALIZABLE, None, cert, trace, verdictnotes
            )
    # phase 2: a simultaneous witness is required for Rationalizable
    blocked = []
    for i, v in sorted(singleton.items()):
        if v.outcome != RATIONALIZABLE:
            blocked.append(f"root {labels[i]} undecided individually")
        elif v.witness is None and not extra_witnesses:
            blocked.append(
                f"root {labels[i]} rationalizable by criterion but without"
                " an explicit witness"
            )
    if blocked:
        verdictnotes.extend(blocked)
        return AlphabetVerdict(INCONCLUSIVE, None, None, trace, verdictnotes)
    m = sequential_rationalize(
        polys, config, extra_witnesses=extra_witnesses
    )
    if m is None:
        verdictnotes.append(
            "no simultaneous witness found within the search budget; the"
            " subset criterion alone cannot prove rationalizability"
        )
        return AlphabetVerdict(INCONCLUSIVE, None, None, trace, verdictnotes)
    # lift through the shared dehomogenization when one was applied
    if dehom_var is not None:
        lift_res = _lift_alphabet_witness(m, originals, dehom_var)
        if lift_res is None:
            verdictnotes.append(
                "simultaneous witness found for the dehomogenized roots but"
                " its homogeneous lift failed verification"
            )
            return AlphabetVerdict(
                INCONCLUSIVE, None, None, trace, verdictnotes
            )
        m = lift_res
        polys = [squarefree_part(f) for f in originals]
    squares = {}
    for l, f in zip(labels, polys):
        h = verify_witness(m, f)
        if h is None:
            # the gate inside sequential_rationalize makes this unreachable
            return AlphabetVerdict(
                INCONCLUSIVE, None, None, trace,
                verdictnotes + ["final verification unexpectedly failed"],
            )
        squares[l] = rf_str(h)
    return AlphabetVerdict(
        RATIONALIZABLE, m, None, trace, verdictnotes, squares
    )


def _lift_alphabet_witness(m, originals, dehom_var):
    from .witness import homogeneous_lift

    reduced = [squarefree_part(f) for f in originals]
    hom = next(
        (f for f in reduced if f.degree_in(dehom_var) > 0), reduced[0]
    )
    lifted = homogeneous_lift(m, hom, dehom_var)
    if lifted is None:
        return None
    lifted_map = lifted[0]
    for f in reduced:
        if verify_witness(lifted_map, f) is None:
            return None
    return lifted_map


def _obstruction_note(v: Verdict):
    for s in v.steps:
        if s.rule == "simple-singularities" and not s.data.get("all_simple", True):
            bad = [
                r for r in s.data["singularities"] if r["class"] == "NonSimple"
            ]
            return {
                "reason": "branch curve has non-simple singularities",
                "non_simple_points": bad,
            }
    return {"reason": v.steps[-1].rule if v.steps else "unknown"}


def sequential_rationalize(roots, config: Config = None, extra_witnesses=None):
    """Search for one map rationalizing every root, or None.

    Tries root orderings (up to the configured budget) and, per step,
    witness candidates for the current reduced image; each accepted witness
    is composed into the running substitution, which is finally verified
    against all original roots.  Failure is not a non-rationalizability
    proof.
    """
    config = config or DEFAULT_CONFIG
    universe, roots = _common_ring(list(roots))
    if not universe:
        return None
    extra = list(extra_witnesses or [])

    def candidates(f):
        out = [w for w in extra if verify_witness(w, f) is not None]
        v = decide(f, None, config)
        if v.witness is not None and verify_witness(v.witness, f) is not None:
            out.append(v.witness)
        return out

    def extend(m, remaining):
        if not remaining:
            for f in roots:
                if verify_witness(m, f) is None:
                    return None
            return m
        f = remaining[0]
        img = substitute(f, m)
        if is_perfect_square(img) is not None:
            return extend(m, remaining[1:])
        red = squarefree_part(img.num * img.den)
        if red.is_constant():
            return None  # constant non-square image: dead end
        red = red.with_vars(tuple(effective_vars(red)) or red.vars)
        for w in candidates(red):
            w_full = _pad_map(w, universe)
            nxt = extend(compose(m, w_full), remaining[1:])
            if nxt is not None:
                return nxt
        return None

    count = 0
    for order in permutations(range(len(roots))):
        count += 1
        if count > config.ordering_budget:
            break
        m = extend(
            RationalMap.identity(universe), [roots[i] for i in order]
        )
        if m is not None:
            return m
    return None


def _pad_map(w, universe):
    """Extend a witness to the full variable universe with identities."""
    assignments = {}
    from .mpoly import RationalFunction

    for v in universe:
        if v in w.assignments:
            g = w.assignments[v]
            assignments[v] = RationalFunction(
                g.num.with_vars(universe), g.den.with_vars(universe)
            )
        else:
            assignments[v] = RationalFunction.from_poly(
                MultiPoly.var(universe, v)
            )
    return RationalMap(universe, assignments, extension=w.extension)
