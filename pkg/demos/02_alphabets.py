"""Deciding whole collections of square roots at once.

A set of roots is simultaneously rationalizable only if every product of a
subset of the radicands is; a single non-rationalizable subset product is a
certificate of impossibility.  When no certificate turns up, the engine
searches for one substitution that makes every radicand a square at once.

Run with:  python demos/02_alphabets.py
"""

import json
from importlib import resources

from ratsqrt import decide_alphabet, load_alphabet
from ratsqrt.mpoly import rf_str


def load(name):
    text = resources.files("ratsqrt.data").joinpath(name).read_text()
    return load_alphabet(text)


def show(title, v):
    print(f"\n=== {title} ===")
    print(f"outcome: {v.outcome}")
    if v.certificate is not None:
        c = v.certificate
        print(f"  certificate subset: {', '.join(c.labels)}")
        print(f"  reduced product degree: {c.reduced_product.total_degree()}")
        print(f"  inner verdict rule: {c.inner.steps[-1].rule}")
    if v.witness is not None:
        for var, g in sorted(v.witness.assignments.items()):
            print(f"  witness: {var} -> {rf_str(g)}")
        for label, sq in sorted(v.root_squares.items()):
            print(f"  sqrt({label}) image: {sq}")
    for note in v.notes:
        print(f"  note: {note}")


# three roots from the two-loop mixed QCD-EW Higgs corrections: the product
# of the last two radicands is a squarefree degree-3 univariate polynomial,
# which can never be rationalized -- an immediate certificate
_vars, roots = load("higgs.json")
show("Higgs alphabet (3 roots, 1 variable)", decide_alphabet(roots))

# five roots from single-top production: here the certificate is the full
# product, a degree-6 curve with only simple singularities
_vars, roots = load("dijet.json")
show("di-jet alphabet (5 roots, 2 variables)", decide_alphabet(roots))

# three homogeneous roots from mixed QCD-EW Drell-Yan: every subset product
# that is not obviously rationalizable lands outside the implemented
# criteria, so the honest answer is Inconclusive -- with the obstruction
# (non-simple singularities on the branch curve) recorded per subset
_vars, roots = load("drellyan.json")
v = decide_alphabet(roots)
show("Drell-Yan alphabet (3 roots, 3 variables)", v)
for entry in v.trace:
    if entry["outcome"] == "Inconclusive":
        print(f"  blocked: {entry['subset']} degree {entry['degree']}"
              f" -- {entry['obstruction']['reason']}")

# a pair where no certificate exists and a composite witness does: the
# engine rationalizes sqrt(X-1), pushes the second root through that
# substitution, rationalizes the image, and composes
_vars, roots = load("pair.json")
show("{sqrt(X-1), sqrt(X-2)} (simultaneous witness)", decide_alphabet(roots))
