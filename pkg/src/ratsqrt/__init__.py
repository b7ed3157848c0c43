"""Exact decision procedures for rationalizing square roots of rational
functions: verdicts with replayable certificates, verified rationalizing
substitutions, and plane-curve singularity analysis."""

from .alphabet import AlphabetVerdict, SubsetCertificate, decide_alphabet
from .engine import (
    INCONCLUSIVE,
    NOT_RATIONALIZABLE,
    RATIONALIZABLE,
    Config,
    Verdict,
    decide,
)
from .errors import RatsqrtError
from .mpoly import MultiPoly, RationalFunction, RationalMap
from .parser import infer_variables, load_alphabet, parse_poly, parse_rational

__version__ = "0.1.0"

__all__ = [
    "AlphabetVerdict",
    "Config",
    "INCONCLUSIVE",
    "MultiPoly",
    "NOT_RATIONALIZABLE",
    "RATIONALIZABLE",
    "RatsqrtError",
    "RationalFunction",
    "RationalMap",
    "SubsetCertificate",
    "Verdict",
    "decide",
    "decide_alphabet",
    "infer_variables",
    "load_alphabet",
    "parse_poly",
    "parse_rational",
    "__version__",
]
