"""Command-line interface.

Subcommands:
  analyze EXPR        decide rationalizability of one square root
  alphabet INPUT...   decide a set of roots (JSON document or expressions)
  singularities EXPR  branch-curve singularity table for a bivariate radicand
  corpus              run the bundled example corpus against expectations

Exit codes: 0 success (including Inconclusive outcomes), 2 parse or schema
error, 3 resource exhaustion, 4 radicand not bivariate after reduction
(singularities only), 5 corpus expectation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .alphabet import decide_alphabet
from .engine import Config, decide
from .errors import (
    ParseSyntaxError,
    RatsqrtError,
    ResourceLimit,
    SchemaError,
    TooManyRoots,
    ZeroDenominator,
    ZeroRadicand,
)
from .geometry import all_simple, build_model
from .mpoly import effective_vars, poly_str, rf_str, squarefree_part
from .parser import load_alphabet, parse_poly, parse_rational
from .report import (
    alphabet_report,
    dumps,
    singularity_report,
    verdict_report,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_NOT_BIVARIATE = 4
EXIT_CORPUS_MISMATCH = 5


def _add_common(p):
    p.add_argument("--vars", help="comma-separated variable order")
    p.add_argument("--json", metavar="PATH", help="write the JSON report")
    p.add_argument("--witness", action="store_true", help="print the witness")
    p.add_argument("--trace", action="store_true", help="print certificate steps")
    p.add_argument("--max-height", type=int, default=50, metavar="N",
                   help="rational point-scan height bound")
    p.add_argument("--max-subset-size", type=int, default=12, metavar="K",
                   help="alphabet size cap for subset enumeration")
    p.add_argument("--timeout", type=float, default=30.0, metavar="SECONDS",
                   help="per-rule soft time budget")
    p.add_argument("--threads", type=int, default=1, metavar="N",
                   help="worker threads (1 keeps runs deterministic)")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="ratsqrt",
        description="decide whether square roots of rational functions admit"
        " rationalizing substitutions",
    )
    ap.add_argument("--version", action="version", version=f"ratsqrt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide one square root")
    p.add_argument("expr", help="radicand p/q as an expression")
    _add_common(p)

    p = sub.add_parser("alphabet", help="decide a set of square roots")
    p.add_argument("input", nargs="+",
                   help="path to an alphabet JSON document, or radicand"
                   " expressions (one per root)")
    _add_common(p)

    p = sub.add_parser("singularities",
                       help="singularity table of the branch curve")
    p.add_argument("expr", help="bivariate radicand expression")
    _add_common(p)

    p = sub.add_parser("corpus", help="run the bundled example corpus")
    _add_common(p)
    return ap


def _config(args):
    return Config(
        max_height=args.max_height,
        max_subset_size=args.max_subset_size,
        timeout=args.timeout,
        threads=args.threads,
    )


def _varlist(args):
    if args.vars:
        return tuple(v.strip() for v in args.vars.split(",") if v.strip())
    return None


def _emit(report, args):
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(dumps(report))


def _print_witness(doc):
    for v in doc["variables"]:
        print(f"    {v} -> {doc['assignments'][v]}")
    if "extension" in doc:
        print(f"    coefficients in Q({doc['extension']})")
    if "square_root" in doc:
        print(f"    square root of the image: {doc['square_root']}")


def cmd_analyze(args):
    config = _config(args)
    g = parse_rational(args.expr, _varlist(args))
    v = decide(g.num, g.den, config)
    report = verdict_report(args.expr, v, config)
    print(f"outcome: {v.outcome}")
    if v.steps:
        terminal = v.steps[-1]
        print(f"decided by: {terminal.rule}")
    if args.witness and v.witness is not None:
        print("witness (verified):")
        _print_witness(report["witness"])
    if args.trace:
        for s in v.steps:
            print(f"  [{s.rule}] {s.ref}")
    if "singularities" in report:
        _print_singularity_rows(report["singularities"])
    _emit(report, args)
    return EXIT_OK


def _print_singularity_rows(rows):
    if not rows:
        print("no singular points")
        return
    print("singular points of the branch curve:")
    for r in rows:
        coords = ", ".join(r["point"]["coordinates"])
        conj = f" (x{r['point']['conjugates']} conjugates)" if "conjugates" in r["point"] else ""
        print(f"  ({coords})  m={r['multiplicity']}  mu={r['milnor']}"
              f"  class={r['class']}{conj}")


def _load_alphabet_arg(inputs, variables):
    if len(inputs) == 1:
        text = inputs[0]
        looks_like_path = text.endswith(".json") or "/" in text
        if looks_like_path:
            with open(text) as fh:
                doc = json.load(fh)
            return doc, load_alphabet(doc)
    doc = {"roots": [{"radicand": t} for t in inputs]}
    if variables:
        doc["variables"] = list(variables)
    return doc, load_alphabet(doc)


def cmd_alphabet(args):
    config = _config(args)
    doc, (variables, roots) = _load_alphabet_arg(args.input, _varlist(args))
    v = decide_alphabet(roots, config)
    report = alphabet_report(doc, v, config)
    print(f"outcome: {v.outcome}")
    if v.certificate is not None:
        c = v.certificate
        print(f"certificate subset: {{{', '.join(c.labels)}}}")
        print(f"  reduced product: {poly_str(c.reduced_product)}"
              f"  (degree {c.reduced_product.total_degree()})")
    if args.witness and v.witness is not None:
        print("simultaneous witness (verified on every root):")
        _print_witness(report["witness"])
        for label, h in v.root_squares.items():
            print(f"    sqrt of image of {label}: {h}")
    if args.trace:
        print("subset audit:")
        for e in v.trace:
            print(f"  {{{', '.join(e['subset'])}}} degree {e['degree']}:"
                  f" {e['outcome']}")
    for note in v.notes:
        print(f"note: {note}")
    _emit(report, args)
    return EXIT_OK


def cmd_singularities(args):
    config = _config(args)
    g = parse_rational(args.expr, _varlist(args))
    f = squarefree_part(g.num * g.den)
    eff = effective_vars(f)
    if len(eff) != 2:
        print(f"error: radicand reduces to {len(eff)} effective variable(s);"
              " the singularity table needs exactly 2", file=sys.stderr)
        return EXIT_NOT_BIVARIATE
    f = f.with_vars(tuple(eff))
    model = build_model(f)
    _ok, records = all_simple(model)
    report = singularity_report(args.expr, model, records, config)
    print(f"branch curve: {report['branch_curve']}"
          f"  (degree {report['branch_degree']})")
    _print_singularity_rows(report["singularities"])
    print(f"all simple: {report['all_simple']}")
    _emit(report, args)
    return EXIT_OK


def _corpus_entries():
    base = resources.files("ratsqrt").joinpath("data")
    text = base.joinpath("corpus.json").read_text()
    entries = json.loads(text)
    if not isinstance(entries, list) or not entries:
        raise SchemaError("corpus must be a non-empty JSON list")
    return base, entries


def run_corpus(config, out=print):
    """Run every corpus entry; returns (reports, mismatches)."""
    base, entries = _corpus_entries()
    reports = []
    mismatches = []
    for e in entries:
        tag, kind, expected = e["tag"], e["kind"], e["expected"]
        if kind == "root":
            g = parse_rational(e["input"])
            v = decide(g.num, g.den, config)
            outcome = v.outcome
            reports.append(verdict_report(e["input"], v, config))
        elif kind == "alphabet":
            doc = json.loads(base.joinpath(e["input"]).read_text())
            _vars, roots = load_alphabet(doc)
            v = decide_alphabet(roots, config)
            outcome = v.outcome
            reports.append(alphabet_report(doc, v, config))
        else:
            raise SchemaError(f"corpus entry {tag}: unknown kind {kind!r}")
        ok = outcome == expected
        if not ok:
            mismatches.append(tag)
        out(f"{'PASS' if ok else 'FAIL'}  {tag}: {outcome}"
            + ("" if ok else f" (expected {expected})"))
    return reports, mismatches


def cmd_corpus(args):
    config = _config(args)
    reports, mismatches = run_corpus(config)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(dumps(reports))
    if mismatches:
        print(f"{len(mismatches)} mismatch(es): {', '.join(mismatches)}")
        return EXIT_CORPUS_MISMATCH
    print("all corpus expectations met")
    return EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    handler = {
        "analyze": cmd_analyze,
        "alphabet": cmd_alphabet,
        "singularities": cmd_singularities,
        "corpus": cmd_corpus,
    }[args.command]
    try:
        return handler(args)
    except (ParseSyntaxError, SchemaError, ZeroRadicand, ZeroDenominator,
            json.JSONDecodeError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceLimit, TooManyRoots) as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except RatsqrtError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
