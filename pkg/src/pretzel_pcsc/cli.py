"""Command-line front end: invariants | check | sweep | slopes.

All commands emit one JSON report document (schema in
``schemas/report.schema.json``); ``sweep`` additionally writes one CSV row
per knot.  Output bytes are deterministic for fixed inputs and flags:
keys are sorted, rows follow the fixed enumeration order, and wall-clock
timings are only included when ``--timings`` is passed.

Exit codes: 0 success, 2 parse error, 3 domain rejection (two even
parameters, links), 4 residual verdict found, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from . import engine
from .conway import (
    SymmetricValues,
    a2_even_first,
    conway,
    conway_link,
    five_strand_a2,
    five_strand_w3,
)
from .errors import (
    CapExceeded,
    NotAKnot,
    ParseError,
    PretzelError,
    Unsupported,
)
from .genus import delta_gradings, genus
from .jones import bracket_cap, bracket_jones, jones_closed, jones_derived
from .pretzel import (
    ParityClass,
    classify,
    crossing_bound,
    dihedral_canonical,
    normalize,
    parse_params,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_RESIDUAL = 4
EXIT_IO = 5

CSV_COLUMNS = [
    "params",
    "n",
    "class",
    "crossing_bound",
    "genus",
    "thickness",
    "a2",
    "w3",
    "verdict",
    "citation",
]


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, frozenset):
        return sorted(str(v) for v in value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _document(command: str, inputs: dict, results: dict, provenance: list[str],
              timings: dict | None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "results": _jsonable(results),
        "provenance": sorted(set(provenance)),
    }
    if timings is not None:
        doc["timings"] = {k: round(v, 6) for k, v in timings.items()}
    return doc


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- invariants ---------------------------------------------------------


def _invariants_payload(p, args) -> tuple[dict, list[str]]:
    results: dict = {"params": list(p.params)}
    provenance: list[str] = []
    cls = classify(p)
    results["parity_class"] = cls.value
    results["crossing_bound"] = crossing_bound(p)
    results["dihedral_canonical"] = list(dihedral_canonical(p).params)

    trace = normalize(p)
    results["normalization_moves"] = [
        {"move": m.kind, "before": list(m.before), "after": list(m.after)}
        for m in trace.moves
    ]
    if cls is ParityClass.TWO_COMPONENT:
        nabla = conway_link(p)
        results["conway"] = nabla.to_pairs()
        results["a1"] = nabla.a1
        if trace.is_terminal:
            results["terminal"] = trace.result.describe()
        return results, provenance
    if trace.is_terminal:
        results["terminal"] = trace.result.describe()
        return results, provenance
    norm = trace.result
    results["normalized"] = list(norm.params)

    g = genus(norm)
    results["genus"] = {
        "value": g.value,
        "exact": g.exact,
        "source": g.source,
        "alpha": g.alpha,
        "delta_param": g.delta_param,
    }
    provenance.append(f"genus: {g.source}")
    grad = delta_gradings(norm)
    results["delta_gradings"] = {
        "values": sorted(str(v) for v in grad.values),
        "thickness": grad.thickness,
        "case": grad.case_tag,
    }

    all_odd = all(a % 2 for a in norm)
    V = None
    if all_odd:
        V = jones_closed(norm)
        results["jones_closed_form"] = V.to_pairs()
    if crossing_bound(norm) <= (args.cap or bracket_cap()):
        Vb = bracket_jones(norm, cap=args.cap)
        results["jones_bracket"] = Vb.to_pairs()
        if V is not None:
            results["jones_methods_agree"] = Vb == V
        V = Vb

    if V is not None:
        derived = jones_derived(V)
        results["V''(1)"] = derived.vpp1
        results["V'''(1)"] = derived.vppp1
        results["a2_jones"] = derived.a2
        results["w3"] = str(derived.w3)
        provenance.append("a2 = -V''(1)/6, w3 = V'''(1)/72 + V''(1)/24")

    evens = [i for i, a in enumerate(norm) if a % 2 == 0]
    if not evens:
        results["a2_conway"] = conway(norm).a2
        if norm.n == 5:
            sym = SymmetricValues.from_params(norm)
            results["a2_five_strand"] = five_strand_a2(sym)
            audit = five_strand_w3(norm, cap=args.cap)
            results["w3_audit"] = {
                "oracle": str(audit.oracle),
                "printed_formula": str(audit.printed),
                "source": audit.oracle_source,
                "consistent": audit.consistent,
            }
    else:
        rot = norm.params[evens[0]:] + norm.params[: evens[0]]
        results["a2_conway"] = a2_even_first(rot)
    return results, provenance


def cmd_invariants(args) -> int:
    t0 = time.perf_counter()
    p = parse_params(args.params)
    results, provenance = _invariants_payload(p, args)
    timings = {"total_s": time.perf_counter() - t0} if args.timings else None
    doc = _document("invariants", {"params": args.params}, results, provenance, timings)
    _emit(doc, args.out)
    return EXIT_OK


# -- check --------------------------------------------------------------


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    p = parse_params(args.params)
    report = engine.check_pcsc(p, cap=args.cap)
    results = {
        "params": list(p.params),
        "verdict": report.verdict,
        "invariants": report.invariants,
        "notes": list(report.notes),
        "normalized_terminal": (
            report.normalized.result.describe() if report.normalized.is_terminal else None
        ),
    }
    timings = {"total_s": time.perf_counter() - t0} if args.timings else None
    doc = _document("check", {"params": args.params}, results,
                    list(report.citations), timings)
    _emit(doc, args.out)
    return EXIT_RESIDUAL if report.verdict == engine.VERDICT_RESIDUAL else EXIT_OK


# -- sweep --------------------------------------------------------------


def _load_cache(path: Path) -> dict[str, dict]:
    cache: dict[str, dict] = {}
    if path.exists():
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                cache[entry["key"]] = entry["row"]
    return cache


def _result_row(result: tuple) -> tuple[tuple[int, ...], dict]:
    t, verdict, cls, cb, g, th, a2, w3, citation = result
    row = {
        "params": "(" + ",".join(str(a) for a in t) + ")",
        "n": len(t),
        "class": cls,
        "crossing_bound": cb,
        "genus": g,
        "thickness": th,
        "a2": a2,
        "w3": w3,
        "verdict": verdict,
        "citation": citation,
    }
    return t, row


def _sweep_rows(args):
    """Yield (params, row) per knot, in deterministic enumeration order."""
    jobs = args.jobs if args.jobs > 0 else None
    for result in engine.iter_sweep_results(
        args.max_abs, args.max_n, cap=args.cap, jobs=jobs
    ):
        yield _result_row(result)


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    if args.only_residual_locus:
        return _cmd_residual_locus(args, t0)

    cache_path = Path(args.cache) if args.cache else None
    cache = _load_cache(cache_path) if cache_path else {}
    cache_fh = cache_path.open("a", encoding="utf-8") if cache_path else None

    counts: dict[str, int] = {}
    residual: list[str] = []
    total = 0
    csv_path = Path(args.csv) if args.csv else None
    csv_fh = csv_path.open("w", newline="", encoding="utf-8") if csv_path else None
    writer = None
    if csv_fh:
        writer = csv.DictWriter(csv_fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
    try:
        for t, row in _cached_rows(args, cache, cache_fh):
            total += 1
            key = f"n={row['n']}|{row['class']}|{row['verdict']}"
            counts[key] = counts.get(key, 0) + 1
            if row["verdict"] == engine.VERDICT_RESIDUAL:
                residual.append(row["params"])
            if writer:
                writer.writerow(row)
    finally:
        if csv_fh:
            csv_fh.close()
        if cache_fh:
            cache_fh.close()

    results = {
        "total": total,
        "residual_count": len(residual),
        "residual": residual,
        "verdict_counts": counts,
        "csv": str(csv_path) if csv_path else None,
    }
    timings = {"total_s": time.perf_counter() - t0} if args.timings else None
    doc = _document(
        "sweep",
        {"max_abs": args.max_abs, "max_n": args.max_n, "jobs": args.jobs},
        results,
        list(engine.CITATIONS.values()),
        timings,
    )
    _emit(doc, args.out)
    return EXIT_RESIDUAL if residual else EXIT_OK


def _cached_rows(args, cache, cache_fh):
    if not cache and cache_fh is None:
        yield from _sweep_rows(args)
        return
    worker = engine._SweepWorker(args.cap)
    for t in engine.iter_knots(args.max_n, args.max_abs):
        key = ",".join(str(a) for a in t)
        row = cache.get(key)
        if row is None:
            _, row = _result_row(worker(t))
            if cache_fh is not None:
                cache_fh.write(json.dumps({"key": key, "row": row}, sort_keys=True) + "\n")
        yield t, row


def _cmd_residual_locus(args, t0) -> int:
    report = engine.residual_search(args.max_abs)
    results = {
        "max_abs": report.max_abs,
        "tuples_checked": report.tuples_checked,
        "a2_zero_count": len(report.a2_zero_records),
        "residual": [list(t) for t in report.residual],
        "case2_tuples_checked": report.case2_tuples_checked,
        "case2_zeroes": report.case2_zeroes,
        "a2_zero_records": [
            {
                "params": list(r.params),
                "s1": r.s1,
                "s2": r.s2,
                "s3": r.s3,
                "w3": str(r.w3),
                "w3_source": r.w3_source,
                "w3_printed_formula": str(r.w3_printed),
                "sum_sq_identity": r.sum_sq_identity,
                "sum_cube_identity": r.sum_cube_identity,
                "s3_equals_s1_plus_2": r.s3_constraint,
            }
            for r in report.a2_zero_records
        ],
    }
    timings = {"total_s": time.perf_counter() - t0} if args.timings else None
    doc = _document(
        "residual-locus", {"max_abs": args.max_abs}, results,
        [engine.CITATIONS["a2"], engine.CITATIONS["w3"]], timings,
    )
    _emit(doc, args.out)
    return EXIT_RESIDUAL if report.residual else EXIT_OK


# -- slopes --------------------------------------------------------------


def cmd_slopes(args) -> int:
    t0 = time.perf_counter()
    if args.p < 1:
        raise ParseError("p must be a positive integer")
    constraint = engine.niwu_slopes(args.p, args.cap_q)
    results = asdict(constraint)
    timings = {"total_s": time.perf_counter() - t0} if args.timings else None
    doc = _document(
        "slopes", {"p": args.p, "q_cap": args.cap_q}, results,
        ["cosmetic slope pairs must satisfy q^2 = -1 (mod p): Ni-Wu"], timings,
    )
    _emit(doc, args.out)
    return EXIT_OK


# -- main ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pretzel-pcsc",
        description="Exact pretzel-knot invariants and cosmetic-surgery checks",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (breaks byte determinism)")
    common.add_argument("--cap", type=int, default=None,
                        help="bracket state-sum crossing cap override")

    p_inv = sub.add_parser("invariants", parents=[common],
                           help="all invariants of one parameter sequence")
    p_inv.add_argument("params", help='e.g. "(-2,3,7)"')
    p_inv.set_defaults(func=cmd_invariants)

    p_chk = sub.add_parser("check", parents=[common],
                           help="cosmetic-surgery verdict for one knot")
    p_chk.add_argument("params")
    p_chk.set_defaults(func=cmd_check)

    p_sw = sub.add_parser("sweep", parents=[common],
                          help="verdicts for every knot in a parameter box")
    p_sw.add_argument("--max-abs", type=int, default=9)
    p_sw.add_argument("--max-n", type=int, default=7)
    p_sw.add_argument("--csv", help="CSV output path (one row per knot)")
    p_sw.add_argument("--jobs", type=int, default=0,
                      help="worker processes (0 = one per CPU)")
    p_sw.add_argument("--cache", help="resumable JSONL cache path")
    p_sw.add_argument("--only-residual-locus", action="store_true",
                      help="run the five-strand a2 = 0 grid search instead")
    p_sw.set_defaults(func=cmd_sweep)

    p_sl = sub.add_parser("slopes", parents=[common],
                          help="admissible cosmetic surgery slopes mod p")
    p_sl.add_argument("-p", type=int, required=True)
    p_sl.add_argument("--cap-q", type=int, default=100)
    p_sl.set_defaults(func=cmd_slopes)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Unsupported, NotAKnot, CapExceeded) as exc:
        print(f"not supported: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PretzelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
