"""Command-line surface.

Subcommands:

  quantities   compute the obstruction polynomials for a spec file
  bench        run both algorithms over the reference families and check
               the frozen term counts
  normalform   compute a truncated normal form for a concrete system
  check        reversibility / component condition checks

Exit codes: 0 success, 1 parse or validation failure (including a bench
term-count mismatch), 2 algorithm disagreement, 3 an asserted vanishing
failed.  Set RESINT_THREADS to bound the worker count used for independent
bench cells and samples; output ordering never depends on scheduling.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .conditions import (
    CONJECTURE_COMPONENTS,
    LINEARIZABLE_COMPONENTS,
    QuadPoint,
    check_necessary_conditions,
    eval_component,
    sample_component,
)
from .cyclotomic import CycQ
from .normalform import compute_normal_form, integrability_residual, normal_form_report
from .quantities import (
    REFERENCE_TERM_COUNTS,
    quantities_coefficientwise,
    quantities_direct,
)
from .sysspec import SpecError, bench_families, load_spec, quadratic_family

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_VANISHING = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _worker_count() -> int:
    raw = os.environ.get("RESINT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise _CliError(f"RESINT_THREADS must be an integer, got {raw!r}")


def _worker_map(fn, items):
    items = list(items)
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _dump(doc, pretty: bool = True) -> str:
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _load_point(path: str) -> QuadPoint:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _CliError(f"cannot read point file: {exc}")
    except json.JSONDecodeError as exc:
        raise _CliError(f"invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise _CliError("point file must be a JSON object of parameter values")
    if "values" in doc and isinstance(doc["values"], dict):
        doc = doc["values"]
    try:
        spec = quadratic_family().with_values(doc)
    except (SpecError, ValueError) as exc:
        raise _CliError(str(exc))
    names = spec.param_names
    by_name = dict(zip(names, spec.values))
    return QuadPoint(
        a100=by_name["a[1,0,0]"], a010=by_name["a[0,1,0]"], a001=by_name["a[0,0,1]"],
        b100=by_name["b[1,0,0]"], b010=by_name["b[0,1,0]"], b001=by_name["b[0,0,1]"],
        c100=by_name["c[1,0,0]"], c010=by_name["c[0,1,0]"], c001=by_name["c[0,0,1]"],
    )


# -- quantities ---------------------------------------------------------------


def _cmd_quantities(args) -> int:
    try:
        spec = load_spec(args.spec)
    except (SpecError, OSError) as exc:
        raise _CliError(f"spec {args.spec}: {exc}")
    if args.k < 1:
        raise _CliError("--k must be >= 1")

    results = {}
    timing = {}
    if args.alg in ("1", "both"):
        t0 = time.perf_counter()
        _, glist = quantities_direct(spec, args.k)
        timing[1] = (time.perf_counter() - t0) * 1000.0
        results[1] = glist
    if args.alg in ("2", "both"):
        t0 = time.perf_counter()
        glist2 = quantities_coefficientwise(spec, args.k)
        timing[2] = (time.perf_counter() - t0) * 1000.0
        results[2] = glist2

    if args.alg == "both" and results[1].quantities != results[2].quantities:
        raise _CliError("the two algorithms disagree on the quantities", EXIT_MISMATCH)

    shown = results[1] if 1 in results else results[2]
    names = spec.param_names
    if args.json:
        doc = {
            "spec": spec.to_json_dict(),
            "k": args.k,
            "algorithm": args.alg if args.alg != "both" else "both",
            "summaries": [
                {
                    "k": k,
                    "algorithm": alg,
                    "term_count": results[alg].quantities[k - 1].term_count(),
                    "elapsed_ms": round(timing[alg], 3),
                }
                for alg in sorted(results)
                for k in range(1, args.k + 1)
            ],
            "quantities": [
                {"k": k, "terms": shown.quantities[k - 1].to_json()}
                for k in range(1, args.k + 1)
            ],
        }
        _emit(_dump(doc), args.out)
    else:
        lines = []
        for k in range(1, args.k + 1):
            poly = shown.quantities[k - 1]
            lines.append(f"level {k}: {poly.term_count()} terms")
            lines.append(f"  {poly.to_text(names)}")
        if args.alg == "both":
            lines.append("algorithms agree")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


# -- bench --------------------------------------------------------------------


def _bench_cell(job):
    name, spec, k, alg = job
    t0 = time.perf_counter()
    if alg == 1:
        _, glist = quantities_direct(spec, k)
    else:
        glist = quantities_coefficientwise(spec, k)
    elapsed = time.perf_counter() - t0
    return {
        "set": name,
        "k": k,
        "algorithm": alg,
        "elapsed_ms": round(elapsed * 1000.0, 3),
        "term_count": glist.quantities[k - 1].term_count(),
    }


def _cmd_bench(args) -> int:
    families = bench_families()
    names = args.sets or ["S1", "S2", "S3"]
    for name in names:
        if name not in families:
            raise _CliError(f"unknown benchmark set {name!r} (expected S1, S2 or S3)")
    algs = [1, 2] if args.alg == "both" else [int(args.alg)]
    jobs = [
        (name, families[name], k, alg)
        for name in names
        for k in range(1, args.k + 1)
        for alg in algs
    ]
    rows = _worker_map(_bench_cell, jobs)
    rows.sort(key=lambda r: (r["set"], r["k"], r["algorithm"]))

    mismatches = []
    for row in rows:
        expected = REFERENCE_TERM_COUNTS.get(row["set"], {}).get(row["k"])
        if expected is not None and expected != row["term_count"]:
            mismatches.append((row, expected))

    if args.json:
        _emit(_dump({"rows": rows, "ok": not mismatches}), args.out)
    else:
        lines = [f"{'set':>4} {'k':>2} {'alg':>3} {'time[s]':>10} {'terms':>8}"]
        for row in rows:
            lines.append(
                f"{row['set']:>4} {row['k']:>2} {row['algorithm']:>3} "
                f"{row['elapsed_ms'] / 1000.0:>10.3f} {row['term_count']:>8}"
            )
        _emit("\n".join(lines), args.out)

    if mismatches:
        row, expected = mismatches[0]
        raise _CliError(
            f"term count mismatch for {row['set']} level {row['k']}: "
            f"got {row['term_count']}, reference {expected}"
        )
    return EXIT_OK


# -- normalform -----------------------------------------------------------------


def _cmd_normalform(args) -> int:
    try:
        spec = load_spec(args.spec)
    except (SpecError, OSError) as exc:
        raise _CliError(f"spec {args.spec}: {exc}")
    if spec.values is None:
        raise _CliError("normalform needs a spec file with a full 'values' map")
    if args.order < 4:
        raise _CliError("--order must be >= 4")
    series, _ = compute_normal_form(spec, args.order)
    doc = normal_form_report(series)
    if args.json:
        _emit(_dump(doc), args.out)
    else:
        lines = [f"resonant levels computed: {doc['resonant_order']}"]
        for key in ("Y1", "Y2", "Y3", "sum"):
            lines.append(f"{key}: [{', '.join(doc[key])}]")
        lines.append(f"linear through order: {doc['linear_through_order']}")
        lines.append(f"integrable through order: {doc['integrable_through_order']}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


# -- check ----------------------------------------------------------------------


def _check_sample(job):
    cid, point, order = job
    report = check_necessary_conditions(point, K=5)
    series, _ = compute_normal_form(point.to_spec(), order)
    residual = integrability_residual(series)
    return {
        "component": cid,
        "point": point.as_dict(),
        "g_values": report["g_values"],
        "components_satisfied": report["components_satisfied"],
        "generator_values": [str(v) for v in eval_component(cid, point)],
        "Y_zero": [not any(series.y1), not any(series.y2), not any(series.y3)],
        "sum_zero": not any(residual),
        "resonant_order": series.K,
    }


def _cmd_check(args) -> int:
    if (args.point is None) == (args.component is None):
        raise _CliError("check needs exactly one of --point or --component")

    if args.point is not None:
        point = _load_point(args.point)
        report = check_necessary_conditions(point, K=args.k)
        if args.json:
            _emit(_dump(report), args.out)
        else:
            lines = [f"g values (levels 1..{args.k}): {report['g_values']}"]
            lines.append(f"components satisfied: {report['components_satisfied']}")
            lines.append(f"reversibility variety: {report['izeta_zero']}")
            _emit("\n".join(lines), args.out)
        return EXIT_OK

    cid = args.component
    rng = random.Random(args.seed)
    points = [sample_component(cid, rng) for _ in range(args.samples)]
    order = args.order
    rows = _worker_map(_check_sample, [(cid, p, order) for p in points])

    failures = []
    for row in rows:
        if any(v != "0" for v in row["g_values"]):
            failures.append((row, "a quantity failed to vanish"))
        elif cid in LINEARIZABLE_COMPONENTS and not all(row["Y_zero"]):
            failures.append((row, "a resonant coefficient failed to vanish"))
        elif cid in CONJECTURE_COMPONENTS and not row["sum_zero"]:
            failures.append((row, "the resonant coefficient sum failed to vanish"))

    doc = {
        "component": cid,
        "seed": args.seed,
        "samples": rows,
        "asserted": "all-Y" if cid in LINEARIZABLE_COMPONENTS else "Y-sum",
        "ok": not failures,
    }
    if args.json:
        _emit(_dump(doc), args.out)
    else:
        lines = [
            f"component {cid}: {len(rows)} samples, seed {args.seed}, "
            f"resonant order {order // 3}"
        ]
        for i, row in enumerate(rows):
            status = "ok" if not any(
                row is frow for frow, _ in failures
            ) else "FAIL"
            lines.append(
                f"  sample {i}: g=0 {all(v == '0' for v in row['g_values'])}, "
                f"Y zero {row['Y_zero']}, sum zero {row['sum_zero']} [{status}]"
            )
        lines.append("all assertions passed" if not failures else "FAILURES present")
        _emit("\n".join(lines), args.out)

    if failures:
        raise _CliError(failures[0][1], EXIT_VANISHING)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="resint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantities", help="compute obstruction polynomials")
    p.add_argument("--spec", required=True, help="spec file (JSON)")
    p.add_argument("--k", type=int, required=True, help="highest level to compute")
    p.add_argument("--alg", choices=("1", "2", "both"), default="1")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_quantities)

    p = sub.add_parser("bench", help="benchmark both algorithms on the reference sets")
    p.add_argument("--sets", nargs="*", default=None, metavar="NAME",
                   help="subset of S1 S2 S3 (default: all)")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--alg", choices=("1", "2", "both"), default="both")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("normalform", help="truncated normal form of a concrete system")
    p.add_argument("--spec", required=True, help="spec file with full values")
    p.add_argument("--order", "--d", dest="order", type=int, default=22)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_normalform)

    p = sub.add_parser("check", help="condition checks for quadratic points")
    p.add_argument("--point", default=None, help="JSON file of the nine parameter values")
    p.add_argument("--component", type=int, choices=range(1, 10), default=None)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=5, help="quantity levels for --point mode")
    p.add_argument("--order", type=int, default=22,
                   help="normal-form truncation order for --component mode")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as exc:
        print(f"resint: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
