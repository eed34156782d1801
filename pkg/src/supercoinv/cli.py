"""Batch command-line interface.

Subcommands: ``compute`` (Hilbert/Frobenius series), ``expand`` (coefficient
table), ``verify`` (run named checks or all of them), ``cauchy`` (truncated
Cauchy identity), ``table`` (render a saved JSON artifact).  Exit codes:
0 all good, 1 at least one check failed, 2 usage or resource errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from . import checks, coinvariant
from .coinvariant import CeilingExceeded, CoeffTable, FrobeniusSeries
from .superschur import super_cauchy_check


def _load_envelope() -> dict:
    with resources.files(__package__).joinpath("envelope.json").open() as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercoinv",
        description="Exact multigraded series engine for diagonal coinvariant quotients",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_n=True):
        p.add_argument("--n", type=int, required=need_n, help="number of positions")
        p.add_argument("--k", type=int, default=None, help="bosonic alphabet size")
        p.add_argument("--j", type=int, default=None, help="fermionic alphabet size")
        p.add_argument("--cache-dir", default=None, help="ideal-component cache directory")
        p.add_argument(
            "--ceiling",
            type=int,
            default=coinvariant.DEFAULT_CEILING,
            help="max monomial-space columns per multidegree",
        )
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    p = sub.add_parser("compute", help="emit Hilbert or Frobenius series")
    add_common(p)
    p.add_argument("--series", choices=["hilbert", "frobenius"], default="hilbert")

    p = sub.add_parser("expand", help="emit the coefficient table of a ring")
    add_common(p)
    p.add_argument("--degree-bound", type=int, default=None)

    p = sub.add_parser("verify", help="run verification checks")
    add_common(p, need_n=False)
    p.add_argument("check", nargs="?", default="all", help="check id or 'all'")
    p.add_argument("--m", type=int, default=None, help="cancellation depth")
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("cauchy", help="run the truncated Cauchy comparison")
    add_common(p)
    p.add_argument("--degree-bound", type=int, default=6)

    p = sub.add_parser("table", help="render a saved JSON artifact")
    p.add_argument("input", help="path to a JSON artifact")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--out", default=None)
    return parser


def _cache_dir(args) -> str | None:
    return os.environ.get("SUPERCOINV_CACHE") or getattr(args, "cache_dir", None)


def _emit(text: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _frobenius_text(series: FrobeniusSeries) -> str:
    lines = [f"Frobenius series: n={series.n} k={series.k} j={series.j}"]
    for deg in series.sorted_degrees():
        mults = series.components[deg]
        terms = " ".join(
            f"{list(mu)}:{mults[mu]}"
            for mu in sorted(mults, key=lambda m: (sum(m), tuple(-p for p in m)))
        )
        lines.append(f"  r={list(deg[0])} s={list(deg[1])}  {terms}")
    return "\n".join(lines)


def _coeff_table_text(table: CoeffTable) -> str:
    lines = [f"coefficients: n={table.n} source=(k={table.source[0]}, j={table.source[1]})"]
    for (lam, mu), c in table.sorted_entries():
        lines.append(f"  lambda={list(lam)} mu={list(mu)} c={c}")
    return "\n".join(lines)


def _csv_rows(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _coeff_table_csv(table: CoeffTable) -> str:
    rows = [
        [json.dumps(list(lam)), json.dumps(list(mu)), c] for (lam, mu), c in table.sorted_entries()
    ]
    return _csv_rows(rows, ["lambda", "mu", "c"])


def _frobenius_csv(series: FrobeniusSeries) -> str:
    rows = []
    for deg in series.sorted_degrees():
        for mu, c in sorted(series.components[deg].items()):
            rows.append([json.dumps(list(deg[0])), json.dumps(list(deg[1])), json.dumps(list(mu)), c])
    return _csv_rows(rows, ["r", "s", "mu", "mult"])


def _reports_text(reports) -> str:
    lines = []
    for rec in reports:
        line = f"{rec['id']}: {rec['status'].upper()} ({rec['seconds']:.2f}s)"
        if rec["status"] != "pass":
            line += f"  witness={json.dumps(rec['witness'], sort_keys=True)}"
        lines.append(line)
    return "\n".join(lines)


def _reports_csv(reports) -> str:
    rows = [
        [rec["id"], rec["status"], rec["seconds"], json.dumps(rec["witness"], sort_keys=True)]
        for rec in reports
    ]
    return _csv_rows(rows, ["id", "status", "seconds", "witness"])


def _verify_job(payload):
    check_id, params, ceiling, cache_dir = payload
    session = checks.CheckSession(ceiling=ceiling, cache_dir=cache_dir)
    return checks.run_check(check_id, session, params).to_json()


def _run_verify(args) -> int:
    envelope = _load_envelope()
    if args.check == "all":
        ids = sorted(checks.REGISTRY)
    elif args.check in checks.REGISTRY:
        ids = [args.check]
    else:
        sys.stderr.write(f"unknown check id: {args.check}\n")
        return 2
    jobs = []
    for check_id in ids:
        n = args.n if args.n is not None else envelope.get(check_id, 3)
        params = checks.default_params(
            check_id, n, k=args.k, j=args.j, m=args.m, degree_bound=args.degree_bound
        )
        jobs.append((check_id, params, args.ceiling, _cache_dir(args)))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_job, jobs))
    else:
        session = checks.CheckSession(ceiling=args.ceiling, cache_dir=_cache_dir(args))
        reports = [
            checks.run_check(check_id, session, params).to_json()
            for check_id, params, _c, _d in jobs
        ]
    reports.sort(key=lambda rec: rec["id"])
    if args.format == "json":
        _emit(json.dumps(reports, indent=2, sort_keys=True), args)
    elif args.format == "csv":
        _emit(_reports_csv(reports), args)
    else:
        _emit(_reports_text(reports), args)
    return 0 if all(rec["status"] == "pass" for rec in reports) else 1


def _run_compute(args) -> int:
    n, k, j = args.n, args.k or 0, args.j or 0
    session = checks.CheckSession(ceiling=args.ceiling, cache_dir=_cache_dir(args))
    if args.series == "hilbert":
        poly = session.hilbert(n, k, j)
        if args.format == "text":
            _emit(poly.pretty(), args)
        elif args.format == "csv":
            rows = [[json.dumps(list(e)), c] for e, c in sorted(poly.coeffs.items())]
            _emit(_csv_rows(rows, ["exponents", "dim"]), args)
        else:
            _emit(json.dumps({"n": n, "k": k, "j": j, "hilbert": poly.to_json()}, indent=2), args)
    else:
        series = session.frobenius(n, k, j)
        if args.format == "text":
            _emit(_frobenius_text(series), args)
        elif args.format == "csv":
            _emit(_frobenius_csv(series), args)
        else:
            _emit(json.dumps(series.to_json(), indent=2), args)
    return 0


def _run_expand(args) -> int:
    n, k, j = args.n, args.k or 0, args.j or 0
    session = checks.CheckSession(ceiling=args.ceiling, cache_dir=_cache_dir(args))
    series = session.frobenius(n, k, j)
    table = coinvariant.coeff_table(series, degree_bound=args.degree_bound)
    if args.format == "text":
        _emit(_coeff_table_text(table), args)
    elif args.format == "csv":
        _emit(_coeff_table_csv(table), args)
    else:
        _emit(json.dumps(table.to_json(), indent=2), args)
    return 0


def _run_cauchy(args) -> int:
    result = super_cauchy_check(args.k or 0, args.j or 0, args.n, args.degree_bound)
    payload = {
        "k": args.k or 0,
        "j": args.j or 0,
        "n": args.n,
        "degree": args.degree_bound,
        "status": "pass" if result.passed else "fail",
        "first_failure": result.first_failure,
    }
    if args.format == "text":
        _emit(
            f"cauchy k={payload['k']} j={payload['j']} n={payload['n']}: {payload['status']}",
            args,
        )
    else:
        _emit(json.dumps(payload, indent=2), args)
    return 0 if result.passed else 1


def _run_table(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list) and data and "status" in data[0]:
        text = _reports_text(data) if args.format == "text" else _reports_csv(data)
    elif isinstance(data, dict) and "components" in data:
        series = FrobeniusSeries.from_json(data)
        text = _frobenius_text(series) if args.format == "text" else _frobenius_csv(series)
    elif isinstance(data, dict) and "entries" in data:
        table = CoeffTable.from_json(data)
        text = _coeff_table_text(table) if args.format == "text" else _coeff_table_csv(table)
    elif args.format == "json":
        text = json.dumps(data, indent=2, sort_keys=True)
    else:
        sys.stderr.write("unrecognized artifact shape\n")
        return 2
    _emit(text, args)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "compute":
            return _run_compute(args)
        if args.command == "expand":
            return _run_expand(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "cauchy":
            return _run_cauchy(args)
        if args.command == "table":
            return _run_table(args)
    except CeilingExceeded as exc:
        sys.stderr.write(f"resource ceiling exceeded: {exc}\n")
        return 2
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
