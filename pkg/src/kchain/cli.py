"""Command-line harness: table reproduction, verification sweeps, spectra, ratios.

Exit status is 0 when everything checks out, 1 on a verification mismatch
and 2 on a usage error. Settings resolve as command-line flag, then a
``KCHAIN_<NAME>`` environment variable, then a ``key=value`` config file
(``--config`` or ``KCHAIN_CONFIG``), then the built-in default.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import closed_forms as cf
from . import spectral
from .chain_graphs import ChainSpec, ChainSpecError, end_degree_sum
from .exact_linalg import display2, format_rational
from .verification import DEFAULT_SAMPLE_SIZE, load_printed_table, run_verification

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

TABLE_MAX_N = 10000
VERIFY_MAX_N = 63

DEFAULTS = {
    "format": "text",
    "mode": "exhaustive",
    "seed": 0,
    "jobs": 1,
    "sample_size": DEFAULT_SAMPLE_SIZE,
}
CASTS = {"seed": int, "jobs": int, "sample_size": int, "format": str, "mode": str}
CHOICES = {"format": ("text", "csv", "json"), "mode": ("exhaustive", "sample")}


class UsageError(Exception):
    pass


def read_config_file(path: str | os.PathLike) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_").lower()] = value.strip()
    return values


def resolve(name: str, flag_value, config: dict[str, str], env=None):
    env = os.environ if env is None else env
    if flag_value is not None:
        value = flag_value
    elif f"KCHAIN_{name.upper()}" in env:
        value = env[f"KCHAIN_{name.upper()}"]
    elif name in config:
        value = config[name]
    else:
        return DEFAULTS[name]
    try:
        value = CASTS[name](value)
    except ValueError:
        raise UsageError(f"invalid value for {name}: {value!r}") from None
    if name in CHOICES and value not in CHOICES[name]:
        raise UsageError(f"{name} must be one of {', '.join(CHOICES[name])}, got {value!r}")
    return value


def _load_config(args) -> dict[str, str]:
    path = args.config or os.environ.get("KCHAIN_CONFIG")
    if not path:
        return {}
    try:
        return read_config_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53:
        return str(value)
    return value


# ---------------------------------------------------------------- table

TABLE_KINDS = {"kf": ("Kf", cf.kf_gn), "kfstar": ("Kf*", cf.kfstar_gn)}


def table_rows(kind: str, start: int, stop: int, as_printed: bool = False) -> list[dict]:
    if kind not in TABLE_KINDS:
        raise UsageError(f"unknown table kind {kind!r}")
    if not 1 <= start <= stop <= TABLE_MAX_N:
        raise UsageError(f"need 1 <= from <= to <= {TABLE_MAX_N}, got {start}..{stop}")
    printed = load_printed_table(kind)
    if as_printed and stop > max(printed):
        raise UsageError(f"--as-printed only covers n <= {max(printed)}")
    _, fn = TABLE_KINDS[kind]
    rows = []
    for n in range(start, stop + 1):
        exact = fn(n)
        computed = display2(exact)
        published = printed.get(n)
        rows.append(
            {
                "n": n,
                "exact": exact,
                "display": published if as_printed else computed,
                "computed": computed,
                "printed": published,
                "erratum": published is not None and published != computed,
            }
        )
    return rows


def render_table(kind: str, rows: list[dict], fmt: str, as_printed: bool = False) -> str:
    label, _ = TABLE_KINDS[kind]
    if fmt == "json":
        out = [
            {
                "n": r["n"],
                "exact": format_rational(r["exact"]),
                "display": r["display"],
                "printed": r["printed"],
                "erratum": r["erratum"],
            }
            for r in rows
        ]
        return json.dumps(out, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "value", "exact", "printed", "erratum"])
        for r in rows:
            writer.writerow([r["n"], r["display"], format_rational(r["exact"]), r["printed"] or "", int(r["erratum"])])
        return buf.getvalue()
    width = max(len(r["display"]) for r in rows)
    lines = [f"{'G':<6} {label:>{width}}"]
    for r in rows:
        line = f"{'G_' + str(r['n']):<6} {r['display']:>{width}}"
        if r["erratum"]:
            if as_printed:
                line += f"  [erratum: formula gives {r['computed']}]"
            else:
                line += f"  [erratum: printed value {r['printed']}]"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_table(args, config) -> int:
    fmt = resolve("format", args.format, config)
    rows = table_rows(args.kind, args.start, args.stop, args.as_printed)
    sys.stdout.write(render_table(args.kind, rows, fmt, args.as_printed))
    return EXIT_OK


# ---------------------------------------------------------------- verify

CSV_COLUMNS = [
    "n",
    "r",
    "deleted",
    "d",
    "kf_oracle",
    "kf_closed",
    "kfstar_oracle",
    "kfstar_closed",
    "tau_oracle",
    "tau_closed",
    "wiener_oracle",
    "wiener_closed",
    "gutman_oracle",
    "gutman_closed",
    "all_match",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _check_line(c) -> str:
    status = "PASS" if c.passed else "FAIL"
    return f"  {status} {c.name}: expected {c.expected}, got {c.actual}"


def render_verification(run, fmt: str, header: str) -> str:
    failures = run.failures
    summary = {
        "specs": len(run.verdicts),
        "checks": sum(len(v.checks) for v in run.verdicts)
        + sum(len(s.checks) for s in run.suites)
        + len(run.class_checks),
        "failures": len(failures),
        "errata_reproduced": sum(not c.passed for c in run.errata),
        "errata_total": len(run.errata),
        "status": "PASS" if run.ok else "FAIL",
    }
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for v in run.verdicts:
            writer.writerow([_cell(v.row[c]) for c in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        specs = []
        for v in run.verdicts:
            obj = {c: _jsonable(v.row[c]) for c in CSV_COLUMNS}
            obj["deleted"] = list(v.spec.deleted)
            for key in ("kf", "kfstar"):
                for side in ("oracle", "closed"):
                    value = v.row[f"{key}_{side}"]
                    obj[f"{key}_{side}_display"] = display2(value) if value is not None else None
            obj["checks"] = [{"name": c.name, "expected": c.expected, "actual": c.actual, "pass": c.passed} for c in v.checks]
            specs.append(obj)
        doc = {
            "header": header,
            "specs": specs,
            "spectral": [
                {"n": s.n, "checks": [{"name": c.name, "pass": c.passed} for c in s.checks]} for s in run.suites
            ],
            "classes": [{"name": c.name, "pass": c.passed} for c in run.class_checks],
            "errata": [
                {"name": c.name, "expected": c.expected, "actual": c.actual, "reproduced": not c.passed}
                for c in run.errata
            ],
            "summary": summary,
        }
        bad = run.first_failing_spec()
        if bad is not None:
            doc["reproducer"] = bad.to_dict()
        return json.dumps(doc, indent=1) + "\n"

    lines = [f"# {header}"]
    for v in run.verdicts:
        row = v.row
        values = f"kf={_cell(row['kf_oracle'])} tau={row['tau_oracle']} W={row['wiener_oracle']}"
        if v.spec.r == 0:
            values += f" kf*={_cell(row['kfstar_oracle'])} gut={row['gutman_oracle']}"
        status = "PASS" if v.passed else "FAIL"
        lines.append(f"{status} n={v.spec.n} r={v.spec.r} d={v.d} deleted={list(v.spec.deleted)} {values}")
        lines.extend(_check_line(c) for c in v.checks if not c.passed)
    lines.append("# spectral identities")
    for s in run.suites:
        status = "PASS" if s.passed else "FAIL"
        lines.append(f"{status} n={s.n} " + " ".join(c.name for c in s.checks))
        lines.extend(_check_line(c) for c in s.checks if not c.passed)
    bad_classes = [c for c in run.class_checks if not c.passed]
    lines.append(
        f"# Kf depends only on (n, r, d): {len(run.class_checks)} classes, "
        f"{'PASS' if not bad_classes else 'FAIL'}"
    )
    lines.extend(_check_line(c) for c in bad_classes)
    lines.append("# known errata (published form must disagree with the oracle)")
    for c in run.errata:
        verdict = "reproduced" if not c.passed else "NOT REPRODUCED"
        lines.append(f"ERRATUM {c.name}: oracle/formula {c.expected}, as printed {c.actual} -> {verdict}")
    lines.append(
        "# summary: {specs} specs, {checks} checks, {failures} failures, "
        "errata {errata_reproduced}/{errata_total} reproduced: {status}".format(**summary)
    )
    bad = run.first_failing_spec()
    if bad is not None:
        lines.append("# reproducer: " + json.dumps(bad.to_dict()))
    return "\n".join(lines) + "\n"


def cmd_verify(args, config) -> int:
    fmt = resolve("format", args.format, config)
    mode = resolve("mode", args.mode, config)
    seed = resolve("seed", args.seed, config)
    jobs = resolve("jobs", args.jobs, config)
    sample_size = resolve("sample_size", args.sample_size, config)
    if not 1 <= args.max_n <= VERIFY_MAX_N:
        raise UsageError(f"--max-n must be in [1, {VERIFY_MAX_N}]")
    if jobs < 1 or sample_size < 1:
        raise UsageError("--jobs and --sample-size must be positive")
    start = time.perf_counter()
    run = run_verification(args.max_n, mode, seed, jobs, sample_size)
    header = f"verify max_n={args.max_n} mode={mode} seed={seed} sample_size={sample_size}"
    sys.stdout.write(render_verification(run, fmt, header))
    if args.timing:
        total = sum(v.elapsed for v in run.verdicts)
        print(
            f"elapsed {time.perf_counter() - start:.2f}s wall, {total:.2f}s in spec checks, jobs={jobs}",
            file=sys.stderr,
        )
    if not run.ok:
        bad = run.first_failing_spec()
        if bad is not None:
            print("reproducer: " + json.dumps(bad.to_dict()), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------- spectrum


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def spectrum_report(spec: ChainSpec) -> str:
    n = spec.n
    ls = spectral.ls_spectrum(spec)
    pair = spectral.decompose(spec)
    p_alpha = spectral.alpha_charpoly(n)
    lines = [f"G_{n} deleted={list(spec.deleted)} r={spec.r} d={end_degree_sum(spec)} case={ls.case}"]
    alphas = spectral.alpha_closed_form(n)
    lines.append("alpha (8 sin^2 closed form): " + ", ".join(f"{a:.9f}" for a in alphas))
    lines.append(f"char_poly(L_A) = {p_alpha}")
    from_coeffs = abs(p_alpha.coefficient(2)) / abs(p_alpha.coefficient(1))
    lines.append(
        f"sum 1/alpha: {format_rational(from_coeffs)} from char poly, "
        f"{format_rational(spectral.alpha_recip_sum(n))} closed form"
    )
    lines.append(
        f"prod alpha: {(-1) ** n * p_alpha.coefficient(1)} from char poly, {spectral.alpha_product(n)} closed form"
    )
    lines.append("L_S diagonal: " + ", ".join(map(str, pair.ls_diagonal)))
    lines.append("zeta multiset: " + ", ".join(f"{z}^{m}" for z, m in sorted(ls.counts.items())))
    direct = sum((Fraction(m, z) for z, m in ls.counts.items()), Fraction(0))
    lines.append(
        f"sum 1/zeta: {format_rational(direct)} direct, "
        f"{format_rational(spectral.zeta_recip_sum(spec))} closed form, "
        f"{format_rational(spectral.zeta_recip_sum(spec, cf.AS_PRINTED))} as stated"
    )
    lines.append(f"prod zeta: {spectral.zeta_product(spec)}")
    if spec.r == 0:
        eta = spectral.eta_spectrum(n)
        lines.append("eta multiset: " + ", ".join(f"{format_rational(e)}^{m}" for e, m in eta.items()))
        lines.append(f"sum 1/eta: {format_rational(spectral.eta_recip_sum(n))}")
        lines.append(f"sum 1/gamma: {format_rational(spectral.gamma_recip_sum(n))}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args, config) -> int:
    fmt = resolve("format", args.format, config)
    deleted = parse_int_list(args.delete) if args.delete else []
    try:
        spec = ChainSpec(args.n, deleted)
    except ChainSpecError as exc:
        raise UsageError(str(exc)) from None
    if 2 * spec.n + 2 > 128:
        raise UsageError("spectrum supports n <= 63")
    if fmt == "json":
        sys.stdout.write(json.dumps(spectral.spectrum_summary(spec), indent=1) + "\n")
    else:
        sys.stdout.write(spectrum_report(spec))
    return EXIT_OK


# ---------------------------------------------------------------- ratios


def ratio_rows(ns: list[int]) -> list[dict]:
    rows = []
    for n in ns:
        if n < 1:
            raise UsageError(f"n must be >= 1, got {n}")
        kw = cf.kf_over_w(n)
        kg = cf.kfstar_over_gut(n)
        quarter = Fraction(1, 4)
        rows.append({"n": n, "kf_over_w": kw, "kfstar_over_gut": kg, "dev_w": kw - quarter, "dev_gut": kg - quarter})
    return rows


def cmd_ratios(args, config) -> int:
    fmt = resolve("format", args.format, config)
    rows = ratio_rows(parse_int_list(args.n))
    if fmt == "json":
        out = [
            {
                "n": r["n"],
                "kf_over_w": format_rational(r["kf_over_w"]),
                "kf_over_w_float": float(r["kf_over_w"]),
                "kfstar_over_gut": format_rational(r["kfstar_over_gut"]),
                "kfstar_over_gut_float": float(r["kfstar_over_gut"]),
            }
            for r in rows
        ]
        sys.stdout.write(json.dumps(out, indent=1) + "\n")
        return EXIT_OK
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "kf_over_w", "kf_over_w_minus_quarter", "kfstar_over_gut", "kfstar_over_gut_minus_quarter"])
        for r in rows:
            writer.writerow(
                [r["n"], f"{float(r['kf_over_w']):.8f}", f"{float(r['dev_w']):.8f}",
                 f"{float(r['kfstar_over_gut']):.8f}", f"{float(r['dev_gut']):.8f}"]
            )
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    print(f"{'n':>6} {'Kf/W':>12} {'dev':>12} {'Kf*/Gut':>12} {'dev':>12}")
    for r in rows:
        print(
            f"{r['n']:>6} {float(r['kf_over_w']):>12.8f} {float(r['dev_w']):>12.8f} "
            f"{float(r['kfstar_over_gut']):>12.8f} {float(r['dev_gut']):>12.8f}"
        )
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kchain", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value settings file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="reproduce the Kf / Kf* tables")
    p.add_argument("--kind", choices=sorted(TABLE_KINDS), required=True)
    p.add_argument("--from", dest="start", type=int, default=1)
    p.add_argument("--to", dest="stop", type=int, default=50)
    p.add_argument("--format", choices=CHOICES["format"])
    p.add_argument("--as-printed", action="store_true", help="show the published cells instead of computed ones")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="compare closed forms with brute-force oracles")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--mode", choices=CHOICES["mode"])
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--sample-size", type=int)
    p.add_argument("--format", choices=CHOICES["format"])
    p.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="Laplacian block spectra of one family member")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delete", help="comma-separated vertical edges to delete")
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ratios", help="Kf/W and Kf*/Gut against 1/4")
    p.add_argument("--n", required=True, help="comma-separated chain lengths")
    p.add_argument("--format", choices=CHOICES["format"])
    p.set_defaults(func=cmd_ratios)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        return args.func(args, config)
    except UsageError as exc:
        print(f"kchain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
