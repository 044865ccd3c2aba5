"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
Characters are referenced as ``(modulus, canonical index)`` pairs, the index
being the position in :func:`charsum.characters.enumerate_characters`.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, astuple

from .characters import character, enumerate_characters
from .charsums import convolution_sum_hyperbola, convolution_sum_naive
from .geometry import family_svg, generate_family, max_slab, u_k_rect
from .verify.burgess import scan_primes, write_rows
from .verify.decomposition import cover_check, min_depth
from .verify.lemmas import check_divisor_residual, check_lemma6, lemma_suite
from .verify.sweep import FIELDS, ConfigError, SweepConfig, SweepRecord, default_jobs, sweep

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- CSV / JSON

def _cell(v) -> str:
    return f"{v:.12g}" if isinstance(v, float) else str(v)


def write_csv(records, path) -> None:
    """Header plus one row per record; floats with 12 significant digits, LF endings."""
    fh = sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FIELDS)
        for r in records:
            w.writerow([_cell(v) for v in astuple(r)])
    finally:
        if fh is not sys.stdout:
            fh.close()


def read_csv(path) -> list[SweepRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [
            SweepRecord(int(d["q1"]), int(d["chi1"]), int(d["q2"]), int(d["chi2"]), float(d["T"]),
                        float(d["abs_S"]), float(d["bound"]), float(d["ratio"]), d["regime"], float(d["ms"]))
            for d in csv.DictReader(fh)
        ]


def write_json(records, path) -> None:
    text = json.dumps([asdict(r) for r in records], indent=1) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit(obj, fmt: str, text: str) -> None:
    print(json.dumps(obj, indent=1) if fmt == "json" else text)


def _complex_str(z: complex, tol: float = 1e-9) -> str:
    re = 0.0 if abs(z.real) < tol else z.real
    im = 0.0 if abs(z.imag) < tol else z.imag
    return f"{re:.12g}{im:+.12g}i"


# ---------------------------------------------------------------- subcommands

def _char(q: int, idx: int):
    try:
        return character(q, idx)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_chars(a) -> int:
    rows = []
    for chi in enumerate_characters(a.q):
        prim = chi.is_primitive()
        if a.primitive and not prim:
            continue
        rows.append({"index": chi.index, "order": chi.m, "conductor": chi.conductor(), "primitive": prim,
                     "principal": chi.is_principal()})
    lines = ["index order conductor primitive"]
    lines += [f"{r['index']:5d} {r['order']:5d} {r['conductor']:9d} {'yes' if r['primitive'] else 'no'}" for r in rows]
    _emit(rows, a.format, "\n".join(lines))
    return OK


def cmd_sum(a) -> int:
    chi1, chi2 = _char(a.q1, a.chi1), _char(a.q2, a.chi2)
    fn = convolution_sum_naive if a.method == "naive" else convolution_sum_hyperbola
    S = fn(chi1, chi2, a.T)
    z = S.to_complex()
    code = OK
    if a.check:
        ref = convolution_sum_naive(chi1, chi2, a.T)
        if not S.approx_equal(ref, 1e-9):
            print(f"mismatch: naive gives {_complex_str(ref.to_complex())}", file=sys.stderr)
            code = FAILED
    _emit({"S": [z.real, z.imag], "abs": abs(z), "order": S.m}, a.format,
          f"S = {_complex_str(z)}\n|S| = {abs(z):.12g}")
    return code


def _report(checks, fmt: str) -> int:
    _emit([{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks], fmt,
          "\n".join(c.line() for c in checks))
    return OK if all(c.passed for c in checks) else FAILED


def cmd_verify_lemmas(a) -> int:
    if a.depth < 1 or a.k < 1:
        raise UsageError("k and depth must be >= 1")
    checks = lemma_suite(a.T, a.k, a.depth, chains=a.chains, seed=a.seed)
    if a.full:
        checks += [check_lemma6(), check_divisor_residual()]
    return _report(checks, a.format)


def cmd_cover(a) -> int:
    depth = a.depth if a.depth is not None else min_depth(a.T)
    ks = [a.k] if a.k is not None else list(range(1, max_slab(a.T) + 1))
    reps = [cover_check(a.T, k, depth, a.t) for k in ks]
    rows = [dict(T=r.T, k=r.k, depth=r.depth, total=r.total, covered=r.covered,
                 multiply_covered=r.multiply_covered, in_strip=r.in_strip, uncovered=r.uncovered,
                 stray=r.stray, ok=r.ok) for r in reps]
    lines = ["k total covered multiply_covered in_strip uncovered ok"]
    lines += [f"{r.k} {r.total} {r.covered} {r.multiply_covered} {r.in_strip} {r.uncovered} {r.ok}" for r in reps]
    _emit(rows, a.format, "\n".join(lines))
    return OK if all(r.ok for r in reps) else FAILED


def cmd_sweep(a) -> int:
    try:
        cfg = SweepConfig.from_file(a.config)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    if a.timing:
        cfg.timing = True
    jobs = a.jobs if a.jobs is not None else (default_jobs() if "CHARSUM_JOBS" in _environ() else cfg.jobs)
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        recs = sweep(cfg, jobs=jobs)
    except AssertionError as exc:
        print(str(exc), file=sys.stderr)
        return FAILED
    out = a.output if a.output is not None else cfg.output
    (write_json if a.format == "json" else write_csv)(recs, out)
    return OK


def _environ():
    import os

    return os.environ


def cmd_bench(a) -> int:
    chi1, chi2 = _char(a.q1, a.chi1), _char(a.q2, a.chi2)
    print(f"{'T':>12} {'naive_ms':>10} {'hyper_ms':>10} {'|S|':>14} agree")
    code = OK
    for T in a.T:
        t0 = time.perf_counter()
        s_n = convolution_sum_naive(chi1, chi2, T)
        t1 = time.perf_counter()
        s_h = convolution_sum_hyperbola(chi1, chi2, T)
        t2 = time.perf_counter()
        agree = s_h.approx_equal(s_n, 1e-9)
        code = code if agree else FAILED
        print(f"{T:12.6g} {(t1 - t0) * 1e3:10.3f} {(t2 - t1) * 1e3:10.3f} {abs(s_h):14.6f} {agree}")
    return code


def cmd_family_svg(a) -> int:
    members = generate_family(a.T, a.k, a.depth)
    svg = family_svg(members, a.T, extra=[u_k_rect(a.T, a.k)])
    if a.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        with open(a.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)
    return OK


def cmd_burgess(a) -> int:
    rows = scan_primes(a.q_max, a.r)
    if a.output:
        write_rows(rows, a.output)
    worst = max((r.c_fit for r in rows), default=0.0)
    bad = [r.q for r in rows if not r.pv_ok]
    print(f"primes scanned: {len(rows)}; max c_fit {worst:.12g}; PV violations: {bad or 'none'}")
    return FAILED if bad else OK


# ---------------------------------------------------------------- parser

def _positive_real(s: str) -> float:
    v = float(s)
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite real >= 0, got {s!r}")
    return v


def _modulus(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("modulus must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="charsum", description="Character sums over the hyperbola xy <= T.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    def pair(sp):
        for n in ("1", "2"):
            sp.add_argument(f"--q{n}", type=_modulus, required=True)
            sp.add_argument(f"--chi{n}", type=int, required=True)

    sp = sub.add_parser("chars", help="list characters mod q")
    sp.add_argument("--q", type=_modulus, required=True)
    sp.add_argument("--primitive", action="store_true", help="primitive characters only")
    fmt(sp)
    sp.set_defaults(func=cmd_chars)

    sp = sub.add_parser("sum", help="evaluate S(T) for one pair")
    pair(sp)
    sp.add_argument("--T", type=_positive_real, required=True)
    sp.add_argument("--method", choices=("hyperbola", "naive"), default="hyperbola")
    sp.add_argument("--check", action="store_true", help="compare against the naive oracle")
    fmt(sp)
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("verify-lemmas", help="geometric lemma checks on a generated family")
    sp.add_argument("--T", type=_positive_real, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--chains", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--full", action="store_true", help="also run the strip-count grid and divisor scan")
    fmt(sp)
    sp.set_defaults(func=cmd_verify_lemmas)

    sp = sub.add_parser("cover", help="cover check of slab k (all slabs if omitted)")
    sp.add_argument("--T", type=_positive_real, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--t", type=_positive_real, default=1.0)
    fmt(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("sweep", help="run a sweep config and write CSV")
    sp.add_argument("--config", required=True)
    sp.add_argument("--output", "-o")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte determinism)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bench", help="naive vs hyperbola timing")
    pair(sp)
    sp.add_argument("--T", type=_positive_real, nargs="+", required=True)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("family-svg", help="SVG dump of a rectangle family")
    sp.add_argument("--T", type=_positive_real, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_family_svg)

    sp = sub.add_parser("burgess", help="interval-sum scan over prime moduli")
    sp.add_argument("--q-max", type=int, default=2000)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_burgess)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"charsum: error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        # bad parameters rejected by the library (principal character, T out of range, ...)
        print(f"charsum: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
