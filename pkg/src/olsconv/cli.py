"""Command-line front end.

Subcommands: ``convolve`` files, ``verify`` engine output against the
direct time-domain reference, ``bench`` a sweep to CSV, and ``tune``
segment sizes.  Exit codes: 0 success, 1 verification failure, 2 usage or
I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np

from .backend import backend_name
from .core import CONV_TOL, Precision, make_filterset, make_signal
from .errors import OlsError
from .io import read_samples, write_samples
from .ols import (DEFAULT_MAX_FFT_LEN, auto_segment_len, convolve,
                  measure_segment_times, plan, transform_filters,
                  _required_layout)
from .postproc import PostProcSpec

CSV_HEADER = ("variant,mode,ns,m,nfil,n,postproc,precision,workers,"
              "wall_time_s,elements_per_s")


def _precision(name: str) -> Precision:
    return Precision(name)


def _postproc(name: str, scale: float) -> PostProcSpec:
    return PostProcSpec(name, scale)


def _gen_inputs(mode: str, ns: int, m: int, nfil: int, origin: int,
                precision: Precision, seed: int):
    """Deterministic synthetic signal + filter bank for a parameter cell."""
    tag = 0 if mode == "c2c" else 1
    rng = np.random.default_rng([seed, ns, m, nfil, origin, tag])
    if mode == "r2r":
        sig = make_signal(rng.standard_normal(ns), "real", precision)
        taps = rng.standard_normal((nfil, m))
    else:
        sig = make_signal(
            rng.standard_normal(ns) + 1j * rng.standard_normal(ns),
            "complex", precision)
        taps = (rng.standard_normal((nfil, m))
                + 1j * rng.standard_normal((nfil, m)))
    return sig, make_filterset(taps, origin, precision)


def _resolve_fft_len(arg: str, m: int, variant: str) -> Optional[int]:
    if arg == "auto":
        return auto_segment_len(m, variant)
    return int(arg)


def _max_fft_len(n: Optional[int]) -> int:
    return max(DEFAULT_MAX_FFT_LEN, n or 0)


# ---------------------------------------------------------------------------
# convolve
# ---------------------------------------------------------------------------

def cmd_convolve(args) -> int:
    precision = _precision(args.precision)
    signal_arr, sig_kind, sig_prec = read_samples(args.input, precision)
    if args.precision != sig_prec.value:
        signal_arr = signal_arr.astype(precision.dtype_for(sig_kind))
        sig_prec = precision
    taps_arr, fil_kind, _ = read_samples(args.filter_file, sig_prec)

    m = args.filter_len or (taps_arr.size // args.filters
                            if args.filters else taps_arr.size)
    if taps_arr.size % m:
        raise ValueError(
            f"filter file holds {taps_arr.size} taps, not divisible into"
            f" filters of length {m}")
    nfil = taps_arr.size // m
    if args.filters and args.filters != nfil:
        raise ValueError(
            f"--filters {args.filters} but file holds {nfil} filters of"
            f" length {m}")

    mode = args.mode or ("c2c" if sig_kind == "complex" else "r2r")
    if mode == "c2c" and sig_kind == "real":
        raise ValueError("c2c mode needs a complex input signal")
    if mode == "r2r" and (sig_kind == "complex" or fil_kind == "complex"):
        raise ValueError("r2r mode needs real signal and filters")

    sig = make_signal(signal_arr, sig_kind, sig_prec)
    fset = make_filterset(taps_arr.reshape(nfil, m), args.origin, sig_prec)
    n = _resolve_fft_len(args.fft_len, m, args.variant)
    p = plan(sig.length, m, mode, args.origin, n,
             max_fft_len=_max_fft_len(n))
    out = convolve(sig, fset, p, variant=args.variant,
                   postproc=_postproc(args.postproc, args.scale),
                   workers=args.workers)

    out_path = Path(args.output)
    for f in range(nfil):
        if nfil == 1:
            dest = out_path
        else:
            dest = out_path.with_name(
                f"{out_path.stem}.f{f}{out_path.suffix}")
        write_samples(dest, out[f])
        print(f"wrote {dest} ({out.shape[1]} samples)")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    precision = _precision(args.precision)
    tol = CONV_TOL[precision]
    modes = ["c2c", "r2r"] if args.mode is None else [args.mode]
    pp = _postproc(args.postproc, args.scale)
    failures = 0
    cases = 0
    for mode in modes:
        for ns in args.ns:
            for m in args.filter_len:
                for nfil in args.filters:
                    origin = m // 2 if args.centred else args.origin
                    if origin > m - 1:
                        print(f"skip mode={mode} ns={ns} m={m}: origin "
                              f"{origin} out of range", file=sys.stderr)
                        continue
                    n = _resolve_fft_len(args.fft_len, m, args.variant)
                    try:
                        p = plan(ns, m, mode, origin, n,
                                 max_fft_len=_max_fft_len(n))
                    except OlsError as exc:
                        print(f"skip mode={mode} ns={ns} m={m}: {exc}",
                              file=sys.stderr)
                        continue
                    sig, fset = _gen_inputs(mode, ns, m, nfil, origin,
                                            precision, args.seed)
                    got = convolve(sig, fset, p, variant=args.variant,
                                   postproc=pp, workers=args.workers)
                    ref = convolve(sig, fset, p, variant="direct_oracle",
                                   postproc=pp)
                    if args.corrupt and cases == 0:
                        got = got.copy()
                        got[0, got.shape[1] // 2] += 1000.0
                    scale = np.abs(ref).max()
                    err = np.abs(got - ref).max() / (scale or 1.0)
                    ok = err <= tol
                    cases += 1
                    failures += 0 if ok else 1
                    print(f"{mode} ns={ns} m={m} nfil={nfil} n={p.fft_len} "
                          f"origin={origin} err={err:.3e} "
                          f"{'PASS' if ok else 'FAIL'}")
    print(f"{cases - failures}/{cases} cases passed "
          f"(tol {tol:g}, backend {backend_name()})")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _median_time(fn, repeats: int, warmup: int) -> float:
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(repeats):
        tic = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - tic)
    return float(np.median(samples))


def run_sweep(config: dict, sink) -> int:
    """Run the sweep and write CSV rows to ``sink``; returns row count."""
    ns_list = config.get("ns", [2_000_000])
    m_list = config.get("m", [65, 257, 1025])
    nfil_list = config.get("nfil", [8])
    n_list = config.get("n", ["auto"])
    variants = config.get("variants", ["fused", "pipelined"])
    modes = config.get("modes", ["r2r"])
    postprocs = config.get("postproc", ["none"])
    precisions = config.get("precision", ["single"])
    workers_list = config.get("workers", [1])
    repeats = int(config.get("repeats", 5))
    warmup = int(config.get("warmup", 2))
    seed = int(config.get("seed", 0))
    origin = int(config.get("origin", 0))

    sink.write(CSV_HEADER + "\n")
    rows = 0
    for mode in modes:
        for prec_name in precisions:
            precision = _precision(prec_name)
            for ns in ns_list:
                for m in m_list:
                    for nfil in nfil_list:
                        o = min(origin, m - 1)
                        sig, fset = _gen_inputs(mode, ns, m, nfil, o,
                                                precision, seed)
                        for n_req in n_list:
                            for workers in workers_list:
                                for pp_name in postprocs:
                                    for variant in variants:
                                        rows += _bench_cell(
                                            sink, sig, fset, variant, mode,
                                            ns, m, nfil, n_req, pp_name,
                                            precision, workers, o,
                                            repeats, warmup)
    return rows


def _bench_cell(sink, sig, fset, variant, mode, ns, m, nfil, n_req,
                pp_name, precision, workers, origin, repeats, warmup) -> int:
    try:
        n = (auto_segment_len(m, variant) if n_req == "auto" else int(n_req))
        p = plan(ns, m, mode, origin, n, max_fft_len=_max_fft_len(n))
        pp = PostProcSpec(pp_name)
        cached = transform_filters(fset, p, _required_layout(mode, variant))
        wall = _median_time(
            lambda: convolve(sig, cached, p, variant=variant, postproc=pp,
                             workers=workers),
            repeats, warmup)
    except OlsError as exc:
        print(f"skip variant={variant} mode={mode} ns={ns} m={m} "
              f"n={n_req}: {exc}", file=sys.stderr)
        return 0
    eps = ns * nfil / wall
    sink.write(f"{variant},{mode},{ns},{m},{nfil},{p.fft_len},{pp_name},"
               f"{precision.value},{workers},{wall!r},{eps!r}\n")
    return 1


def cmd_bench(args) -> int:
    if args.config:
        config = json.loads(Path(args.config).read_text())
    else:
        config = {}
    if args.csv:
        with open(args.csv, "w") as fh:
            rows = run_sweep(config, fh)
        print(f"{rows} rows -> {args.csv}", file=sys.stderr)
    else:
        rows = run_sweep(config, sys.stdout)
        print(f"{rows} rows", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# tune
# ---------------------------------------------------------------------------

def cmd_tune(args) -> int:
    candidates = args.candidates or [1 << b for b in range(6, 13)]
    print(f"# mode={args.mode} probe_len={args.probe_len} "
          f"candidates={candidates} backend={backend_name()}")
    for m in args.filter_len:
        times = measure_segment_times(m, args.mode, candidates,
                                      probe_len=args.probe_len,
                                      seed=args.seed)
        best = min(sorted(times), key=lambda n: (times[n], n))
        detail = " ".join(f"{n}:{times[n] * 1e3:.2f}ms"
                          for n in sorted(times))
        print(f"m={m} best_n={best} {detail}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="olsconv",
        description="Overlap-save fast convolution engine")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=("c2c", "r2r"), default=None)
        p.add_argument("--fft-len", default="auto",
                       help="segment length (power of two) or 'auto'")
        p.add_argument("--origin", type=int, default=0,
                       help="filter tap index aligned with the output sample")
        p.add_argument("--variant", default="fused",
                       choices=("fused", "pipelined", "full_fft_baseline",
                                "direct_oracle"))
        p.add_argument("--postproc", default="none",
                       choices=("none", "scale", "magnitude_squared",
                                "derivative"))
        p.add_argument("--scale", type=float, default=1.0,
                       help="constant for --postproc scale")
        p.add_argument("--precision", choices=("single", "double"),
                       default="single")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    pc = sub.add_parser("convolve", help="convolve a signal file with a "
                        "filter file")
    pc.add_argument("input")
    pc.add_argument("filter_file")
    pc.add_argument("-o", "--output", required=True)
    pc.add_argument("--filter-len", type=int, default=None,
                    help="taps per filter (filter file is a flat array)")
    pc.add_argument("--filters", type=int, default=None,
                    help="number of filters in the filter file")
    common(pc)
    pc.set_defaults(fn=cmd_convolve)

    pv = sub.add_parser("verify", help="check engine output against the "
                        "direct time-domain reference")
    pv.add_argument("--ns", type=_int_list, default=[1_000, 100_000])
    pv.add_argument("--filter-len", type=_int_list,
                    default=[3, 64, 257, 1025])
    pv.add_argument("--filters", type=_int_list, default=[1, 8])
    pv.add_argument("--centred", action="store_true",
                    help="use origin = filter_len // 2")
    pv.add_argument("--corrupt", action="store_true",
                    help="test hook: perturb the first case's output")
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    pb = sub.add_parser("bench", help="run a benchmark sweep to CSV")
    pb.add_argument("config", nargs="?", default=None,
                    help="JSON sweep config; defaults used when omitted")
    pb.add_argument("--csv", default=None, help="write CSV here instead of "
                    "stdout")
    pb.set_defaults(fn=cmd_bench)

    pt = sub.add_parser("tune", help="measure the best segment length per "
                        "filter length")
    pt.add_argument("--filter-len", type=_int_list, required=True)
    pt.add_argument("--mode", choices=("c2c", "r2r"), default="r2r")
    pt.add_argument("--candidates", type=_int_list, default=None)
    pt.add_argument("--probe-len", type=int, default=1 << 18)
    pt.add_argument("--seed", type=int, default=0)
    pt.set_defaults(fn=cmd_tune)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return 2
    except (OlsError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
