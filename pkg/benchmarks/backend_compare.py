#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Runs the same bench sweep in two subprocesses, one per OLSCONV_BACKEND
value, and prints wall time plus throughput side by side.

    python benchmarks/backend_compare.py [--ns 2000000] [--csv-dir DIR]
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

HEADER_KEY = ("variant", "mode", "ns", "m", "nfil", "n")


def run_backend(backend: str, config_path: str) -> dict:
    env = dict(os.environ, OLSCONV_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-m", "olsconv.cli", "bench", config_path],
        env=env, capture_output=True, text=True, check=True)
    lines = out.stdout.strip().splitlines()
    cols = lines[0].split(",")
    rows = {}
    for ln in lines[1:]:
        rec = dict(zip(cols, ln.split(",")))
        key = tuple(rec[k] for k in HEADER_KEY)
        rows[key] = float(rec["wall_time_s"])
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, default=1_000_000)
    ap.add_argument("--m", type=str, default="65,257,1025")
    ap.add_argument("--nfil", type=int, default=8)
    ap.add_argument("--modes", type=str, default="r2r,c2c")
    ap.add_argument("--variants", type=str, default="fused,pipelined")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    config = {
        "ns": [args.ns],
        "m": [int(v) for v in args.m.split(",")],
        "nfil": [args.nfil],
        "modes": args.modes.split(","),
        "variants": args.variants.split(","),
        "repeats": args.repeats,
        "warmup": 1,
    }
    with tempfile.NamedTemporaryFile("w", suffix=".json",
                                     delete=False) as fh:
        json.dump(config, fh)
        cfg = fh.name
    try:
        print("running numba backend ...", file=sys.stderr)
        nb = run_backend("numba", cfg)
        print("running numpy backend ...", file=sys.stderr)
        np_ = run_backend("numpy", cfg)
    finally:
        Path(cfg).unlink()

    print(f"{'variant':10s} {'mode':4s} {'m':>5s} {'n':>5s} "
          f"{'numba_s':>9s} {'numpy_s':>9s} {'speedup':>8s}")
    for key in sorted(nb):
        variant, mode, ns, m, nfil, n = key
        t_nb = nb[key]
        t_np = np_.get(key)
        ratio = f"{t_np / t_nb:7.1f}x" if t_np else "     n/a"
        t_np_s = f"{t_np:9.4f}" if t_np else "      n/a"
        print(f"{variant:10s} {mode:4s} {m:>5s} {n:>5s} "
              f"{t_nb:9.4f} {t_np_s} {ratio}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
