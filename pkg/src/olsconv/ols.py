"""Overlap-save planner and convolution engines.

Two engine variants compute the same math:

* ``fused`` — per segment: one forward transform, the spectrum held in
  local buffers, then per filter a pointwise multiply, inverse transform,
  post-processing, and a write to that segment's disjoint output window.
  Complex segments use the reorder-free transform pair (both operands in
  bit-reversed order); real segments use the packed half-length transform.
* ``pipelined`` — whole-signal passes with materialized intermediates:
  gather all segments, forward-transform them, multiply into a
  (n_fil, n_seg, n) product tensor, inverse-transform everything, then
  discard aliased samples while storing.  Natural-order transforms
  throughout, as a library-backed implementation would use.

``full_fft_convolve`` is the no-segmentation baseline (one transform of the
whole padded signal), and ``autotune_segment_size`` picks the fastest
segment length by measurement.

Segments never overlap on output: each writes only its own window, so any
number of them may run concurrently with no coordination.  ``workers``
splits the segment range across threads; the per-segment math does not
depend on the split, so serial and parallel runs are bit-identical.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from . import _kernels_np
from .backend import kernels as K
from .core import FilterSet, Precision, Signal, make_filterset, make_signal
from .errors import (BadLength, DomainMismatch, FilterTooLong,
                     HaloUnavailable, LayoutMismatch, PlanMismatch,
                     SegmentTooSmall, TooLarge)
from .fft import DEFAULT_MAX_FFT_LEN, FftPlan, make_plan
from .oracle import direct_convolve
from .postproc import NONE, PostProcSpec, apply_postproc

MODES = ("c2c", "r2r")
ENGINE_VARIANTS = ("fused", "pipelined", "full_fft_baseline", "direct_oracle")

DEFAULT_MAX_FULL_LEN = 1 << 25
PIPELINED_DEFAULT_SEGMENT = 8192


@dataclass(frozen=True)
class SegmentPlan:
    """Blocking geometry: segment s reads the (zero-extended) input window
    [s*valid_len - (tap_len-1) + origin, ... + fft_len) and writes output
    window [s*valid_len, min((s+1)*valid_len, signal_len))."""

    fft_len: int
    tap_len: int
    valid_len: int       # fft_len - tap_len + 1
    n_segments: int
    signal_len: int
    mode: str            # "c2c" | "r2r"
    origin: int


def next_pow2(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def auto_segment_len(tap_len: int, variant: str = "fused",
                     max_fft_len: int = DEFAULT_MAX_FFT_LEN) -> int:
    """Untuned default segment length.

    The fused engine keeps the discarded fraction around a quarter by
    taking the smallest power of two >= 4*(tap_len-1); the pipelined
    variant favors long segments.
    """
    if variant == "pipelined":
        return max(PIPELINED_DEFAULT_SEGMENT, next_pow2(tap_len))
    n = max(64, next_pow2(4 * (tap_len - 1)))
    return min(n, max_fft_len)


def plan(signal_len: int, tap_len: int, mode: str, origin: int = 0,
         fft_len: Optional[int] = None,
         max_fft_len: int = DEFAULT_MAX_FFT_LEN) -> SegmentPlan:
    """Build the overlap-save geometry.  ``fft_len=None`` selects the
    untuned default for the fused engine."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if signal_len < 1 or tap_len < 1:
        raise ValueError("signal and filter must be non-empty")
    if not 0 <= origin <= tap_len - 1:
        raise ValueError(f"origin {origin} outside [0, {tap_len - 1}]")
    if tap_len > max_fft_len:
        raise FilterTooLong(
            f"tap length {tap_len} exceeds max segment length {max_fft_len};"
            " use full_fft_convolve")
    if fft_len is None or fft_len == "auto":
        n = auto_segment_len(tap_len, max_fft_len=max_fft_len)
    else:
        n = int(fft_len)
        floor = 8 if mode == "r2r" else 4
        if not _is_pow2(n) or n < floor:
            raise BadLength(
                f"segment length must be a power of two >= {floor}, got {n}")
        if n < tap_len:
            raise SegmentTooSmall(
                f"segment length {n} shorter than filter ({tap_len} taps)")
    valid = n - tap_len + 1
    n_seg = -(-signal_len // valid)
    return SegmentPlan(fft_len=n, tap_len=tap_len, valid_len=valid,
                       n_segments=n_seg, signal_len=signal_len, mode=mode,
                       origin=origin)


def _geometry(seg_plan: SegmentPlan, halo: int) -> Tuple[int, int, int, int]:
    """(l_eff, t0, win_off, n_seg_eff) for the given postproc halo.

    A non-zero halo shrinks each segment's written span so the span plus
    its neighbors stays inside the segment's valid samples; adjacent
    segments tile the remainder.  Tap length 1 keeps the full span (no
    aliased region exists; seam neighbors are recomputed from the input).
    """
    m = seg_plan.tap_len
    o = seg_plan.origin
    if halo == 0 or m == 1:
        l_eff = seg_plan.valid_len
        t0 = m - 1
        win_off = o - (m - 1)
    else:
        l_eff = seg_plan.valid_len - 2 * halo
        t0 = m - 1 + halo
        win_off = o - (m - 1) - halo
        if l_eff < 1:
            raise HaloUnavailable(
                f"segment length {seg_plan.fft_len} leaves no room for a"
                f" halo of {halo} around {seg_plan.tap_len} taps")
    n_seg_eff = -(-seg_plan.signal_len // l_eff)
    return l_eff, t0, win_off, n_seg_eff


def output_windows(seg_plan: SegmentPlan,
                   postproc: PostProcSpec = NONE) -> List[Tuple[int, int]]:
    """The engine's per-segment output windows: disjoint, covering
    [0, signal_len) exactly."""
    l_eff, _, _, n_seg = _geometry(seg_plan, postproc.halo)
    n_s = seg_plan.signal_len
    return [(s * l_eff, min((s + 1) * l_eff, n_s)) for s in range(n_seg)]


# ---------------------------------------------------------------------------
# filter spectra
# ---------------------------------------------------------------------------

def _fft_plan_for(seg_plan: SegmentPlan, variant: str,
                  precision: Precision) -> FftPlan:
    return make_plan(seg_plan.fft_len, variant, precision,
                     max_len=max(seg_plan.fft_len, DEFAULT_MAX_FFT_LEN))


def transform_filters(filters: FilterSet, seg_plan: SegmentPlan,
                      layout: str = "natural") -> FilterSet:
    """Zero-pad every filter to the segment length and cache its forward
    transform in the layout the engine will use ("permuted" = bit-reversed,
    produced by the reorder-free complex kernel)."""
    if layout not in ("natural", "permuted"):
        raise ValueError(f"layout must be natural|permuted, got {layout!r}")
    if filters.tap_length != seg_plan.tap_len:
        raise PlanMismatch(
            f"filter tap length {filters.tap_length} != plan "
            f"{seg_plan.tap_len}")
    precision = (Precision.single
                 if filters.taps.dtype in (np.float32, np.complex64)
                 else Precision.double)
    n = seg_plan.fft_len
    if seg_plan.mode == "r2r":
        if filters.value_kind != "real":
            raise PlanMismatch("complex filter taps on the real path")
        if layout != "natural":
            raise LayoutMismatch("packed real spectra are natural-order only")
        fplan = _fft_plan_for(seg_plan, "real_packed", precision)
        padded = np.zeros((filters.n_filters, n), precision.real_dtype)
        padded[:, :filters.tap_length] = filters.taps
        spectra = np.empty((filters.n_filters, n // 2 + 1),
                           precision.complex_dtype)
        K.rfft_batch(padded, fplan.half_twiddles, fplan.twiddles, spectra)
    else:
        padded = np.zeros((filters.n_filters, n), precision.complex_dtype)
        padded[:, :filters.tap_length] = filters.taps
        if layout == "permuted":
            fplan = _fft_plan_for(seg_plan, "ct_dif_permuted", precision)
            K.dif_fwd_batch(padded, fplan.twiddles)
        else:
            fplan = _fft_plan_for(seg_plan, "stockham", precision)
            K.stockham_fwd_batch(padded, fplan.twiddles)
        spectra = padded
    spectra.setflags(write=False)
    return filters.with_spectra(spectra, layout, n)


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

def _chunk_bounds(n_items: int, workers: int) -> List[Tuple[int, int]]:
    k = max(1, min(workers, n_items))
    step = -(-n_items // k)
    return [(lo, min(lo + step, n_items)) for lo in range(0, n_items, step)]


def _run_chunks(bounds: List[Tuple[int, int]], fn) -> None:
    if len(bounds) == 1:
        fn(*bounds[0])
        return
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        futs = [pool.submit(fn, lo, hi) for lo, hi in bounds]
        for f in futs:
            f.result()


def _required_layout(mode: str, variant: str) -> str:
    return "permuted" if (mode == "c2c" and variant == "fused") else "natural"


def _check_inputs(signal: Signal, filters: FilterSet, seg_plan: SegmentPlan):
    if signal.domain != "time":
        raise DomainMismatch("convolution needs a time-domain signal")
    if signal.length != seg_plan.signal_len:
        raise PlanMismatch(
            f"signal length {signal.length} != plan {seg_plan.signal_len}")
    if filters.tap_length != seg_plan.tap_len:
        raise PlanMismatch(
            f"filter tap length {filters.tap_length} != plan "
            f"{seg_plan.tap_len}")
    if filters.origin != seg_plan.origin:
        raise PlanMismatch(
            f"filter origin {filters.origin} != plan {seg_plan.origin}")
    if seg_plan.mode == "r2r":
        if signal.value_kind != "real" or filters.value_kind != "real":
            raise PlanMismatch("r2r mode needs real signal and filters")
    else:
        if signal.value_kind != "complex":
            raise PlanMismatch("c2c mode needs a complex signal")
    sig_single = signal.samples.dtype in (np.float32, np.complex64)
    fil_single = filters.taps.dtype in (np.float32, np.complex64)
    if sig_single != fil_single:
        raise PlanMismatch("signal and filters must share one precision")


def convolve(signal: Signal, filters: FilterSet, seg_plan: SegmentPlan,
             variant: str = "fused", postproc: Optional[PostProcSpec] = None,
             workers: int = 1) -> np.ndarray:
    """Convolve the signal with every filter; returns (n_fil, signal_len).

    Filter spectra are computed on first use and cached in the returned
    FilterSet by ``transform_filters``; passing a FilterSet whose cache was
    built for a different FFT length or layout raises.
    """
    pp = postproc if postproc is not None else NONE
    if variant not in ENGINE_VARIANTS:
        raise ValueError(f"variant must be one of {ENGINE_VARIANTS}")
    _check_inputs(signal, filters, seg_plan)
    precision = signal.precision

    if variant == "direct_oracle":
        ref = direct_convolve(signal, filters).outputs
        return np.stack([
            apply_postproc(row, pp, (0, signal.length), True, True)
            for row in ref])
    if variant == "full_fft_baseline":
        return full_fft_convolve(signal, filters, pp)

    layout = _required_layout(seg_plan.mode, variant)
    if filters.spectra is None:
        filters = transform_filters(filters, seg_plan, layout)
    else:
        if filters.spectra_n != seg_plan.fft_len:
            raise PlanMismatch(
                f"cached spectra built for length {filters.spectra_n},"
                f" plan wants {seg_plan.fft_len}")
        if filters.spectra_layout != layout:
            raise LayoutMismatch(
                f"cached spectra layout {filters.spectra_layout!r} does not"
                f" match the {variant} engine's transform ({layout!r})")
        want_bins = (seg_plan.fft_len // 2 + 1 if seg_plan.mode == "r2r"
                     else seg_plan.fft_len)
        if filters.spectra.shape[1] != want_bins:
            raise PlanMismatch("cached spectra do not match the plan's mode")

    n_s = signal.length
    n_fil = filters.n_filters
    real_out = seg_plan.mode == "r2r" or pp.real_output
    out_dtype = (precision.real_dtype if real_out
                 else precision.complex_dtype)

    if pp.kind == "derivative" and n_s == 1:
        # a one-sample signal has no defined difference; emit zero
        return np.zeros((n_fil, 1), out_dtype)

    l_eff, t0, win_off, n_seg_eff = _geometry(seg_plan, pp.halo)
    out = np.full((n_fil, n_s), np.nan, out_dtype)

    if variant == "fused":
        _fused(signal, filters, seg_plan, pp, precision,
               l_eff, t0, win_off, n_seg_eff, workers, out)
    else:
        _pipelined(signal, filters, seg_plan, pp, precision,
                   l_eff, t0, win_off, n_seg_eff, workers, out)
    return out


def _fused(signal, filters, seg_plan, pp, precision,
           l_eff, t0, win_off, n_seg_eff, workers, out):
    n = seg_plan.fft_len
    m = seg_plan.tap_len
    origin = seg_plan.origin
    spectra = filters.spectra
    bounds = _chunk_bounds(n_seg_eff, workers)

    if seg_plan.mode == "c2c":
        fplan = _fft_plan_for(seg_plan, "ct_dif_permuted", precision)
        x = signal.samples
        h0 = np.ascontiguousarray(filters.taps[:, 0],
                                  precision.complex_dtype)

        def run(lo, hi):
            buf = np.empty(n, precision.complex_dtype)
            spec_buf = np.empty(n, precision.complex_dtype)
            if pp.kind == "magnitude_squared":
                K.fused_c2c_abs2(x, spectra, fplan.twiddles,
                                 fplan.twiddles_conj, m, origin, l_eff, t0,
                                 win_off, lo, hi, h0, out, buf, spec_buf)
            else:
                K.fused_c2c(x, spectra, fplan.twiddles, fplan.twiddles_conj,
                            m, origin, l_eff, t0, win_off, lo, hi,
                            pp.code, pp.scale, h0, out, buf, spec_buf)
    else:
        fplan = _fft_plan_for(seg_plan, "real_packed", precision)
        x = signal.samples
        h0 = np.ascontiguousarray(filters.taps[:, 0], precision.real_dtype)

        def run(lo, hi):
            rbuf = np.empty(n, precision.real_dtype)
            z_scr = np.empty(n // 2, precision.complex_dtype)
            bins = np.empty(n // 2 + 1, precision.complex_dtype)
            prod = np.empty(n // 2 + 1, precision.complex_dtype)
            K.fused_r2r(x, spectra, fplan.half_twiddles,
                        fplan.half_twiddles_conj, fplan.twiddles,
                        fplan.twiddles_conj, m, origin, l_eff, t0, win_off,
                        lo, hi, pp.code, pp.scale, h0, out, rbuf, z_scr,
                        bins, prod)

    _run_chunks(bounds, run)


def _pipelined(signal, filters, seg_plan, pp, precision,
               l_eff, t0, win_off, n_seg_eff, workers, out):
    """Whole-signal passes: gather -> forward transform -> multiply into a
    materialized product tensor -> inverse transform -> discard + store."""
    n = seg_plan.fft_len
    m = seg_plan.tap_len
    origin = seg_plan.origin
    n_s = seg_plan.signal_len
    x = signal.samples
    spectra = filters.spectra
    n_fil = filters.n_filters
    if seg_plan.mode == "c2c":
        h0 = np.ascontiguousarray(filters.taps[:, 0], precision.complex_dtype)
    else:
        h0 = np.ascontiguousarray(filters.taps[:, 0], precision.real_dtype)

    def run(seg_lo, seg_hi):
        rows = seg_hi - seg_lo
        starts = np.arange(seg_lo, seg_hi) * l_eff + win_off
        idx = starts[:, None] + np.arange(n)[None, :]
        ok = (idx >= 0) & (idx < n_s)
        mat = x[np.clip(idx, 0, n_s - 1)]
        mat[~ok] = 0

        if seg_plan.mode == "c2c":
            fplan = _fft_plan_for(seg_plan, "stockham", precision)
            K.stockham_fwd_batch(mat, fplan.twiddles)
            mid = mat[None, :, :] * spectra[:, None, :]
            K.stockham_inv_batch(mid.reshape(-1, n), fplan.twiddles_conj)
        else:
            fplan = _fft_plan_for(seg_plan, "real_packed", precision)
            bins = np.empty((rows, n // 2 + 1), precision.complex_dtype)
            K.rfft_batch(mat, fplan.half_twiddles, fplan.twiddles, bins)
            prod = bins[None, :, :] * spectra[:, None, :]
            mid = np.empty((n_fil, rows, n), precision.real_dtype)
            K.irfft_batch(prod.reshape(-1, n // 2 + 1),
                          fplan.half_twiddles_conj, fplan.twiddles_conj,
                          mid.reshape(-1, n))

        for f in range(n_fil):
            for r in range(rows):
                g0 = (seg_lo + r) * l_eff
                span = min(l_eff, n_s - g0)
                _kernels_np._store(mid[f, r], t0, g0, span, pp.code,
                                   pp.scale, h0[f], x, origin, n_s, m,
                                   out[f])

    _run_chunks(_chunk_bounds(n_seg_eff, workers), run)


def full_fft_convolve(signal: Signal, filters: FilterSet,
                      postproc: Optional[PostProcSpec] = None,
                      max_len: int = DEFAULT_MAX_FULL_LEN) -> np.ndarray:
    """No-segmentation baseline: one frequency-domain convolution over the
    whole signal, padded to the next power of two >= signal_len+tap_len-1."""
    pp = postproc if postproc is not None else NONE
    if signal.domain != "time":
        raise DomainMismatch("convolution needs a time-domain signal")
    if signal.value_kind == "real" and filters.value_kind == "complex":
        raise PlanMismatch("complex filter taps on a real signal")
    precision = signal.precision
    n_s = signal.length
    m = filters.tap_length
    o = filters.origin
    n_fil = filters.n_filters
    real_path = signal.value_kind == "real"
    padded_len = max(8 if real_path else 4, next_pow2(n_s + m - 1))
    if padded_len > max_len:
        raise TooLarge(
            f"padded length {padded_len} exceeds the {max_len}-sample budget")

    if real_path:
        fplan = make_plan(padded_len, "real_packed", precision,
                          max_len=padded_len)
        buf = np.zeros((1, padded_len), precision.real_dtype)
        buf[0, :n_s] = signal.samples
        xhat = np.empty((1, padded_len // 2 + 1), precision.complex_dtype)
        K.rfft_batch(buf, fplan.half_twiddles, fplan.twiddles, xhat)
        hpad = np.zeros((n_fil, padded_len), precision.real_dtype)
        hpad[:, :m] = filters.taps
        hhat = np.empty((n_fil, padded_len // 2 + 1), precision.complex_dtype)
        K.rfft_batch(hpad, fplan.half_twiddles, fplan.twiddles, hhat)
        prod = xhat * hhat
        full = np.empty((n_fil, padded_len), precision.real_dtype)
        K.irfft_batch(prod, fplan.half_twiddles_conj, fplan.twiddles_conj,
                      full)
    else:
        fplan = make_plan(padded_len, "stockham", precision,
                          max_len=padded_len)
        xpad = np.zeros(padded_len, precision.complex_dtype)
        xpad[:n_s] = signal.samples
        K.stockham_fwd_batch(xpad.reshape(1, -1), fplan.twiddles)
        hpad = np.zeros((n_fil, padded_len), precision.complex_dtype)
        hpad[:, :m] = filters.taps
        K.stockham_fwd_batch(hpad, fplan.twiddles)
        full = hpad
        full *= xpad[None, :]
        K.stockham_inv_batch(full, fplan.twiddles_conj)

    rows = [apply_postproc(full[f, o:o + n_s], pp, (0, n_s), True, True)
            for f in range(n_fil)]
    return np.stack(rows)


# ---------------------------------------------------------------------------
# segment-size autotuning
# ---------------------------------------------------------------------------

def measure_segment_times(tap_len: int, mode: str,
                          candidates: Iterable[int],
                          probe_len: int = 1 << 18,
                          n_filters: int = 4,
                          repeats: int = 3,
                          precision: Precision = Precision.single,
                          seed: int = 0) -> dict:
    """Median fused-engine wall time per feasible candidate segment length."""
    floor = 8 if mode == "r2r" else 4
    feasible = sorted(c for c in set(candidates)
                      if _is_pow2(c) and c >= max(tap_len, floor))
    if not feasible:
        raise SegmentTooSmall(
            f"no candidate segment length fits {tap_len} taps")
    rng = np.random.default_rng(seed)
    if mode == "r2r":
        sig = make_signal(rng.standard_normal(probe_len), "real", precision)
        taps = rng.standard_normal((n_filters, tap_len))
    else:
        sig = make_signal(rng.standard_normal(probe_len)
                          + 1j * rng.standard_normal(probe_len),
                          "complex", precision)
        taps = (rng.standard_normal((n_filters, tap_len))
                + 1j * rng.standard_normal((n_filters, tap_len)))
    fs = make_filterset(taps, 0, precision)
    times = {}
    for cand in feasible:
        p = plan(probe_len, tap_len, mode, 0, cand,
                 max_fft_len=max(cand, DEFAULT_MAX_FFT_LEN))
        cached = transform_filters(fs, p, _required_layout(mode, "fused"))
        convolve(sig, cached, p)          # warmup (and JIT) pass
        samples = []
        for _ in range(repeats):
            tic = time.perf_counter()
            convolve(sig, cached, p)
            samples.append(time.perf_counter() - tic)
        times[cand] = float(np.median(samples))
    return times


def autotune_segment_size(tap_len: int, mode: str,
                          candidates: Optional[Iterable[int]] = None,
                          probe_len: int = 1 << 18, **kwargs) -> int:
    """Pick the candidate with the lowest measured wall time; ties go to
    the smaller length."""
    if candidates is None:
        candidates = [1 << b for b in range(6, 13)]
    times = measure_segment_times(tap_len, mode, candidates, probe_len,
                                  **kwargs)
    best_n = None
    best_t = math.inf
    for cand in sorted(times):
        if times[cand] < best_t:
            best_n = cand
            best_t = times[cand]
    return best_n
