"""Radix-2 transform plans and kernels.

Three variants cover the engine's needs:

* ``ct_dif_permuted`` — decimation-in-frequency butterflies with the
  reorder pass dropped.  Forward output is bit-reversed; the matching
  inverse consumes that order directly, so a multiply-inverse round trip
  never pays for element reordering.
* ``stockham`` — auto-sort transform, natural order both ways, using a
  ping-pong scratch buffer.
* ``real_packed`` — n real samples packed pairwise into n/2 complex
  values, transformed at half length, then recombined with the standard
  even/odd split into bins 0..n/2.

Forward transforms are unscaled; inverses carry the full 1/n.  A literal
O(n^2) DFT (``naive_dft``) serves as the independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .backend import kernels as K
from .core import Precision
from .errors import BadLength, BadSpectrum

DEFAULT_MAX_FFT_LEN = 4096

VARIANTS = ("ct_dif_permuted", "stockham", "real_packed")

# spectrum orderings a transform can produce
LAYOUT_NATURAL = "natural"
LAYOUT_BIT_REVERSED = "bit_reversed"
LAYOUT_HALF_PACKED = "half_packed"

# relative |imag| allowed on the edge bins handed to irfft_packed
_EDGE_IM_TOL = {Precision.single: 1e-3, Precision.double: 1e-9}


@dataclass(frozen=True)
class FftPlan:
    """Transform length, variant, and precomputed twiddle tables.

    ``twiddles`` holds e^(-2*pi*i*j/length) for the indices the variant
    needs; real_packed plans additionally carry the table for the
    half-length transform.  Tables are read-only and safe to share.
    """

    length: int
    variant: str
    precision: Precision
    twiddles: np.ndarray
    twiddles_conj: np.ndarray
    half_twiddles: Optional[np.ndarray] = None
    half_twiddles_conj: Optional[np.ndarray] = None

    @property
    def layout(self) -> str:
        if self.variant == "ct_dif_permuted":
            return LAYOUT_BIT_REVERSED
        if self.variant == "real_packed":
            return LAYOUT_HALF_PACKED
        return LAYOUT_NATURAL


@lru_cache(maxsize=None)
def _tables(n: int, count: int, precision: Precision):
    """(e^(-2*pi*i*j/n), conjugate) for j < count, in working precision."""
    j = np.arange(count)
    tw = np.exp(-2j * np.pi * j / n).astype(precision.complex_dtype)
    twc = np.conj(tw)
    tw.setflags(write=False)
    twc.setflags(write=False)
    return tw, twc


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def make_plan(n: int, variant: str, precision: Precision = Precision.single,
              max_len: int = DEFAULT_MAX_FFT_LEN) -> FftPlan:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    floor = 8 if variant == "real_packed" else 4
    if not _is_pow2(n) or n < floor or n > max_len:
        raise BadLength(
            f"{variant} length must be a power of two in [{floor}, {max_len}],"
            f" got {n}")
    if variant == "real_packed":
        tw, twc = _tables(n, n // 2 + 1, precision)
        half_tw, half_twc = _tables(n // 2, n // 4, precision)
        return FftPlan(n, variant, precision, tw, twc, half_tw, half_twc)
    tw, twc = _tables(n, n // 2, precision)
    return FftPlan(n, variant, precision, tw, twc)


def _check_len(buf: np.ndarray, plan: FftPlan, variant: str) -> np.ndarray:
    buf = np.asarray(buf)
    if plan.variant != variant:
        raise ValueError(f"plan variant {plan.variant!r}, expected {variant!r}")
    if buf.ndim != 1 or buf.shape[0] != plan.length:
        raise BadLength(
            f"buffer length {buf.shape} does not match plan length {plan.length}")
    return buf


def fft_forward_permuted(buf: np.ndarray, plan: FftPlan) -> np.ndarray:
    """Unscaled forward transform; out[rev(k)] holds DFT bin k."""
    buf = _check_len(buf, plan, "ct_dif_permuted")
    a = np.array(buf, dtype=plan.precision.complex_dtype)
    K.dif_fwd(a, plan.twiddles)
    return a


def fft_inverse_permuted(buf: np.ndarray, plan: FftPlan) -> np.ndarray:
    """Exact inverse of fft_forward_permuted, including the 1/n scale."""
    buf = _check_len(buf, plan, "ct_dif_permuted")
    a = np.array(buf, dtype=plan.precision.complex_dtype)
    K.dit_inv(a, plan.twiddles_conj)
    return a


def fft_stockham(buf: np.ndarray, direction: str, plan: FftPlan) -> np.ndarray:
    """Auto-sort transform, natural order in and out."""
    buf = _check_len(buf, plan, "stockham")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be forward|inverse, got {direction!r}")
    a = np.array(buf, dtype=plan.precision.complex_dtype)
    scratch = np.empty_like(a)
    if direction == "forward":
        K.stockham_fwd(a, scratch, plan.twiddles)
    else:
        K.stockham_inv(a, scratch, plan.twiddles_conj)
    return a


def rfft_packed(buf: np.ndarray, plan: FftPlan) -> np.ndarray:
    """DFT bins 0..n/2 of n real samples via one half-length transform."""
    buf = _check_len(buf, plan, "real_packed")
    if np.iscomplexobj(buf):
        raise ValueError("rfft_packed expects real samples")
    rmat = np.array(buf, dtype=plan.precision.real_dtype).reshape(1, -1)
    bins = np.empty((1, plan.length // 2 + 1), plan.precision.complex_dtype)
    K.rfft_batch(rmat, plan.half_twiddles, plan.twiddles, bins)
    return bins[0]


def irfft_packed(bins: np.ndarray, plan: FftPlan) -> np.ndarray:
    """Inverse of rfft_packed (scaled); bins 0 and n/2 must be real."""
    bins = np.asarray(bins)
    if bins.ndim != 1 or bins.shape[0] != plan.length // 2 + 1:
        raise BadLength(
            f"expected {plan.length // 2 + 1} bins, got {bins.shape}")
    if plan.variant != "real_packed":
        raise ValueError(f"plan variant {plan.variant!r}, expected real_packed")
    scale = max(1.0, float(np.max(np.abs(bins))))
    tol = _EDGE_IM_TOL[plan.precision] * scale
    if abs(complex(bins[0]).imag) > tol or abs(complex(bins[-1]).imag) > tol:
        raise BadSpectrum("edge bins of a real spectrum must be real")
    b = np.array(bins, dtype=plan.precision.complex_dtype).reshape(1, -1)
    out = np.empty((1, plan.length), plan.precision.real_dtype)
    K.irfft_batch(b, plan.half_twiddles_conj, plan.twiddles_conj, out)
    return out[0]


def naive_dft(buf: np.ndarray, direction: str = "forward") -> np.ndarray:
    """Literal O(n^2) DFT sum in double precision; the test reference for
    every fast kernel.  Works for any n >= 1; inverse includes 1/n."""
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be forward|inverse, got {direction!r}")
    x = np.asarray(buf, dtype=np.complex128)
    n = x.shape[0]
    sign = -1.0 if direction == "forward" else 1.0
    w = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    idx = np.arange(n)
    out = np.empty(n, np.complex128)
    for k in range(n):
        out[k] = np.dot(x, w[(idx * k) % n])
    if direction == "inverse":
        out /= n
    return out


def bit_reverse_permutation(i: int, bits: int) -> int:
    """Reverse the low ``bits`` bits of ``i``."""
    if not 0 <= i < (1 << bits):
        raise ValueError(f"index {i} out of range for {bits} bits")
    r = 0
    for _ in range(bits):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r
