"""Brute-force time-domain convolution: the ground truth everything else
is checked against.  Simple by design; never optimized beyond accumulating
in double precision."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels as K
from .core import FilterSet, Signal
from .errors import DomainMismatch

@dataclass(frozen=True)
class OracleResult:
    outputs: np.ndarray      # (n_fil, n_s)


def direct_convolve(signal: Signal, filters: FilterSet) -> OracleResult:
    """out[f, n] = sum_k taps[f, k] * s[n - k + origin], zeros off the ends.

    Always accumulates in double (complex double on the complex path) and
    rounds to the signal's working precision on store.
    """
    if signal.domain != "time":
        raise DomainMismatch("direct convolution needs a time-domain signal")
    if signal.value_kind == "real" and filters.value_kind == "complex":
        raise DomainMismatch("complex filter taps on a real signal")
    if signal.value_kind == "complex":
        x = np.asarray(signal.samples, dtype=np.complex128)
        taps = np.asarray(filters.taps, dtype=np.complex128)
        wide = np.complex128
    else:
        x = np.asarray(signal.samples, dtype=np.float64)
        taps = np.asarray(filters.taps, dtype=np.float64)
        wide = np.float64
    out = np.zeros((filters.n_filters, signal.length), dtype=wide)
    K.oracle_conv(x, taps, filters.origin, out)
    out = out.astype(signal.precision.dtype_for(signal.value_kind))
    return OracleResult(outputs=out)
