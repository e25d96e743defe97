"""Domain types shared by every module: precision, signals, filter sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .errors import BadOrigin, EmptyInput, RaggedFilters


class Precision(enum.Enum):
    single = "single"
    double = "double"

    @property
    def real_dtype(self) -> np.dtype:
        return np.dtype(np.float32 if self is Precision.single else np.float64)

    @property
    def complex_dtype(self) -> np.dtype:
        return np.dtype(np.complex64 if self is Precision.single else np.complex128)

    def dtype_for(self, value_kind: str) -> np.dtype:
        return self.real_dtype if value_kind == "real" else self.complex_dtype


# Acceptance tolerances, relative to the output's max magnitude.
FFT_TOL = {Precision.single: 1e-5, Precision.double: 1e-12}
CONV_TOL = {Precision.single: 1e-4, Precision.double: 1e-10}


@dataclass(frozen=True)
class Signal:
    """A 1-D sequence of samples tagged with its domain and value kind.

    Real signals keep a real backing store; complex never masquerades as
    real or vice versa.
    """

    samples: np.ndarray
    length: int
    domain: str          # "time" | "frequency"
    value_kind: str      # "real" | "complex"

    @property
    def precision(self) -> Precision:
        if self.samples.dtype in (np.float32, np.complex64):
            return Precision.single
        return Precision.double


@dataclass(frozen=True)
class FilterSet:
    """N_fil filters of uniform tap length with an output-alignment origin.

    ``spectra`` is a write-once cache filled by ``ols.transform_filters``:
    shape (n_fil, N) for the complex path or (n_fil, N//2 + 1) packed bins
    for the real path.  ``spectra_layout`` records which forward transform
    produced the cache ("permuted" for the reorder-free complex kernel,
    "natural" otherwise); ``spectra_n`` the FFT length it was built for.
    """

    taps: np.ndarray     # (n_fil, tap_length)
    tap_length: int
    origin: int
    value_kind: str
    spectra: Optional[np.ndarray] = None
    spectra_layout: Optional[str] = None
    spectra_n: Optional[int] = None

    @property
    def n_filters(self) -> int:
        return self.taps.shape[0]

    def with_spectra(self, spectra: np.ndarray, layout: str, n: int) -> "FilterSet":
        return replace(self, spectra=spectra, spectra_layout=layout, spectra_n=n)


def make_signal(
    raw: Union[Sequence, np.ndarray],
    value_kind: str = "real",
    precision: Precision = Precision.single,
) -> Signal:
    """Build a time-domain Signal from raw samples.

    ``raw`` may be a flat sequence of scalars, complex values, or (re, im)
    pairs when ``value_kind`` is "complex".
    """
    if value_kind not in ("real", "complex"):
        raise ValueError(f"unknown value_kind {value_kind!r}")
    arr = np.asarray(raw)
    if arr.size == 0:
        raise EmptyInput("signal must contain at least one sample")
    if value_kind == "complex" and arr.ndim == 2 and arr.shape[1] == 2:
        arr = arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim != 1:
        raise ValueError("signal samples must form a 1-D sequence")
    if value_kind == "real" and np.iscomplexobj(arr):
        raise ValueError("complex samples passed for a real signal")
    samples = np.ascontiguousarray(arr, dtype=precision.dtype_for(value_kind))
    samples.setflags(write=False)
    return Signal(samples=samples, length=samples.size, domain="time",
                  value_kind=value_kind)


def make_filterset(
    taps: Union[Sequence[Sequence], np.ndarray],
    origin: int = 0,
    precision: Precision = Precision.single,
) -> FilterSet:
    """Build a FilterSet; the value kind is inferred from the tap values."""
    rows = [np.asarray(t) for t in taps]
    if not rows or any(r.size == 0 for r in rows):
        raise EmptyInput("filter set must contain at least one non-empty filter")
    m = rows[0].size
    if any(r.size != m for r in rows):
        raise RaggedFilters(
            f"all filters must share one tap length, got {[r.size for r in rows]}")
    if not 0 <= origin <= m - 1:
        raise BadOrigin(f"origin {origin} outside [0, {m - 1}]")
    value_kind = "complex" if any(np.iscomplexobj(r) for r in rows) else "real"
    mat = np.ascontiguousarray(np.stack(rows), dtype=precision.dtype_for(value_kind))
    mat.setflags(write=False)
    return FilterSet(taps=mat, tap_length=m, origin=origin, value_kind=value_kind)
