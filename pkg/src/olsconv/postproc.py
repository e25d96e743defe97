"""Post-processing applied between the inverse transform and the output
store: per-element maps plus a non-local central difference whose stencil
needs one valid neighbor on each side of the written span."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import HaloUnavailable

KINDS = ("none", "scale", "magnitude_squared", "derivative")
_CODES = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True)
class PostProcSpec:
    kind: str = "none"
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown postproc kind {self.kind!r}")

    @property
    def code(self) -> int:
        return _CODES[self.kind]

    @property
    def halo(self) -> int:
        """Valid neighbor samples needed on each side of the output span."""
        return 1 if self.kind == "derivative" else 0

    @property
    def real_output(self) -> bool:
        return self.kind == "magnitude_squared"


NONE = PostProcSpec()


def apply_postproc(segment_result: np.ndarray, spec: PostProcSpec,
                   valid_range: Tuple[int, int],
                   left_edge: bool = False,
                   right_edge: bool = False) -> np.ndarray:
    """Post-process ``segment_result`` over ``valid_range`` = [lo, hi).

    The derivative reads one neighbor beyond each end of the range; a range
    end flagged as a signal edge uses a one-sided difference instead.  The
    output always has length hi - lo.
    """
    y = np.asarray(segment_result)
    lo, hi = valid_range
    if not 0 <= lo < hi <= y.shape[0]:
        raise ValueError(f"valid_range {valid_range} outside segment")
    seg = y[lo:hi]
    if spec.kind == "none":
        return seg.copy()
    if spec.kind == "scale":
        return spec.scale * seg
    if spec.kind == "magnitude_squared":
        if np.iscomplexobj(seg):
            return seg.real * seg.real + seg.imag * seg.imag
        return seg * seg
    # derivative
    span = hi - lo
    if span == 1 and left_edge and right_edge:
        return np.zeros(1, dtype=y.dtype)
    if not left_edge and lo < 1:
        raise HaloUnavailable("no valid neighbor before the output span")
    if not right_edge and hi > y.shape[0] - 1:
        raise HaloUnavailable("no valid neighbor after the output span")
    if (left_edge and lo + 1 >= y.shape[0]) or (right_edge and hi - 2 < 0):
        raise HaloUnavailable("segment too short for a one-sided difference")
    d = np.empty(span, dtype=y.dtype)
    a = 1 if left_edge else 0
    b = 1 if right_edge else 0
    d[a:span - b] = 0.5 * (y[lo + a + 1:hi - b + 1] - y[lo + a - 1:hi - b - 1])
    if left_edge:
        d[0] = y[lo + 1] - y[lo]
    if right_edge:
        d[span - 1] = y[hi - 1] - y[hi - 2]
    return d
