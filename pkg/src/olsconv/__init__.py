"""Overlap-save fast convolution of long 1-D signals against filter banks,
built on purpose-written radix-2 transform kernels and verified against a
direct time-domain reference."""

from .backend import BACKEND, backend_name
from .core import (CONV_TOL, FFT_TOL, FilterSet, Precision, Signal,
                   make_filterset, make_signal)
from .errors import (BadLength, BadOrigin, BadSpectrum, DomainMismatch,
                     EmptyInput, FilterTooLong, HaloUnavailable,
                     LayoutMismatch, OlsError, PlanMismatch, RaggedFilters,
                     SegmentTooSmall, TooLarge)
from .fft import (DEFAULT_MAX_FFT_LEN, FftPlan, bit_reverse_permutation,
                  fft_forward_permuted, fft_inverse_permuted, fft_stockham,
                  irfft_packed, make_plan, naive_dft, rfft_packed)
from .oracle import OracleResult, direct_convolve
from .ols import (ENGINE_VARIANTS, MODES, SegmentPlan, auto_segment_len,
                  autotune_segment_size, convolve, full_fft_convolve,
                  measure_segment_times, output_windows, plan,
                  transform_filters)
from .postproc import NONE, PostProcSpec, apply_postproc

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "backend_name",
    "CONV_TOL", "FFT_TOL", "FilterSet", "Precision", "Signal",
    "make_filterset", "make_signal",
    "BadLength", "BadOrigin", "BadSpectrum", "DomainMismatch", "EmptyInput",
    "FilterTooLong", "HaloUnavailable", "LayoutMismatch", "OlsError",
    "PlanMismatch", "RaggedFilters", "SegmentTooSmall", "TooLarge",
    "DEFAULT_MAX_FFT_LEN", "FftPlan", "bit_reverse_permutation",
    "fft_forward_permuted", "fft_inverse_permuted", "fft_stockham",
    "irfft_packed", "make_plan", "naive_dft", "rfft_packed",
    "OracleResult", "direct_convolve",
    "ENGINE_VARIANTS", "MODES", "SegmentPlan", "auto_segment_len",
    "autotune_segment_size", "convolve", "full_fft_convolve",
    "measure_segment_times", "output_windows", "plan", "transform_filters",
    "NONE", "PostProcSpec", "apply_postproc",
    "__version__",
]
