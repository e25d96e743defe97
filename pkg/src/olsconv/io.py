"""Signal/filter file formats used by the CLI.

Binary: a 16-byte header (magic ``OLS1``, value-kind byte, precision byte,
two reserved bytes, little-endian uint64 sample count) followed by raw
little-endian samples of the working precision; complex samples are
interleaved (re, im) pairs.  Text: one sample per line, two whitespace
columns (re im) for complex.  ``.txt`` paths read and write text; anything
else is binary, with the magic deciding on read.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from .core import Precision

MAGIC = b"OLS1"
_KIND_CODE = {"real": 0, "complex": 1}
_KIND_NAME = {v: k for k, v in _KIND_CODE.items()}
_PREC_CODE = {Precision.single: 0, Precision.double: 1}
_PREC_NAME = {v: k for k, v in _PREC_CODE.items()}


def _wire_dtype(kind: str, precision: Precision) -> np.dtype:
    table = {
        ("real", Precision.single): "<f4",
        ("real", Precision.double): "<f8",
        ("complex", Precision.single): "<c8",
        ("complex", Precision.double): "<c16",
    }
    return np.dtype(table[(kind, precision)])


def write_samples(path: Union[str, Path], samples: np.ndarray) -> None:
    path = Path(path)
    kind = "complex" if np.iscomplexobj(samples) else "real"
    precision = (Precision.single
                 if samples.dtype in (np.float32, np.complex64)
                 else Precision.double)
    if path.suffix == ".txt":
        with open(path, "w") as fh:
            if kind == "complex":
                for v in samples:
                    fh.write(f"{float(v.real)!r} {float(v.imag)!r}\n")
            else:
                for v in samples:
                    fh.write(f"{float(v)!r}\n")
        return
    header = MAGIC + struct.pack(
        "<BBxxQ", _KIND_CODE[kind], _PREC_CODE[precision], samples.size)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(
            samples, dtype=_wire_dtype(kind, precision)).tobytes())


def read_samples(path: Union[str, Path],
                 precision: Precision = Precision.single,
                 ) -> Tuple[np.ndarray, str, Precision]:
    """Returns (samples, value_kind, precision).  ``precision`` is only a
    default for text files; binary headers carry their own."""
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] == MAGIC:
        if len(raw) < 16:
            raise ValueError(f"{path}: truncated header")
        kind_code, prec_code, count = struct.unpack("<BBxxQ", raw[4:16])
        if kind_code not in _KIND_NAME or prec_code not in _PREC_NAME:
            raise ValueError(f"{path}: bad header field")
        kind = _KIND_NAME[kind_code]
        prec = _PREC_NAME[prec_code]
        dtype = _wire_dtype(kind, prec)
        body = raw[16:]
        if len(body) != count * dtype.itemsize:
            raise ValueError(
                f"{path}: expected {count} samples, found "
                f"{len(body) // dtype.itemsize}")
        return np.frombuffer(body, dtype=dtype).copy(), kind, prec
    # plain text fallback
    rows = [ln.split() for ln in raw.decode().splitlines() if ln.strip()]
    if not rows:
        raise ValueError(f"{path}: no samples")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or width not in (1, 2):
        raise ValueError(f"{path}: expected 1 or 2 columns per line")
    vals = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    if width == 2:
        arr = (vals[:, 0] + 1j * vals[:, 1]).astype(precision.complex_dtype)
        return arr, "complex", precision
    return vals[:, 0].astype(precision.real_dtype), "real", precision
