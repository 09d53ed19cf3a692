"""Binary codeword primitives: coercion, Hamming distance, correction radius.

Codewords are handled as 1-D numpy uint8 arrays of 0/1 symbols, indexed
most-significant position first. Helpers here accept '0'/'1' strings and
plain int sequences as well, so the rest of the package never worries
about input shape again.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "as_bit_vector",
    "as_bit_matrix",
    "bits_to_string",
    "bits_to_int",
    "int_to_bits",
    "hamming_distance",
    "hamming_weight",
    "correction_radius",
]


def as_bit_vector(bits, name: str = "codeword") -> np.ndarray:
    """Coerce *bits* into a 1-D uint8 array of 0/1 values.

    Accepts a '0'/'1' string, any int/bool sequence, or an ndarray.
    Raises ValueError for anything that is not strictly binary.
    """
    if isinstance(bits, str):
        if not bits or any(c not in "01" for c in bits):
            raise ValueError(f"{name} must be a non-empty string of '0'/'1', got {bits!r}")
        return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.floating) and np.all((arr == 0) | (arr == 1)):
            return arr.astype(np.uint8)
        raise ValueError(f"{name} must contain integer 0/1 symbols, got dtype {arr.dtype}")
    if np.any((arr != 0) & (arr != 1)):
        raise ValueError(f"{name} symbols must all be 0 or 1")
    return arr.astype(np.uint8)


def as_bit_matrix(rows, name: str = "codewords") -> np.ndarray:
    """Coerce *rows* into a 2-D uint8 matrix, one codeword per row.

    All rows must share one blocklength.
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        if rows.size == 0:
            raise ValueError(f"{name} must be non-empty")
        if np.any((rows != 0) & (rows != 1)):
            raise ValueError(f"{name} symbols must all be 0 or 1")
        return rows.astype(np.uint8)
    seq = list(rows)
    if not seq:
        raise ValueError(f"{name} must be non-empty")
    vecs = [as_bit_vector(r, name=f"{name}[{i}]") for i, r in enumerate(seq)]
    n = vecs[0].size
    for i, v in enumerate(vecs):
        if v.size != n:
            raise ValueError(f"{name}[{i}] has length {v.size}, expected {n}")
    return np.stack(vecs)


def bits_to_string(bits) -> str:
    """Render a bit vector as a '0'/'1' string, position 1 first."""
    vec = as_bit_vector(bits)
    return "".join("1" if b else "0" for b in vec)


def bits_to_int(bits) -> int:
    """Pack a bit vector into a Python int, first position most significant."""
    value = 0
    for b in as_bit_vector(bits):
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, n: int) -> np.ndarray:
    """Unpack *value* into an n-bit vector, most significant bit first."""
    if value < 0 or value >> n:
        raise ValueError(f"value {value} does not fit in {n} bits")
    return np.array([(value >> (n - 1 - j)) & 1 for j in range(n)], dtype=np.uint8)


def hamming_distance(a, b) -> int:
    """Number of positions in which two equal-length codewords differ."""
    va = as_bit_vector(a, name="a")
    vb = as_bit_vector(b, name="b")
    if va.size != vb.size:
        raise ValueError(f"length mismatch: {va.size} vs {vb.size}")
    return int(np.count_nonzero(va != vb))


def hamming_weight(a) -> int:
    """Number of nonzero positions of a codeword."""
    return int(np.count_nonzero(as_bit_vector(a, name="a")))


def correction_radius(d_min: int) -> int:
    """Guaranteed correctable errors for a code of minimum distance *d_min*.

    Evaluates floor((d_min - 1) / 2); requires d_min >= 1.
    """
    if d_min < 1:
        raise ValueError(f"d_min must be >= 1, got {d_min}")
    return (int(d_min) - 1) // 2
