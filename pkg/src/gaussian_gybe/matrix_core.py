"""Dense complex linear algebra shared by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Tensor products
follow the big-endian convention of ``numpy.kron``: the basis state
``|i_1 ... i_d>`` sits at row ``sum_k i_k * m**(d-k)``, leftmost factor most
significant.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionCapExceeded, DimensionMismatch

DEFAULT_DIM_CAP = 2**14
UNIT_NORM_TOL = 1e-12


def dim_cap() -> int:
    """Current dimension cap; ``GYBE_DIM_CAP`` overrides the default."""
    raw = os.environ.get("GYBE_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    return int(raw)


def check_dim(dim: int) -> int:
    cap = dim_cap()
    if dim > cap:
        raise DimensionCapExceeded(f"dimension {dim} exceeds cap {cap} (set GYBE_DIM_CAP to raise it)")
    return dim


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite square complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def identity(dim: int) -> np.ndarray:
    return np.eye(check_dim(dim), dtype=np.complex128)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply {a.shape[0]}x{a.shape[0]} by {b.shape[0]}x{b.shape[0]}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    check_dim(a.shape[0] * b.shape[0])
    return np.kron(a, b)


def embed(m, left_factors: int, right_factors: int, pad_dim: int) -> np.ndarray:
    """Return ``Id_pad^{(x)left} (x) M (x) Id_pad^{(x)right}``."""
    if left_factors < 0 or right_factors < 0:
        raise ValueError("padding counts must be non-negative")
    if pad_dim < 1:
        raise ValueError("pad_dim must be positive")
    m = as_matrix(m)
    left = pad_dim**left_factors
    right = pad_dim**right_factors
    check_dim(left * m.shape[0] * right)
    out = m
    if right > 1:
        out = np.kron(out, np.eye(right, dtype=np.complex128))
    if left > 1:
        out = np.kron(np.eye(left, dtype=np.complex128), out)
    return out


def apply_embedded(m, left_dim: int, right_dim: int, x) -> np.ndarray:
    """Compute ``(Id_left (x) M (x) Id_right) @ x`` without forming the padded operator.

    ``x`` may be a vector or a matrix with ``left_dim * M.dim * right_dim`` rows.
    """
    m = np.asarray(m, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    d = m.shape[0]
    rows = left_dim * d * right_dim
    if x.shape[0] != rows:
        raise DimensionMismatch(f"operand has {x.shape[0]} rows, expected {rows}")
    tail = x.shape[1:]
    cols = int(np.prod(tail)) if tail else 1
    blocks = x.reshape(left_dim, d, right_dim * cols)
    return (m @ blocks).reshape(x.shape)


def frobenius_distance(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def relative_residual(a, b, outer_dim: int = 1) -> float:
    """``||A - B||_F / max(1, ||A||_F)`` for ``A, B`` tensored with ``Id_outer``.

    Passing ``outer_dim`` lets a relation checked on a sub-window report the
    residual of the full-space operators, since ``||X (x) Id_k||_F = sqrt(k) ||X||_F``.
    """
    scale = np.sqrt(outer_dim)
    diff = frobenius_distance(a, b) * scale
    return diff / max(1.0, float(np.linalg.norm(a)) * scale)


def is_unitary(a, tol: float = 1e-10) -> tuple[bool, float]:
    """Return ``(||A A^dag - Id||_F <= tol, residual)``."""
    a = as_matrix(a)
    res = frobenius_distance(a @ a.conj().T, np.eye(a.shape[0]))
    return res <= tol, res


@dataclass(frozen=True)
class StateVector:
    """Pure state on ``(C^m)^{(x) arity}``."""

    m: int
    arity: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != self.m**self.arity:
            raise DimensionMismatch(f"{amps.size} amplitudes for m={self.m}, arity={self.arity}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("state has non-finite amplitudes")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, m: int, digits) -> "StateVector":
        digits = list(digits)
        if any(not 0 <= d < m for d in digits):
            raise ValueError(f"basis digits must lie in [0, {m})")
        amps = np.zeros(check_dim(m ** len(digits)), dtype=np.complex128)
        amps[basis_index(m, digits)] = 1.0
        return cls(m, len(digits), amps)

    @classmethod
    def normalized(cls, m: int, arity: int, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=np.complex128)
        return cls(m, arity, amps / np.linalg.norm(amps))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = UNIT_NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol


def basis_index(m: int, digits) -> int:
    idx = 0
    for d in digits:
        idx = idx * m + int(d)
    return idx


def basis_digits(m: int, index: int, arity: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity):
        index, r = divmod(index, m)
        out.append(r)
    return tuple(reversed(out))


# serialization -------------------------------------------------------------


def matrix_to_json(a) -> str:
    a = as_matrix(a)
    entries = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return json.dumps({"dim": a.shape[0], "entries": entries})


def matrix_from_json(text: str) -> np.ndarray:
    obj = json.loads(text)
    dim = int(obj["dim"])
    entries = obj["entries"]
    if len(entries) != dim * dim:
        raise DimensionMismatch(f"{len(entries)} entries for dim {dim}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return as_matrix(flat.reshape(dim, dim))


def matrix_to_csv(a, skip_zeros: bool = False) -> str:
    a = as_matrix(a)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "re", "im"])
    for (i, j), z in np.ndenumerate(a):
        if skip_zeros and z == 0:
            continue
        w.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def matrix_from_csv(text: str, dim: int | None = None) -> np.ndarray:
    rows = list(csv.DictReader(io.StringIO(text)))
    if dim is None:
        dim = 1 + max(max(int(r["i"]), int(r["j"])) for r in rows)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for r in rows:
        out[int(r["i"]), int(r["j"])] = complex(float(r["re"]), float(r["im"]))
    return as_matrix(out)
