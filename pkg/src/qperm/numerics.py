"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the validating constructor. Tolerances are absolute entrywise for the
predicates and relative to the largest singular value for ranks.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

import numpy as np

from qperm.errors import DimensionError

DEFAULT_EPS = 1e-10


def as_matrix(data: Any) -> np.ndarray:
    """Return ``data`` as a finite 2-D complex array.

    Raises
    ------
    DimensionError
        If ``data`` is not two-dimensional or has an empty axis.
    ValueError
        If any entry is NaN or infinite.
    """
    a = np.array(data, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _check_eps(eps: float) -> float:
    if eps < 0:
        raise ValueError(f"tolerance must be nonnegative, got {eps}")
    return float(eps)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def max_norm(a: np.ndarray) -> float:
    """Largest absolute entry (0.0 for an empty array)."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def op_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def is_projection(a: np.ndarray, eps: float = DEFAULT_EPS) -> bool:
    eps = _check_eps(eps)
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"projection test needs a square matrix, got shape {a.shape}")
    return max_norm(a - adjoint(a)) <= eps and max_norm(a @ a - a) <= eps


def _stack(vectors: Iterable[Any]) -> np.ndarray:
    rows = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if not rows:
        return np.zeros((0, 0), dtype=complex)
    length = rows[0].size
    for r in rows:
        if r.size != length:
            raise DimensionError(
                f"all vectors must have the same length, got {length} and {r.size}")
    return np.vstack(rows)


def _rank(m: np.ndarray, eps: float) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > eps * s[0]))


def span_rank(vectors: Sequence[Any], eps: float = DEFAULT_EPS) -> int:
    """Numerical dimension of the span of ``vectors``.

    Each vector may be any array; it is flattened first. Singular values at
    or below ``eps`` times the largest one count as zero.
    """
    return _rank(_stack(vectors), _check_eps(eps))


def span_basis(vectors: Sequence[Any], eps: float = DEFAULT_EPS) -> np.ndarray:
    """Orthonormal basis (as rows) of the span of the flattened ``vectors``."""
    m = _stack(vectors)
    if m.size == 0:
        return m
    _, s, vh = np.linalg.svd(m, full_matrices=False)
    if s[0] == 0:
        return vh[:0]
    r = int(np.count_nonzero(s > _check_eps(eps) * s[0]))
    return vh[:r]


def nullspace_dim(op: np.ndarray, eps: float = DEFAULT_EPS) -> int:
    """Kernel dimension of ``op`` by rank-nullity on the numerical rank."""
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2:
        raise DimensionError(f"operator must be 2-D, got shape {op.shape}")
    return op.shape[1] - _rank(op, _check_eps(eps))


def matrix_to_json(a: np.ndarray) -> dict[str, Any]:
    a = as_matrix(a)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(data: dict[str, Any]) -> np.ndarray:
    try:
        rows, cols, entries = int(data["rows"]), int(data["cols"]), data["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    if rows < 1 or cols < 1 or len(entries) != rows * cols:
        raise DimensionError(
            f"matrix JSON declares {rows}x{cols} but holds {len(entries)} entries")
    flat = []
    for pair in entries:
        if len(pair) != 2:
            raise ValueError(f"matrix entry must be [re, im], got {pair!r}")
        flat.append(complex(float(pair[0]), float(pair[1])))
    return as_matrix(np.array(flat).reshape(rows, cols))
