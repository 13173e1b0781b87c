"""Magic unitaries: finite-dimensional representations of the generators
``a_ij`` of the quantum permutation group ``A_n``.

In memory the grid is indexed one-based, ``u.entry(i, j)`` for
``1 <= i, j <= n``; the raw array ``u.entries`` has shape ``(n, n, d, d)``
and is zero-based. The JSON format is zero-based too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Optional, Sequence

import numpy as np

from qperm.errors import StructuralError
from qperm.numerics import (
    DEFAULT_EPS,
    adjoint,
    commutator,
    kron,
    matrix_from_json,
    matrix_to_json,
    max_norm,
    op_norm,
)
from qperm.report import CheckReport

GENUINENESS_THRESHOLD = 1e-6
# commutator norms closer than this count as tied
_TIE = 1e-12


class MagicUnitary:
    """An ``n x n`` grid of ``d x d`` complex matrices.

    Construction only checks shapes and finiteness; the relations are checked
    by :func:`verify_magic_unitary`.
    """

    def __init__(self, entries: Any):
        arr = np.array(entries, dtype=complex)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
            raise StructuralError(
                f"magic unitary needs shape (n, n, d, d), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[2] < 1:
            raise StructuralError("n and d must be positive")
        if not np.all(np.isfinite(arr)):
            raise StructuralError("magic unitary entries must be finite")
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def d(self) -> int:
        return self._entries.shape[2]

    def entry(self, i: int, j: int) -> np.ndarray:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"generator index ({i},{j}) outside 1..{self.n}")
        return self._entries[i - 1, j - 1]

    def __repr__(self) -> str:
        return f"MagicUnitary(n={self.n}, d={self.d})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagicUnitary):
            return NotImplemented
        return self._entries.shape == other._entries.shape and bool(
            np.array_equal(self._entries, other._entries))

    __hash__ = None  # type: ignore[assignment]

    def conjugate_by(self, w: np.ndarray) -> "MagicUnitary":
        """Entrywise ``w a w*`` for a unitary ``w``."""
        return MagicUnitary(w @ self._entries @ adjoint(w))

    def permute(self, rows: Sequence[int], cols: Sequence[int]) -> "MagicUnitary":
        """Reorder rows and columns of the grid (zero-based index lists)."""
        return MagicUnitary(self._entries[np.ix_(list(rows), list(cols))])

    def direct_sum(self, other: "MagicUnitary") -> "MagicUnitary":
        if other.n != self.n:
            raise StructuralError("direct sum needs equal n")
        d1, d2 = self.d, other.d
        out = np.zeros((self.n, self.n, d1 + d2, d1 + d2), dtype=complex)
        out[:, :, :d1, :d1] = self._entries
        out[:, :, d1:, d1:] = other._entries
        return MagicUnitary(out)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [[matrix_to_json(self._entries[i, j]) for j in range(self.n)]
                        for i in range(self.n)],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "MagicUnitary":
        try:
            n, d, grid = int(data["n"]), int(data["d"]), data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed magic unitary JSON: {exc}") from None
        if len(grid) != n or any(len(row) != n for row in grid):
            raise StructuralError(f"entries grid is not {n}x{n}")
        try:
            mats = [[matrix_from_json(m) for m in row] for row in grid]
        except ValueError as exc:
            raise StructuralError(str(exc)) from None
        for row in mats:
            for m in row:
                if m.shape != (d, d):
                    raise StructuralError(f"entry of shape {m.shape}, expected {(d, d)}")
        return cls(np.array(mats))


@dataclass(frozen=True)
class GenuinenessCertificate:
    witness_pair: tuple[tuple[int, int], tuple[int, int]]
    commutator_norm: float
    threshold: float = GENUINENESS_THRESHOLD

    @property
    def valid(self) -> bool:
        return self.commutator_norm > self.threshold


def permutation_magic(sigma: Sequence[int]) -> MagicUnitary:
    """Scalar magic unitary of a permutation given one-based as
    ``[sigma(1), ..., sigma(n)]``.

    ``entry(k, i) = 1`` exactly when ``k = sigma(i)``, so the coaction sends
    ``e_i`` to ``e_sigma(i)``.
    """
    sigma = [int(s) for s in sigma]
    n = len(sigma)
    if n < 1 or sorted(sigma) != list(range(1, n + 1)):
        raise StructuralError(f"{sigma} is not a permutation of 1..{n}")
    out = np.zeros((n, n, 1, 1), dtype=complex)
    for i, s in enumerate(sigma):
        out[s - 1, i, 0, 0] = 1.0
    return MagicUnitary(out)


def identity_magic(n: int, d: int = 1) -> MagicUnitary:
    out = np.zeros((n, n, d, d), dtype=complex)
    for i in range(n):
        out[i, i] = np.eye(d)
    return MagicUnitary(out)


def rank_one_projection(theta: float, phi: float = 0.0) -> np.ndarray:
    """Projection onto ``(cos theta, e^{i phi} sin theta)``."""
    v = np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)])
    return np.outer(v, v.conj())


def build_two_projection_magic(theta: float) -> MagicUnitary:
    """The ``n = 4, d = 2`` magic unitary

    ::

        [ p    1-p  0    0   ]
        [ 1-p  p    0    0   ]
        [ 0    0    q    1-q ]
        [ 0    0    1-q  q   ]

    with ``p = diag(1, 0)`` and ``q`` the projection onto
    ``(cos theta, sin theta)``. Entries ``p`` and ``q`` fail to commute unless
    ``sin(theta) cos(theta) = 0``.
    """
    p = np.diag([1.0, 0.0]).astype(complex)
    c, s = np.cos(theta), np.sin(theta)
    q = np.array([[c * c, c * s], [c * s, s * s]], dtype=complex)
    one = np.eye(2, dtype=complex)
    z = np.zeros((2, 2), dtype=complex)
    grid = [
        [p, one - p, z, z],
        [one - p, p, z, z],
        [z, z, q, one - q],
        [z, z, one - q, q],
    ]
    return MagicUnitary(np.array(grid))


def random_magic_unitary(n: int, rng: np.random.Generator, blocks: int = 1) -> MagicUnitary:
    """A random valid magic unitary of size ``n`` and dimension ``2 * blocks``.

    Each block pairs up the indices into 2x2 sub-grids ``[[p, 1-p], [1-p, p]]``
    with independent random rank-one projections ``p`` (an odd index left over
    gets the identity). Each block is conjugated by a random unitary, its grid
    rows and columns are shuffled, and blocks are combined by direct sum.
    """
    if n < 1 or blocks < 1:
        raise ValueError("n and blocks must be positive")
    result: Optional[MagicUnitary] = None
    for _ in range(blocks):
        grid = np.zeros((n, n, 2, 2), dtype=complex)
        one = np.eye(2, dtype=complex)
        for b in range(n // 2):
            p = rank_one_projection(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
            i, j = 2 * b, 2 * b + 1
            grid[i, i] = grid[j, j] = p
            grid[i, j] = grid[j, i] = one - p
        if n % 2:
            grid[n - 1, n - 1] = one
        w, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        block = MagicUnitary(grid).conjugate_by(w).permute(
            rng.permutation(n), rng.permutation(n))
        result = block if result is None else result.direct_sum(block)
    assert result is not None
    return result


def relation_violations(u: MagicUnitary) -> dict[str, tuple[float, tuple[int, ...]]]:
    """Largest entrywise violation of each relation family, with the indices
    (one-based) where it occurs."""
    e = u.entries
    n, d = u.n, u.d
    eye = np.eye(d)
    out: dict[str, tuple[float, tuple[int, ...]]] = {}

    worst, where = 0.0, ()
    for i, j in product(range(n), repeat=2):
        a = e[i, j]
        v = max(max_norm(a - adjoint(a)), max_norm(a @ a - a))
        if v > worst:
            worst, where = v, (i + 1, j + 1)
    out["projection"] = (worst, where)

    rows = [max_norm(e[i].sum(axis=0) - eye) for i in range(n)]
    cols = [max_norm(e[:, j].sum(axis=0) - eye) for j in range(n)]
    out["row_sum"] = (max(rows), (int(np.argmax(rows)) + 1,))
    out["column_sum"] = (max(cols), (int(np.argmax(cols)) + 1,))

    worst, where = 0.0, ()
    for i in range(n):
        for j, k in combinations(range(n), 2):
            v = max_norm(e[i, j] @ e[i, k])
            if v > worst:
                worst, where = v, (i + 1, j + 1, i + 1, k + 1)
            v = max_norm(e[j, i] @ e[k, i])
            if v > worst:
                worst, where = v, (j + 1, i + 1, k + 1, i + 1)
    out["orthogonality"] = (worst, where)
    return out


def verify_magic_unitary(u: MagicUnitary, eps: float = DEFAULT_EPS) -> CheckReport:
    if not isinstance(u, MagicUnitary):
        raise StructuralError(f"expected a MagicUnitary, got {type(u).__name__}")
    viol = relation_violations(u)
    metrics: dict[str, Any] = {"n": u.n, "d": u.d}
    worst_case: dict[str, Any] = {}
    for family, (v, where) in viol.items():
        metrics[f"max_{family}_violation"] = v
        if where:
            worst_case[family] = list(where)
    passed = all(v <= eps for v, _ in viol.values())
    return CheckReport("magic", passed, metrics, worst_case, tolerance=eps)


def delta_rep(u: MagicUnitary) -> MagicUnitary:
    """Comultiplication at representation level:
    ``entry(i, j) = sum_k kron(u.entry(i, k), u.entry(k, j))``."""
    e = u.entries
    n, d = u.n, u.d
    out = np.zeros((n, n, d * d, d * d), dtype=complex)
    for i, j in product(range(n), repeat=2):
        out[i, j] = sum(kron(e[i, k], e[k, j]) for k in range(n))
    return MagicUnitary(out)


def genuineness_certificate(
    u: MagicUnitary, threshold: float = GENUINENESS_THRESHOLD
) -> Optional[GenuinenessCertificate]:
    """Pair of entries with the largest commutator operator norm, if that
    norm exceeds ``threshold``. Ties keep the lexicographically first pair."""
    if u.d == 1:
        return None
    idx = list(product(range(1, u.n + 1), repeat=2))
    best, pair = 0.0, None
    for a, b in combinations(idx, 2):
        v = op_norm(commutator(u.entry(*a), u.entry(*b)))
        if v > best + _TIE:
            best, pair = v, (a, b)
    if pair is None or best <= threshold:
        return None
    return GenuinenessCertificate(pair, best, threshold)
