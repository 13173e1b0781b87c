"""Discretized base spaces ``Y`` and the glued quotient ``X_n x Y / ~``.

Points of the product are pairs ``(i, y)`` with ``1 <= i <= n`` and
``1 <= y <= m``. Two points are identified when they lie over the same
glued base point, or coincide. Functions on the product are ``n x m``
arrays ``F[i-1, y-1]``; functions on the quotient are those arrays that are
constant along every glued fiber.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from qperm.errors import DimensionError, StructuralError
from qperm.numerics import DEFAULT_EPS

Point = tuple[int, int]


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class DiscreteSpace:
    m: int
    edges: frozenset
    labels: Optional[tuple[float, ...]] = None
    kind: str = "custom"

    def __post_init__(self):
        if self.m < 1:
            raise StructuralError(f"space needs at least one point, got m={self.m}")
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise StructuralError(f"self-loop at {a}")
            if not (1 <= a <= self.m and 1 <= b <= self.m):
                raise StructuralError(f"edge ({a},{b}) outside 1..{self.m}")
            norm.add(_edge(int(a), int(b)))
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self, y: int) -> list[int]:
        return sorted({b if a == y else a for a, b in self.edges if y in (a, b)})


def build_interval_space(m: int) -> DiscreteSpace:
    """Path graph on ``m >= 2`` points at coordinates ``k/(m-1)``."""
    if m < 2:
        raise StructuralError(f"interval needs m >= 2, got {m}")
    return DiscreteSpace(m, frozenset((k, k + 1) for k in range(1, m)),
                         tuple(k / (m - 1) for k in range(m)), "interval")


def build_circle_space(m: int) -> DiscreteSpace:
    """Cycle graph on ``m >= 3`` points at angles ``2 pi k / m``."""
    if m < 3:
        raise StructuralError(f"circle needs m >= 3, got {m}")
    edges = frozenset(_edge(k, k % m + 1) for k in range(1, m + 1))
    return DiscreteSpace(m, edges, tuple(2 * math.pi * k / m for k in range(m)), "circle")


def build_custom_space(m: int, edges: Iterable[Sequence[int]]) -> DiscreteSpace:
    return DiscreteSpace(m, frozenset(tuple(e) for e in edges))


@dataclass(frozen=True)
class GluingSpec:
    n: int
    base: DiscreteSpace
    glued_indices: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError(f"fiber size must be positive, got n={self.n}")
        glued = frozenset(int(y) for y in self.glued_indices)
        bad = sorted(y for y in glued if not 1 <= y <= self.base.m)
        if bad:
            raise StructuralError(f"glued indices {bad} outside 1..{self.base.m}")
        object.__setattr__(self, "glued_indices", glued)

    @property
    def m(self) -> int:
        return self.base.m

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.base.kind, "m": self.m}
        if self.base.kind == "custom":
            out["edges"] = [list(e) for e in sorted(self.base.edges)]
        out["glued_indices"] = sorted(self.glued_indices)
        out["n"] = self.n
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "GluingSpec":
        try:
            kind, m, n = data["kind"], int(data["m"]), int(data["n"])
            glued = [int(y) for y in data.get("glued_indices", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed space JSON: {exc}") from None
        if kind == "interval":
            base = build_interval_space(m)
        elif kind == "circle":
            base = build_circle_space(m)
        elif kind == "custom":
            try:
                base = build_custom_space(m, [(int(a), int(b)) for a, b in data.get("edges", [])])
            except (TypeError, ValueError) as exc:
                raise StructuralError(f"malformed edge list: {exc}") from None
        else:
            raise StructuralError(f"unknown space kind {kind!r}")
        return cls(n, base, frozenset(glued))


@dataclass(frozen=True)
class GluedSpace:
    spec: GluingSpec
    classes: tuple[tuple[Point, ...], ...]
    class_adjacency: frozenset
    class_of: dict = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def quotient_dim(self) -> int:
        return len(self.classes)

    @property
    def glued(self) -> list[int]:
        return sorted(self.spec.glued_indices)

    def quotient_basis(self) -> list[np.ndarray]:
        """Indicator arrays of the point classes, in class order."""
        out = []
        for cls_ in self.classes:
            f = np.zeros((self.n, self.m))
            for i, y in cls_:
                f[i - 1, y - 1] = 1.0
            out.append(f)
        return out

    def to_class_coords(self, F: np.ndarray) -> np.ndarray:
        """Per-class values of a quotient function (first point of each class)."""
        F = _check_shape(F, self.n, self.m)
        return np.array([F[c[0][0] - 1, c[0][1] - 1] for c in self.classes])

    def from_class_coords(self, coords: Sequence[complex]) -> np.ndarray:
        coords = np.asarray(coords)
        if coords.shape != (self.quotient_dim,):
            raise DimensionError(f"expected {self.quotient_dim} class values")
        F = np.zeros((self.n, self.m), dtype=coords.dtype)
        for val, cls_ in zip(coords, self.classes):
            for i, y in cls_:
                F[i - 1, y - 1] = val
        return F

    def project(self, F: np.ndarray) -> np.ndarray:
        """Average over each glued fiber, giving the nearest quotient function."""
        F = np.array(_check_shape(F, self.n, self.m))
        for y in self.glued:
            F[:, y - 1] = F[:, y - 1].mean()
        return F


def _check_shape(F: np.ndarray, n: int, m: int) -> np.ndarray:
    F = np.asarray(F)
    if F.shape != (n, m):
        raise DimensionError(f"function array has shape {F.shape}, expected {(n, m)}")
    return F


def build_glued_space(spec: GluingSpec) -> GluedSpace:
    n, m = spec.n, spec.m
    glued = spec.glued_indices
    classes: list[tuple[Point, ...]] = []
    class_of: dict[Point, int] = {}
    for y in range(1, m + 1):
        if y in glued:
            fiber = tuple((i, y) for i in range(1, n + 1))
            for pt in fiber:
                class_of[pt] = len(classes)
            classes.append(fiber)
        else:
            for i in range(1, n + 1):
                class_of[(i, y)] = len(classes)
                classes.append(((i, y),))
    adj = set()
    for a, b in spec.base.edges:
        for i in range(1, n + 1):
            ca, cb = class_of[(i, a)], class_of[(i, b)]
            if ca != cb:
                adj.add(_edge(ca, cb))
    return GluedSpace(spec, tuple(classes), frozenset(adj), class_of)


def is_in_quotient_algebra(F: np.ndarray, spec: GluingSpec, eps: float = DEFAULT_EPS) -> bool:
    F = _check_shape(F, spec.n, spec.m)
    for y in spec.glued_indices:
        col = F[:, y - 1]
        if np.max(np.abs(col - col[0])) > eps:
            return False
    return True


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.components = size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.components -= 1


def connected_components(g: GluedSpace) -> int:
    uf = _UnionFind(g.quotient_dim)
    for a, b in g.class_adjacency:
        uf.union(a, b)
    return uf.components


def base_components(space: DiscreteSpace) -> int:
    uf = _UnionFind(space.m)
    for a, b in space.edges:
        uf.union(a - 1, b - 1)
    return uf.components
