"""The coaction of a magic-unitary representation on functions over
``X_n x Y`` and its restriction to the glued quotient.

``alpha(e_i (x) f) = sum_k e_k (x) f (x) a_ki`` is stored by its point
evaluations: for a function ``F`` the value at ``(x_k, y)`` is the ``d x d``
matrix ``sum_i F(i, y) u.entry(k, i)``. This layout already puts the
``C(Y)`` factor next to ``C(X_n)``, so no leg flip is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from qperm.errors import DimensionError, StructuralError
from qperm.magic import MagicUnitary, delta_rep
from qperm.ncalg import technical_lemma_identity
from qperm.ncalg.coeff import QQi
from qperm.numerics import DEFAULT_EPS, adjoint, max_norm, nullspace_dim, span_basis, span_rank
from qperm.report import CheckReport
from qperm.spaces import GluedSpace, is_in_quotient_algebra


@dataclass(frozen=True)
class CoactionValue:
    """``values[k-1, y-1]`` is ``(ev_{x_k} (x) ev_y (x) id) alpha(F)``."""

    values: np.ndarray
    space: Optional[GluedSpace] = None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def d(self) -> int:
        return self.values.shape[2]

    def value(self, k: int, y: int) -> np.ndarray:
        return self.values[k - 1, y - 1]


@dataclass(frozen=True)
class RepAlgebra:
    d: int
    basis: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def apply_coaction(F: np.ndarray, u: MagicUnitary, space: Optional[GluedSpace] = None) -> CoactionValue:
    F = np.asarray(F)
    if F.ndim != 2 or F.shape[0] != u.n:
        raise DimensionError(f"function array of shape {F.shape} does not match n={u.n}")
    if space is not None and F.shape != (space.n, space.m):
        raise DimensionError(f"function array of shape {F.shape} does not match the space")
    return CoactionValue(np.einsum("iy,kiab->kyab", F, u.entries), space)


def _matrix_coaction(V: np.ndarray, u: MagicUnitary) -> np.ndarray:
    """Coaction applied to a matrix-valued function ``V[k, y]``; the new
    quantum leg goes first, matching ``(alpha (x) id)``."""
    n, m, d, _ = V.shape
    e = u.entries
    out = np.zeros((n, m, u.d * d, u.d * d), dtype=complex)
    for l, k, y in product(range(n), range(n), range(m)):
        out[l, y] += np.kron(e[l, k], V[k, y])
    return out


def random_quotient_functions(g: GluedSpace, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Uniform ``[-1, 1]`` arrays projected onto the quotient algebra."""
    return [g.project(rng.uniform(-1.0, 1.0, size=(g.n, g.m))) for _ in range(count)]


def _require_same_n(g: GluedSpace, u: MagicUnitary) -> None:
    if g.n != u.n:
        raise StructuralError(f"space has n={g.n} but magic unitary has n={u.n}")


def fiber_spread(cv: CoactionValue, y: int) -> float:
    """Largest difference between slices over the fiber of base point ``y``."""
    vals = cv.values[:, y - 1]
    return max(max_norm(vals[k] - vals[l]) for k in range(cv.n) for l in range(cv.n))


def check_technical_lemma(F: np.ndarray, u: MagicUnitary, eps: float = DEFAULT_EPS,
                          symbolic: bool = False) -> CheckReport:
    """At every base point where ``F`` is constant along the fiber, every
    slice of ``alpha(F)`` must be that constant times the identity.

    With ``symbolic=True`` the matching identity ``sum_i c a(k,i) = c 1`` is
    also checked exactly for each such point and the two verdicts compared.
    """
    F = np.asarray(F)
    cv = apply_coaction(F, u)
    eye = np.eye(u.d)
    worst, where = 0.0, {}
    points = 0
    agree = True
    for y in range(1, F.shape[1] + 1):
        col = F[:, y - 1]
        if np.max(np.abs(col - col[0])) > eps:
            continue
        points += 1
        local = 0.0
        for k in range(1, u.n + 1):
            v = max_norm(cv.value(k, y) - col[0] * eye)
            local = max(local, v)
            if v > worst:
                worst, where = v, {"k": k, "y": y}
        if symbolic:
            c = QQi.coerce(complex(col[0]))
            sym = all(technical_lemma_identity(u.n, k, c).passed for k in range(1, u.n + 1))
            agree = agree and sym == (local <= u.n * eps)
    metrics = {"fiber_constant_points": points, "max_violation": worst}
    if symbolic:
        metrics["symbolic_agreement"] = agree
    passed = worst <= u.n * eps and agree
    return CheckReport("technical", passed, metrics, where, tolerance=eps)


def check_invariance(g: GluedSpace, u: MagicUnitary, trials: int = 100, eps: float = DEFAULT_EPS,
                     seed: int = 0, functions: Sequence[np.ndarray] = ()) -> CheckReport:
    """Slices of ``alpha(F)`` over a glued point must agree for every ``F``
    in the quotient algebra.

    Tested on the class-indicator basis, ``trials`` seeded random members and
    any extra ``functions`` (which are *asserted* members, so passing a
    non-member is a negative control that should fail).
    """
    _require_same_n(g, u)
    rng = np.random.default_rng(seed)
    tests = list(g.quotient_basis()) + random_quotient_functions(g, trials, rng) + list(functions)
    worst, where = 0.0, {}
    for t, F in enumerate(tests):
        cv = apply_coaction(F, u, g)
        for y in g.glued:
            v = fiber_spread(cv, y)
            if v > worst:
                worst, where = v, {"function": t, "y": y}
    metrics = {"functions_tested": len(tests), "glued_points": len(g.glued), "max_violation": worst}
    return CheckReport("invariance", worst <= eps, metrics, where, tolerance=eps, seed=seed)


def urysohn_point(g: GluedSpace) -> int:
    """Smallest non-glued base point."""
    for y in range(1, g.m + 1):
        if y not in g.spec.glued_indices:
            return y
    raise StructuralError("every base point is glued; faithfulness needs a point outside Y_1")


def check_faithful_slices(g: GluedSpace, u: MagicUnitary, eps: float = DEFAULT_EPS) -> CheckReport:
    """Recover every ``u.entry(k, i)`` as the slice at ``(x_k, y0)`` of
    ``alpha(e_i (x) f)``, where ``f`` is the indicator of a non-glued point
    ``y0``."""
    _require_same_n(g, u)
    y0 = urysohn_point(g)
    f = np.zeros(g.m)
    f[y0 - 1] = 1.0
    worst, where = 0.0, {}
    recovered = 0
    for i in range(1, g.n + 1):
        F = np.zeros((g.n, g.m))
        F[i - 1] = f
        if not is_in_quotient_algebra(F, g.spec, 0.0):
            raise StructuralError(f"e_{i} (x) f is not a quotient function")
        cv = apply_coaction(F, u, g)
        for k in range(1, g.n + 1):
            v = max_norm(cv.value(k, y0) - u.entry(k, i))
            if v <= eps:
                recovered += 1
            if v > worst:
                worst, where = v, {"k": k, "i": i}
    metrics = {"y0": y0, "generators": g.n * g.n, "recovered": recovered, "max_error": worst}
    return CheckReport("faithful", recovered == g.n * g.n, metrics, where, tolerance=eps)


def fixed_point_operator(g: GluedSpace, u: MagicUnitary) -> np.ndarray:
    """Matrix of ``F -> alpha(F) - F (x) 1`` from class coordinates to
    flattened point values."""
    _require_same_n(g, u)
    eye = np.eye(u.d)
    cols = []
    for B in g.quotient_basis():
        cv = apply_coaction(B, u, g)
        cols.append((cv.values - B[:, :, None, None] * eye).ravel())
    return np.array(cols).T


def fixed_point_space(g: GluedSpace, u: MagicUnitary, eps: float = DEFAULT_EPS) -> CheckReport:
    """Dimension of ``{F : alpha(F) = F (x) 1}`` inside the quotient algebra.

    The functions ``1 (x) f`` are always fixed, so the dimension is at least
    ``m``; the check asserts that bound and reports the ergodicity verdict.
    """
    dim = nullspace_dim(fixed_point_operator(g, u), eps)
    metrics = {
        "dimension": dim,
        "quotient_dim": g.quotient_dim,
        "m": g.m,
        "verdict": "ergodic" if dim == 1 else "not ergodic",
    }
    return CheckReport("ergodic", dim >= g.m, metrics, tolerance=eps)


def saturate_rep_algebra(u: MagicUnitary, eps: float = DEFAULT_EPS) -> RepAlgebra:
    """Linear basis of the *-algebra generated by the entries of ``u``."""
    d = u.d
    gens = [np.eye(d, dtype=complex)] + [u.entries[i, j] for i, j in product(range(u.n), repeat=2)]
    basis = [b.reshape(d, d) for b in span_basis(gens, eps)]
    while True:
        cand = list(basis)
        cand += [a @ b for a in basis for b in basis]
        cand += [adjoint(a) for a in basis]
        new = [b.reshape(d, d) for b in span_basis(cand, eps)]
        if len(new) == len(basis):
            return RepAlgebra(d, tuple(basis))
        basis = new


def density_rank(g: GluedSpace, u: MagicUnitary, eps: float = DEFAULT_EPS) -> CheckReport:
    """Rank of ``{alpha(F_r)(1 (x) b_s)}`` against ``dim C(Z/~) * dim B``.

    Asserted for scalar representations only; otherwise informational.
    """
    _require_same_n(g, u)
    alg = saturate_rep_algebra(u, eps)
    vecs = []
    for B in g.quotient_basis():
        vals = apply_coaction(B, u, g).values
        for b in alg.basis:
            vecs.append(vals @ b)
    rank = span_rank(vecs, eps)
    target = g.quotient_dim * alg.dim
    metrics = {"rank": rank, "target": target, "quotient_dim": g.quotient_dim,
               "algebra_dim": alg.dim}
    if rank == target:
        metrics["verdict"] = "density holds at representation level"
    passed = (rank == target) if u.d == 1 else None
    return CheckReport("density", passed, metrics, tolerance=eps)


def check_homomorphism(g: GluedSpace, u: MagicUnitary, trials: int = 20, eps: float = DEFAULT_EPS,
                       seed: int = 0) -> CheckReport:
    """Unital, multiplicative and *-preserving on random quotient functions."""
    _require_same_n(g, u)
    rng = np.random.default_rng(seed)
    one = apply_coaction(np.ones((g.n, g.m)), u, g).values
    unit = max_norm(one - np.eye(u.d))
    mult = star = 0.0
    where: dict = {}
    for t in range(trials):
        F, G = random_quotient_functions(g, 2, rng)
        aF = apply_coaction(F, u, g).values
        aG = apply_coaction(G, u, g).values
        v = max_norm(apply_coaction(F * G, u, g).values - aF @ aG)
        if v > mult:
            mult, where = v, {"trial": t, "property": "multiplicative"}
        H = F + 1j * G
        v = max_norm(apply_coaction(np.conj(H), u, g).values - adjoint(apply_coaction(H, u, g).values))
        if v > star:
            star = v
    metrics = {"unit_violation": unit, "multiplicative_violation": mult,
               "adjoint_violation": star, "trials": trials}
    passed = max(unit, mult, star) <= eps
    return CheckReport("homomorphism", passed, metrics, where, tolerance=eps, seed=seed)


def check_coassociativity(g: GluedSpace, u: MagicUnitary, eps: float = 1e-9) -> CheckReport:
    """``(alpha (x) id) alpha = (id (x) Delta) alpha`` on the quotient basis,
    as ``d**2``-dimensional matrix values."""
    _require_same_n(g, u)
    du = delta_rep(u)
    worst, where = 0.0, {}
    for r, B in enumerate(g.quotient_basis()):
        lhs = _matrix_coaction(apply_coaction(B, u, g).values, u)
        rhs = apply_coaction(B, du, g).values
        v = max_norm(lhs - rhs)
        if v > worst:
            worst, where = v, {"basis_function": r}
    metrics = {"functions_tested": g.quotient_dim, "max_violation": worst}
    return CheckReport("coassoc_rep", worst <= eps, metrics, where, tolerance=eps)
