"""Scenario files: which representation, which glued space, which checks."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from qperm import coaction, magic, ncalg, spaces
from qperm.errors import StructuralError
from qperm.magic import MagicUnitary
from qperm.report import CheckReport

CHECK_NAMES = (
    "magic", "symbolic", "coassoc", "invariance", "technical",
    "faithful", "ergodic", "connected", "density", "homomorphism",
)
SOUNDNESS_TOL = 1e-9
COASSOC_TOL = 1e-9


def build_unitary(spec: Any) -> MagicUnitary:
    if not isinstance(spec, dict):
        raise StructuralError("unitary must be a JSON object")
    if "two_projection" in spec:
        try:
            theta = float(spec["two_projection"]["theta"])
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"bad two_projection spec: {exc}") from None
        if not math.isfinite(theta):
            raise StructuralError("theta must be finite")
        return magic.build_two_projection_magic(theta)
    if "permutation" in spec:
        perm = spec["permutation"]
        if not isinstance(perm, list) or not all(isinstance(s, int) for s in perm):
            raise StructuralError("permutation must be a list of integers")
        return magic.permutation_magic(perm)
    return MagicUnitary.from_json(spec)


@dataclass
class Scenario:
    unitary: dict
    space: dict
    tolerance: float = 1e-10
    checks: list = field(default_factory=lambda: list(CHECK_NAMES))
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        self.u = build_unitary(self.unitary)
        if not isinstance(self.space, dict):
            raise StructuralError("space must be a JSON object")
        self.g = spaces.build_glued_space(spaces.GluingSpec.from_json(self.space))
        if self.g.n != self.u.n:
            raise StructuralError(f"space.n={self.g.n} does not match unitary n={self.u.n}")
        unknown = [c for c in self.checks if c not in CHECK_NAMES]
        if unknown:
            raise StructuralError(f"unknown checks {unknown}; choose from {list(CHECK_NAMES)}")
        if not (isinstance(self.tolerance, (int, float)) and self.tolerance >= 0):
            raise StructuralError("tolerance must be a nonnegative number")
        if not isinstance(self.seed, int) or not isinstance(self.trials, int) or self.trials < 0:
            raise StructuralError("seed and trials must be integers, trials >= 0")

    @classmethod
    def from_json(cls, data: Any) -> "Scenario":
        if not isinstance(data, dict):
            raise StructuralError("scenario must be a JSON object")
        known = {"unitary", "space", "tolerance", "checks", "seed", "trials"}
        extra = sorted(set(data) - known)
        if extra:
            raise StructuralError(f"unknown scenario keys {extra}")
        if "unitary" not in data or "space" not in data:
            raise StructuralError("scenario needs 'unitary' and 'space'")
        checks = data.get("checks", list(CHECK_NAMES))
        if not isinstance(checks, list):
            raise StructuralError("checks must be a list")
        return cls(data["unitary"], data["space"], data.get("tolerance", 1e-10),
                   list(checks), data.get("seed", 0), data.get("trials", 100))

    def to_json(self) -> dict[str, Any]:
        return {"unitary": self.unitary, "space": self.space, "tolerance": self.tolerance,
                "checks": list(self.checks), "seed": self.seed, "trials": self.trials}


def load_scenario(path: str | Path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise StructuralError(f"cannot read scenario: {exc}") from None
    except json.JSONDecodeError as exc:
        raise StructuralError(f"scenario is not valid JSON: {exc}") from None
    return Scenario.from_json(data)


def _check_magic(sc: Scenario) -> CheckReport:
    rep = magic.verify_magic_unitary(sc.u, sc.tolerance)
    cert = magic.genuineness_certificate(sc.u)
    rep.metrics["genuine_witness"] = (
        None if cert is None else [list(cert.witness_pair[0]), list(cert.witness_pair[1])])
    rep.metrics["commutator_norm"] = 0.0 if cert is None else cert.commutator_norm
    return rep


def _check_symbolic(sc: Scenario) -> CheckReport:
    n = sc.u.n
    P = ncalg.NCPolynomial
    identities = []
    for k in range(1, n + 1):
        identities.append((ncalg.row_sum(n, k), P.unit(n)))
        identities.append((ncalg.column_sum(n, k), P.unit(n)))
        drow = sum((ncalg.delta(n, k, j) for j in range(2, n + 1)), ncalg.delta(n, k, 1))
        dcol = sum((ncalg.delta(n, i, k) for i in range(2, n + 1)), ncalg.delta(n, 1, k))
        identities.append((drow, P.unit(n, 2)))
        identities.append((dcol, P.unit(n, 2)))
    proved = sum(1 for lhs, rhs in identities if ncalg.check_identity(lhs, rhs).passed)

    gens = list(product(range(1, n + 1), repeat=2))
    worst = 0.0
    for g1, g2 in product(gens, repeat=2):
        p = P(n, 1, {((g1, g2),): 1})
        diff = ncalg.evaluate(p, sc.u) - ncalg.evaluate(ncalg.normal_form(p), sc.u)
        worst = max(worst, float(np.max(np.abs(diff))))
    metrics = {"identities": len(identities), "proved": proved,
               "rewrite_soundness_violation": worst, "soundness_tolerance": SOUNDNESS_TOL}
    passed = proved == len(identities) and worst <= SOUNDNESS_TOL
    return CheckReport("symbolic", passed, metrics, tolerance=sc.tolerance)


def _check_coassoc(sc: Scenario) -> CheckReport:
    sym = ncalg.coassoc_check_symbolic(sc.u.n)
    drep = magic.verify_magic_unitary(magic.delta_rep(sc.u), sc.tolerance)
    rep = coaction.check_coassociativity(sc.g, sc.u, COASSOC_TOL)
    metrics = {
        "symbolic": sym.passed,
        "delta_rep_valid": drep.passed,
        "delta_rep_max_row_sum_violation": drep.metrics["max_row_sum_violation"],
        "coaction_max_violation": rep.metrics["max_violation"],
        "coaction_tolerance": COASSOC_TOL,
    }
    return CheckReport("coassoc", bool(sym.passed and drep.passed and rep.passed), metrics,
                       tolerance=sc.tolerance)


def _check_technical(sc: Scenario) -> CheckReport:
    rng = np.random.default_rng(sc.seed)
    worst, where = 0.0, {}
    agree = True
    points = 0
    funcs = coaction.random_quotient_functions(sc.g, sc.trials, rng)
    for t, F in enumerate(funcs):
        rep = coaction.check_technical_lemma(F, sc.u, sc.tolerance, symbolic=True)
        points += rep.metrics["fiber_constant_points"]
        agree = agree and rep.metrics["symbolic_agreement"]
        if rep.metrics["max_violation"] > worst:
            worst, where = rep.metrics["max_violation"], dict(rep.worst_case, function=t)
    metrics = {"functions_tested": len(funcs), "fiber_constant_points": points,
               "max_violation": worst, "symbolic_agreement": agree}
    passed = worst <= sc.u.n * sc.tolerance and agree
    return CheckReport("technical", passed, metrics, where, sc.tolerance, sc.seed)


def _check_connected(sc: Scenario) -> CheckReport:
    comps = spaces.connected_components(sc.g)
    base = spaces.base_components(sc.g.spec.base)
    hyp = base == 1 and bool(sc.g.glued)
    metrics = {"components": comps, "classes": sc.g.quotient_dim, "base_components": base,
               "hypotheses_hold": hyp}
    return CheckReport("connected", (comps == 1) if hyp else None, metrics)


CHECKS: dict[str, Callable[[Scenario], CheckReport]] = {
    "magic": _check_magic,
    "symbolic": _check_symbolic,
    "coassoc": _check_coassoc,
    "invariance": lambda sc: coaction.check_invariance(
        sc.g, sc.u, sc.trials, sc.tolerance, sc.seed),
    "technical": _check_technical,
    "faithful": lambda sc: coaction.check_faithful_slices(sc.g, sc.u, sc.tolerance),
    "ergodic": lambda sc: coaction.fixed_point_space(sc.g, sc.u, sc.tolerance),
    "connected": _check_connected,
    "density": lambda sc: coaction.density_rank(sc.g, sc.u, sc.tolerance),
    "homomorphism": lambda sc: coaction.check_homomorphism(
        sc.g, sc.u, sc.trials, sc.tolerance, sc.seed),
}


@dataclass
class RunReport:
    scenario: Scenario
    reports: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(r.passed is not False for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.overall else 1

    def to_json(self, with_timing: bool = True) -> dict[str, Any]:
        out = {
            "scenario": self.scenario.to_json(),
            "checks": [r.to_json() for r in self.reports],
            "overall": self.overall,
        }
        if with_timing:
            out["timing"] = dict(self.timing)
        return out

    def dumps(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_json(with_timing), indent=2)


def run_scenario(sc: Scenario, seed: Optional[int] = None) -> RunReport:
    """Run the scenario's checks in declared order. ``seed`` overrides the
    scenario seed."""
    if seed is not None:
        sc.seed = seed
    run = RunReport(sc)
    for name in sc.checks:
        t0 = time.perf_counter()
        run.reports.append(CHECKS[name](sc))
        run.timing[name] = time.perf_counter() - t0
    return run


def demo_scenario(name: str, n: int = 4, m: Optional[int] = None, theta: float = math.pi / 4,
                  seed: int = 0, trials: int = 100) -> tuple[Scenario, Optional[str]]:
    """Scenario for one of the two canned examples, plus a warning when the
    representation falls back to a classical permutation (``n != 4``)."""
    if name not in ("wedge", "bouquet"):
        raise StructuralError(f"unknown demo {name!r}; choose wedge or bouquet")
    if n < 1:
        raise StructuralError(f"n must be positive, got {n}")
    kind = "interval" if name == "wedge" else "circle"
    if m is None:
        m = 5 if name == "wedge" else 6
    warning = None
    if n == 4:
        unitary: dict = {"two_projection": {"theta": theta}}
    else:
        unitary = {"permutation": [i % n + 1 for i in range(1, n + 1)]}
        warning = (f"two-projection construction needs n=4; using the classical cyclic "
                   f"permutation for n={n} (commutative representation)")
    space = {"kind": kind, "m": m, "glued_indices": [1], "n": n}
    return Scenario(unitary, space, seed=seed, trials=trials), warning
