from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class CheckReport:
    """Outcome of one verification.

    ``passed`` is ``True``/``False`` for asserted checks and ``None`` for
    informational ones (inconclusive symbolic residue, density on a
    non-scalar representation).
    """

    check: str
    passed: Optional[bool]
    metrics: dict[str, Any] = field(default_factory=dict)
    worst_case: dict[str, Any] = field(default_factory=dict)
    tolerance: float = 0.0
    seed: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed is True

    @property
    def status(self) -> str:
        if self.passed is None:
            return "info"
        return "pass" if self.passed else "FAIL"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "pass": self.passed,
            "metrics": _plain(self.metrics),
            "worst_case": _plain(self.worst_case),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        out["tolerance"] = self.tolerance
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "CheckReport":
        return cls(
            check=data["check"],
            passed=data["pass"],
            metrics=dict(data.get("metrics", {})),
            worst_case=dict(data.get("worst_case", {})),
            tolerance=float(data.get("tolerance", 0.0)),
            seed=data.get("seed"),
        )


def _plain(value: Any) -> Any:
    # numpy scalars and tuples are not JSON-native
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item") and callable(value.item):
        return value.item()
    return value
