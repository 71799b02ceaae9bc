"""Shared value types: labeled generator families and verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class InconclusiveError(RuntimeError):
    """A numerical decision fell inside a tolerance band and is refused.

    Raised instead of guessing when a rank or locality decision sits within
    a factor of 10 of its threshold.
    """


@dataclass(frozen=True)
class GeneratorRep:
    """A labeled family of square matrices realizing a generating set.

    labels and matrices are parallel; all matrices are square of the stated
    dimension and labels are unique.
    """

    labels: tuple[str, ...]
    matrices: tuple[np.ndarray, ...]
    dimension: int

    def __post_init__(self):
        if len(self.labels) != len(self.matrices):
            raise ValueError("labels and matrices must be parallel")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate generator labels")
        for m in self.matrices:
            if m.shape != (self.dimension, self.dimension):
                raise ValueError(
                    f"generator of shape {m.shape}, expected "
                    f"({self.dimension}, {self.dimension})"
                )

    def __getitem__(self, label: str) -> np.ndarray:
        try:
            return self.matrices[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"unknown generator label {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def subfamily(self, labels) -> "GeneratorRep":
        return GeneratorRep(tuple(labels), tuple(self[l] for l in labels), self.dimension)

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "labels": list(self.labels),
            "matrices": [
                {
                    "real": np.real(m).tolist(),
                    "imag": np.imag(m).tolist(),
                }
                for m in self.matrices
            ],
        }


def generator_rep(labels, matrices) -> GeneratorRep:
    """Build a GeneratorRep from any iterable of labels and square arrays."""
    mats = tuple(np.asarray(m) for m in matrices)
    if not mats:
        raise ValueError("empty generator family needs an explicit dimension")
    return GeneratorRep(tuple(labels), mats, mats[0].shape[0])


@dataclass(frozen=True)
class Check:
    """One verified identity: a residual measured against a tolerance.

    `anchor` states the mathematical identity being checked, e.g.
    "[P_k,Q_l] = delta_kl Z".  Exact checks (integer arithmetic, no
    tolerance) carry residual 0.0 and exact=True.
    """

    name: str
    anchor: str
    residual: float | None
    tol: float | None
    passed: bool
    exact: bool = False

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "residual": "exact" if self.exact else self.residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def residual_check(name: str, anchor: str, residual: float, tol: float) -> Check:
    return Check(name, anchor, float(residual), float(tol), bool(residual < tol))


def exact_check(name: str, anchor: str, holds: bool) -> Check:
    return Check(name, anchor, 0.0 if holds else float("inf"), None, bool(holds), exact=True)


@dataclass
class VerificationReport:
    """Named checks with residuals, tolerances and verdicts for one suite."""

    suite: str
    checks: list[Check] = field(default_factory=list)
    duration_ms: float | None = None
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.name, c.anchor, c.residual, c.tol, c.passed, c.exact)
            )

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "config": self.config,
            "checks": [c.to_json_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.duration_ms is not None:
            out["duration_ms"] = self.duration_ms
        return out

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            if c.exact:
                lines.append(f"  [{status}] {c.name}  (exact)  :: {c.anchor}")
            else:
                lines.append(
                    f"  [{status}] {c.name}  (residual={c.residual:.3e}, tol={c.tol:.1e})"
                    f"  :: {c.anchor}"
                )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
