"""Credit bookkeeping for the keep-or-rollback driver, plus log-log exponent fits."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from statistics import linear_regression


@dataclass(frozen=True)
class PhaseRecord:
    ops: int  # nodes + edges inserted in the phase
    n_hat: int  # node count when the phase started
    cost: int  # elementary steps charged to the phase's insertions
    kept: bool
    color: int | None = None


def keep_rule(ops: int, n_hat: int, cost: int, alpha: float) -> bool:
    return cost > 2 * ops * n_hat**alpha


@dataclass
class CreditLedger:
    alpha: float
    phases: list[PhaseRecord] = field(default_factory=list)
    kept_cost: int = 0
    rolled_cost: int = 0

    def record_phase(self, k: int, n_hat: int, cost: int, color: int | None = None) -> bool:
        if k < 1 or n_hat < 1 or cost < 0:
            raise ValueError(f"bad phase record k={k}, n_hat={n_hat}, cost={cost}")
        kept = keep_rule(k, n_hat, cost, self.alpha)
        self.phases.append(PhaseRecord(k, n_hat, cost, kept, color))
        if kept:
            self.kept_cost += cost
        else:
            self.rolled_cost += cost
        return kept

    def replay_ok(self) -> bool:
        """Recomputed keep flags and totals agree with the stored ones."""
        if any(keep_rule(r.ops, r.n_hat, r.cost, self.alpha) != r.kept for r in self.phases):
            return False
        return (
            self.kept_cost == sum(r.cost for r in self.phases if r.kept)
            and self.rolled_cost == sum(r.cost for r in self.phases if not r.kept)
        )

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "kept_cost": self.kept_cost,
            "rolled_cost": self.rolled_cost,
            "phases": [asdict(r) for r in self.phases],
        }


def record_phase(ledger: CreditLedger, k: int, n_hat: int, cost: int) -> bool:
    return ledger.record_phase(k, n_hat, cost)


@dataclass(frozen=True)
class ScalingFit:
    samples: tuple[tuple[int, int], ...]
    exponent: float
    residual: float  # root-mean-square error in log space


def fit_exponent(samples) -> ScalingFit:
    """Least-squares slope of log(steps) against log(size)."""
    samples = tuple((int(n), int(c)) for n, c in samples)
    if len({n for n, _ in samples}) < 2:
        raise ValueError("need at least two distinct sizes")
    if any(n <= 0 or c <= 0 for n, c in samples):
        raise ValueError("sizes and counts must be positive")
    xs = [math.log(n) for n, _ in samples]
    ys = [math.log(c) for _, c in samples]
    slope, intercept = linear_regression(xs, ys)
    rms = math.sqrt(sum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys)) / len(xs))
    return ScalingFit(samples, slope, rms)
