"""
Loss-constrained search for the largest nonlinear phase shift.

The search space is K piecewise-constant segments (g1, g2, duration). The
objective maximizes |phi_NL| while a quadratic penalty keeps the composite
loss (worst probe loss) within the budget. Budget zero is the loss-free case,
where the phase has to vanish.
"""

import logging
import math
from dataclasses import dataclass, replace
from functools import partial
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..dynamics import DEFAULT_COUPLING_BOUND, DEFAULT_DURATION_BOUND, PulseSequence
from ..errors import DomainError
from ..observables import PHASE_AMPLITUDE_TOLERANCE, Variant, probe_evaluator, probe_report
from ..sector import DickeModel
from .search import BACKENDS, Evaluation, PenaltySearch

logger = logging.getLogger(__name__)

LOSS_TOLERANCE = 1e-9
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class OptimizationTask:
    """Everything that determines one optimize_phase run."""

    model: DickeModel
    variant: Variant = Variant.TWO_MODE
    n_segments: int = 8
    coupling_bound: float = DEFAULT_COUPLING_BOUND
    duration_bound: float = DEFAULT_DURATION_BOUND
    loss_budget: float = 0.0
    seed: int = 0
    restarts: int = 64
    loss_tolerance: float = LOSS_TOLERANCE
    amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE
    penalty_start: float = 1e2
    penalty_stop: float = 1e8
    penalty_factor: float = 10.0
    max_evaluations_per_stage: int = 400
    threads: int = 1
    backend: str = "process"

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.n_segments < 1:
            raise DomainError(f"n_segments must be positive, got {self.n_segments}")
        if self.restarts < 1:
            raise DomainError(f"restarts must be positive, got {self.restarts}")
        if self.loss_budget < 0:
            raise DomainError(f"loss_budget must be non-negative, got {self.loss_budget}")
        if not 0 <= self.seed <= MAX_SEED:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.coupling_bound < 0 or self.duration_bound < 0:
            raise DomainError("Coupling and duration bounds must be non-negative")
        if self.backend not in BACKENDS:
            raise DomainError(f"backend must be one of {BACKENDS}, got {self.backend!r}")

    def with_budget(self, budget: float) -> "OptimizationTask":
        return replace(self, loss_budget=budget)

    def bounds(self) -> List[tuple]:
        per_segment = [
            (-self.coupling_bound, self.coupling_bound),
            (-self.coupling_bound, self.coupling_bound),
            (0.0, self.duration_bound),
        ]
        return per_segment * self.n_segments

    def uniform_start(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform draw of a parameter vector within the bounds."""
        couplings = rng.uniform(-self.coupling_bound, self.coupling_bound, size=(self.n_segments, 2))
        durations = rng.uniform(0.0, self.duration_bound, size=(self.n_segments, 1))
        return np.hstack([couplings, durations]).ravel()

    def returning_start(self, rng: np.random.Generator) -> np.ndarray:
        """
        Random sequence whose propagator is the identity.

        The first K // 2 segments are drawn uniformly; the rest replay them in
        reverse order with negated couplings, so every probe returns with no
        loss while the durations stay non-trivial. For odd K the middle
        segment has zero duration.
        """
        half = self.n_segments // 2
        couplings = rng.uniform(-self.coupling_bound, self.coupling_bound, size=(half, 2))
        durations = rng.uniform(0.0, self.duration_bound, size=(half, 1))
        forward = np.hstack([couplings, durations])
        backward = np.hstack([-couplings[::-1], durations[::-1]])
        blocks = [forward]
        if self.n_segments % 2:
            middle = rng.uniform(-self.coupling_bound, self.coupling_bound, size=2)
            blocks.append([[middle[0], middle[1], 0.0]])
        blocks.append(backward)
        return np.vstack(blocks).ravel()

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """
        Starting point of one restart.

        The uniform draw is kept when it already meets the budget; otherwise the
        restart starts from a returning sequence, which is always feasible. Both
        are drawn every time so the random stream does not depend on the budget.
        """
        uniform = self.uniform_start(rng)
        returning = self.returning_start(rng)
        return uniform if self.evaluate(uniform).feasible else returning

    def evaluate(self, x: np.ndarray) -> Evaluation:
        """Gain |phi_NL| (0 where undefined) and loss excess over the budget."""
        evaluator = probe_evaluator(self.model, self.variant, self.amplitude_tolerance)
        composite_loss, phi_nl = evaluator.evaluate(x)
        gain = abs(phi_nl) if phi_nl is not None else 0.0
        excess = composite_loss - self.loss_budget
        return Evaluation(
            gain=gain,
            violation=max(0.0, excess),
            feasible=excess <= self.loss_tolerance,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_atoms": self.model.label,
            "wave_vector_label": self.model.wave_vector_label,
            "variant": self.variant.value,
            "n_segments": self.n_segments,
            "coupling_bound": self.coupling_bound,
            "duration_bound": self.duration_bound,
            "loss_budget": self.loss_budget,
            "seed": self.seed,
            "restarts": self.restarts,
            "loss_tolerance": self.loss_tolerance,
        }


@dataclass
class TradeoffPoint:
    """Best phase found under one loss budget."""

    budget: float
    best_phi_nl_abs: float
    achieved_loss: float
    witness_sequence: PulseSequence
    seed: int
    restart: int
    carried_from: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "budget": self.budget,
            "best_phi_nl_abs": self.best_phi_nl_abs,
            "achieved_loss": self.achieved_loss,
            "seed": self.seed,
            "restart": self.restart,
            "carried_from": self.carried_from,
            "witness_sequence": self.witness_sequence.to_list(),
        }


def shrink_to_budget(task: OptimizationTask, x: np.ndarray, iterations: int = 60) -> np.ndarray:
    """
    Scale all durations by a common factor until the loss budget holds.

    Factor 0 is the identity evolution (no loss), so bisection between a
    feasible and an infeasible factor always ends on a feasible point.
    """
    values = np.asarray(x, dtype=float).reshape(-1, 3)

    def scaled(factor: float) -> np.ndarray:
        out = values.copy()
        out[:, 2] *= factor
        return out.ravel()

    if task.evaluate(scaled(1.0)).feasible:
        return scaled(1.0)
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if task.evaluate(scaled(mid)).feasible:
            lo = mid
        else:
            hi = mid
    return scaled(lo)


def optimize_phase(task: OptimizationTask) -> TradeoffPoint:
    """
    Maximize |phi_NL| subject to composite_loss <= budget.

    Args:
        task: Optimization task (model, variant, bounds, budget, seed, restarts)

    Returns:
        TradeoffPoint with the best feasible witness

    Raises:
        InfeasibleSearchError: If every restart ends infeasible
    """
    logger.info(
        f"Optimizing phase: N={task.model.label}, variant={task.variant.value}, "
        f"K={task.n_segments}, budget={task.loss_budget:g}, restarts={task.restarts}, seed={task.seed}"
    )
    search = PenaltySearch(
        evaluate=task.evaluate,
        sampler=task.sample,
        bounds=task.bounds(),
        penalty_start=task.penalty_start,
        penalty_stop=task.penalty_stop,
        penalty_factor=task.penalty_factor,
        max_evaluations_per_stage=task.max_evaluations_per_stage,
        repair=partial(shrink_to_budget, task),
        max_workers=task.threads,
        backend=task.backend,
    )
    results = search.run(task.seed, task.restarts)
    best = PenaltySearch.select_best(results)

    witness = PulseSequence.from_vector(best.x)
    report = probe_report(witness, task.model, task.variant, task.amplitude_tolerance)
    point = TradeoffPoint(
        budget=task.loss_budget,
        best_phi_nl_abs=min(math.pi, best.gain),
        achieved_loss=report.composite_loss,
        witness_sequence=witness,
        seed=task.seed,
        restart=best.restart,
    )
    logger.info(
        f"Best |phi_NL| = {point.best_phi_nl_abs:.6g} at loss {point.achieved_loss:.3e} (restart {point.restart})"
    )
    return point


def tradeoff_curve(template: OptimizationTask, budgets: Sequence[float]) -> List[TradeoffPoint]:
    """
    Optimize the phase for each loss budget.

    Every budget reuses the template seed, so all runs start from the same
    restart points. A witness from a smaller budget is also feasible for a
    larger one; when it beats the larger budget's own optimum it is carried
    forward, which keeps the curve nondecreasing.

    Args:
        template: Task whose loss_budget is replaced per point
        budgets: Loss budgets in ascending order

    Returns:
        One TradeoffPoint per budget
    """
    budgets = [float(b) for b in budgets]
    if any(b2 < b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise DomainError(f"Budgets must be sorted ascending, got {budgets}")

    points: List[TradeoffPoint] = []
    for budget in budgets:
        point = optimize_phase(template.with_budget(budget))
        if points and points[-1].best_phi_nl_abs > point.best_phi_nl_abs:
            previous = points[-1]
            logger.info(f"Budget {budget:g}: carrying witness from budget {previous.budget:g}")
            point = replace(
                previous,
                budget=budget,
                carried_from=previous.carried_from if previous.carried_from is not None else previous.budget,
            )
        points.append(point)
    return points


def fit_loglog_slope(points: Sequence[TradeoffPoint]) -> Optional[float]:
    """
    Least-squares slope of log|phi_NL| against log(budget).

    Points with zero phase or zero budget are dropped; None if fewer than two remain.
    """
    usable = [(p.budget, p.best_phi_nl_abs) for p in points if p.budget > 0 and p.best_phi_nl_abs > 0]
    if len(usable) < 2:
        return None
    x = np.log([b for b, _ in usable])
    y = np.log([phi for _, phi in usable])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
