"""
Multi-start penalty search with derivative-free simplex refinement.

A restart draws a starting point from its own random substream, then runs
Nelder-Mead on

    -gain(x) + mu * violation(x)^2

for a geometric sequence of penalty weights mu, warm-starting each stage from
the previous one. Every feasible point the simplex touches is remembered, so
the restart reports the best feasible point it ever evaluated, not only the
simplex endpoint. Restarts are independent and merged by restart index.
"""

import logging
import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from ..errors import InfeasibleSearchError

logger = logging.getLogger(__name__)

PRNG_NAME = "numpy.random.PCG64 via SeedSequence.spawn"
BACKENDS = ("thread", "process")


class Evaluation(NamedTuple):
    """Objective value at one point: what to maximize and how far outside the constraint."""

    gain: float
    violation: float
    feasible: bool


@dataclass
class SearchPoint:
    """A point visited by the search."""

    x: np.ndarray
    gain: float
    violation: float
    feasible: bool
    restart: int


@dataclass
class RestartResult:
    """Outcome of one restart."""

    restart: int
    best_feasible: Optional[SearchPoint]
    final: SearchPoint
    evaluations: int


class _Tracker:
    """Keeps the best feasible point seen by one restart."""

    def __init__(self, restart: int):
        self.restart = restart
        self.best: Optional[SearchPoint] = None
        self.evaluations = 0

    def record(self, x: np.ndarray, ev: Evaluation, candidate: bool = True) -> None:
        self.evaluations += 1
        if candidate and ev.feasible and (self.best is None or ev.gain > self.best.gain):
            self.best = SearchPoint(np.array(x, copy=True), ev.gain, ev.violation, True, self.restart)


class PenaltySearch:
    """
    Deterministic multi-start Nelder-Mead search under a penalty method.

    Supports:
    - per-restart random substreams spawned from one root seed
    - geometric penalty escalation
    - an optional repair hook applied when a restart ends infeasible
    - parallel restarts on threads or processes with index-ordered reduction
    """

    def __init__(
        self,
        evaluate: Callable[[np.ndarray], Evaluation],
        sampler: Callable[[np.random.Generator], np.ndarray],
        bounds: Sequence[Tuple[float, float]],
        penalty_start: float = 1e2,
        penalty_stop: float = 1e8,
        penalty_factor: float = 10.0,
        max_evaluations_per_stage: int = 400,
        xatol: float = 1e-10,
        fatol: float = 1e-14,
        repair: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        track_visits: bool = True,
        max_workers: int = 1,
        backend: str = "thread",
    ):
        """
        Initialize the search.

        Args:
            evaluate: Maps a parameter vector to an Evaluation
            sampler: Draws a starting point from a random generator
            bounds: Box bounds per parameter
            penalty_start: First penalty weight
            penalty_stop: Last penalty weight (inclusive)
            penalty_factor: Escalation factor between stages
            max_evaluations_per_stage: Nelder-Mead evaluation cap per stage
            xatol: Simplex size tolerance
            fatol: Objective spread tolerance
            repair: Maps an infeasible endpoint to a feasible point (optional)
            track_visits: Remember every feasible point evaluated; when False only
                the final endpoint counts, which sits at the strongest penalty
            max_workers: Workers used for restarts
            backend: "thread" or "process"; the process pool needs picklable
                evaluate, sampler and repair callables
        """
        if penalty_start <= 0 or penalty_factor <= 1 or penalty_stop < penalty_start:
            raise ValueError(
                f"Invalid penalty schedule start={penalty_start}, stop={penalty_stop}, factor={penalty_factor}"
            )
        if backend not in BACKENDS:
            raise ValueError(f"Unknown backend {backend!r}, expected one of {BACKENDS}")
        self.evaluate = evaluate
        self.sampler = sampler
        self.bounds = list(bounds)
        self.penalty_start = penalty_start
        self.penalty_stop = penalty_stop
        self.penalty_factor = penalty_factor
        self.max_evaluations_per_stage = max_evaluations_per_stage
        self.xatol = xatol
        self.fatol = fatol
        self.repair = repair
        self.track_visits = track_visits
        self.max_workers = max(1, int(max_workers))
        self.backend = backend

    def penalty_schedule(self) -> List[float]:
        weights = []
        mu = self.penalty_start
        while mu <= self.penalty_stop * (1 + 1e-12):
            weights.append(mu)
            mu *= self.penalty_factor
        return weights

    def run_restart(self, index: int, seed_sequence: np.random.SeedSequence) -> RestartResult:
        """Run one restart from its own random substream."""
        rng = np.random.Generator(np.random.PCG64(seed_sequence))
        tracker = _Tracker(index)
        x = np.asarray(self.sampler(rng), dtype=float)

        for mu in self.penalty_schedule():

            def objective(z: np.ndarray, mu: float = mu) -> float:
                ev = self.evaluate(z)
                tracker.record(z, ev, candidate=self.track_visits)
                return -ev.gain + mu * ev.violation**2

            result = minimize(
                objective,
                x,
                method="Nelder-Mead",
                bounds=self.bounds,
                options={
                    "maxfev": self.max_evaluations_per_stage,
                    "xatol": self.xatol,
                    "fatol": self.fatol,
                    "adaptive": True,
                },
            )
            x = np.asarray(result.x, dtype=float)

        final_ev = self.evaluate(x)
        tracker.record(x, final_ev)
        if tracker.best is None and self.repair is not None:
            repaired = np.asarray(self.repair(x), dtype=float)
            tracker.record(repaired, self.evaluate(repaired))
            logger.debug(f"Restart {index}: endpoint infeasible (violation {final_ev.violation:.3e}), repaired")

        final = SearchPoint(x, final_ev.gain, final_ev.violation, final_ev.feasible, index)
        best_gain = tracker.best.gain if tracker.best is not None else float("nan")
        logger.debug(f"Restart {index}: {tracker.evaluations} evaluations, best feasible gain {best_gain:.6g}")
        return RestartResult(restart=index, best_feasible=tracker.best, final=final, evaluations=tracker.evaluations)

    def run(self, seed: int, restarts: int) -> List[RestartResult]:
        """
        Run all restarts.

        Args:
            seed: Root seed; restart i uses child i of SeedSequence(seed)
            restarts: Number of restarts

        Returns:
            Restart results in restart-index order, independent of worker count and backend
        """
        if restarts < 1:
            raise ValueError(f"At least one restart is required, got {restarts}")
        children = np.random.SeedSequence(seed).spawn(restarts)
        results: List[Optional[RestartResult]] = [None] * restarts

        if self.max_workers == 1:
            for i, child in enumerate(children):
                results[i] = self.run_restart(i, child)
        else:
            with self._executor() as executor:
                future_to_index = {executor.submit(self.run_restart, i, child): i for i, child in enumerate(children)}
                for future in as_completed(future_to_index):
                    idx = future_to_index[future]
                    try:
                        results[idx] = future.result()
                    except Exception as e:
                        logger.error(f"Restart {idx} failed: {e}")
                        raise

        return [r for r in results if r is not None]

    def _executor(self) -> Executor:
        if self.backend == "process":
            # forked workers inherit sys.path and the callables' modules
            methods = multiprocessing.get_all_start_methods()
            context = multiprocessing.get_context("fork") if "fork" in methods else None
            return ProcessPoolExecutor(max_workers=self.max_workers, mp_context=context)
        return ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="restart")

    @staticmethod
    def select_best(results: Sequence[RestartResult]) -> SearchPoint:
        """
        Best feasible point over restarts; ties go to the lower restart index.

        Raises:
            InfeasibleSearchError: If no restart found a feasible point; carries
                the least-infeasible endpoint
        """
        best: Optional[SearchPoint] = None
        for result in results:
            candidate = result.best_feasible
            if candidate is not None and (best is None or candidate.gain > best.gain):
                best = candidate
        if best is None:
            least = min((r.final for r in results), key=lambda p: p.violation, default=None)
            violation = least.violation if least is not None else float("nan")
            raise InfeasibleSearchError(
                f"All {len(results)} restarts ended infeasible (least violation {violation:.3e})",
                least_infeasible=least,
            )
        return best
