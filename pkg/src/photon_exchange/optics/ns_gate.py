"""
Search for a postselected nonlinear-sign gate on three optical modes.

Mode 0 carries the signal; modes 1 and 2 are ancillas prepared in |1, 0>
and postselected on (1, 0). For signal photon number n the postselected map
multiplies |n> by c_n; the gate is a nonlinear sign flip when

    (c_0, c_1, c_2) = lambda * (1, 1, -1)

and it succeeds with probability lambda^2.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Any, Dict

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from ..errors import DomainError
from ..nogo.search import Evaluation, PenaltySearch
from ..observables import transition_amplitude

logger = logging.getLogger(__name__)

N_PARAMETERS = 9
FIDELITY_TOLERANCE = 1e-9
MODULUS_TOLERANCE = 1e-8
# endpoints further than this from a sign flip are not polished
POLISH_INFIDELITY = 1e-4
_TARGET = np.array([1.0, 1.0, -1.0]) / np.sqrt(3.0)


def unitary_from_parameters(x: np.ndarray) -> np.ndarray:
    """exp(iH) for the Hermitian H with diagonal x[0:3] and upper triangle x[3:6] + i x[6:9]."""
    x = np.asarray(x, dtype=float)
    if x.shape != (N_PARAMETERS,):
        raise DomainError(f"Expected {N_PARAMETERS} parameters, got shape {x.shape}")
    h = np.diag(x[:3]).astype(complex)
    rows, cols = np.triu_indices(3, k=1)
    h[rows, cols] = x[3:6] + 1j * x[6:9]
    h[cols, rows] = x[3:6] - 1j * x[6:9]
    return expm(1j * h)


def ns_postselected_amplitudes(u: np.ndarray) -> np.ndarray:
    """(c_0, c_1, c_2) for ancilla input |1, 0> postselected on (1, 0)."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (3, 3):
        raise DomainError(f"NS gate needs a 3x3 transfer matrix, got shape {u.shape}")
    return np.array([transition_amplitude(u, (n, 1, 0), (n, 1, 0)) for n in range(3)])


def _fidelity(c: np.ndarray) -> float:
    norm = float(np.vdot(c, c).real)
    if norm == 0.0:
        return 0.0
    return float(abs(np.dot(_TARGET, c)) ** 2 / norm)


def _success(c: np.ndarray) -> float:
    return float(abs(c[0] + c[1] - c[2]) ** 2 / 9.0)


def _spread(c: np.ndarray) -> float:
    moduli = np.abs(c)
    return float(moduli.max() - moduli.min())


def ns_fidelity(u: np.ndarray) -> float:
    """Squared overlap of the normalized postselected amplitudes with (1, 1, -1)/sqrt(3)."""
    return _fidelity(ns_postselected_amplitudes(u))


def ns_success_probability(u: np.ndarray) -> float:
    """lambda^2 of the component of the postselected map along the sign flip."""
    return _success(ns_postselected_amplitudes(u))


@dataclass
class NsGateResult:
    """Best gate found by ns_gate_search."""

    transfer: np.ndarray
    success_prob: float
    fidelity: float
    amplitudes: np.ndarray
    restart: int
    seed: int
    restarts: int

    @property
    def modulus_spread(self) -> float:
        """Largest difference between the moduli of the three postselected amplitudes."""
        return _spread(self.amplitudes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "success_prob": self.success_prob,
            "fidelity": self.fidelity,
            "modulus_spread": self.modulus_spread,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
            "transfer": [[[float(z.real), float(z.imag)] for z in row] for row in self.transfer],
            "restart": self.restart,
            "seed": self.seed,
            "restarts": self.restarts,
        }


def _evaluate(x: np.ndarray, fidelity_tolerance: float) -> Evaluation:
    c = ns_postselected_amplitudes(unitary_from_parameters(x))
    infidelity = max(0.0, 1.0 - _fidelity(c))
    return Evaluation(
        gain=_success(c),
        violation=float(np.sqrt(infidelity)),
        feasible=infidelity <= fidelity_tolerance and _spread(c) <= MODULUS_TOLERANCE,
    )


def _sign_flip_residuals(x: np.ndarray) -> np.ndarray:
    """Real and imaginary parts of c_1 - c_0 and c_2 + c_0; zero exactly on a sign flip."""
    c = ns_postselected_amplitudes(unitary_from_parameters(x))
    residual = np.array([c[1] - c[0], c[2] + c[0]])
    return np.concatenate([residual.real, residual.imag])


def polish_gate(x: np.ndarray, fidelity_tolerance: float = FIDELITY_TOLERANCE) -> np.ndarray:
    """
    Pull a near sign flip onto lambda * (1, 1, -1) by nonlinear least squares.

    The penalty stages leave the moduli equal only to the square root of the
    fidelity tolerance. Points further than POLISH_INFIDELITY from a sign flip,
    and polished points that end up infeasible, are returned unchanged.
    """
    x = np.asarray(x, dtype=float)
    if 1.0 - _fidelity(ns_postselected_amplitudes(unitary_from_parameters(x))) > POLISH_INFIDELITY:
        return x
    result = least_squares(_sign_flip_residuals, x, method="trf", xtol=1e-14, ftol=1e-14, gtol=1e-14)
    polished = np.asarray(result.x, dtype=float)
    if not _evaluate(polished, fidelity_tolerance).feasible:
        logger.debug(f"Polish did not reach a sign flip (cost {result.cost:.3e})")
        return x
    logger.debug(f"Polished gate: cost {result.cost:.3e} after {result.nfev} evaluations")
    return polished


def _sample(rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-np.pi, np.pi, size=N_PARAMETERS)


def ns_gate_search(
    seed: int = 0,
    restarts: int = 64,
    threads: int = 1,
    fidelity_tolerance: float = FIDELITY_TOLERANCE,
    max_evaluations_per_stage: int = 2000,
    penalty_start: float = 1e2,
    penalty_stop: float = 1e8,
    penalty_factor: float = 10.0,
    backend: str = "process",
) -> NsGateResult:
    """
    Maximize the success probability of a three-mode nonlinear-sign gate.

    Only restart endpoints are candidates. An endpoint whose amplitude moduli
    still differ by more than MODULUS_TOLERANCE is polished by polish_gate.

    Args:
        seed: Root seed of the restart substreams
        restarts: Number of restarts (at least 1)
        threads: Workers for restarts
        fidelity_tolerance: Largest 1 - fidelity accepted as a sign flip
        max_evaluations_per_stage: Nelder-Mead evaluation cap per penalty stage
        backend: "thread" or "process"

    Returns:
        NsGateResult with the best transfer matrix and its success probability

    Raises:
        InfeasibleSearchError: If no restart ends on a sign-flip gate
    """
    if restarts < 1:
        raise DomainError(f"restarts must be positive, got {restarts}")
    logger.info(f"Searching NS gate: restarts={restarts}, seed={seed}, threads={threads}")
    search = PenaltySearch(
        evaluate=partial(_evaluate, fidelity_tolerance=fidelity_tolerance),
        sampler=_sample,
        bounds=[(-2 * np.pi, 2 * np.pi)] * N_PARAMETERS,
        penalty_start=penalty_start,
        penalty_stop=penalty_stop,
        penalty_factor=penalty_factor,
        max_evaluations_per_stage=max_evaluations_per_stage,
        repair=partial(polish_gate, fidelity_tolerance=fidelity_tolerance),
        track_visits=False,
        max_workers=threads,
        backend=backend,
    )
    best = PenaltySearch.select_best(search.run(seed, restarts))
    u = unitary_from_parameters(best.x)
    amplitudes = ns_postselected_amplitudes(u)
    result = NsGateResult(
        transfer=u,
        success_prob=_success(amplitudes),
        fidelity=_fidelity(amplitudes),
        amplitudes=amplitudes,
        restart=best.restart,
        seed=seed,
        restarts=restarts,
    )
    logger.info(
        f"NS gate: success probability {result.success_prob:.6f}, fidelity {result.fidelity:.12f}, "
        f"modulus spread {result.modulus_spread:.2e}"
    )
    return result
