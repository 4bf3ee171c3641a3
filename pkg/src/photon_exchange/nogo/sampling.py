"""
Random scans of pulse sequences.

Draws sequences uniformly within the coupling and duration bounds and records
(composite_loss, |phi_NL|) pairs. A sample that returns every probe (loss
below the tolerance) must show no nonlinear phase; such samples are counted
as violations otherwise. For bosonic-limit models the two-photon amplitudes
are also checked against the permanent formula.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from ..dynamics import DEFAULT_COUPLING_BOUND, DEFAULT_DURATION_BOUND, PulseSequence, single_particle_transfer
from ..errors import DomainError
from ..observables import MAIN_PROBE, PHASE_AMPLITUDE_TOLERANCE, PROBES, Variant, bosonic_two_photon_amplitude, probe_report
from ..sector import DickeModel

logger = logging.getLogger(__name__)


@dataclass
class SampleStatistics:
    """Paired loss/phase statistics of a random scan."""

    losses: np.ndarray
    phases: np.ndarray
    violations: int
    undefined: int
    loss_tolerance: float
    phase_tolerance: float
    histogram: np.ndarray
    loss_edges: np.ndarray
    phase_edges: np.ndarray
    max_oracle_deviation: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_samples(self) -> int:
        return int(self.losses.size)

    def pairs(self) -> np.ndarray:
        """(composite_loss, |phi_NL|) rows; undefined phases are NaN."""
        return np.column_stack([self.losses, self.phases])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_samples": self.n_samples,
            "violations": self.violations,
            "undefined": self.undefined,
            "loss_tolerance": self.loss_tolerance,
            "phase_tolerance": self.phase_tolerance,
            "max_oracle_deviation": self.max_oracle_deviation,
            "histogram": self.histogram.tolist(),
            "loss_edges": self.loss_edges.tolist(),
            "phase_edges": self.phase_edges.tolist(),
            **self.metadata,
        }


def _oracle_deviation(seq: PulseSequence, report) -> float:
    """Largest gap between sector-2 evolution and permanent amplitudes for the two-photon probe."""
    u = single_particle_transfer(seq)
    label = MAIN_PROBE[report.variant]
    state = report.final_states[label]
    source = PROBES[report.variant][label][0]
    worst = 0.0
    for target, amplitude in zip(state.sector.states, state.amplitudes):
        oracle = bosonic_two_photon_amplitude(u, source, target)
        worst = max(worst, abs(oracle - amplitude))
    return worst


def sample_random_sequences(
    n: int,
    model: DickeModel,
    seed: int,
    variant: Variant = Variant.TWO_MODE,
    n_segments: int = 8,
    coupling_bound: float = DEFAULT_COUPLING_BOUND,
    duration_bound: float = DEFAULT_DURATION_BOUND,
    loss_tolerance: float = 1e-10,
    phase_tolerance: float = 1e-5,
    amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE,
    bins: int = 20,
) -> SampleStatistics:
    """
    Scan uniformly drawn pulse sequences.

    Args:
        n: Number of sequences
        model: Dicke model
        seed: Root seed of the PCG64 stream
        variant: Probe set defining the phase
        n_segments: Segments per sequence
        coupling_bound: |g| bound (0 forces the identity evolution)
        duration_bound: Per-segment duration bound
        loss_tolerance: Loss below which a sample counts as loss-free
        phase_tolerance: Largest |phi_NL| allowed for a loss-free sample
        amplitude_tolerance: Smallest amplitude whose arg is trusted
        bins: Histogram bins per axis

    Returns:
        SampleStatistics with per-sample pairs, violation count and histogram
    """
    if n < 1:
        raise DomainError(f"Sample count must be at least 1, got {n}")
    variant = Variant(variant)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    losses = np.empty(n)
    phases = np.empty(n)
    violations = 0
    undefined = 0
    oracle_worst: Optional[float] = 0.0 if model.is_bosonic else None

    for i in range(n):
        couplings = rng.uniform(-coupling_bound, coupling_bound, size=(n_segments, 2))
        durations = rng.uniform(0.0, duration_bound, size=(n_segments, 1))
        seq = PulseSequence.from_vector(np.hstack([couplings, durations]).ravel())
        report = probe_report(seq, model, variant, amplitude_tolerance)
        losses[i] = report.composite_loss
        if report.phi_nl is None:
            phases[i] = np.nan
            undefined += 1
        else:
            phases[i] = abs(report.phi_nl)
            if report.composite_loss < loss_tolerance and phases[i] >= phase_tolerance:
                violations += 1
                logger.warning(f"Sample {i}: |phi_NL| = {phases[i]:.3e} at loss {report.composite_loss:.3e}")
        if oracle_worst is not None:
            oracle_worst = max(oracle_worst, _oracle_deviation(seq, report))

    defined = ~np.isnan(phases)
    histogram, loss_edges, phase_edges = np.histogram2d(
        losses[defined], phases[defined], bins=bins, range=[[0.0, 1.0], [0.0, np.pi]]
    )
    logger.info(
        f"Scanned {n} sequences (N={model.label}, {variant.value}): {violations} violations, {undefined} undefined phases"
    )
    return SampleStatistics(
        losses=losses,
        phases=phases,
        violations=violations,
        undefined=undefined,
        loss_tolerance=loss_tolerance,
        phase_tolerance=phase_tolerance,
        histogram=histogram,
        loss_edges=loss_edges,
        phase_edges=phase_edges,
        max_oracle_deviation=oracle_worst,
        metadata={"n_atoms": model.label, "variant": variant.value, "seed": seed, "n_segments": n_segments},
    )
