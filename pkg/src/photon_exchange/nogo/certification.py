"""Budget-zero certification of the loss-free phase bound across a model grid."""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence

from ..errors import CertificationError
from ..observables import Variant
from ..sector import DickeModel
from .optimizer import OptimizationTask, optimize_phase
from .sampling import sample_random_sequences

logger = logging.getLogger(__name__)


@dataclass
class CertificationEntry:
    """Certification outcome for one (model, variant) pair."""

    n_atoms: str
    variant: str
    best_phi_nl_abs: float
    achieved_loss: float
    phase_threshold: float
    samples: int
    sample_violations: int
    max_oracle_deviation: Optional[float]
    witness: List[Dict[str, float]]

    @property
    def passed(self) -> bool:
        return self.best_phi_nl_abs <= self.phase_threshold and self.sample_violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_atoms": self.n_atoms,
            "variant": self.variant,
            "best_phi_nl_abs": self.best_phi_nl_abs,
            "achieved_loss": self.achieved_loss,
            "phase_threshold": self.phase_threshold,
            "samples": self.samples,
            "sample_violations": self.sample_violations,
            "max_oracle_deviation": self.max_oracle_deviation,
            "passed": self.passed,
            "witness": self.witness,
        }


def certify_nogo(
    models: Sequence[DickeModel],
    variants: Sequence[Variant],
    template: OptimizationTask,
    samples: int = 0,
    phase_threshold: float = 1e-5,
    sample_loss_tolerance: float = 1e-10,
) -> List[CertificationEntry]:
    """
    Run the budget-zero search (and optionally a random scan) for every model and variant.

    Args:
        models: Dicke models to certify
        variants: Probe sets
        template: Task settings; model, variant and budget are replaced per entry
        samples: Random sequences scanned per entry (0 skips the scan)
        phase_threshold: Largest |phi_NL| allowed at zero budget
        sample_loss_tolerance: Loss below which a random sample counts as loss-free

    Returns:
        One CertificationEntry per (model, variant)
    """
    entries = []
    for model in models:
        for variant in variants:
            task = replace(template, model=model, variant=Variant(variant), loss_budget=0.0)
            point = optimize_phase(task)
            violations = 0
            oracle = None
            if samples > 0:
                stats = sample_random_sequences(
                    samples,
                    model,
                    seed=task.seed,
                    variant=task.variant,
                    n_segments=task.n_segments,
                    coupling_bound=task.coupling_bound,
                    duration_bound=task.duration_bound,
                    loss_tolerance=sample_loss_tolerance,
                    phase_tolerance=phase_threshold,
                    amplitude_tolerance=task.amplitude_tolerance,
                )
                violations = stats.violations
                oracle = stats.max_oracle_deviation
            entry = CertificationEntry(
                n_atoms=model.label,
                variant=task.variant.value,
                best_phi_nl_abs=point.best_phi_nl_abs,
                achieved_loss=point.achieved_loss,
                phase_threshold=phase_threshold,
                samples=samples,
                sample_violations=violations,
                max_oracle_deviation=oracle,
                witness=point.witness_sequence.to_list(),
            )
            status = "pass" if entry.passed else "FAIL"
            logger.info(f"Certification N={entry.n_atoms} {entry.variant}: {status} (|phi_NL| = {entry.best_phi_nl_abs:.3e})")
            entries.append(entry)
    return entries


def require_certified(entries: Sequence[CertificationEntry]) -> None:
    """
    Raises:
        CertificationError: If any entry failed
    """
    failed = [e for e in entries if not e.passed]
    if failed:
        labels = ", ".join(f"N={e.n_atoms}/{e.variant}" for e in failed)
        raise CertificationError(f"Loss-free phase bound violated for {labels}", entries=failed)
