"""
Piecewise-constant Raman pulse sequences.

Each segment holds the two effective couplings g_m = N * eps_m (dimensionless,
hbar = 1) and a duration. Couplings are real; laser phases are absorbed into
the mode definitions.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..errors import DomainError
from ..sector import DickeModel

DEFAULT_COUPLING_BOUND = 10.0
DEFAULT_DURATION_BOUND = 2 * math.pi


@dataclass(frozen=True)
class PulseSegment:
    """One constant-coupling interval of a pulse sequence."""

    g1: float
    g2: float
    duration: float

    def __post_init__(self):
        for name in ("g1", "g2", "duration"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"Pulse segment {name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.duration < 0:
            raise DomainError(f"Pulse segment duration must be non-negative, got {self.duration}")

    @classmethod
    def from_physical(cls, eps1: float, eps2: float, duration: float, model: DickeModel) -> "PulseSegment":
        """
        Build a segment from the couplings eps_m of the unnormalized Hamiltonian.

        The normalized convention uses g_m = N * eps_m, which has no finite value
        in the bosonic limit; such models must be driven with g_m directly.
        """
        if model.is_bosonic:
            raise DomainError("The mapping g = N * eps needs a finite atom number")
        return cls(g1=model.n_atoms * eps1, g2=model.n_atoms * eps2, duration=duration)

    def check_bounds(self, coupling_bound: float = DEFAULT_COUPLING_BOUND) -> None:
        if abs(self.g1) > coupling_bound or abs(self.g2) > coupling_bound:
            raise DomainError(
                f"Couplings ({self.g1}, {self.g2}) exceed the configured bound {coupling_bound}"
            )

    def to_dict(self) -> Dict[str, float]:
        return {"g1": self.g1, "g2": self.g2, "duration": self.duration}


@dataclass(frozen=True)
class PulseSequence:
    """Ordered list of pulse segments; an empty sequence is the identity."""

    segments: Tuple[PulseSegment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @property
    def total_duration(self) -> float:
        return float(sum(seg.duration for seg in self.segments))

    @classmethod
    def from_segments(cls, segments: Iterable[Any]) -> "PulseSequence":
        """Accept PulseSegment objects, (g1, g2, duration) triples or dicts."""
        parsed: List[PulseSegment] = []
        for seg in segments:
            if isinstance(seg, PulseSegment):
                parsed.append(seg)
            elif isinstance(seg, dict):
                parsed.append(PulseSegment(g1=seg["g1"], g2=seg["g2"], duration=seg["duration"]))
            else:
                g1, g2, duration = seg
                parsed.append(PulseSegment(g1=g1, g2=g2, duration=duration))
        return cls(segments=tuple(parsed))

    @classmethod
    def from_vector(cls, x: np.ndarray) -> "PulseSequence":
        """Inverse of to_vector; negative durations are clipped to zero."""
        values = np.asarray(x, dtype=float).reshape(-1, 3)
        return cls(
            segments=tuple(
                PulseSegment(g1=g1, g2=g2, duration=max(0.0, duration)) for g1, g2, duration in values
            )
        )

    def to_vector(self) -> np.ndarray:
        """Flat parameter vector [g1, g2, duration] * K."""
        if not self.segments:
            return np.zeros(0)
        return np.array([[seg.g1, seg.g2, seg.duration] for seg in self.segments]).ravel()

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Column arrays (g1, g2, durations)."""
        values = self.to_vector().reshape(-1, 3)
        return values[:, 0], values[:, 1], values[:, 2]

    def reversed(self) -> "PulseSequence":
        return PulseSequence(segments=tuple(reversed(self.segments)))

    def padded(self, duration: float) -> "PulseSequence":
        """Append a zero-coupling segment (identity evolution)."""
        return PulseSequence(segments=self.segments + (PulseSegment(0.0, 0.0, duration),))

    def validate(self, coupling_bound: float = DEFAULT_COUPLING_BOUND, duration_bound: Optional[float] = None) -> None:
        for i, seg in enumerate(self.segments):
            seg.check_bounds(coupling_bound)
            if duration_bound is not None and seg.duration > duration_bound:
                raise DomainError(f"Segment {i} duration {seg.duration} exceeds bound {duration_bound}")

    def to_list(self) -> List[Dict[str, float]]:
        return [seg.to_dict() for seg in self.segments]
