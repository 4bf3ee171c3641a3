"""Exception hierarchy for the workbench."""

from typing import Any, Optional, Sequence, Tuple


class PhotonExchangeError(Exception):
    """Base class for all workbench errors."""


class DomainError(PhotonExchangeError, ValueError):
    """An argument lies outside the domain of a physical formula."""


class SectorMismatchError(PhotonExchangeError, ValueError):
    """Two states or operators belong to different excitation sectors."""


class PhaseUndefinedError(PhotonExchangeError, ValueError):
    """A probe amplitude is too small for its phase to be meaningful."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class NonUnitaryError(PhotonExchangeError, ValueError):
    """A mode transfer matrix is not unitary within tolerance."""


class UnphysicalBeamSplitterError(PhotonExchangeError, ValueError):
    """A beam-splitter block would amplify light (spectral norm above 1)."""


class UnsupportedScaleError(PhotonExchangeError, ValueError):
    """The request exceeds the photon numbers this workbench handles."""


class InfeasibleSearchError(PhotonExchangeError, RuntimeError):
    """Every restart of a constrained search ended outside the feasible set."""

    def __init__(self, message: str, least_infeasible: Any = None):
        super().__init__(message)
        self.least_infeasible = least_infeasible


class CertificationError(PhotonExchangeError, RuntimeError):
    """The loss-free phase bound was violated by a witness."""

    def __init__(self, message: str, entries: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.entries = list(entries or [])


class ConfigError(PhotonExchangeError, ValueError):
    """An experiment configuration could not be parsed or validated."""

    def __init__(
        self,
        message: str,
        position: Optional[Tuple[int, int]] = None,
        keys: Optional[Sequence[str]] = None,
    ):
        super().__init__(message)
        self.position = position
        self.keys = list(keys or [])

    def to_dict(self) -> dict:
        """Machine-readable form used by the CLI error channel."""
        payload: dict = {"error": "config", "message": str(self)}
        if self.position is not None:
            payload["line"], payload["column"] = self.position
        if self.keys:
            payload["keys"] = self.keys
        return payload
