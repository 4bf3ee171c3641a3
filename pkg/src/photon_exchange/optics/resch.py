"""Two-photon absorption on a lossy beam splitter with partially distinguishable photons."""

import logging
import math
from typing import List, Sequence, Tuple

from ..errors import DomainError
from .interferometer import AbsorptionStats, absorption_from_amplitudes, dilate_lossy_bs, fock_evolve_linear

logger = logging.getLogger(__name__)


def resch_experiment(t: complex, r: complex, d: float) -> AbsorptionStats:
    """
    Absorption statistics for one photon in each signal port.

    Photon 1 enters port 0 with internal label H. Photon 2 enters port 1 in
    sqrt(d) H + sqrt(1 - d) V, so d = 1 is the indistinguishable case and
    d = 0 the independent one.

    Args:
        t: Transmission amplitude of the block [[t, r], [r, t]]
        r: Reflection amplitude
        d: Distinguishability overlap in [0, 1]

    Raises:
        DomainError: If d lies outside [0, 1]
        UnphysicalBeamSplitterError: If the block would amplify light
    """
    d = float(d)
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"Distinguishability must lie in [0, 1], got {d}")

    spec = dilate_lossy_bs(t, r).doubled()
    # Doubled mode 2m + l is spatial mode m with label l (0 = H, 1 = V)
    matched = [0] * spec.n_modes
    matched[0] = matched[2] = 1
    orthogonal = [0] * spec.n_modes
    orthogonal[0] = orthogonal[3] = 1

    a_matched = fock_evolve_linear(spec, matched)
    a_orthogonal = fock_evolve_linear(spec, orthogonal)
    sd, so = math.sqrt(d), math.sqrt(1.0 - d)
    amplitudes = {out: sd * a_matched[out] + so * a_orthogonal[out] for out in a_matched}
    return absorption_from_amplitudes(spec, amplitudes)


def absorption_curve(t: complex, r: complex, d_values: Sequence[float]) -> List[Tuple[float, AbsorptionStats]]:
    """resch_experiment over a grid of distinguishabilities."""
    rows = [(float(d), resch_experiment(t, r, d)) for d in d_values]
    logger.info(f"Absorption curve for t={t}, r={r} over {len(rows)} points")
    return rows
