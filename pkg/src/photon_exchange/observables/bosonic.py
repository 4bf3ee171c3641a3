"""
Bosonic-limit oracle and collective coupling scaling.

For N -> infinity the exchange Hamiltonian is quadratic in the three modes
(a1, a2, R), so two-photon amplitudes follow from permanents of the
single-particle transfer matrix. The coupling product below tracks how the
two-step absorption |2,0,0> -> |1,0,1> -> |0,0,2> grows with N.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..dynamics import PulseSegment, build_hamiltonian
from ..errors import DomainError, NonUnitaryError
from ..sector import DickeModel, enumerate_sector

logger = logging.getLogger(__name__)

UNITARITY_TOLERANCE = 1e-10


def permanent(matrix: np.ndarray) -> complex:
    """
    Permanent of a square matrix (Ryser formula).

    Small sizes are expanded directly; this workbench never goes beyond 4x4.
    """
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise DomainError(f"Permanent needs a square matrix, got shape {a.shape}")
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0])
    total = 0.0 + 0.0j
    for size in range(1, n + 1):
        sign = (-1) ** size
        for cols in itertools.combinations(range(n), size):
            total += sign * np.prod(a[:, cols].sum(axis=1))
    return complex((-1) ** n * total)


def is_unitary(u: np.ndarray, tol: float = UNITARITY_TOLERANCE) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])), initial=0.0) <= tol)


def occupation_to_modes(occupation: Sequence[int]) -> List[int]:
    """Expand an occupation vector into a list of mode indices with repetition."""
    modes: List[int] = []
    for mode, count in enumerate(occupation):
        if count < 0:
            raise DomainError(f"Negative occupation {count} in mode {mode}")
        modes.extend([mode] * int(count))
    return modes


def transition_amplitude(u: np.ndarray, input_occ: Sequence[int], output_occ: Sequence[int]) -> complex:
    """
    Multi-photon amplitude <output| U |input> of a passive linear network.

    Column j of ``u`` gives the output modes of a particle entering mode j.
    """
    cols = occupation_to_modes(input_occ)
    rows = occupation_to_modes(output_occ)
    if len(rows) != len(cols):
        return 0.0 + 0.0j
    norm = math.prod(math.factorial(int(n)) for n in input_occ) * math.prod(math.factorial(int(n)) for n in output_occ)
    sub = np.asarray(u, dtype=complex)[np.ix_(rows, cols)]
    return permanent(sub) / math.sqrt(norm)


def bosonic_two_photon_amplitude(u: np.ndarray, input: Sequence[int], output: Sequence[int]) -> complex:
    """
    Two-photon amplitude of the bosonic-limit dynamics from a 3x3 transfer matrix.

    Args:
        u: Unitary over modes (a1, a2, R)
        input: Photon occupations (n1, n2), optionally with a third collective entry
        output: Occupations of the same form

    Returns:
        perm(u[out, in]) / sqrt(prod n_in! prod n_out!); e.g. u11 u22 + u12 u21 for (1,1) -> (1,1)

    Raises:
        NonUnitaryError: If u is not unitary to 1e-10
        DomainError: If an occupation does not hold exactly two particles
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (3, 3) or not is_unitary(u):
        raise NonUnitaryError(f"Transfer matrix of shape {u.shape} is not a 3x3 unitary")
    occupations = []
    for occ in (input, output):
        occ = tuple(int(n) for n in occ)
        if len(occ) == 2:
            occ = occ + (0,)
        if len(occ) != 3 or sum(occ) != 2:
            raise DomainError(f"Occupation {occ} must hold exactly two particles over (a1, a2[, R])")
        occupations.append(occ)
    return transition_amplitude(u, occupations[0], occupations[1])


def two_photon_coupling_product(n_atoms: int, eps: float) -> float:
    """
    Product of the two sequential matrix elements |2,0,0> -> |1,0,1> -> |0,0,2>.

    Both elements are taken from the unnormalized Hamiltonian
    sqrt(N) eps (R+ a + h.c.):
        (sqrt(N) eps sqrt(2) sqrt(N)) * (sqrt(N) eps sqrt(2 (N - 1))) = 2 N sqrt(N (N - 1)) eps^2
    which grows as N^2 for large N.
    """
    if n_atoms < 1:
        raise DomainError(f"Atom number must be at least 1, got {n_atoms}")
    n = float(n_atoms)
    first = math.sqrt(n) * eps * math.sqrt(2.0) * math.sqrt(n)
    second = math.sqrt(n) * eps * math.sqrt(2.0 * (n - 1.0))
    return first * second


def coupling_product_from_hamiltonian(n_atoms: int, eps: float) -> float:
    """
    Same product read off the normalized sector-2 Hamiltonian with g = N eps.

    The normalized element g * step(r) * sqrt(n) equals the unnormalized one
    entry for entry, so this reproduces two_photon_coupling_product.
    """
    model = DickeModel(n_atoms=n_atoms)
    sector = enumerate_sector(2, model)
    if (0, 0, 2) not in sector:
        return 0.0
    segment = PulseSegment.from_physical(eps, 0.0, 0.0, model)
    h = build_hamiltonian(segment, sector, model).matrix.real
    first = h[sector.index((1, 0, 1)), sector.index((2, 0, 0))]
    second = h[sector.index((0, 0, 2)), sector.index((1, 0, 1))]
    return float(first * second)


@dataclass
class ScalingRow:
    """One row of the coupling-scaling table."""

    n_atoms: int
    product: float
    ratio: float

    def to_dict(self) -> dict:
        return {"n_atoms": self.n_atoms, "product": self.product, "ratio": self.ratio}


def scaling_table(n_values: Sequence[int], eps: float = 1.0) -> List[ScalingRow]:
    """
    Rows (N, M(N), M(2N)/M(N)).

    The ratio tends to 4 for large N; it is NaN where M(N) vanishes (N = 1).
    """
    rows = []
    for n in n_values:
        product = two_photon_coupling_product(n, eps)
        ratio = two_photon_coupling_product(2 * n, eps) / product if product != 0 else float("nan")
        rows.append(ScalingRow(n_atoms=int(n), product=product, ratio=ratio))
    return rows
