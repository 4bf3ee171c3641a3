"""Unit tests for pulse sequences, Hamiltonians and exact evolution."""

import math

import numpy as np
import pytest

from photon_exchange.dynamics import (
    PulseSegment,
    PulseSequence,
    build_hamiltonian,
    check_segment_inverse,
    effective_coupling,
    evolve_sequence,
    propagator_from_hamiltonian,
    sector_propagator,
    segment_propagators,
    single_particle_transfer,
)
from photon_exchange.errors import DomainError
from photon_exchange.sector import DickeModel, basis_state, enumerate_sector


def _a1(t):
    return math.cos(2 * t)


def _a2(t):
    return (1 + 2 * math.cos(2 * math.sqrt(3) * t)) / 3


class TestPulseSequence:
    """Test pulse segment and sequence handling."""

    def test_negative_duration_rejected(self):
        """Durations must be non-negative."""
        with pytest.raises(DomainError):
            PulseSegment(g1=1.0, g2=0.0, duration=-0.1)

    def test_non_finite_rejected(self):
        """NaN and infinite couplings are rejected."""
        with pytest.raises(DomainError):
            PulseSegment(g1=float("nan"), g2=0.0, duration=1.0)

    def test_from_segments_accepts_mixed_forms(self):
        """Dicts, triples and segments can be mixed."""
        seq = PulseSequence.from_segments(
            [{"g1": 1, "g2": 2, "duration": 0.5}, (0.0, 1.0, 1.5), PulseSegment(3.0, 0.0, 0.25)]
        )
        assert len(seq) == 3
        assert seq.total_duration == pytest.approx(2.25)

    def test_vector_round_trip(self):
        """to_vector and from_vector are inverse on valid sequences."""
        seq = PulseSequence.from_segments([(1.0, -2.0, 0.3), (0.5, 0.5, 1.2)])
        assert PulseSequence.from_vector(seq.to_vector()) == seq

    def test_from_vector_clips_durations(self):
        """Negative durations coming out of an optimizer are clipped to zero."""
        seq = PulseSequence.from_vector(np.array([1.0, 1.0, -0.5]))
        assert seq.segments[0].duration == 0.0

    def test_validate_bounds(self):
        """Couplings and durations outside the configured box are rejected."""
        seq = PulseSequence.from_segments([(11.0, 0.0, 1.0)])
        with pytest.raises(DomainError):
            seq.validate(coupling_bound=10.0)
        with pytest.raises(DomainError):
            PulseSequence.from_segments([(1.0, 0.0, 7.0)]).validate(duration_bound=2 * math.pi)

    def test_from_physical(self):
        """g = N * eps for finite models."""
        seg = PulseSegment.from_physical(0.25, 0.5, 1.0, DickeModel(n_atoms=4))
        assert (seg.g1, seg.g2) == (1.0, 2.0)

    def test_from_physical_bosonic_raises(self, bosonic_model):
        """The bosonic limit has no finite N to scale by."""
        with pytest.raises(DomainError):
            PulseSegment.from_physical(0.1, 0.1, 1.0, bosonic_model)


class TestHamiltonian:
    """Test build_hamiltonian."""

    def test_single_excitation_two_atoms(self, model_n2):
        """N=2, n_exc=1, g1=2: the exchange element between (1,0,0) and (0,0,1) is 2."""
        sector = enumerate_sector(1, model_n2)
        h = build_hamiltonian(PulseSegment(2.0, 0.0, 0.0), sector, model_n2).matrix
        assert h[sector.index((0, 0, 1)), sector.index((1, 0, 0))] == pytest.approx(2.0)
        assert h[sector.index((1, 0, 0)), sector.index((0, 0, 1))] == pytest.approx(2.0)

    def test_two_excitation_two_atoms(self, model_n2):
        """N=2, n_exc=2, g1=2: elements 2*sqrt(2) then 2 along the absorption ladder."""
        sector = enumerate_sector(2, model_n2)
        h = build_hamiltonian(PulseSegment(2.0, 0.0, 0.0), sector, model_n2).matrix
        assert h[sector.index((1, 0, 1)), sector.index((2, 0, 0))] == pytest.approx(2 * math.sqrt(2), abs=1e-14)
        assert h[sector.index((0, 0, 2)), sector.index((1, 0, 1))] == pytest.approx(2.0, abs=1e-14)

    @pytest.mark.parametrize("n_exc", [0, 1, 2, 3])
    def test_hermitian(self, any_model, rng, n_exc):
        """Random couplings always give a Hermitian sector matrix."""
        sector = enumerate_sector(n_exc, any_model)
        for _ in range(10):
            g1, g2 = rng.uniform(-10, 10, size=2)
            hamiltonian = build_hamiltonian(PulseSegment(g1, g2, 1.0), sector, any_model)
            assert hamiltonian.hermiticity_error() <= 1e-14

    def test_zero_couplings(self, model_n2):
        """Zero couplings give the zero matrix."""
        sector = enumerate_sector(2, model_n2)
        assert not np.any(build_hamiltonian(PulseSegment(0.0, 0.0, 1.0), sector, model_n2).matrix)


class TestEffectiveCoupling:
    """Test adiabatic elimination of the excited level."""

    def test_ratio(self):
        """eps = g3 * Omega / delta."""
        assert effective_coupling(2.0, 3.0, 6.0) == pytest.approx(1.0)
        assert effective_coupling(1.0, 1.0, -4.0) == pytest.approx(-0.25)

    def test_resonance_raises(self):
        """delta = 0 is rejected."""
        with pytest.raises(DomainError):
            effective_coupling(1.0, 1.0, 0.0)


class TestEvolution:
    """Test exact sector evolution."""

    @pytest.mark.parametrize("t", [0.0, 0.3, math.pi / 4, 1.7, 3 * math.pi / 2])
    def test_single_photon_closed_form(self, model_n2, t):
        """N=2, g1=2: amplitude to stay in (1,0,0) is cos(2t)."""
        sector = enumerate_sector(1, model_n2)
        initial = basis_state(sector, (1, 0, 0))
        final, _ = evolve_sequence(PulseSequence.from_segments([(2.0, 0.0, t)]), initial)
        assert abs(final.amplitude((1, 0, 0)) - _a1(t)) <= 1e-10

    @pytest.mark.parametrize("t", [0.0, 0.3, math.pi / 2, 2.1, 3 * math.pi / 2])
    def test_two_photon_closed_form(self, model_n2, t):
        """N=2, g1=2: amplitude to stay in (2,0,0) is (1 + 2 cos(2 sqrt(3) t)) / 3."""
        sector = enumerate_sector(2, model_n2)
        initial = basis_state(sector, (2, 0, 0))
        final, _ = evolve_sequence(PulseSequence.from_segments([(2.0, 0.0, t)]), initial)
        assert abs(final.amplitude((2, 0, 0)) - _a2(t)) <= 1e-10

    def test_empty_sequence_is_identity(self, bosonic_model):
        """No segments leaves the state unchanged and the trajectory has one entry."""
        initial = basis_state(enumerate_sector(2, bosonic_model), (1, 1, 0))
        final, trajectory = evolve_sequence(PulseSequence(), initial)
        assert np.array_equal(final.amplitudes, initial.amplitudes)
        assert len(trajectory) == 1

    def test_trajectory_length(self, model_n2):
        """The trajectory holds the initial state and one snapshot per segment."""
        initial = basis_state(enumerate_sector(2, model_n2), (1, 1, 0))
        seq = PulseSequence.from_segments([(1.0, 0.5, 0.2)] * 4)
        final, trajectory = evolve_sequence(seq, initial)
        assert len(trajectory) == 5
        assert trajectory[0] is initial
        assert np.array_equal(trajectory[-1].amplitudes, final.amplitudes)

    def test_norm_preserved(self, any_model, rng):
        """Unit norm is kept through random sequences."""
        initial = basis_state(enumerate_sector(3, any_model), (1, 1, 1))
        for _ in range(5):
            seq = PulseSequence.from_vector(
                np.column_stack([rng.uniform(-10, 10, (8, 2)), rng.uniform(0, 2 * math.pi, (8, 1))]).ravel()
            )
            final, _ = evolve_sequence(seq, initial)
            assert abs(final.norm() - 1.0) <= 1e-12

    def test_semigroup(self, model_n2):
        """Splitting a segment in two gives the same propagator."""
        sector = enumerate_sector(2, model_n2)
        whole = sector_propagator(PulseSequence.from_segments([(1.3, -0.7, 1.1)]), sector)
        split = sector_propagator(PulseSequence.from_segments([(1.3, -0.7, 0.4), (1.3, -0.7, 0.7)]), sector)
        assert np.max(np.abs(whole - split)) <= 1e-12

    def test_batched_matches_single(self, bosonic_model):
        """Stacked diagonalization agrees with one-at-a-time propagators."""
        sector = enumerate_sector(2, bosonic_model)
        seq = PulseSequence.from_segments([(1.0, 2.0, 0.5), (-3.0, 0.5, 1.5)])
        batched = segment_propagators(seq, sector)
        for step, seg in zip(batched, seq):
            single = propagator_from_hamiltonian(build_hamiltonian(seg, sector, bosonic_model), seg.duration)
            assert np.max(np.abs(step - single)) <= 1e-12

    def test_segment_inverse(self, model_n2):
        """Each segment propagator is unitary."""
        sector = enumerate_sector(2, model_n2)
        seq = PulseSequence.from_segments([(9.0, -4.0, 6.0), (0.1, 0.2, 0.3)])
        assert check_segment_inverse(seq, sector) <= 1e-12

    def test_single_particle_transfer_unitary(self):
        """The bosonic mode transfer matrix is unitary and trivial for no segments."""
        seq = PulseSequence.from_segments([(1.0, 2.0, 0.5), (-3.0, 0.5, 1.5)])
        u = single_particle_transfer(seq)
        assert np.max(np.abs(u.conj().T @ u - np.eye(3))) <= 1e-12
        assert np.array_equal(single_particle_transfer(PulseSequence()), np.eye(3))


def _random_vector(rng, n_segments=8):
    return np.column_stack(
        [rng.uniform(-10, 10, (n_segments, 2)), rng.uniform(0, 2 * math.pi, (n_segments, 1))]
    ).ravel()


class TestRandomSequenceProperties:
    """Invariants checked over 1000 seeded random instances."""

    N_INSTANCES = 1000

    @pytest.mark.parametrize("n_atoms", [2, None])
    def test_norm_preserved(self, n_atoms, rng):
        """Evolution keeps unit norm to 1e-12."""
        model = DickeModel(n_atoms=n_atoms)
        initial = basis_state(enumerate_sector(2, model), (1, 1, 0))
        for _ in range(self.N_INSTANCES):
            final, _ = evolve_sequence(PulseSequence.from_vector(_random_vector(rng)), initial)
            assert abs(final.norm() - 1.0) <= 1e-12

    @pytest.mark.parametrize("n_atoms", [1, 2, 8, None])
    def test_hamiltonian_hermitian(self, n_atoms, rng):
        """Every random coupling pair gives a Hermitian matrix on sectors 0 to 3."""
        model = DickeModel(n_atoms=n_atoms)
        sectors = [enumerate_sector(n_exc, model) for n_exc in range(4)]
        for _ in range(self.N_INSTANCES):
            g1, g2 = rng.uniform(-10, 10, size=2)
            for sector in sectors:
                assert build_hamiltonian(PulseSegment(g1, g2, 1.0), sector, model).hermiticity_error() <= 1e-14

    def test_sector_closed_under_evolution(self, model_n2, rng):
        """Propagators are unitary on the sector, so no amplitude leaves it."""
        sector = enumerate_sector(3, model_n2)
        identity = np.eye(sector.dim)
        for _ in range(self.N_INSTANCES):
            u = sector_propagator(PulseSequence.from_vector(_random_vector(rng, 4)), sector)
            assert np.max(np.abs(u.conj().T @ u - identity)) <= 1e-11

    def test_deterministic(self, bosonic_model, rng):
        """The same sequence gives bit-identical propagators."""
        sector = enumerate_sector(2, bosonic_model)
        for _ in range(self.N_INSTANCES):
            seq = PulseSequence.from_vector(_random_vector(rng, 4))
            assert np.array_equal(sector_propagator(seq, sector), sector_propagator(seq, sector))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
