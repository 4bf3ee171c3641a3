"""Pytest configuration and shared fixtures."""

import os
import sys
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

# Add src and the repository root (for tests.fixtures) to path for imports
repo_root = Path(__file__).parent.parent
sys.path.insert(0, str(repo_root / "src"))
sys.path.insert(0, str(repo_root))

from photon_exchange.sector import DickeModel  # noqa: E402


@pytest.fixture
def clean_env():
    """Environment without any PHOTON_EXCHANGE_* overrides."""
    env = {k: v for k, v in os.environ.items() if not k.startswith("PHOTON_EXCHANGE_")}
    with patch.dict(os.environ, env, clear=True):
        yield


@pytest.fixture
def model_n2():
    """Two-atom Dicke model."""
    return DickeModel(n_atoms=2)


@pytest.fixture
def bosonic_model():
    """Bosonic-limit model."""
    return DickeModel.bosonic()


@pytest.fixture(params=[1, 2, 3, 8, None], ids=lambda n: f"N={n if n is not None else 'inf'}")
def any_model(request):
    """Finite models around the ladder cap plus the bosonic limit."""
    return DickeModel(n_atoms=request.param)


@pytest.fixture
def rng():
    """Seeded generator for property tests."""
    return np.random.Generator(np.random.PCG64(20240607))
