import os
import sys

import pytest
from dotenv import load_dotenv

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

load_dotenv()

from src.materials.catalog import material_from_name  # noqa: E402
from src.materials.dielectric import Constant, Vacuum  # noqa: E402
from src.quadrature.settings import QuadratureSettings  # noqa: E402
from src.spectral.lamellar import LamellarProfile  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: reproduces published curves, minutes of runtime")


@pytest.fixture(scope="session")
def fast_settings():
    """Loose tolerances for property tests that only compare results with each other."""
    return QuadratureSettings(rel_tol=1e-6, series_tail_tol=1e-8)


@pytest.fixture(scope="session")
def gold():
    return material_from_name("gold")


@pytest.fixture(scope="session")
def silicon():
    return material_from_name("silicon")


@pytest.fixture(scope="session")
def air():
    return material_from_name("air")


@pytest.fixture(scope="session")
def short_grating(gold, air):
    """Gold-air, f = 0.5, with a short period so the harmonic series converges after a few terms."""
    return LamellarProfile(high=gold, low=air, fill_fraction=0.5, wavelength=200e-9)


@pytest.fixture(scope="session")
def asymmetric_grating(gold, air):
    return LamellarProfile(high=gold, low=air, fill_fraction=0.3, wavelength=200e-9)


@pytest.fixture(scope="session")
def dielectric_grating():
    return LamellarProfile(high=Constant(epsilon=4.0), low=Vacuum(), fill_fraction=0.5, wavelength=200e-9)
