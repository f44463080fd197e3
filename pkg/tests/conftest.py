"""Fixtures for tests."""
import pytest

from dnls_trains.profiles import (KinkParams, SolitonParams, TrainSpec,
                                  scaled_family)
from dnls_trains.spectral import Grid

# Scaled dnls1 family with d = (-1, -2), h = (1, 1) and M = 8:
# c = (-8, -16), ω = (16.25, 64.25), v* = 8 and λ = 1/2.
FAMILY_D = (-1.0, -2.0)
FAMILY_H = (1.0, 1.0)


@pytest.fixture
def family_spec():
    """dnls1 two-soliton train of the scaled family with M = 8."""
    return TrainSpec("dnls1", scaled_family("dnls1", FAMILY_D, FAMILY_H, 8))


@pytest.fixture
def family_grid():
    """Grid covering the M = 8 family for 2 <= t <= 8."""
    return Grid(256, 2048, center=-56)


@pytest.fixture
def dnls1_soliton():
    """Single dnls1 soliton with ω = 1 and c = 1/2."""
    return SolitonParams("dnls1", omega=1, c=0.5)


@pytest.fixture
def dnls1_grid():
    """Grid for single dnls1 solitons of unit frequency."""
    return Grid(80, 2048)


@pytest.fixture
def kink_train():
    """dnls2 train of a half-kink (c₀ = 1, γ = 1) and a soliton with c = 8.

    ω₀ = 1/2 and h₀ = 1, the soliton has ω = 16.25 and h = 1, so v* = 7 and
    λ = 7/16.
    """
    b = 1 / 8
    kink = KinkParams(c0=1, b=b)
    soliton = scaled_family("dnls2", [1.0], [1.0], 8, b=b)[0]
    return TrainSpec("dnls2", [soliton], kink)


@pytest.fixture
def kink_grid():
    """Grid covering the kink train for 2 <= t <= 6."""
    return Grid(256, 2048, center=25)


@pytest.fixture
def write_config(tmp_path):
    """Return a function that writes an experiment configuration file."""
    def _write(text, name="experiment.xml"):
        path = tmp_path / name
        path.write_text(text)
        return path
    return _write
