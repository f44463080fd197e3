"""Tests for the Picard construction of multi-soliton trains."""
import logging

import numpy as np
import pytest

from dnls_trains import fixedpoint
from dnls_trains.errors import ContractionError, InvalidArgumentError
from dnls_trains.fixedpoint import (PairTrajectory, build_W_H, duhamel_apply,
                                    fit_distance, picard_solve, synthesize,
                                    xnorm)
from dnls_trains.gauge import gauge_profile
from dnls_trains.profiles import TrainSpec, scaled_family
from dnls_trains.spectral import Grid, make_grid, propagate_values


def _mode_trajectory(times, profile):
    """Trajectory e^{ix} profile(t) in both components on [0, 2π)."""
    grid = make_grid(2 * np.pi, 16)
    times = np.asarray(times)
    mode = np.exp(1j * grid.x)
    values = profile(times)[:, None, None] * mode[None, None, :]
    values = np.repeat(values, 2, axis=1)
    return PairTrajectory(times, values, grid, "dnls1")


@pytest.fixture
def single_spec(dnls1_soliton):
    """Train of a single dnls1 soliton."""
    return TrainSpec("dnls1", [dnls1_soliton])


def test_duhamel_of_zero():
    """Test that the Duhamel integral of zero vanishes."""
    G = _mode_trajectory(np.linspace(0, 1, 11), np.zeros_like)
    assert np.all(duhamel_apply(G).values == 0)


def test_duhamel_single_mode():
    """Test the Duhamel integral of e^{ix} e^{-s} against its closed form.
    """
    G = _mode_trajectory(np.linspace(0, 1, 10001), lambda t: np.exp(-t))
    result = duhamel_apply(G)

    # -i ∫_0^1 e^{is} e^{-s} ds
    expected = -1j * (np.exp(1j - 1) - 1) / (1j - 1)
    mode = np.exp(1j * G.grid.x)
    assert np.allclose(result.values[0, 0], expected * mode, atol=1e-8)
    assert np.allclose(result.values[0, 1], expected * mode, atol=1e-8)
    assert np.all(result.values[-1] == 0)


def test_duhamel_linearity():
    """Test that the Duhamel integral is linear."""
    times = np.linspace(0, 1, 21)
    first = _mode_trajectory(times, np.cos)
    second = _mode_trajectory(times, lambda t: t ** 2)
    combined = first.with_values(2 * first.values + second.values)
    assert np.allclose(
        duhamel_apply(combined).values,
        2 * duhamel_apply(first).values + duhamel_apply(second).values,
        atol=1e-13
    )


def test_duhamel_split():
    """Test that the integral splits at an intermediate node.

    On [t_0, T_m] the integral over [t_0, Tmax] is the integral over
    [t_0, T_m] plus the free evolution of its value at T_m.
    """
    rng = np.random.default_rng(11)
    grid = make_grid(2 * np.pi, 16)
    times = np.linspace(0, 1, 41)
    modes = np.exp(1j * np.outer(np.arange(-3, 4), grid.x))
    weights = rng.normal(size=(2, 7, 3)) + 1j * rng.normal(size=(2, 7, 3))
    basis = np.array([np.ones_like(times), np.cos(3 * times), times ** 2])
    values = np.einsum("cmp,pt,mx->tcx", weights, basis, modes)
    G = PairTrajectory(times, values, grid, "dnls1")

    middle = 20
    full = duhamel_apply(G)
    late = duhamel_apply(PairTrajectory(
        times[middle:], values[middle:], grid, "dnls1"))
    early = duhamel_apply(PairTrajectory(
        times[:middle + 1], values[:middle + 1], grid, "dnls1"))

    assert np.allclose(full.values[middle:], late.values, atol=1e-12)
    for index in range(middle + 1):
        expected = early.values[index] + propagate_values(
            late.values[0], grid, times[index] - times[middle]
        )
        assert np.allclose(full.values[index], expected, atol=1e-12)


def test_xnorm():
    """Test the weighted X-norm of a constant single mode."""
    eta = _mode_trajectory(np.linspace(0, 1, 3), np.ones_like)
    # ‖e^{ix}‖ = ‖∂e^{ix}‖ = √(2π) in both components
    assert xnorm(eta, 0.0) == pytest.approx(4 * np.sqrt(2 * np.pi))
    assert xnorm(eta, 1.0) == pytest.approx(4 * np.e * np.sqrt(2 * np.pi))
    assert xnorm(PairTrajectory.zeros_like(eta), 1.0) == 0


def test_pair_trajectory_validation():
    """Test that inconsistent pair trajectories are rejected."""
    grid = make_grid(2 * np.pi, 16)
    with pytest.raises(InvalidArgumentError) as error:
        PairTrajectory([0.0], np.zeros((1, 2, 16)), grid, "dnls1")
    assert str(error.value) == "A pair trajectory needs at least two times."

    with pytest.raises(InvalidArgumentError) as error:
        PairTrajectory([0.0, 1.0, 3.0], np.zeros((3, 2, 16)), grid, "dnls1")
    assert str(error.value) == (
        "Pair trajectory times have to be uniformly spaced and increasing."
    )

    with pytest.raises(InvalidArgumentError) as error:
        PairTrajectory([0.0, 1.0], np.zeros((2, 2, 8)), grid, "dnls1")
    assert str(error.value) == (
        "Pair trajectory values need shape (2, 2, 16), got (2, 2, 8)."
    )


def test_build_W_H_single_soliton(single_spec, dnls1_grid):
    """Test that a single soliton has a profile but no sources."""
    times = np.linspace(0, 1, 3)
    W, H = build_W_H(single_spec, times, dnls1_grid)
    assert np.all(H.values == 0)
    assert np.array_equal(
        W.values[1], gauge_profile(single_spec, 0.5, dnls1_grid).to_array()
    )


def test_picard_single_soliton(single_spec):
    """Test that a single soliton is its own fixed point."""
    grid = Grid(80, 256)
    eta, report = picard_solve(single_spec, 0.0, 1.0, 0.1, grid)
    assert report.converged
    assert report.iterates == 1
    assert report.final_defect == 0
    assert report.gate_value is None
    assert np.all(eta.values == 0)
    assert len(eta) == 11


FAMILY_PICARD_GRID = Grid(256, 2048, center=-100)


def _family_picard(T0, Tmax):
    spec = TrainSpec("dnls1", scaled_family("dnls1", [-1, -2], [1, 1], 8))
    eta, report = picard_solve(spec, T0, Tmax, 0.01, FAMILY_PICARD_GRID)
    return spec, eta, report


def _restricted(eta, start, stop):
    """η on the nodes with start <= t <= stop."""
    keep = (eta.times >= start - 1e-9) & (eta.times <= stop + 1e-9)
    return PairTrajectory(eta.times[keep], eta.values[keep], eta.grid,
                          eta.variant)


@pytest.fixture(scope="module")
def family_picard():
    """Picard construction of the M = 8 family on [3, 9]."""
    return _family_picard(3.0, 9.0)


def test_picard_family(family_picard):
    """Test the Picard construction of a separated two-soliton train."""
    spec, eta, report = family_picard

    assert report.converged
    assert report.iterates >= 2
    assert max(report.ratios) <= 0.5
    assert report.final_defect <= 1e-6
    assert xnorm(eta, spec.decay_rate) <= 1

    trajectory = synthesize(spec, eta)
    assert np.max(trajectory.observables["relation_defect"]) <= 1e-6
    fit = fit_distance(trajectory, (3.0, 5.0))
    assert fit.rate >= spec.decay_rate
    assert fit.rsquared >= 0.95


def test_picard_later_start(family_picard):
    """Test that a later T0 contracts faster and agrees on shared nodes."""
    spec, eta, early = family_picard
    _, later, report = _family_picard(5.0, 9.0)

    assert report.converged
    assert max(report.ratios) <= max(early.ratios)
    shared = _restricted(eta, 5.0, 9.0)
    assert np.allclose(shared.times, later.times, rtol=0, atol=1e-9)
    difference = later.with_values(later.values - shared.values)
    assert xnorm(difference, spec.decay_rate) <= 1e-6


def test_picard_truncation(family_picard):
    """Test that moving Tmax barely changes the correction near T0."""
    spec, eta, _ = family_picard
    _, longer, report = _family_picard(3.0, 11.0)

    assert report.converged
    early = _restricted(eta, 3.0, 5.0)
    other = _restricted(longer, 3.0, 5.0)
    assert np.allclose(early.times, other.times, rtol=0, atol=1e-9)
    difference = early.with_values(early.values - other.values)
    assert xnorm(difference, spec.decay_rate) <= 1e-6


def test_picard_kink_train(kink_train, kink_grid):
    """Test the Picard construction of a half-kink and a soliton."""
    eta, report = picard_solve(kink_train, 2.0, 6.0, 0.01, kink_grid)

    assert report.converged
    assert max(report.ratios) <= 0.5
    trajectory = synthesize(kink_train, eta)
    assert np.max(trajectory.observables["relation_defect"]) <= 1e-6


def test_picard_times(single_spec):
    """Test that inconsistent time grids are rejected."""
    grid = Grid(80, 256)
    with pytest.raises(InvalidArgumentError) as error:
        picard_solve(single_spec, 1.0, 1.0, 0.1, grid)
    assert str(error.value) == (
        "Tmax has to exceed T0, got T0 = 1.0 and Tmax = 1.0."
    )

    with pytest.raises(InvalidArgumentError) as error:
        picard_solve(single_spec, 0.0, 1.0, 0.3, grid)
    assert str(error.value) == (
        "Time step 0.3 does not divide the interval [0.0, 1.0]."
    )


def _scaled_duhamel(scale):
    """Replacement of duhamel_apply returning scale(n) at the n-th call."""
    calls = []

    def fake(G):
        calls.append(G)
        return G.with_values(
            np.full_like(G.values, scale(len(calls)))
        )
    return fake


def test_picard_not_contracting(single_spec, monkeypatch):
    """Test that growing increments stop the iteration."""
    monkeypatch.setattr(fixedpoint, "duhamel_apply",
                        _scaled_duhamel(lambda n: 3.0 ** n))
    with pytest.raises(ContractionError) as error:
        picard_solve(single_spec, 0.0, 1.0, 0.1, Grid(80, 256))
    assert str(error.value) == (
        "Picard iteration is not contracting: the last two ratios are 2 and "
        "3."
    )
    assert error.value.report.iterates == 3
    assert error.value.report.ratios == pytest.approx([2, 3])


def test_picard_iteration_cap(single_spec, monkeypatch, caplog):
    """Test that hitting the iteration cap logs a warning."""
    caplog.set_level(logging.WARNING, logger="dnls_trains")
    monkeypatch.setattr(fixedpoint, "duhamel_apply",
                        _scaled_duhamel(lambda n: 1 - 0.5 ** n))
    _, report = picard_solve(single_spec, 0.0, 1.0, 0.1, Grid(80, 256),
                             max_iters=3)
    assert not report.converged
    assert report.iterates == 3
    assert report.ratios == pytest.approx([0.5, 0.5])
    assert "Picard iteration stopped after 3 iterates" in caplog.text
