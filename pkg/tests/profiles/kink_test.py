"""Tests for dnls2 half-kinks."""
import numpy as np
import pytest

from dnls_trains.errors import (DecayViolationError, InvalidParameterError,
                                UnsupportedOrientationError)
from dnls_trains.profiles import (KinkParams, Orientation,
                                  first_integral_coefficients,
                                  halfkink_derivatives, halfkink_phi,
                                  kink_derivative, kink_field, kink_residual,
                                  kink_tail_rate)
from dnls_trains.spectral import Grid

# c₀ = 1 and b = 1/8 give γ = 1, ζ = √2, ω̃₁ = 1/4, ω₀ = 1/2 and κ = 1.
C0 = 1.0
B = 1 / 8


@pytest.fixture
def kink():
    """Falling half-kink with γ = 1 centered at 0."""
    return KinkParams(c0=C0, b=B)


@pytest.fixture
def grid():
    """Grid centered at the kink."""
    return Grid(120, 2048)


def _closed_form(x, orientation=Orientation.FALLING):
    """Φ² = ζ²/(1 + e^{±κ(x - x₀)}) for γ = 1 and c₀ = 1."""
    sign = 1 if orientation == Orientation.FALLING else -1
    return 2 / (1 + np.exp(sign * x))


def test_derived_parameters(kink):
    """Test the derived parameters of a half-kink."""
    assert kink.gamma == pytest.approx(1)
    assert kink.zeta == pytest.approx(np.sqrt(2))
    assert kink.omega_tilde == pytest.approx(0.25)
    assert kink.omega0 == pytest.approx(0.5)
    assert kink.width == pytest.approx(1)
    assert kink.logistic_rate == pytest.approx(1)
    assert kink.speed == C0
    assert kink.frequency == pytest.approx(0.5)


@pytest.mark.parametrize(
    ("parameters", "message"),
    [
        ({"c0": 1, "b": 1},
         "Half-kinks need gamma > 0, got gamma = -3.66667 for b = 1."),
        ({"c0": 0, "b": B},
         "Half-kinks need a positive speed c0, got 0."),
        ({"c0": 1, "b": B, "omega0": 0.75},
         "Half-kink frequency omega0 = 0.75 is inconsistent with c0 = 1, "
         "which requires omega0 = 0.5."),
    ]
)
def test_invalid_kink(parameters, message):
    """Test that invalid half-kink parameters raise errors."""
    with pytest.raises(InvalidParameterError) as error:
        KinkParams(**parameters)
    assert str(error.value) == message


def test_consistent_frequency():
    """Test that a consistent given frequency is accepted."""
    assert KinkParams(c0=C0, b=B, omega0=0.5).omega0 == pytest.approx(0.5)


def test_first_integral_double_root(kink):
    """Test that the first integral has the double root y = ζ²."""
    roots = np.roots(first_integral_coefficients(kink))
    assert np.allclose(roots, kink.zeta ** 2, atol=1e-6)


def test_halfkink_profile(kink, grid):
    """Test the half-kink against its closed form and its limits."""
    phi = halfkink_phi(kink, grid).values
    x = grid.x

    assert phi[grid.N // 2] == pytest.approx(1, abs=1e-12)
    assert np.allclose(phi ** 2, _closed_form(x), rtol=1e-10, atol=1e-20)
    assert np.all(np.abs(phi[x <= -40] - kink.zeta) < 1e-8)
    assert np.all(phi[x >= 40] < 1e-8)
    assert np.all(np.diff(phi) <= 1e-12)


def test_rising_halfkink(grid):
    """Test that a rising half-kink mirrors the falling one."""
    rising = KinkParams(c0=C0, b=B, orientation="rising")
    assert rising.orientation == Orientation.RISING
    phi = halfkink_phi(rising, grid).values
    assert np.allclose(
        phi ** 2, _closed_form(grid.x, Orientation.RISING),
        rtol=1e-10, atol=1e-20
    )


def test_halfkink_derivatives(kink, grid):
    """Test that the analytic Φ' agrees with the closed form."""
    phi, slope, curvature, mass = halfkink_derivatives(kink, grid.x)
    x = grid.x
    # Φ² = 2/(1 + e^x) gives Φ' = -Φ e^x/(2(1 + e^x))
    expected = -phi * np.exp(x) / (2 * (1 + np.exp(x)))
    assert np.allclose(slope, expected, atol=1e-10)
    assert np.all(np.diff(mass) <= 1e-12)
    # ∫_0^∞ 2/(1 + e^x) dx = 2 ln 2
    assert mass[grid.N // 2] == pytest.approx(2 * np.log(2), rel=1e-10)
    assert curvature.shape == x.shape


def test_kink_residual(kink, grid):
    """Test that Φ solves the half-kink equation on the interior."""
    assert kink_residual(kink, grid) < 1e-8


def test_kink_residual_moved():
    """Test the half-kink equation for a kink away from the origin."""
    moved = KinkParams(c0=2, b=0.0, x0=10)
    assert kink_residual(moved, Grid(120, 2048, center=10)) < 1e-8


def test_kink_tail_rate(kink, grid):
    """Test the exponential localization rate of the half-kink."""
    assert kink_tail_rate(kink, grid) >= 0.4


def test_kink_field(kink, grid):
    """Test the modulus and limits of the traveling half-kink."""
    t = 3.0
    field = kink_field(kink, t, grid)
    expected = halfkink_phi(kink, grid.shifted(-C0 * t)).values
    assert np.allclose(np.abs(field.values), expected, atol=1e-12)
    assert abs(field.values[0]) == pytest.approx(kink.zeta)
    assert abs(field.values[-1]) < 1e-10
    assert field.t == t


def _kink_equation_residual(kp, t, grid):
    """Residual of iR_t + R_xx + iR²R̄_x + b|R|⁴R with analytic
    derivatives.
    """
    value = kink_field(kp, t, grid).values
    slope = kink_derivative(kp, t, grid, 1).values
    curvature = kink_derivative(kp, t, grid, 2).values
    time_derivative = kp.time_derivative(t, grid).values
    residual = (
        1j * time_derivative + curvature
        + 1j * value ** 2 * np.conj(slope)
        + kp.b * np.abs(value) ** 4 * value
    )
    return float(np.max(np.abs(residual)))


@pytest.mark.parametrize(
    ("c0", "b", "theta0"),
    [(1.0, 1 / 8, 0.0), (1.5, 0.0, 0.3), (0.5, 0.2, -1.0)]
)
def test_kink_solves_equation(c0, b, theta0):
    """Test that the traveling half-kink solves dnls2."""
    kp = KinkParams(c0=c0, b=b, theta0=theta0)
    grid = Grid(160, 2048, center=20)
    assert _kink_equation_residual(kp, 2.0, grid) < 1e-8


def test_rising_kink_field(grid):
    """Test that rising half-kinks cannot be used as train members."""
    rising = KinkParams(c0=C0, b=B, orientation="rising")
    with pytest.raises(UnsupportedOrientationError) as error:
        kink_field(rising, 0.0, grid)
    assert str(error.value) == (
        "Only falling half-kinks (plateau at -infinity) can be used as "
        "train members."
    )


def test_kink_field_tail(kink):
    """Test that a kink reaching the right boundary raises an error."""
    with pytest.raises(DecayViolationError) as error:
        kink_field(kink, 0.0, Grid(40, 256, center=-10))
    assert error.value.boundary == "right"
    assert error.value.member == "KinkParams(c=1)"
