"""Tests for closed form solitons."""
import numpy as np
import pytest

from dnls_trains.errors import (DecayViolationError, InvalidArgumentError,
                                InvalidParameterError)
from dnls_trains.profiles import (EquationVariant, SolitonParams, capital_phi,
                                  gamma_of, soliton_field, soliton_phi,
                                  validate_soliton)
from dnls_trains.spectral import Grid, derivative


@pytest.mark.parametrize(
    ("variant", "b", "gamma"),
    [
        ("dnls1", 0.0, 1.0),
        ("dnls1", -3 / 16, 0.0),
        ("dnls1", 3 / 8, 3.0),
        ("dnls2", 1 / 8, 1.0),
        ("dnls2", 0.0, 5 / 3),
    ]
)
def test_gamma(variant, b, gamma):
    """Test the quintic coefficient of the profile equation."""
    assert gamma_of(variant, b) == pytest.approx(gamma, abs=1e-15)


def test_invalid_variant():
    """Test that an unknown equation variant raises an error."""
    with pytest.raises(ValueError):
        SolitonParams("dnls3", omega=1, c=0)


def test_non_finite_parameter():
    """Test that non-finite parameters raise an error."""
    with pytest.raises(InvalidArgumentError) as error:
        SolitonParams("dnls1", omega=np.nan, c=0)
    assert str(error.value) == (
        "Parameter omega has to be a finite number, got nan."
    )


@pytest.mark.parametrize(
    ("variant", "omega", "c", "b"),
    [
        ("dnls1", 1, 0.5, 0),
        ("dnls1", 1, -1.9, 0.2),
        ("dnls1", 2, -2.7, -0.25),
        ("dnls2", 1, 1.8, 1 / 8),
        ("dnls2", 4, 3.5, 0),
    ]
)
def test_valid_soliton(variant, omega, c, b):
    """Test parameters inside the existence window."""
    report = validate_soliton(SolitonParams(variant, omega=omega, c=c, b=b))
    assert report.ok
    assert not report.algebraic
    assert str(report) == "ok"


@pytest.mark.parametrize(
    ("variant", "omega", "c", "b", "message"),
    [
        ("dnls1", 0, 0.5, 0,
         "Inequality omega > 0 fails: omega = 0."),
        ("dnls1", 1, -2, 0,
         "Inequality -2*sqrt(omega) < c fails: c = -2, -2*sqrt(omega) = -2."),
        ("dnls1", 1, 2.5, 0,
         "Inequality c <= 2*sqrt(omega) fails: c = 2.5, 2*sqrt(omega) = 2."),
        ("dnls1", 1, 0, -0.375,
         "Inequality c < -2*s*sqrt(omega) fails for gamma = -1: c = 0, "
         "-2*s*sqrt(omega) = -1.41421."),
        ("dnls2", 1, 1.5, 1,
         "dnls2 solitons need gamma > 0, got gamma = -3.66667."),
        ("dnls2", 1, 2, 1 / 8,
         "Inequality c < 2*sqrt(omega) fails: c = 2, 2*sqrt(omega) = 2."),
        ("dnls2", 1, 1.2, 1 / 8,
         "Inequality c > 2*s*sqrt(omega) fails for gamma = 1: c = 1.2, "
         "2*s*sqrt(omega) = 1.41421."),
    ]
)
def test_invalid_soliton(variant, omega, c, b, message):
    """Test that parameters outside the existence window are reported."""
    report = validate_soliton(SolitonParams(variant, omega=omega, c=c, b=b))
    assert not report.ok
    assert str(report) == message


def test_algebraic_soliton():
    """Test the algebraic edge c = 2√ω of dnls1."""
    p = SolitonParams("dnls1", omega=1, c=2)
    report = validate_soliton(p)
    assert report.ok
    assert report.algebraic
    assert p.algebraic
    assert p.width == 0
    # Φ² = 4c/((cx)² + γ)
    assert capital_phi(p, 0) == pytest.approx(np.sqrt(8))
    assert capital_phi(p, 1) == pytest.approx(np.sqrt(8 / 5))


def test_capital_phi_values():
    """Test the soliton modulus at its center."""
    # dnls1, ω = 1, c = 0: Φ² = 2h²/(h cosh(hx)) with h = 2
    p = SolitonParams("dnls1", omega=1, c=0)
    assert capital_phi(p, 0) == pytest.approx(2)
    assert capital_phi(p, 1) == pytest.approx(np.sqrt(4 / np.cosh(2)))


def test_capital_phi_shape():
    """Test that Φ is positive, even and decreasing away from 0."""
    p = SolitonParams("dnls2", omega=1, c=1.8, b=1 / 8)
    x = np.linspace(0, 30, 301)
    values = capital_phi(p, x)
    assert np.all(values > 0)
    assert np.allclose(values, capital_phi(p, -x), rtol=1e-14, atol=0)
    assert np.all(np.diff(values) < 0)


def test_capital_phi_outside_window():
    """Test that evaluating invalid parameters raises an error."""
    with pytest.raises(InvalidParameterError) as error:
        capital_phi(SolitonParams("dnls1", omega=1, c=-3), 0.0)
    assert str(error.value) == (
        "Soliton parameters are outside the existence window. Inequality "
        "-2*sqrt(omega) < c fails: c = -3, -2*sqrt(omega) = -2."
    )


def _profile_residual(p, grid):
    """Residual of the complex profile equation with spectral derivatives.
    """
    phi = soliton_phi(p, grid)
    values = phi.values
    slope = derivative(phi, 1).values
    curvature = derivative(phi, 2).values
    modulus2 = np.abs(values) ** 2
    if p.variant == EquationVariant.DNLS1:
        cubic = -1j * modulus2 * slope
    else:
        cubic = -1j * values ** 2 * np.conj(slope)
    residual = (
        -curvature + p.omega * values + 1j * p.c * slope + cubic
        - p.b * modulus2 ** 2 * values
    )
    return float(np.max(np.abs(residual)))


def _random_dnls1(rng):
    omega = rng.uniform(1, 2)
    c = rng.uniform(-0.6, 0.6) * 2 * np.sqrt(omega)
    return SolitonParams("dnls1", omega=omega, c=c, b=rng.uniform(-0.1, 0.5))


def _random_dnls2(rng):
    b = rng.uniform(0, 0.25)
    gamma = gamma_of("dnls2", b)
    s_star = np.sqrt(gamma / (1 + gamma))
    omega = rng.uniform(2, 4)
    ratio = s_star + (0.05 + 0.1 * rng.uniform()) * (1 - s_star)
    return SolitonParams("dnls2", omega=omega, c=ratio * 2 * np.sqrt(omega),
                         b=b)


@pytest.mark.parametrize(
    ("draw", "seed"),
    [(_random_dnls1, 1), (_random_dnls2, 2)]
)
def test_profile_equation(draw, seed):
    """Test that soliton profiles solve the complex profile equation for
    randomly drawn parameters.
    """
    rng = np.random.default_rng(seed)
    grid = Grid(80, 2048)
    for _ in range(10):
        p = draw(rng)
        assert validate_soliton(p).ok
        assert _profile_residual(p, grid) < 1e-6


def test_soliton_phi_modulus():
    """Test that the complex profile has modulus Φ."""
    p = SolitonParams("dnls1", omega=1, c=0.5)
    grid = Grid(80, 2048)
    phi = soliton_phi(p, grid)
    assert np.allclose(np.abs(phi.values), capital_phi(p, grid.x),
                       atol=1e-14)


def test_soliton_field_covariance(dnls1_soliton, dnls1_grid):
    """Test that R(t + s, x) = e^{iωs} R(t, x - cs)."""
    p = dnls1_soliton
    t, s = 1.0, 2.0
    later = soliton_field(p, t + s, dnls1_grid).values
    moved = soliton_field(p, t, dnls1_grid.shifted(-p.c * s)).values
    assert np.allclose(later, np.exp(1j * p.omega * s) * moved, atol=1e-12)


def test_soliton_field_position(dnls1_grid):
    """Test that the soliton peak moves with speed c."""
    p = SolitonParams("dnls1", omega=1, c=0.5, x0=-3, theta=0.4)
    t = 4.0
    field = soliton_field(p, t, dnls1_grid)
    peak = dnls1_grid.x[np.argmax(np.abs(field.values))]
    assert abs(peak - (-3 + 0.5 * t)) <= dnls1_grid.dx
    assert field.t == t


def test_soliton_field_phase():
    """Test that the phase offset multiplies the field by e^{iθ}."""
    grid = Grid(80, 2048)
    plain = soliton_field(SolitonParams("dnls1", omega=1, c=0.5), 2.0, grid)
    turned = soliton_field(
        SolitonParams("dnls1", omega=1, c=0.5, theta=0.7), 2.0, grid
    )
    assert np.allclose(turned.values, np.exp(0.7j) * plain.values,
                       atol=1e-14)


def test_soliton_field_tail():
    """Test that a soliton too close to the boundary raises an error."""
    p = SolitonParams("dnls1", omega=1, c=0.5, x0=38)
    with pytest.raises(DecayViolationError) as error:
        soliton_field(p, 0.0, Grid(80, 2048))
    assert error.value.boundary == "right"
    assert error.value.member == "SolitonParams(c=0.5)"
    assert str(error.value).startswith(
        "SolitonParams(c=0.5) has magnitude"
    )


def test_comparison():
    """Test that soliton parameters compare by value."""
    first = SolitonParams("dnls1", omega=1, c=0.5)
    second = SolitonParams("dnls1", omega=1, c=0.5)
    assert first == second
    assert len({first, second}) == 1
    assert first != SolitonParams("dnls1", omega=1, c=0.25)
