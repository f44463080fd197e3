"""Half-kink profiles of the dnls2 equation.

The profile Φ solves -Φ'' + ω̃Φ - f(Φ) = 0 with f(s) = (c/2)s³ - (3/16)γs⁵
and connects the plateau ζ = √(2c/γ) to zero. On the heteroclinic the
zero-energy first integral reads

    (Φ')² = Φ² (ω̃₁ - (c/4)Φ² + (γ/16)Φ⁴) = (γ/16) Φ² (Φ² - ζ²)²,

so y = Φ² solves the regular first order equation y' = ∓(√γ/2) y (ζ² - y).
It is integrated in the variable ln y, together with the mass ∫ y, by an
adaptive Runge-Kutta method started from y(x₀) = ζ²/2.
"""
import logging
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.stats import linregress

from dnls_trains import defaults
from dnls_trains.errors import (InvalidArgumentError, InvalidParameterError,
                                UnsupportedOrientationError)
from dnls_trains.profiles.params import (EquationVariant, Orientation,
                                         TrainMember, check_finite, gamma_of)
from dnls_trains.spectral import Field, Grid, check_tail, derivative_flat_ends

logger = logging.getLogger(__name__)


class KinkParams(TrainMember):
    """Parameters of a dnls2 half-kink traveling with speed c₀."""

    def __init__(
        self,
        c0: float,
        b: float,
        theta0: float = 0.0,
        x0: float = 0.0,
        orientation: Union[Orientation, str] = Orientation.FALLING,
        omega0: Optional[float] = None
    ) -> None:
        """Constructor for KinkParams.

        :param c0: Speed, has to be positive.
        :param b: Quintic coefficient, has to give γ = 5/3 - 16b/3 > 0.
        :param theta0: Phase offset in radians.
        :param x0: Position where Φ² equals half of its plateau value ζ².
        :param orientation: Side of the plateau, given as Orientation enum
            or string. If given as string, the value is cast to Orientation
            and results in error if it is not a valid orientation.
        :param omega0: Frequency. Derived as c₀²/4 + c₀²/(4γ) when not
            given; a given value has to agree with it.

        :raises InvalidParameterError: if γ or c₀ is not positive or omega0
            is inconsistent.
        """
        check_finite(c0=c0, b=b, theta0=theta0, x0=x0)
        self.variant = EquationVariant.DNLS2
        self.c0 = float(c0)
        self.b = float(b)
        self.theta = float(theta0)
        self.x0 = float(x0)
        self.orientation = Orientation(orientation)

        gamma = gamma_of(EquationVariant.DNLS2, self.b)
        if gamma <= 0:
            raise InvalidParameterError(
                f"Half-kinks need gamma > 0, got gamma = {gamma:g} "
                f"for b = {self.b:g}."
            )
        if self.c0 <= 0:
            raise InvalidParameterError(
                f"Half-kinks need a positive speed c0, got {self.c0:g}."
            )
        expected = self.c0 ** 2 / 4 + self.omega_tilde
        if omega0 is not None and not np.isclose(
                omega0, expected, rtol=1e-12, atol=0):
            raise InvalidParameterError(
                f"Half-kink frequency omega0 = {omega0:g} is inconsistent "
                f"with c0 = {self.c0:g}, which requires omega0 = "
                f"{expected:.17g}."
            )

    @property
    def omega_tilde(self) -> float:
        """ω̃₁ = c₀²/(4γ)."""
        return self.c0 ** 2 / (4 * self.gamma)

    @property
    def zeta(self) -> float:
        """Plateau value ζ = √(2c₀/γ)."""
        return float(np.sqrt(2 * self.c0 / self.gamma))

    @property
    def omega0(self) -> float:
        """Frequency ω₀ = c₀²/4 + ω̃₁."""
        return self.c0 ** 2 / 4 + self.omega_tilde

    @property
    def speed(self) -> float:
        return self.c0

    @property
    def frequency(self) -> float:
        return self.omega0

    @property
    def width(self) -> float:
        """h₀ = √(4ω₀ - c₀²) = c₀/√γ."""
        return float(np.sqrt(4 * self.omega_tilde))

    @property
    def logistic_rate(self) -> float:
        """Rate κ = c₀/√γ of the logistic profile of Φ²."""
        return self.c0 / np.sqrt(self.gamma)

    def field(self, t: float, grid: Grid) -> Field:
        return kink_field(self, t, grid)

    def derivative(self, t: float, grid: Grid, order: int = 1) -> Field:
        return kink_derivative(self, t, grid, order)

    def __repr__(self):
        return (
            f"KinkParams(c0={self.c0!r}, b={self.b!r}, "
            f"theta0={self.theta!r}, x0={self.x0!r}, "
            f"orientation={self.orientation.value!r})"
        )


def first_integral_coefficients(
    kp: KinkParams
) -> Tuple[float, float, float]:
    """Coefficients (a2, a1, a0) of ω̃₁ - (c/4)y + (γ/16)y².

    The polynomial has the double root y = ζ². Returned highest degree
    first so that they can be given to numpy.roots as they are.
    """
    return (kp.gamma / 16, -kp.c0 / 4, kp.omega_tilde)


def nonlinearity_f(kp: KinkParams, s):
    """f(s) = (c/2)s³ - (3/16)γs⁵."""
    s = np.asarray(s)
    return kp.c0 / 2 * s ** 3 - 3 * kp.gamma / 16 * s ** 5


@lru_cache(maxsize=32)
def _dense_profile(rate: float, plateau: float, span: float):
    """Dense solutions (ln y, ∫_0 y) of the falling profile on [0, ±span]."""
    def rhs(_, state):
        y = np.exp(state[0])
        return [-rate * (plateau - y), y]

    branches = []
    for end in (span, -span):
        solution = solve_ivp(
            rhs,
            (0.0, end),
            [np.log(plateau / 2), 0.0],
            method="DOP853",
            dense_output=True,
            rtol=defaults.KINK_RTOL,
            atol=defaults.KINK_ATOL
        )
        if not solution.success:
            raise RuntimeError(
                f"Half-kink integration failed: {solution.message}"
            )
        branches.append(solution.sol)
    logger.debug(
        "Integrated half-kink profile on [%g, %g] for rate %g, plateau %g",
        -span, span, rate, plateau
    )
    return tuple(branches)


def _falling_profile(kp: KinkParams, z: np.ndarray):
    """ln y and ∫_z^∞ y of the falling profile normalized at z = 0."""
    reach = max(defaults.KINK_TAIL_LENGTHS / kp.logistic_rate,
                float(np.max(np.abs(z), initial=0.0)))
    span = defaults.KINK_SPAN_STEP * np.ceil(reach / defaults.KINK_SPAN_STEP)
    right, left = _dense_profile(
        float(np.sqrt(kp.gamma) / 2), kp.zeta ** 2, float(span)
    )

    log_y = np.empty(z.shape)
    mass_from_zero = np.empty(z.shape)
    for branch, mask in ((right, z >= 0), (left, z < 0)):
        if np.any(mask):
            state = branch(z[mask])
            log_y[mask] = state[0]
            mass_from_zero[mask] = state[1]

    total = right(span)[1]
    return log_y, total - mass_from_zero


def halfkink_derivatives(kp: KinkParams, x):
    """Half-kink Φ, Φ', Φ'' and the decay side mass at positions x.

    The mass is ∫_x^∞ Φ² for a falling kink and ∫_{-∞}^x Φ² for a rising
    one. Φ' comes from the first integral and Φ'' from the profile
    equation, so no numerical differentiation is involved.

    :param kp: Kink parameters.
    :param x: Position or array of positions.

    :returns: Tuple (Φ, Φ', Φ'', mass) of arrays shaped like x.
    """
    x = np.asarray(x, dtype=float)
    sign = 1.0 if kp.orientation == Orientation.FALLING else -1.0
    z = sign * (x - kp.x0)

    flat_z = z.ravel()
    log_y, mass = _falling_profile(kp, flat_z)
    phi = np.exp(log_y / 2)
    slope = -np.sqrt(kp.gamma) / 4 * phi * (kp.zeta ** 2 - phi ** 2)
    curvature = kp.omega_tilde * phi - nonlinearity_f(kp, phi)

    return (
        phi.reshape(x.shape),
        sign * slope.reshape(x.shape),
        curvature.reshape(x.shape),
        mass.reshape(x.shape)
    )


def halfkink_phi(kp: KinkParams, grid: Grid) -> Field:
    """Real half-kink profile Φ sampled on the grid.

    Φ² equals ζ²/2 at x₀. A falling kink tends to ζ on the left and to 0 on
    the right, a rising kink is its mirror image about x₀.
    """
    phi, _, _, _ = halfkink_derivatives(kp, grid.x)
    return Field(grid, phi)


def _kink_phase(kp: KinkParams, t: float, grid: Grid):
    if kp.orientation != Orientation.FALLING:
        raise UnsupportedOrientationError(
            "Only falling half-kinks (plateau at -infinity) can be used as "
            "train members."
        )
    z = grid.x - kp.position(t)
    phi, slope, curvature, mass = halfkink_derivatives(
        kp, z + kp.x0
    )
    phase = kp.c0 / 2 * z + mass / 4
    carrier = np.exp(1j * (kp.theta + kp.omega0 * t + phase))
    return phi, slope, curvature, carrier


def kink_field(
    kp: KinkParams,
    t: float,
    grid: Grid,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Field:
    """Traveling half-kink e^{i(θ₀ + ω₀t)} φ(x - x₀ - c₀t).

    φ = Φ exp(i(c₀/2)z + (i/4)∫_z^∞ Φ²).

    :raises UnsupportedOrientationError: for rising kinks.
    :raises DecayViolationError: if the field is not negligible at the right
        boundary.
    """
    phi, _, _, carrier = _kink_phase(kp, t, grid)
    values = phi * carrier
    check_tail(values, "right", tail_tolerance, label=kp.label)
    return Field(grid, values, t)


def kink_derivative(
    kp: KinkParams, t: float, grid: Grid, order: int = 1
) -> Field:
    """Analytic x-derivative of :func:`kink_field`, order 1 or 2."""
    if order not in (1, 2):
        raise InvalidArgumentError(
            f"Half-kink derivatives are available for orders 1 and 2, got "
            f"{order!r}."
        )
    phi, slope, curvature, carrier = _kink_phase(kp, t, grid)
    phase_slope = kp.c0 / 2 - phi ** 2 / 4
    if order == 1:
        values = (slope + 1j * phase_slope * phi) * carrier
    else:
        phase_curvature = -phi * slope / 2
        values = (
            curvature
            + 2j * phase_slope * slope
            + 1j * phase_curvature * phi
            - phase_slope ** 2 * phi
        ) * carrier
    return Field(grid, values, t)


def _interior(grid: Grid) -> np.ndarray:
    margin = int(defaults.KINK_INTERIOR_MARGIN * grid.N)
    mask = np.zeros(grid.N, dtype=bool)
    mask[margin:grid.N - margin] = True
    return mask


def kink_residual(kp: KinkParams, grid: Grid) -> float:
    """Sup norm of -Φ'' + ω̃₁Φ - f(Φ) on the interior of the grid.

    Φ'' is computed by spectral differentiation of the even extension of
    the samples, which needs Φ to be flat at both ends of the grid.
    """
    phi = halfkink_phi(kp, grid)
    curvature = derivative_flat_ends(phi, 2).values.real
    residual = (
        -curvature + kp.omega_tilde * phi.values
        - nonlinearity_f(kp, phi.values)
    )
    value = float(np.max(np.abs(residual[_interior(grid)])))
    logger.debug("Half-kink residual on %s: %.3e", grid, value)
    return value


def kink_tail_rate(
    kp: KinkParams, grid: Grid, floor: float = 1e-9
) -> float:
    """Exponential rate a in |Φ'| + |Φ 1_decay| ≤ D e^{-a|x - x₀|}.

    Fits log-linear slopes separately on the plateau and on the decay side,
    using samples above ``floor`` at least one logistic length from x₀, and
    returns the smaller rate.
    """
    phi, slope, _, _ = halfkink_derivatives(kp, grid.x)
    z = grid.x - kp.x0
    sign = 1.0 if kp.orientation == Orientation.FALLING else -1.0
    decay_side = sign * z > 0
    envelope = np.abs(slope) + np.abs(phi) * decay_side

    rates = []
    for side in (decay_side, ~decay_side):
        mask = (
            side
            & (envelope > floor)
            & (np.abs(z) >= 1 / kp.logistic_rate)
        )
        if np.count_nonzero(mask) < 2:
            continue
        fit = linregress(np.abs(z[mask]), np.log(envelope[mask]))
        rates.append(-fit.slope)
    if not rates:
        raise InvalidArgumentError(
            f"{grid} does not resolve the tails of {kp.label}."
        )
    return float(min(rates))
