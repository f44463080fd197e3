"""Closed form solitons of both derivative NLS equations."""
from typing import List, Union

import numpy as np

from dnls_trains import defaults
from dnls_trains.errors import InvalidParameterError
from dnls_trains.profiles.params import (EquationVariant, TrainMember,
                                         check_finite, gamma_of)
from dnls_trains.spectral import (Field, Grid, check_tail,
                                  cumulative_integral_values, derivative)


class SolitonParams(TrainMember):
    """Parameters of a single soliton e^{i(θ + ωt)} φ_{ω,c}(x - x₀ - ct)."""

    def __init__(
        self,
        variant: Union[EquationVariant, str],
        omega: float,
        c: float,
        theta: float = 0.0,
        x0: float = 0.0,
        b: float = 0.0
    ) -> None:
        """Constructor for SolitonParams.

        The existence window is not enforced here, use
        :func:`validate_soliton` to check it. Evaluating the profile of
        parameters outside the window raises InvalidParameterError.

        :param variant: Equation the soliton solves, given as
            EquationVariant enum or string. If given as string, the value is
            cast to EquationVariant and results in error if it is not a
            valid variant.
        :param omega: Frequency ω.
        :param c: Speed c.
        :param theta: Phase offset θ in radians.
        :param x0: Position offset x₀.
        :param b: Quintic coefficient.

        :raises ValueError: if the variant is unknown.
        :raises InvalidArgumentError: if a parameter is not finite.
        """
        check_finite(omega=omega, c=c, theta=theta, x0=x0, b=b)
        self.variant = EquationVariant(variant)
        self.omega = float(omega)
        self.c = float(c)
        self.theta = float(theta)
        self.x0 = float(x0)
        self.b = float(b)

    @property
    def speed(self) -> float:
        return self.c

    @property
    def frequency(self) -> float:
        return self.omega

    @property
    def width(self) -> float:
        """h = √(4ω - c²), 0 on the algebraic edge."""
        return float(np.sqrt(max(4 * self.omega - self.c ** 2, 0.0)))

    @property
    def algebraic(self) -> bool:
        """True if c sits on the algebraic edge c = 2√ω of dnls1."""
        return validate_soliton(self).algebraic

    def field(self, t: float, grid: Grid) -> Field:
        return soliton_field(self, t, grid)

    def derivative(self, t: float, grid: Grid, order: int = 1) -> Field:
        return derivative(self.field(t, grid), order)

    def __repr__(self):
        return (
            f"SolitonParams(variant={self.variant.value!r}, "
            f"omega={self.omega!r}, c={self.c!r}, theta={self.theta!r}, "
            f"x0={self.x0!r}, b={self.b!r})"
        )


class SolitonValidation:
    """Outcome of :func:`validate_soliton`."""

    def __init__(self, violations: List[str], algebraic: bool = False):
        self.violations = violations
        self.algebraic = algebraic

    @property
    def ok(self) -> bool:
        """True if the parameters give a soliton profile."""
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            if self.algebraic:
                return ("ok (algebraic soliton: valid profile, not admitted "
                        "in trains)")
            return "ok"
        return " ".join(self.violations)


def validate_soliton(p: SolitonParams) -> SolitonValidation:
    """Check the existence window of a soliton.

    dnls1 with γ > 0 needs -2√ω < c ≤ 2√ω, where c = 2√ω is the algebraic
    soliton. dnls1 with γ ≤ 0 needs -2√ω < c < -2s√ω with s = √(-γ/(1-γ)).
    dnls2 needs γ > 0 and 2s√ω < c < 2√ω with s = √(γ/(1+γ)).

    :returns: SolitonValidation naming every failed inequality.
    """
    if p.omega <= 0:
        return SolitonValidation(
            [f"Inequality omega > 0 fails: omega = {p.omega:g}."]
        )

    gamma = gamma_of(p.variant, p.b)
    edge = 2 * np.sqrt(p.omega)
    violations = []
    algebraic = False

    if p.variant == EquationVariant.DNLS1:
        if not p.c > -edge:
            violations.append(
                f"Inequality -2*sqrt(omega) < c fails: c = {p.c:g}, "
                f"-2*sqrt(omega) = {-edge:g}."
            )
        if gamma > 0:
            if abs(p.c - edge) <= defaults.ALGEBRAIC_TOLERANCE * edge:
                algebraic = True
            elif p.c > edge:
                violations.append(
                    f"Inequality c <= 2*sqrt(omega) fails: c = {p.c:g}, "
                    f"2*sqrt(omega) = {edge:g}."
                )
        else:
            s_star = np.sqrt(-gamma / (1 - gamma))
            if not p.c < -s_star * edge:
                violations.append(
                    f"Inequality c < -2*s*sqrt(omega) fails for gamma = "
                    f"{gamma:g}: c = {p.c:g}, -2*s*sqrt(omega) = "
                    f"{-s_star * edge:g}."
                )
        return SolitonValidation(violations, algebraic and not violations)

    if gamma <= 0:
        return SolitonValidation(
            [f"dnls2 solitons need gamma > 0, got gamma = {gamma:g}."]
        )
    s_star = np.sqrt(gamma / (1 + gamma))
    if not p.c < edge:
        violations.append(
            f"Inequality c < 2*sqrt(omega) fails: c = {p.c:g}, "
            f"2*sqrt(omega) = {edge:g}."
        )
    if not p.c > s_star * edge:
        violations.append(
            f"Inequality c > 2*s*sqrt(omega) fails for gamma = {gamma:g}: "
            f"c = {p.c:g}, 2*s*sqrt(omega) = {s_star * edge:g}."
        )
    return SolitonValidation(violations)


def capital_phi(p: SolitonParams, x) -> np.ndarray:
    """Modulus Φ_{ω,c}(x) of the soliton profile, centered at 0.

    :param p: Soliton parameters.
    :param x: Position or array of positions.

    :raises InvalidParameterError: if the parameters are outside the
        existence window.
    """
    report = validate_soliton(p)
    if not report.ok:
        raise InvalidParameterError(
            f"Soliton parameters are outside the existence window. {report}"
        )
    x = np.asarray(x, dtype=float)
    gamma = p.gamma

    if report.algebraic:
        return np.sqrt(4 * p.c / ((p.c * x) ** 2 + gamma))

    h = p.width
    with np.errstate(over="ignore"):
        growth = np.cosh(h * x)
        if p.variant == EquationVariant.DNLS1:
            denominator = np.sqrt(p.c ** 2 + gamma * h ** 2) * growth - p.c
        else:
            denominator = np.sqrt(p.c ** 2 - gamma * h ** 2) * growth + p.c
        return np.sqrt(2 * h ** 2 / denominator)


def soliton_phi(
    p: SolitonParams,
    grid: Grid,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Field:
    """Complex profile φ_{ω,c} sampled at the points of the grid.

    φ = Φ exp(i(c/2)x - (i/4) ∫Φ²), with the mass integral anchored at the
    left boundary for dnls1 and at the right boundary for dnls2.

    :raises DecayViolationError: if Φ is not negligible at the anchored
        boundary.
    """
    modulus = capital_phi(p, grid.x)
    anchor = "left" if p.variant == EquationVariant.DNLS1 else "right"
    check_tail(modulus, anchor, tail_tolerance, label=p.label)
    mass = cumulative_integral_values(modulus ** 2, grid, anchor, np.inf)
    phase = 0.5 * p.c * grid.x - 0.25 * mass
    return Field(grid, modulus * np.exp(1j * phase))


def soliton_field(
    p: SolitonParams,
    t: float,
    grid: Grid,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Field:
    """Traveling soliton R(t, x) = e^{i(θ + ωt)} φ(x - x₀ - ct).

    The profile is evaluated on the grid points moved by -(x₀ + ct), which
    equals the spectral translation of the centered profile for fields that
    satisfy the tail tolerance.

    :raises DecayViolationError: if the translated soliton is not negligible
        at either boundary.
    """
    shift = p.position(t)
    profile = soliton_phi(p, grid.shifted(-shift), tail_tolerance)
    values = np.exp(1j * (p.theta + p.omega * t)) * profile.values
    for boundary in ("left", "right"):
        check_tail(values, boundary, tail_tolerance, label=p.label)
    return Field(grid, values, t)
