"""Train profiles, their interaction residuals and the decay experiments.

A train V = Σ R_j solves iV_t + V_xx + N(V) = χ₁ + χ₂ exactly, where

    dnls1: χ₁ = i|V|²V_x - iΣ|R_j|²R_jx,
    dnls2: χ₁ = iV²V̄_x - iΣR_j²R̄_jx,
    both:  χ₂ = b(|V|⁴V - Σ|R_j|⁴R_j).

χ₂ is stored multiplied by b so that χ₁ + χ₂ is the residual itself.
"""
import logging
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from dnls_trains import defaults
from dnls_trains.dynamics import Trajectory, evolve
from dnls_trains.errors import DegenerateFitError, InvalidArgumentError
from dnls_trains.profiles import (EquationVariant, TrainSpec, separation_lhs,
                                  v_star)
from dnls_trains.spectral import (Field, Grid, dealiased, derivative_values,
                                  sobolev_norm_values)

logger = logging.getLogger(__name__)

RESIDUAL_NORMS = ("h2", "w2inf")


class DecayFit:
    """Log-linear fit s(t) ≈ amplitude · e^{-rate t} over a window."""

    def __init__(
        self,
        rate: float,
        amplitude: float,
        rsquared: float,
        window: Tuple[float, float]
    ) -> None:
        """Constructor for DecayFit.

        :raises InvalidArgumentError: if the window is empty or the rate is
            not finite.
        """
        if not window[1] > window[0]:
            raise InvalidArgumentError(
                f"Fit window has to be nonempty, got {window}."
            )
        if not np.isfinite(rate):
            raise InvalidArgumentError(
                f"Fit rate has to be finite, got {rate}."
            )
        self.rate = float(rate)
        self.amplitude = float(amplitude)
        self.rsquared = float(rsquared)
        self.window = (float(window[0]), float(window[1]))

    def __repr__(self):
        return (
            f"DecayFit(rate={self.rate!r}, amplitude={self.amplitude!r}, "
            f"rsquared={self.rsquared!r}, window={self.window!r})"
        )


def fit_decay(times: Iterable[float], series: Iterable[float]) -> DecayFit:
    """Least squares fit of log(series) against times.

    :raises DegenerateFitError: if fewer than two samples are given or a
        sample is not positive.
    """
    times = np.asarray(list(times), dtype=float)
    series = np.asarray(list(series), dtype=float)
    if len(times) < 2:
        raise DegenerateFitError(
            f"A decay fit needs at least two samples, got {len(times)}."
        )
    if np.any(series <= 0) or not np.all(np.isfinite(series)):
        index = int(np.argmax((series <= 0) | ~np.isfinite(series)))
        raise DegenerateFitError(
            f"Cannot fit a decay rate: the series is {series[index]:g} at "
            f"t = {times[index]:g}."
        )
    fit = linregress(times, np.log(series))
    return DecayFit(
        rate=-fit.slope,
        amplitude=float(np.exp(fit.intercept)),
        rsquared=fit.rvalue ** 2,
        window=(times[0], times[-1])
    )


def _default_factor(spec: TrainSpec) -> int:
    return 1 if spec.kink is not None else defaults.PADDING_FACTOR


def train_profile(
    spec: TrainSpec,
    t: float,
    grid: Grid,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Field:
    """Pointwise sum V = Σ R_j of the member fields at time t.

    :raises DecayViolationError: naming the first member that is not
        negligible at a boundary.
    """
    spec.check_tails(t, grid, tail_tolerance)
    return spec.profile(t, grid)


def _chi_products(variant: EquationVariant):
    if variant == EquationVariant.DNLS1:
        def cubic(u, slope):
            return 1j * np.abs(u) ** 2 * slope
    else:
        def cubic(u, slope):
            return 1j * u ** 2 * np.conj(slope)

    def quintic(u):
        return np.abs(u) ** 4 * u

    return cubic, quintic


def interaction_chi(
    fields: np.ndarray,
    slopes: np.ndarray,
    variant: EquationVariant,
    b: float,
    factor: int = defaults.PADDING_FACTOR
) -> Tuple[np.ndarray, np.ndarray]:
    """χ₁ and χ₂ of member values stacked along the first axis.

    χ₁ is cubic and χ₂ quintic in the members, so scaling every member and
    slope by ε scales them by ε³ and ε⁵.

    :param fields: Member values, one row per member.
    :param slopes: x-derivatives of the members in the same order.
    :param variant: Equation of the train.
    :param b: Quintic coefficient.
    :param factor: Padding factor of the products.
    """
    variant = EquationVariant(variant)
    cubic, quintic = _chi_products(variant)
    profile = fields.sum(axis=0)
    profile_slope = slopes.sum(axis=0)

    chi_1 = (
        dealiased(cubic, profile, profile_slope, factor=factor)
        - dealiased(cubic, fields, slopes, factor=factor).sum(axis=0)
    )
    if b == 0:
        chi_2 = np.zeros_like(chi_1)
    else:
        chi_2 = b * (
            dealiased(quintic, profile, factor=factor)
            - dealiased(quintic, fields, factor=factor).sum(axis=0)
        )
    return chi_1, chi_2


def residual_chi(
    spec: TrainSpec,
    t: float,
    grid: Grid,
    factor: Optional[int] = None,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Tuple[Field, Field]:
    """Interaction residuals (χ₁, χ₂) of a train at time t.

    Soliton derivatives are spectral, the kink derivative is analytic. The
    products are dealiased for soliton trains and evaluated pointwise when a
    kink is present.

    :raises DecayViolationError: if a member is not negligible at a
        boundary.
    """
    if factor is None:
        factor = _default_factor(spec)
    spec.check_tails(t, grid, tail_tolerance)
    if len(spec.members) == 1:
        zero = np.zeros(grid.N, dtype=complex)
        return Field(grid, zero, t), Field(grid, zero, t)

    fields = []
    slopes = []
    for member in spec.members:
        values = member.field(t, grid).values
        fields.append(values)
        if member is spec.kink:
            slopes.append(member.derivative(t, grid, 1).values)
        else:
            slopes.append(derivative_values(values, grid, 1))
    chi_1, chi_2 = interaction_chi(np.array(fields), np.array(slopes),
                                   spec.variant, spec.b, factor)
    return Field(grid, chi_1, t), Field(grid, chi_2, t)


def _residual_norm(values: np.ndarray, grid: Grid, norm: str) -> float:
    if norm == "h2":
        return float(sobolev_norm_values(values, grid, 2))
    total = float(np.max(np.abs(values)))
    for order in (1, 2):
        total += float(np.max(np.abs(derivative_values(values, grid, order))))
    return total


def residual_decay(
    spec: TrainSpec,
    grid: Grid,
    times: Iterable[float],
    norm: str = "h2",
    factor: Optional[int] = None
) -> Tuple[pd.DataFrame, DecayFit]:
    """Residual norms s(t) = ‖χ₁‖ + ‖χ₂‖ and their log-linear decay fit.

    :param spec: Train.
    :param grid: Grid covering every member at every time.
    :param times: At least four increasing times.
    :param norm: "h2" for H² norms, "w2inf" for W^{2,∞} norms.
    :param factor: Padding factor, see :func:`residual_chi`.

    :raises InvalidArgumentError: for fewer than four or unordered times.
    :raises DegenerateFitError: if s vanishes at some time, as it does for a
        single member.

    :returns: Tuple of a frame with columns t, chi1, chi2, s and the fit.
    """
    times = np.asarray(list(times), dtype=float)
    if len(times) < 4:
        raise InvalidArgumentError(
            f"Residual decay needs at least four times, got {len(times)}."
        )
    if np.any(np.diff(times) <= 0):
        raise InvalidArgumentError("Residual times have to be increasing.")
    if norm not in RESIDUAL_NORMS:
        raise InvalidArgumentError(
            f"Residual norm has to be one of {RESIDUAL_NORMS}, got {norm!r}."
        )

    rows = []
    for t in times:
        chi_1, chi_2 = residual_chi(spec, t, grid, factor=factor)
        first = _residual_norm(chi_1.values, grid, norm)
        second = _residual_norm(chi_2.values, grid, norm)
        rows.append({"t": t, "chi1": first, "chi2": second,
                     "s": first + second})
        logger.debug("t = %g: residual %s norm %.6e", t, norm, first + second)
    series = pd.DataFrame(rows, columns=["t", "chi1", "chi2", "s"])

    fit = fit_decay(series["t"], series["s"])
    logger.info(
        "Residual %s norm decays at rate %.6g (rsquared %.6f) on [%g, %g]",
        norm, fit.rate, fit.rsquared, *fit.window
    )
    return series, fit


def empirical_t0(
    times: Iterable[float],
    series: Iterable[float],
    rate: float
) -> Optional[float]:
    """First sampled time after which s(t) ≤ e^{-rate t} at every sample.

    :returns: The time, or None if the bound fails at the last sample.
    """
    times = np.asarray(list(times), dtype=float)
    series = np.asarray(list(series), dtype=float)
    holds = series <= np.exp(-rate * times)
    result = None
    for index in range(len(times) - 1, -1, -1):
        if not holds[index]:
            break
        result = float(times[index])
    return result


class DriftResult:
    """Outcome of :func:`drift_experiment`."""

    def __init__(
        self,
        trajectory: Trajectory,
        gate_value: Optional[float],
        gate: float
    ) -> None:
        self.trajectory = trajectory
        self.gate_value = gate_value
        self.gate = gate

    @property
    def times(self) -> np.ndarray:
        """Recorded times."""
        return self.trajectory.times

    @property
    def distance(self) -> np.ndarray:
        """H¹ distance to the train profile at the recorded times."""
        return self.trajectory.observables["distance"]

    @property
    def gate_passed(self) -> bool:
        """False if the separation gate flagged the train."""
        return self.gate_value is None or self.gate_value <= self.gate


def separation_gate(
    spec: TrainSpec,
    grid: Grid,
    times: Iterable[float],
    gate: float = defaults.SEPARATION_GATE
) -> Optional[float]:
    """separation_lhs / v_star for trains with at least two members.

    Logs a warning when the value exceeds ``gate``.

    :returns: The ratio, or None for a single member.
    """
    if len(spec.members) < 2:
        return None
    ratio = separation_lhs(spec, grid, times) / v_star(spec)
    if ratio > gate:
        logger.warning(
            "Separation is too weak: separation_lhs / v_star = %.4g exceeds "
            "the gate %.4g",
            ratio, gate
        )
    return ratio


def drift_experiment(
    spec: TrainSpec,
    grid: Grid,
    T0: float,
    T1: float,
    dt: float,
    gate: float = defaults.SEPARATION_GATE,
    stride: int = 1
) -> DriftResult:
    """Evolve u(T0) = V(T0) to T1 and record ‖u(t) - V(t)‖_{H¹}.

    Trains carrying a kink are evolved as w = u - R₀ around the exact
    half-kink.

    :raises InvalidArgumentError: if T1 does not exceed T0.
    :raises DivergenceError: propagated from the time stepper.
    """
    if not T1 > T0:
        raise InvalidArgumentError(
            f"Final time has to exceed the initial time, got T0 = {T0} and "
            f"T1 = {T1}."
        )
    gate_value = separation_gate(spec, grid, [T0, T1], gate)

    spec.check_tails(T0, grid)
    spec.check_tails(T1, grid)
    if spec.kink is None:
        initial = spec.profile(T0, grid)
    else:
        initial = spec.profile(T0, grid, include_kink=False)

    trajectory = evolve(
        initial, T0, T1, dt, spec.variant, spec.b,
        reference=spec,
        stride=stride,
        background=spec.kink
    )
    logger.info(
        "Largest distance to the train on [%g, %g]: %.6e",
        T0, T1, float(np.max(trajectory.observables["distance"]))
    )
    return DriftResult(trajectory, gate_value, gate)

