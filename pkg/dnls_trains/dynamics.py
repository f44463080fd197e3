"""Time evolution of both equations and of their gauged systems.

The linear part i u_xx is integrated exactly in Fourier space and the
nonlinear part by the classical fourth order Runge-Kutta method in the
interaction picture (integrating-factor RK4).
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from dnls_trains import defaults
from dnls_trains.errors import DivergenceError, InvalidArgumentError
from dnls_trains.gauge import GaugePair, nonlinearity_array
from dnls_trains.profiles import EquationVariant, KinkParams, TrainSpec
from dnls_trains.spectral import (Field, Grid, dealiased, derivative_values,
                                  propagate_values, sobolev_norm,
                                  sobolev_norm_values)

logger = logging.getLogger(__name__)

State = Union[Field, GaugePair]
Term = Callable[[np.ndarray, float], np.ndarray]


class Trajectory:
    """States of an evolution at increasing times with per-time observables.
    """

    def __init__(
        self,
        times: Sequence[float],
        states: Sequence[State],
        observables: Optional[Dict[str, Sequence[float]]] = None
    ) -> None:
        """Constructor for Trajectory.

        :param times: Strictly increasing times.
        :param states: One Field or GaugePair per time, all on one grid.
        :param observables: Named series with one value per time.

        :raises InvalidArgumentError: if the invariants above do not hold.
        """
        times = np.asarray(times, dtype=float)
        if len(times) != len(states):
            raise InvalidArgumentError(
                f"Trajectory needs one state per time, got {len(times)} "
                f"times and {len(states)} states."
            )
        if np.any(np.diff(times) <= 0):
            raise InvalidArgumentError(
                "Trajectory times have to be strictly increasing."
            )
        if len({state.grid for state in states}) > 1:
            raise InvalidArgumentError(
                "Trajectory states have to share one grid."
            )
        observables = {
            name: np.asarray(series, dtype=float)
            for name, series in (observables or {}).items()
        }
        for name, series in observables.items():
            if len(series) != len(times):
                raise InvalidArgumentError(
                    f"Observable '{name}' has {len(series)} values for "
                    f"{len(times)} times."
                )
        self.times = times
        self.states = list(states)
        self.observables = observables

    @property
    def grid(self) -> Grid:
        """Grid shared by the states."""
        return self.states[0].grid

    def __len__(self):
        return len(self.times)


def mass(f: Field) -> float:
    """Mass ∫|f|², equal to sobolev_norm(f, 0)²."""
    return sobolev_norm(f, 0) ** 2


def _equation_products(variant: EquationVariant, b: float):
    """Pointwise nonlinear part of u_t as a function of (u, u_x)."""
    if variant == EquationVariant.DNLS1:
        def products(u, slope):
            modulus2 = np.abs(u) ** 2
            return -modulus2 * slope + 1j * b * modulus2 ** 2 * u
    else:
        def products(u, slope):
            return (-u ** 2 * np.conj(slope)
                    + 1j * b * np.abs(u) ** 4 * u)
    return products


def _equation_term(
    variant: EquationVariant,
    b: float,
    grid: Grid,
    factor: int,
    background: Optional[KinkParams] = None
) -> Term:
    products = _equation_products(variant, b)

    if background is None:
        def term(values, _):
            slope = derivative_values(values, grid, 1)
            return dealiased(products, values, slope, factor=factor)
        return term

    def relative_term(values, t):
        kink = background.field(t, grid).values
        kink_slope = background.derivative(t, grid, 1).values
        slope = derivative_values(values, grid, 1)
        return (
            products(kink + values, kink_slope + slope)
            - products(kink, kink_slope)
        )
    return relative_term


def _gauged_term(variant: EquationVariant, b: float, factor: int) -> Term:
    def term(values, _):
        return -1j * nonlinearity_array(values, variant, b, factor)
    return term


def _default_factor(background: Optional[KinkParams]) -> int:
    return 1 if background is not None else defaults.PADDING_FACTOR


def _term_for(
    state: State,
    variant: Union[EquationVariant, str],
    b: float,
    factor: Optional[int],
    background: Optional[KinkParams]
) -> Term:
    if factor is None:
        factor = _default_factor(background)
    if isinstance(state, GaugePair):
        if background is not None:
            raise InvalidArgumentError(
                "Gauged systems cannot be evolved around a kink background."
            )
        return _gauged_term(state.variant, b, factor)
    return _equation_term(
        EquationVariant(variant), b, state.grid, factor, background
    )


def _values(state: State) -> np.ndarray:
    if isinstance(state, GaugePair):
        return state.to_array()
    return state.values.astype(complex)


def _state_like(state: State, values: np.ndarray, t: float) -> State:
    if isinstance(state, GaugePair):
        return GaugePair.from_array(values, state.grid, state.variant, t)
    return Field(state.grid, values, t)


def rhs(
    state: State,
    variant: Union[EquationVariant, str],
    b: float,
    factor: int = defaults.PADDING_FACTOR
) -> State:
    """Time derivative of a state.

    For a Field this is u_t = iu_xx - |u|²u_x + ib|u|⁴u (dnls1) or
    u_t = iu_xx - u²ū_x + ib|u|⁴u (dnls2). For a GaugePair it is the gauged
    system φ_t = iφ_xx - iP, ψ_t = iψ_xx - iQ of the pair's variant.

    :param state: Field or GaugePair.
    :param variant: Equation, ignored for gauge pairs.
    :param b: Quintic coefficient.
    :param factor: Padding factor of the nonlinear products.
    """
    values = _values(state)
    term = _term_for(state, variant, b, factor, None)
    linear = 1j * derivative_values(values, state.grid, 2)
    return _state_like(state, linear + term(values, state.t), state.t)


def _if_rk4(
    values: np.ndarray,
    t: float,
    dt: float,
    grid: Grid,
    term: Term
) -> np.ndarray:
    def half(array):
        return propagate_values(array, grid, dt / 2)

    def full(array):
        return propagate_values(array, grid, dt)

    a = dt * term(values, t)
    b = dt * term(half(values + a / 2), t + dt / 2)
    c = dt * term(half(values) + b / 2, t + dt / 2)
    d = dt * term(full(values) + half(c), t + dt)
    return full(values) + (full(a) + 2 * half(b + c) + d) / 6


def step(
    state: State,
    dt: float,
    variant: Union[EquationVariant, str],
    b: float,
    factor: Optional[int] = None,
    background: Optional[KinkParams] = None
) -> State:
    """Advance a state by one integrating-factor RK4 step.

    :param state: Field or GaugePair at time state.t.
    :param dt: Positive step size.
    :param variant: Equation, ignored for gauge pairs.
    :param b: Quintic coefficient.
    :param factor: Padding factor; pointwise products when a background is
        given, three times padding otherwise.
    :param background: Half-kink R₀. The state is then w = u - R₀ and the
        step solves i w_t + w_xx = -[N(R₀ + w) - N(R₀)].

    :raises InvalidArgumentError: if dt is not positive.
    """
    if not dt > 0:
        raise InvalidArgumentError(f"Step size has to be positive, got {dt}.")
    term = _term_for(state, variant, b, factor, background)
    values = _if_rk4(_values(state), state.t, dt, state.grid, term)
    return _state_like(state, values, state.t + dt)


def _state_norms(values: np.ndarray, grid: Grid):
    masses = sobolev_norm_values(values, grid, 0) ** 2
    norms = sobolev_norm_values(values, grid, 1)
    return float(np.sum(masses)), float(np.sum(norms))


def evolve(
    u0: State,
    t0: float,
    t1: float,
    dt: float,
    variant: Union[EquationVariant, str],
    b: float,
    reference: Optional[TrainSpec] = None,
    stride: int = 1,
    factor: Optional[int] = None,
    background: Optional[KinkParams] = None
) -> Trajectory:
    """Evolve a state from t0 to t1 with a fixed step.

    Records mass, H¹ norm and, when a reference train is given, the H¹
    distance ‖u(t) - V(t)‖ at t0, at every ``stride``-th step and at t1.
    With a background kink the recorded state is w = u - R₀, its mass and
    norm are those of w, and the distance is ‖w - (V - R₀)‖.

    :param u0: Initial Field or GaugePair; its time is ignored.
    :param t0: Initial time.
    :param t1: Final time, larger than t0.
    :param dt: Step size dividing t1 - t0.
    :param variant: Equation, ignored for gauge pairs.
    :param b: Quintic coefficient.
    :param reference: Train whose profile the distance is measured to.
    :param stride: Record every stride-th step.
    :param factor: Padding factor, see :func:`step`.
    :param background: Half-kink R₀, see :func:`step`.

    :raises InvalidArgumentError: for inconsistent times or strides.
    :raises DivergenceError: if the state stops being finite.

    :returns: Trajectory of the recorded states.
    """
    if not t1 > t0:
        raise InvalidArgumentError(
            f"Final time has to exceed the initial time, got t0 = {t0} and "
            f"t1 = {t1}."
        )
    if not dt > 0:
        raise InvalidArgumentError(f"Step size has to be positive, got {dt}.")
    steps = int(round((t1 - t0) / dt))
    if steps < 1 or abs(steps * dt - (t1 - t0)) > 1e-9 * max(1.0, t1 - t0):
        raise InvalidArgumentError(
            f"Step size {dt} does not divide the interval [{t0}, {t1}]."
        )
    if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
        raise InvalidArgumentError(
            f"Stride has to be a positive integer, got {stride!r}."
        )
    if reference is not None and isinstance(u0, GaugePair):
        raise InvalidArgumentError(
            "Distances to a reference train are measured for fields only."
        )

    grid = u0.grid
    term = _term_for(u0, variant, b, factor, background)
    values = _values(u0)

    times: List[float] = []
    states: List[State] = []
    observables: Dict[str, List[float]] = {"mass": [], "h1_norm": []}
    if reference is not None:
        observables["distance"] = []

    def record(t, array):
        times.append(t)
        states.append(_state_like(u0, array, t))
        state_mass, state_norm = _state_norms(array, grid)
        observables["mass"].append(state_mass)
        observables["h1_norm"].append(state_norm)
        if reference is not None:
            target = reference.profile(
                t, grid, include_kink=background is None
            ).values
            observables["distance"].append(
                float(sobolev_norm_values(array - target, grid, 1))
            )

    logger.info(
        "Evolving %s on %s from t = %g to t = %g with dt = %g",
        "gauged system" if isinstance(u0, GaugePair)
        else EquationVariant(variant).value,
        grid, t0, t1, dt
    )
    record(t0, values)
    for n in range(steps):
        t = t0 + n * dt
        values = _if_rk4(values, t, dt, grid, term)
        if not np.all(np.isfinite(values)):
            raise DivergenceError(
                f"Solution stopped being finite after t = {t:g}.", time=t
            )
        if (n + 1) % stride == 0 or n + 1 == steps:
            record(t0 + (n + 1) * dt, values)
            logger.debug(
                "t = %g: mass %.12g, H1 norm %.12g", times[-1],
                observables["mass"][-1], observables["h1_norm"][-1]
            )

    return Trajectory(times, states, observables)
