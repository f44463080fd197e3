"""Fixed point construction of multi-soliton trains.

The gauged solution is written as W + η, where W = (h, k) is the gauged train
profile and H = (i∂_t + ∂_xx)W - f(W) = e^{-λt}(m, n) its residual. With
f = (P, Q) the perturbation solves

    i η_t + η_xx = f(W + η) - f(W) - H,    η(t) → 0 as t → ∞,

i.e. η = D[H - (f(W + η) - f(W))] with the backward Duhamel operator
D[G](t) = -i ∫_t^{Tmax} S(t - s) G(s) ds. The infinite horizon is cut at
Tmax, where η vanishes, and η is found by Picard iteration.
"""
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from dnls_trains import defaults
from dnls_trains.dynamics import Trajectory
from dnls_trains.errors import ContractionError, InvalidArgumentError
from dnls_trains.gauge import (GaugePair, from_gauge, gauge_profile,
                               nonlinearity_array,
                               perturbation_relation_defect, profile_sources,
                               relation_defect)
from dnls_trains.profiles import EquationVariant, TrainSpec
from dnls_trains.spectral import (Field, Grid, derivative_multiplier,
                                  sobolev_norm_values)
from dnls_trains.trains import DecayFit, fit_decay, separation_gate

logger = logging.getLogger(__name__)


class PairTrajectory:
    """Gauge pairs on a uniform time grid, stored as an array (T, 2, N)."""

    def __init__(
        self,
        times: Sequence[float],
        values: np.ndarray,
        grid: Grid,
        variant: Union[EquationVariant, str]
    ) -> None:
        """Constructor for PairTrajectory.

        :param times: Uniformly spaced increasing times, at least two.
        :param values: Complex array of shape (len(times), 2, grid.N).
        :param grid: Shared grid.
        :param variant: Equation of the pairs.

        :raises InvalidArgumentError: if the times are not uniform or the
            array has the wrong shape.
        """
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=complex)
        if len(times) < 2:
            raise InvalidArgumentError(
                "A pair trajectory needs at least two times."
            )
        steps = np.diff(times)
        if np.any(steps <= 0) or not np.allclose(
                steps, steps[0], rtol=1e-9, atol=0):
            raise InvalidArgumentError(
                "Pair trajectory times have to be uniformly spaced and "
                "increasing."
            )
        if values.shape != (len(times), 2, grid.N):
            raise InvalidArgumentError(
                f"Pair trajectory values need shape "
                f"{(len(times), 2, grid.N)}, got {values.shape}."
            )
        self.times = times
        self.values = values
        self.grid = grid
        self.variant = EquationVariant(variant)

    @property
    def dt(self) -> float:
        """Spacing of the time grid."""
        return float(self.times[1] - self.times[0])

    def pair(self, index: int) -> GaugePair:
        """Gauge pair at the given time index."""
        return GaugePair.from_array(
            self.values[index], self.grid, self.variant,
            float(self.times[index])
        )

    def with_values(self, values: np.ndarray) -> "PairTrajectory":
        """Return a trajectory on the same times with new values."""
        return PairTrajectory(self.times, values, self.grid, self.variant)

    @classmethod
    def zeros_like(cls, other: "PairTrajectory") -> "PairTrajectory":
        """Vanishing trajectory on the times and grid of another one."""
        return cls(other.times, np.zeros_like(other.values), other.grid,
                   other.variant)

    def __len__(self):
        return len(self.times)


class PicardReport:
    """Progress of a Picard iteration.

    ``increments[l]`` is ‖η^{l+1} - η^l‖_X, ``ratios[l]`` is
    ``increments[l+1] / increments[l]`` and ``xnorms[l]`` is ‖η^{l+1}‖_X.
    """

    def __init__(self) -> None:
        self.xnorms: List[float] = []
        self.increments: List[float] = []
        self.ratios: List[float] = []
        self.final_defect: Optional[float] = None
        self.converged = False
        self.gate_value: Optional[float] = None

    @property
    def iterates(self) -> int:
        """Number of Picard iterates computed."""
        return len(self.increments)

    def add(self, increment: float, xnorm_value: float) -> None:
        """Record one iterate."""
        if self.increments:
            previous = self.increments[-1]
            self.ratios.append(increment / previous if previous > 0 else 0.0)
        self.increments.append(increment)
        self.xnorms.append(xnorm_value)

    def __repr__(self):
        return (
            f"PicardReport(iterates={self.iterates}, "
            f"converged={self.converged}, final_defect={self.final_defect!r})"
        )


def build_W_H(
    spec: TrainSpec,
    times: Sequence[float],
    grid: Grid,
    factor: Optional[int] = None
) -> Tuple[PairTrajectory, PairTrajectory]:
    """Gauged profile W = (h, k) and weighted sources H = e^{-λt}(m, n).

    :raises DecayViolationError: if a member is not negligible at a
        boundary at some time.
    """
    times = np.asarray(times, dtype=float)
    rate = spec.decay_rate if len(spec.members) > 1 else 0.0
    profile = np.empty((len(times), 2, grid.N), dtype=complex)
    sources = np.empty_like(profile)
    for index, t in enumerate(times):
        spec.check_tails(t, grid)
        profile[index] = gauge_profile(spec, t, grid).to_array()
        if len(spec.members) == 1:
            sources[index] = 0
            continue
        pair, _ = profile_sources(spec, t, grid, factor=factor)
        sources[index] = np.exp(-rate * t) * pair.to_array()
    logger.info("Built gauged profile and sources on %d time nodes",
                len(times))
    return (
        PairTrajectory(times, profile, grid, spec.variant),
        PairTrajectory(times, sources, grid, spec.variant)
    )


def duhamel_apply(G: PairTrajectory) -> PairTrajectory:
    """Backward Duhamel integral -i ∫_t^{Tmax} S(t - s) G(s) ds.

    Trapezoid rule in s with the free group applied exactly between nodes:
    I(Tmax) = 0 and I(t_n) = S(-Δ)I(t_{n+1}) - i(Δ/2)[G(t_n) +
    S(-Δ)G(t_{n+1})]. The recursion runs on Fourier coefficients.
    """
    delta = G.dt
    back = np.exp(1j * G.grid.k ** 2 * delta)
    coefficients = np.fft.fft(G.values, axis=-1)
    integral = np.zeros_like(coefficients)
    for index in range(len(G) - 2, -1, -1):
        integral[index] = back * integral[index + 1] - 0.5j * delta * (
            coefficients[index] + back * coefficients[index + 1]
        )
    return G.with_values(np.fft.ifft(integral, axis=-1))


def _slice_norms(eta: PairTrajectory) -> np.ndarray:
    """‖η(t)‖_{L²×L²} + ‖∂η(t)‖_{L²×L²} at every node."""
    grid = eta.grid
    values = sobolev_norm_values(eta.values, grid, 0).sum(axis=-1)
    weights = np.abs(derivative_multiplier(grid, 1)) ** 2
    coefficients = np.fft.fft(eta.values, axis=-1) / grid.N
    slopes = np.sqrt(
        grid.L * np.sum(weights * np.abs(coefficients) ** 2, axis=-1)
    ).sum(axis=-1)
    return values + slopes


def xnorm(eta: PairTrajectory, lam: float) -> float:
    """Discrete X-norm sup_t e^{λt}(‖η(t)‖_{L²×L²} + ‖∂η(t)‖_{L²×L²}).

    Pair norms are sums of the component norms.
    """
    return float(np.max(np.exp(lam * eta.times) * _slice_norms(eta)))


class _Forcing:
    """G(η) = H - (f(W + η) - f(W)), evaluated in time chunks."""

    def __init__(
        self,
        W: PairTrajectory,
        H: PairTrajectory,
        b: float,
        factor: int,
        chunk: int = defaults.TIME_CHUNK
    ) -> None:
        self.W = W
        self.H = H
        self.b = b
        self.factor = factor
        self.chunk = chunk
        self.base = self._map(lambda index: W.values[index])

    def _map(self, arguments) -> np.ndarray:
        result = np.empty_like(self.W.values)
        for start in range(0, len(self.W), self.chunk):
            index = slice(start, start + self.chunk)
            result[index] = nonlinearity_array(
                arguments(index), self.W.variant, self.b, self.factor
            )
        return result

    def __call__(self, eta: PairTrajectory) -> PairTrajectory:
        shifted = self._map(
            lambda index: self.W.values[index] + eta.values[index]
        )
        return eta.with_values(self.H.values - (shifted - self.base))


def picard_solve(
    spec: TrainSpec,
    T0: float,
    Tmax: float,
    dt_s: float,
    grid: Grid,
    max_iters: int = defaults.PICARD_MAX_ITERS,
    tol: float = defaults.PICARD_TOLERANCE,
    gate: float = defaults.SEPARATION_GATE,
    factor: Optional[int] = None
) -> Tuple[PairTrajectory, PicardReport]:
    """Solve η = D[H - (f(W + η) - f(W))] on [T0, Tmax] by Picard iteration.

    Starts from η = 0 and stops when the X-norm of an increment drops below
    ``tol`` or after ``max_iters`` iterates. Hitting the cap logs a warning
    and leaves ``report.converged`` False.

    :param spec: Train.
    :param T0: First time node.
    :param Tmax: Truncation time where η vanishes.
    :param dt_s: Spacing of the time nodes, dividing Tmax - T0.
    :param grid: Grid covering the train on [T0, Tmax].
    :param max_iters: Iteration cap.
    :param tol: Increment tolerance in the X-norm.
    :param gate: Separation gate, see trains.separation_gate.
    :param factor: Padding factor; pointwise when the train has a kink.

    :raises InvalidArgumentError: for inconsistent times.
    :raises ContractionError: if two consecutive ratios are at least 1.
    """
    if not Tmax > T0:
        raise InvalidArgumentError(
            f"Tmax has to exceed T0, got T0 = {T0} and Tmax = {Tmax}."
        )
    nodes = int(round((Tmax - T0) / dt_s))
    if nodes < 1 or abs(nodes * dt_s - (Tmax - T0)) > 1e-9 * (Tmax - T0):
        raise InvalidArgumentError(
            f"Time step {dt_s} does not divide the interval [{T0}, {Tmax}]."
        )
    if factor is None:
        factor = 1 if spec.kink is not None else defaults.PADDING_FACTOR

    report = PicardReport()
    report.gate_value = separation_gate(spec, grid, [T0, Tmax], gate)
    lam = spec.decay_rate if len(spec.members) > 1 else 0.0

    times = T0 + dt_s * np.arange(nodes + 1)
    W, H = build_W_H(spec, times, grid, factor=factor)
    forcing = _Forcing(W, H, spec.b, factor)

    eta = PairTrajectory.zeros_like(W)
    for iteration in range(1, max_iters + 1):
        update = duhamel_apply(forcing(eta))
        increment = xnorm(update.with_values(update.values - eta.values), lam)
        report.add(increment, xnorm(update, lam))
        eta = update
        logger.debug(
            "Picard iterate %d: increment %.6e, X-norm %.6e", iteration,
            increment, report.xnorms[-1]
        )
        if increment < tol:
            report.converged = True
            break
        if len(report.ratios) >= 2 and min(report.ratios[-2:]) >= 1:
            raise ContractionError(
                f"Picard iteration is not contracting: the last two ratios "
                f"are {report.ratios[-2]:.4g} and {report.ratios[-1]:.4g}.",
                report
            )

    if not report.converged:
        logger.warning(
            "Picard iteration stopped after %d iterates with increment %.3e "
            "above the tolerance %.1e",
            report.iterates, report.increments[-1], tol
        )

    residual = duhamel_apply(forcing(eta))
    report.final_defect = xnorm(
        eta.with_values(eta.values - residual.values), lam
    )
    logger.info(
        "Picard iteration: %d iterates, final defect %.3e",
        report.iterates, report.final_defect
    )
    return eta, report


def synthesize(
    spec: TrainSpec,
    eta: PairTrajectory,
    W: Optional[PairTrajectory] = None
) -> Trajectory:
    """Solution u of the equation rebuilt from the perturbation η.

    dnls1: u = exp(-(i/2)∫_{-∞}^x |φ|²) φ with φ = φ̃ + h. dnls2: u = ũ + V.
    Records the H¹ distance ‖u(t) - V(t)‖ as "distance" and the L² norm of
    the relation defect of W + η as "relation_defect".

    :param spec: Train.
    :param eta: Perturbation on the time grid.
    :param W: Gauged profile on the same times; rebuilt when not given.
    """
    grid = eta.grid
    states = []
    distances = []
    defects = []
    for index, t in enumerate(eta.times):
        t = float(t)
        perturbation = eta.pair(index)
        if W is None:
            profile = gauge_profile(spec, t, grid)
        else:
            profile = W.pair(index)

        total = perturbation + profile
        if spec.variant == EquationVariant.DNLS1:
            u = from_gauge(total)
            difference = u.values - spec.profile(t, grid).values
        else:
            u = Field(grid, perturbation.first.values
                      + spec.profile(t, grid).values, t)
            difference = perturbation.first.values
        states.append(u)
        distances.append(float(sobolev_norm_values(difference, grid, 1)))

        if spec.kink is None:
            defect = relation_defect(total)
        else:
            defect = perturbation_relation_defect(perturbation, profile)
        defects.append(defect)

    return Trajectory(
        eta.times, states,
        {"distance": distances, "relation_defect": defects}
    )


def fit_distance(
    trajectory: Trajectory,
    window: Tuple[float, float]
) -> DecayFit:
    """Log-linear fit of the recorded distance on a time window.

    :raises DegenerateFitError: if the window holds fewer than two samples
        or the distance vanishes in it.
    """
    times = trajectory.times
    mask = (times >= window[0]) & (times <= window[1])
    return fit_decay(times[mask], trajectory.observables["distance"][mask])
