"""Gauge transformations, the gauged nonlinearities and the source terms of
the profile equations.

dnls1 is gauged to the pair (φ, ψ) with φ = exp((i/2)∫_{-∞}^x |u|²) u and
ψ = φ_x - (i/2)|φ|²φ, which solves

    i φ_t + φ_xx = P(φ, ψ) = iφ²ψ̄ - b|φ|⁴φ,
    i ψ_t + ψ_xx = Q(φ, ψ) = -iψ²φ̄ - 3b|φ|⁴ψ - 2b|φ|²φ²ψ̄.

dnls2 uses (u, v) with v = u_x + (i/2)|u|²u and

    P(u, v) = -iu²v̄ + (1/2 - b)|u|⁴u,
    Q(u, v) = iv²ū + (3/2 - 3b)|u|⁴v + (1 - 2b)|u|²u²v̄.
"""
from typing import Optional, Tuple, Union

import numpy as np

from dnls_trains import defaults
from dnls_trains.errors import InvalidArgumentError
from dnls_trains.profiles import EquationVariant, TrainSpec
from dnls_trains.spectral import (Field, Grid, check_tail,
                                  cumulative_integral_values, dealiased,
                                  derivative_values, sobolev_norm)


class GaugePair:
    """Pair of fields on a shared grid and time.

    Holds (φ, ψ) for dnls1 and (u, v) for dnls2, as well as the profile pair
    W = (h, k), the sources H = (m, n) and perturbations η.
    """

    def __init__(
        self,
        first: Field,
        second: Field,
        variant: Union[EquationVariant, str]
    ) -> None:
        """Constructor for GaugePair.

        :raises InvalidArgumentError: if the fields do not share grid and
            time.
        """
        if first.grid != second.grid:
            raise InvalidArgumentError(
                "Gauge pair components have to share a grid."
            )
        if first.t != second.t:
            raise InvalidArgumentError(
                f"Gauge pair components have to share a time, got "
                f"{first.t} and {second.t}."
            )
        self.first = first
        self.second = second
        self.variant = EquationVariant(variant)

    @classmethod
    def from_array(
        cls,
        values: np.ndarray,
        grid: Grid,
        variant: Union[EquationVariant, str],
        t: float = 0.0
    ) -> "GaugePair":
        """Build a pair from an array of shape (2, N)."""
        return cls(Field(grid, values[0], t), Field(grid, values[1], t),
                   variant)

    @property
    def grid(self) -> Grid:
        """Grid shared by both components."""
        return self.first.grid

    @property
    def t(self) -> float:
        """Time shared by both components."""
        return self.first.t

    def to_array(self) -> np.ndarray:
        """Stack the components into a complex array of shape (2, N)."""
        return np.stack([self.first.values, self.second.values]).astype(
            complex
        )

    def __add__(self, other: "GaugePair") -> "GaugePair":
        return GaugePair(self.first + other.first,
                         self.second + other.second, self.variant)

    def __sub__(self, other: "GaugePair") -> "GaugePair":
        return GaugePair(self.first - other.first,
                         self.second - other.second, self.variant)

    def __repr__(self):
        return f"GaugePair(variant={self.variant.value!r}, t={self.t!r})"


def _mass_phase(
    values: np.ndarray,
    grid: Grid,
    tail_tolerance: float
) -> np.ndarray:
    """(1/2) ∫_{-∞}^x |f|² along the last axis."""
    modulus = np.abs(values)
    check_tail(modulus, "left", tail_tolerance)
    return 0.5 * cumulative_integral_values(
        modulus ** 2, grid, "left", np.inf
    )


def to_gauge(
    u: Field,
    variant: Union[EquationVariant, str],
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> GaugePair:
    """Gauge transform of a solution.

    dnls1 gives (φ, ψ) with φ = exp((i/2)∫_{-∞}^x |u|²) u and
    ψ = φ_x - (i/2)|φ|²φ. dnls2 gives (u, u_x + (i/2)|u|²u). Derivatives
    are spectral.

    :raises DecayViolationError: if |u| is not negligible at the left
        boundary (dnls1 only).
    """
    variant = EquationVariant(variant)
    grid = u.grid
    values = u.values.astype(complex)
    if variant == EquationVariant.DNLS1:
        first = np.exp(1j * _mass_phase(values, grid, tail_tolerance)) * values
        second = (
            derivative_values(first, grid, 1)
            - 0.5j * np.abs(first) ** 2 * first
        )
    else:
        first = values
        second = (
            derivative_values(first, grid, 1)
            + 0.5j * np.abs(first) ** 2 * first
        )
    return GaugePair(Field(grid, first, u.t), Field(grid, second, u.t),
                     variant)


def from_gauge(
    pair: GaugePair,
    tail_tolerance: float = defaults.TAIL_TOLERANCE
) -> Field:
    """Inverse of :func:`to_gauge`.

    dnls1 applies the inverse phase u = exp(-(i/2)∫_{-∞}^x |φ|²) φ, dnls2
    returns the first component.

    :raises DecayViolationError: if |φ| is not negligible at the left
        boundary (dnls1 only).
    """
    if pair.variant == EquationVariant.DNLS2:
        return pair.first
    values = pair.first.values.astype(complex)
    phase = _mass_phase(values, pair.grid, tail_tolerance)
    return pair.first.with_values(np.exp(-1j * phase) * values)


def nonlinearity_values(
    first: np.ndarray,
    second: np.ndarray,
    variant: EquationVariant,
    b: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Pointwise (P, Q) of arrays of any matching shape."""
    modulus2 = np.abs(first) ** 2
    if variant == EquationVariant.DNLS1:
        p = 1j * first ** 2 * np.conj(second) - b * modulus2 ** 2 * first
        q = (
            -1j * second ** 2 * np.conj(first)
            - 3 * b * modulus2 ** 2 * second
            - 2 * b * modulus2 * first ** 2 * np.conj(second)
        )
    else:
        p = -1j * first ** 2 * np.conj(second) + (0.5 - b) * modulus2 ** 2 \
            * first
        q = (
            1j * second ** 2 * np.conj(first)
            + (1.5 - 3 * b) * modulus2 ** 2 * second
            + (1 - 2 * b) * modulus2 * first ** 2 * np.conj(second)
        )
    return p, q


def nonlinearity_array(
    values: np.ndarray,
    variant: EquationVariant,
    b: float,
    factor: int = defaults.PADDING_FACTOR
) -> np.ndarray:
    """(P, Q) of stacked pairs, shape (..., 2, N), dealiased."""
    def stacked(first, second):
        return np.stack(
            nonlinearity_values(first, second, variant, b), axis=-2
        )
    if factor == 1:
        return stacked(values[..., 0, :], values[..., 1, :])
    return dealiased(
        lambda padded: stacked(padded[..., 0, :], padded[..., 1, :]),
        values,
        factor=factor
    )


def nonlinearity(
    pair: GaugePair,
    b: float,
    factor: int = defaults.PADDING_FACTOR
) -> GaugePair:
    """Gauged nonlinearities (P, Q) of a pair.

    Evaluated on the grid padded by ``factor``; ``factor=1`` evaluates
    pointwise on the native samples.
    """
    result = nonlinearity_array(pair.to_array(), pair.variant, b, factor)
    return GaugePair.from_array(result, pair.grid, pair.variant, pair.t)


def relation_residual(pair: GaugePair) -> Field:
    """Pointwise defect of the relation between the pair components.

    second - (∂first - (i/2)|first|² first) for dnls1 and
    second - (∂first + (i/2)|first|² first) for dnls2. Vanishes for pairs
    produced by :func:`to_gauge`.
    """
    first = pair.first.values.astype(complex)
    sign = -1 if pair.variant == EquationVariant.DNLS1 else 1
    expected = (
        derivative_values(first, pair.grid, 1)
        + sign * 0.5j * np.abs(first) ** 2 * first
    )
    return pair.second.with_values(pair.second.values - expected)


def perturbation_relation_residual(
    eta: GaugePair,
    profile: GaugePair
) -> Field:
    """Defect of the relation satisfied by η = (W + η) - W.

    ψ̃ - [∂φ̃ ∓ (i/2)(|h + φ̃|²(h + φ̃) - |h|²h)] with the upper sign for
    dnls1. Only η is differentiated, so the profile W may be non-periodic.
    """
    first = eta.first.values.astype(complex)
    h = profile.first.values.astype(complex)
    total = h + first
    cubic = np.abs(total) ** 2 * total - np.abs(h) ** 2 * h
    sign = -1 if eta.variant == EquationVariant.DNLS1 else 1
    expected = derivative_values(first, eta.grid, 1) + sign * 0.5j * cubic
    return eta.second.with_values(eta.second.values - expected)


def relation_defect(pair: GaugePair) -> float:
    """L² norm of :func:`relation_residual`."""
    return sobolev_norm(relation_residual(pair), 0)


def perturbation_relation_defect(
    eta: GaugePair,
    profile: GaugePair
) -> float:
    """L² norm of :func:`perturbation_relation_residual`."""
    return sobolev_norm(perturbation_relation_residual(eta, profile), 0)


def gauge_profile(spec: TrainSpec, t: float, grid: Grid) -> GaugePair:
    """Gauged profile W = (h, k) of a train.

    dnls1: h = exp((i/2)∫_{-∞}^x |R|²) R and k = h_x - (i/2)|h|²h, which
    equals exp((i/2)∫_{-∞}^x |R|²) R_x. dnls2: h = V and
    k = V_x + (i/2)|V|²V. The member x-derivatives are used, so the half-kink
    is never differentiated numerically.
    """
    profile = spec.profile(t, grid).values
    slope = spec.profile(t, grid, order=1).values
    if spec.variant == EquationVariant.DNLS1:
        carrier = np.exp(1j * _mass_phase(profile, grid, np.inf))
        first = carrier * profile
        second = carrier * slope
    else:
        first = profile
        second = slope + 0.5j * np.abs(profile) ** 2 * profile
    return GaugePair(Field(grid, first, t), Field(grid, second, t),
                     spec.variant)


def profile_sources(
    spec: TrainSpec,
    t: float,
    grid: Grid,
    factor: Optional[int] = None
) -> Tuple[GaugePair, Field]:
    """Source terms (m, n) of the gauged profile equations.

    The train profile solves iV_t + V_xx + N(V) = e^{-λt} v_res with
    v_res = e^{λt}(χ₁ + χ₂). For dnls1

        m = v_res e^{(i/2)∫|R|²} - h ∫_{-∞}^x Im(v_res R̄),
        n = m_x - i|h|²m + (i/2)h²m̄,

    and for dnls2 m = v_res and n = m_x + i|h|²m - (i/2)h²m̄.

    :param factor: Padding factor for the residual products; defaults to
        3 for soliton trains and 1 (pointwise) when a kink is present.

    :returns: Tuple of the pair (m, n) and v_res.
    """
    from dnls_trains.trains import residual_chi

    chi_1, chi_2 = residual_chi(spec, t, grid, factor=factor)
    rate = spec.decay_rate if len(spec.members) > 1 else 0.0
    amplitude = np.exp(rate * t) * (chi_1.values + chi_2.values)
    profile = gauge_profile(spec, t, grid)
    h = profile.first.values

    if spec.variant == EquationVariant.DNLS1:
        train = spec.profile(t, grid).values
        carrier = np.exp(1j * _mass_phase(train, grid, np.inf))
        correction = cumulative_integral_values(
            np.imag(amplitude * np.conj(train)), grid, "left", np.inf
        )
        m = amplitude * carrier - h * correction
        n = (
            derivative_values(m, grid, 1)
            - 1j * np.abs(h) ** 2 * m
            + 0.5j * h ** 2 * np.conj(m)
        )
    else:
        m = amplitude
        n = (
            derivative_values(m, grid, 1)
            + 1j * np.abs(h) ** 2 * m
            - 0.5j * h ** 2 * np.conj(m)
        )
    sources = GaugePair(Field(grid, m, t), Field(grid, n, t), spec.variant)
    return sources, Field(grid, amplitude, t)
