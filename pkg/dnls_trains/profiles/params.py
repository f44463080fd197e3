"""Module for member parameters shared by every train member and the
associated enums.
"""
import abc
from enum import Enum
from typing import Union

import numpy as np

from dnls_trains.errors import InvalidArgumentError
from dnls_trains.spectral import Field, Grid


class ComparableMixin:
    """
    Mixin that makes parameter classes comparable as-is. Instances with
    identical parameters are evaluated as identical, so for example sets only
    accept one instance of a given member.

    Override `_vars` when a class holds non-hashable fields.
    """
    def _vars(self):
        """Return copy of the object's variables.

        This is used for equality comparisons between different objects and
        for computing the hash.
        """
        return vars(self).copy()

    def __eq__(self, other):
        return (
            isinstance(self, other.__class__)
            and self._vars() == other._vars()
        )

    def __hash__(self):
        return hash(tuple(self._vars().values()))


class EquationVariant(Enum):
    """Enum for the two derivative NLS equations."""

    DNLS1 = "dnls1"
    """i u_t + u_xx + i|u|² u_x + b|u|⁴ u = 0"""

    DNLS2 = "dnls2"
    """i u_t + u_xx + i u² ū_x + b|u|⁴ u = 0"""


class Orientation(Enum):
    """Enum for the orientation of a half-kink."""

    FALLING = "falling"
    """Plateau at -∞, decay to zero at +∞."""

    RISING = "rising"
    """Zero at -∞, plateau at +∞."""


def gamma_of(variant: Union[EquationVariant, str], b: float) -> float:
    """Quintic coefficient γ of the profile equation.

    γ = 1 + 16b/3 for dnls1 and γ = 5/3 - 16b/3 for dnls2.
    """
    variant = EquationVariant(variant)
    if variant == EquationVariant.DNLS1:
        return 1 + 16 * b / 3
    return 5 / 3 - 16 * b / 3


def check_finite(**values: float) -> None:
    """Raise InvalidArgumentError naming the first non-finite value."""
    for name, value in values.items():
        if isinstance(value, bool) or not np.isfinite(value):
            raise InvalidArgumentError(
                f"Parameter {name} has to be a finite number, got {value!r}."
            )


class TrainMember(ComparableMixin, metaclass=abc.ABCMeta):
    """Abstract base class for localized train members.

    A member is a traveling wave e^{i(θ + ωt)} φ(x - x₀ - ct). Subclasses
    provide the profile; the time derivative follows from the traveling
    wave form, R_t = iωR - cR_x.
    """

    variant: EquationVariant
    b: float
    theta: float
    x0: float

    @property
    @abc.abstractmethod
    def speed(self) -> float:
        """Speed c of the member."""

    @property
    @abc.abstractmethod
    def frequency(self) -> float:
        """Frequency ω of the member."""

    @property
    @abc.abstractmethod
    def width(self) -> float:
        """Parameter h = √(4ω - c²) of the member."""

    @property
    def gamma(self) -> float:
        """Quintic coefficient γ of the profile equation."""
        return gamma_of(self.variant, self.b)

    @property
    def label(self) -> str:
        """Short name used in log and error messages."""
        return f"{type(self).__name__}(c={self.speed:g})"

    def position(self, t: float) -> float:
        """Center x₀ + ct of the member at time t."""
        return self.x0 + self.speed * t

    @abc.abstractmethod
    def field(self, t: float, grid: Grid) -> Field:
        """Member sampled on the grid at time t."""

    @abc.abstractmethod
    def derivative(self, t: float, grid: Grid, order: int = 1) -> Field:
        """x-derivative of the member at time t."""

    def time_derivative(self, t: float, grid: Grid) -> Field:
        """t-derivative of the member, iωR - cR_x."""
        value = self.field(t, grid)
        slope = self.derivative(t, grid, 1)
        return 1j * self.frequency * value - self.speed * slope
