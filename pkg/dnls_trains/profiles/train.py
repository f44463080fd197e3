"""Module for multi-soliton and kink-soliton train specifications."""
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from dnls_trains import defaults
from dnls_trains.errors import (DecayViolationError,
                                InsufficientMembersError,
                                InvalidArgumentError, InvalidFamilyError,
                                ValidationError)
from dnls_trains.profiles.kink import KinkParams
from dnls_trains.profiles.params import (EquationVariant, TrainMember,
                                         gamma_of)
from dnls_trains.profiles.soliton import SolitonParams, validate_soliton
from dnls_trains.spectral import Field, Grid, check_tail, derivative_values


class TrainSpec:
    """A train of K solitons, optionally led by a dnls2 half-kink."""

    def __init__(
        self,
        variant: Union[EquationVariant, str],
        solitons: Sequence[SolitonParams],
        kink: Optional[KinkParams] = None
    ) -> None:
        """Constructor for TrainSpec.

        :param variant: Equation of the train, given as EquationVariant enum
            or string.
        :param solitons: At least one soliton.
        :param kink: Optional falling half-kink, dnls2 only.

        :raises ValidationError: listing every violated condition.
        """
        self.variant = EquationVariant(variant)
        self.solitons = list(solitons)
        self.kink = kink

        violations = _train_violations(self)
        if violations:
            raise ValidationError(violations)

    @property
    def members(self) -> List[TrainMember]:
        """Every member, the kink first when present."""
        members: List[TrainMember] = []
        if self.kink is not None:
            members.append(self.kink)
        members.extend(self.solitons)
        return members

    @property
    def b(self) -> float:
        """Quintic coefficient shared by all members."""
        return self.solitons[0].b

    @property
    def gamma(self) -> float:
        """Quintic coefficient γ of the profile equations."""
        return gamma_of(self.variant, self.b)

    @property
    def v_star(self) -> float:
        """Separation speed, see :func:`v_star`."""
        return v_star(self)

    @property
    def decay_rate(self) -> float:
        """Decay rate λ = v*/16, see :func:`lambda_of`."""
        return lambda_of(self)

    def profile(
        self,
        t: float,
        grid: Grid,
        order: int = 0,
        include_kink: bool = True
    ) -> Field:
        """Sum of the member fields, or of their x-derivatives.

        :param t: Time.
        :param grid: Grid to sample on.
        :param order: 0 for the profile V, 1 or 2 for its x-derivatives.
        :param include_kink: Leave the kink out when False.
        """
        total = np.zeros(grid.N, dtype=complex)
        for member in self.members:
            if member is self.kink and not include_kink:
                continue
            if order == 0:
                total += member.field(t, grid).values
            else:
                total += member.derivative(t, grid, order).values
        return Field(grid, total, t)

    def time_derivative(self, t: float, grid: Grid) -> Field:
        """Sum of the analytic member time derivatives."""
        total = np.zeros(grid.N, dtype=complex)
        for member in self.members:
            total += member.time_derivative(t, grid).values
        return Field(grid, total, t)

    def check_tails(
        self,
        t: float,
        grid: Grid,
        tail_tolerance: float = defaults.TAIL_TOLERANCE
    ) -> None:
        """Check every member against the tail tolerance at time t.

        Solitons are checked at both boundaries, the kink at its decaying
        right boundary.

        :raises DecayViolationError: naming the member and boundary.
        """
        for index, member in enumerate(self.members):
            label = f"Member {index} ({member.label})"
            try:
                values = member.field(t, grid).values
            except DecayViolationError as error:
                raise DecayViolationError(
                    f"Member {index}: {error}",
                    boundary=error.boundary,
                    member=label
                ) from error
            boundaries = ("right",) if member is self.kink \
                else ("left", "right")
            for boundary in boundaries:
                check_tail(values, boundary, tail_tolerance, label)

    def __repr__(self):
        return (
            f"TrainSpec(variant={self.variant.value!r}, "
            f"solitons={self.solitons!r}, kink={self.kink!r})"
        )


def _train_violations(spec: TrainSpec) -> List[str]:
    violations = []
    if not spec.solitons:
        return ["A train needs at least one soliton."]

    for index, soliton in enumerate(spec.solitons, start=1):
        if soliton.variant != spec.variant:
            violations.append(
                f"Soliton {index} solves {soliton.variant.value}, but the "
                f"train is {spec.variant.value}."
            )
        if soliton.b != spec.solitons[0].b:
            violations.append(
                f"Soliton {index} has b = {soliton.b:g}, but soliton 1 has "
                f"b = {spec.solitons[0].b:g}."
            )
        report = validate_soliton(soliton)
        if not report.ok:
            violations.append(f"Soliton {index}: {report}")
        elif report.algebraic:
            violations.append(
                f"Soliton {index} is algebraic (c = 2*sqrt(omega)) and "
                f"cannot be a train member."
            )

    if spec.kink is not None:
        if spec.variant != EquationVariant.DNLS2:
            violations.append("Half-kinks are only admitted in dnls2 trains.")
        if spec.kink.b != spec.solitons[0].b:
            violations.append(
                f"The kink has b = {spec.kink.b:g}, but soliton 1 has "
                f"b = {spec.solitons[0].b:g}."
            )
        for index, soliton in enumerate(spec.solitons, start=1):
            if not soliton.c > spec.kink.c0:
                violations.append(
                    f"Soliton {index} speed c = {soliton.c:g} has to exceed "
                    f"the kink speed c0 = {spec.kink.c0:g}."
                )

    speeds = [member.speed for member in spec.members]
    for index, speed in enumerate(speeds):
        if speed == 0:
            violations.append(f"Member {index} has zero speed.")
    if len(set(speeds)) != len(speeds):
        violations.append(
            f"Member speeds have to be pairwise distinct, got {speeds}."
        )
    return violations


def v_star(spec: TrainSpec) -> float:
    """Smallest h_j |c_j - c_k| over ordered pairs j ≠ k of members.

    The kink takes part with h₀ = √(4ω₀ - c₀²).

    :raises InsufficientMembersError: if the train has a single member.
    """
    members = spec.members
    if len(members) < 2:
        raise InsufficientMembersError(
            "The separation speed needs at least two members, got "
            f"{len(members)}."
        )
    return float(min(
        first.width * abs(first.speed - second.speed)
        for first, second in permutations(members, 2)
    ))


def lambda_of(spec: TrainSpec) -> float:
    """Decay rate λ = v*/16."""
    return v_star(spec) / 16


def scaled_family(
    variant: Union[EquationVariant, str],
    d: Sequence[float],
    h: Sequence[float],
    M: float,
    b: float = 0.0
) -> List[SolitonParams]:
    """Solitons with c_j = M d_j and ω_j = (h_j² + M² d_j²)/4.

    dnls1 families use negative d_j, dnls2 families positive d_j. For M
    large enough every member passes :func:`validate_soliton` and the
    separation speed grows like M.

    :raises InvalidFamilyError: if the definition is inconsistent.
    """
    variant = EquationVariant(variant)
    if len(d) != len(h):
        raise InvalidFamilyError(
            f"Family needs one width per speed, got {len(d)} speeds and "
            f"{len(h)} widths."
        )
    if not M > 0:
        raise InvalidFamilyError(
            f"Family scale M has to be positive, got {M}."
        )
    if len(set(d)) != len(d):
        raise InvalidFamilyError(
            f"Family speeds d have to be pairwise distinct, got {list(d)}."
        )
    for value in d:
        if value == 0:
            raise InvalidFamilyError("Family speeds d have to be nonzero.")
        if variant == EquationVariant.DNLS1 and value > 0:
            raise InvalidFamilyError(
                f"dnls1 families use negative speeds d, got {value:g}."
            )
        if variant == EquationVariant.DNLS2 and value < 0:
            raise InvalidFamilyError(
                f"dnls2 families use positive speeds d, got {value:g}."
            )
    for value in h:
        if not value > 0:
            raise InvalidFamilyError(
                f"Family widths h have to be positive, got {value:g}."
            )

    return [
        SolitonParams(
            variant,
            omega=(width ** 2 + (M * speed) ** 2) / 4,
            c=M * speed,
            b=b
        )
        for speed, width in zip(d, h)
    ]


def separation_lhs(
    spec: TrainSpec,
    grid: Grid,
    times: Iterable[float]
) -> float:
    """(1 + ‖V_x‖)(1 + ‖V‖) + ‖V‖⁴ with sup norms over space and times.

    For a scaled family the quantity is nearly flat in M while v* grows
    linearly: it grows by a factor of about 1.16 from M = 8 to M = 16, so
    its ratio to v* falls by about 0.58. The width and speed terms of the
    soliton derivative keep the growth above 1.1.

    :raises InvalidArgumentError: if no times are given.
    :raises DecayViolationError: if a member is not negligible at a
        boundary.
    """
    times = list(times)
    if not times:
        raise InvalidArgumentError("At least one time is needed.")

    amplitude = 0.0
    slope = 0.0
    for t in times:
        spec.check_tails(t, grid)
        values = spec.profile(t, grid).values
        if spec.kink is None:
            slopes = derivative_values(values, grid, 1)
        else:
            slopes = spec.profile(t, grid, order=1).values
        amplitude = max(amplitude, float(np.max(np.abs(values))))
        slope = max(slope, float(np.max(np.abs(slopes))))
    return (1 + slope) * (1 + amplitude) + amplitude ** 4


def separation_estimate(spec: TrainSpec) -> float:
    """Closed form bound of :func:`separation_lhs` for large speeds.

    Every soliton contributes ‖R_j‖ ≲ h/√|c| and ‖∂R_j‖ ≲ h²/√|c| + h√|c|
    + h³/|c|^{3/2}; a kink contributes √c₀ and c₀^{3/2}.
    """
    amplitude = 0.0
    slope = 0.0
    quartic = 0.0
    for soliton in spec.solitons:
        width = soliton.width
        speed = abs(soliton.c)
        amplitude += width / np.sqrt(speed)
        slope += (width ** 2 / np.sqrt(speed) + width * np.sqrt(speed)
                  + width ** 3 / speed ** 1.5)
        quartic += width ** 4 / speed ** 2
    if spec.kink is not None:
        amplitude += np.sqrt(spec.kink.c0)
        slope += spec.kink.c0 ** 1.5
    return float((1 + slope) * (1 + amplitude) + quartic)
