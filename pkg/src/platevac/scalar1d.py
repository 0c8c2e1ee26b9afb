"""Massless Dirichlet scalar field on an interval of length L.

Mode data, electric/magnetic vacuum-energy densities under both
regularization schemes, total energies both ways around the
integration/regularization order, and the quartic-interaction correction
in the effective low-energy theory.

Conventions: modes phi_n(z) = sqrt(2/L) sin(omega_n z) with
omega_n = pi n / L.  The electric density is (1/2)<(d_t phi)^2>, the
magnetic density (1/2)<(d_z phi)^2>; their position-dependent parts are
exact negatives, so the sum is the constant -pi/(24 L^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from scipy.integrate import quad

from . import regsum, specfun
from .errors import DomainError, SingularityError
from .geometry import Geometry, Position, check_position
from .regsum import PowerSeriesSpec, RegKind, RegScheme, TrigFlavor, TrigSeriesSpec

__all__ = [
    "Mode",
    "Couplings",
    "EnergySplit",
    "Route",
    "WindowIntegral",
    "ValidityWarning",
    "mode",
    "mode_function",
    "free_total_energy",
    "electric_density",
    "magnetic_density",
    "density_split",
    "total_energy_by_route",
    "interacting_density",
    "interacting_total_energy",
]


class ValidityWarning(UserWarning):
    """The effective-theory expansion parameter is not small."""


@dataclass(frozen=True)
class Mode:
    """Eigenmode index and frequency omega_n = pi n / L."""

    n: int
    omega: float

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"mode index must be a positive integer, got {self.n!r}")


@dataclass(frozen=True)
class Couplings:
    """Quartic coupling alpha and heavy mass m of the effective theory."""

    alpha: float
    m: float

    def __post_init__(self):
        alpha = float(self.alpha)
        m = float(self.m)
        if not math.isfinite(alpha) or alpha < 0.0:
            raise DomainError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        if not math.isfinite(m) or m <= 0.0:
            raise DomainError(f"m must be finite and > 0, got {self.m!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class EnergySplit:
    """Electric, magnetic and total energy density at one position."""

    electric: float
    magnetic: float
    total: float

    def __post_init__(self):
        scale = max(1.0, abs(self.electric), abs(self.magnetic))
        if abs(self.total - (self.electric + self.magnetic)) > 1e-12 * scale:
            raise DomainError("total must equal electric + magnetic")

    @classmethod
    def from_parts(cls, electric: float, magnetic: float) -> "EnergySplit":
        return cls(electric=electric, magnetic=magnetic, total=electric + magnetic)


class Route(Enum):
    SUM_THEN_REGULARIZE = "sum_then_regularize"
    INTEGRATE_REGULARIZED_DENSITY = "integrate_regularized_density"


@dataclass(frozen=True)
class WindowIntegral:
    """Integral of the continued electric density over [delta, L - delta].

    ``divergent_estimate`` is the leading boundary term
    cot(pi delta / L) / (8 L); the integral grows with it as delta -> 0,
    which is the order-of-limits clash in one number.
    """

    value: float
    delta: float
    divergent_estimate: float
    quadrature_error: float


def _warn_if_strong(c: Couplings, g: Geometry) -> None:
    # Validity regime of the effective theory; warn, don't reject.
    ratio = c.alpha / (c.m * g.length) ** 2
    if ratio > 0.1:
        warnings.warn(
            f"alpha/(m L)^2 = {ratio:.3g} exceeds 0.1; the lowest-order "
            "correction is outside its validity regime",
            ValidityWarning,
            stacklevel=3,
        )


def mode(n: int, g: Geometry) -> Mode:
    """Mode n with frequency omega_n = pi n / L."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"mode index must be a positive integer, got {n!r}")
    return Mode(n=n, omega=math.pi * n / g.length)


def mode_function(m: Mode, g: Geometry, pos: Position) -> float:
    """Normalized mode amplitude sqrt(2/L) sin(omega_n z).

    Exactly zero on the walls (Dirichlet condition); the sine argument is
    reduced through sin_pi so large n costs no accuracy.
    """
    check_position(g, pos)
    return math.sqrt(2.0 / g.length) * specfun.sin_pi(m.n * pos.z / g.length)


def free_total_energy(g: Geometry) -> float:
    """Total vacuum energy of the free field: -pi/(24 L).

    The mode sum sum omega_n / 2 = (pi / 2L) sum n is routed through the
    continuation engine, which assigns sum n its value zeta(-1) = -1/12.
    """
    series = PowerSeriesSpec(exponent=1.0, scale=math.pi / (2.0 * g.length))
    return regsum.zeta_regularize_power(series)


def _density(g: Geometry, pos: Position, scheme: RegScheme, cos_sign: float) -> float:
    # Both densities are (pi/(4 L^2)) [sum n + cos_sign * sum n cos(2 n theta)];
    # cos_sign is -1 for electric, +1 for magnetic.
    check_position(g, pos)
    ll = g.length * g.length
    constant = regsum.zeta_regularize_power(
        PowerSeriesSpec(exponent=1.0, scale=math.pi / (4.0 * ll))
    )
    if scheme.kind is RegKind.ZETA:
        if not pos.interior:
            raise SingularityError(
                "the continued density diverges on the walls; evaluate the "
                "cutoff scheme there instead"
            )
        shape = TrigSeriesSpec(theta=pos.theta, flavor=TrigFlavor.COS, weight_power=1)
        position_part = cos_sign * (math.pi / (4.0 * ll)) * regsum.zeta_regularize_trig(shape)
    else:
        # sum n e^(-eps n) cos(2 n theta) is half the theta-derivative of
        # the cutoff sine sum, taken analytically on the closed form.
        position_part = cos_sign * (math.pi / (8.0 * ll)) * regsum.abel_sum_sin_dtheta(
            scheme.epsilon, pos.theta
        )
    return constant + position_part


def electric_density(g: Geometry, pos: Position, scheme: RegScheme) -> float:
    """Electric part (1/2)<(d_t phi)^2> of the vacuum energy density.

    Continued scheme: -(pi/(16 L^2)) (1/3 - 1/sin^2 theta), interior only.
    Cutoff scheme: -pi/(48 L^2) - (pi/(8 L^2)) dS(eps, theta)/dtheta,
    defined on the closed interval.
    """
    return _density(g, pos, scheme, cos_sign=-1.0)


def magnetic_density(g: Geometry, pos: Position, scheme: RegScheme) -> float:
    """Magnetic part (1/2)<(d_z phi)^2> of the vacuum energy density.

    Continued scheme: -(pi/(16 L^2)) (1/3 + 1/sin^2 theta).  The position
    dependence is the exact negative of the electric one.
    """
    return _density(g, pos, scheme, cos_sign=+1.0)


def density_split(g: Geometry, pos: Position, scheme: RegScheme) -> EnergySplit:
    """Electric and magnetic densities bundled with their sum."""
    return EnergySplit.from_parts(
        electric=electric_density(g, pos, scheme),
        magnetic=magnetic_density(g, pos, scheme),
    )


def total_energy_by_route(
    g: Geometry,
    route: Route,
    scheme: RegScheme | None = None,
    delta: float | None = None,
):
    """Total energy, taking regularization and integration in either order.

    SUM_THEN_REGULARIZE integrates mode by mode first (the position terms
    drop out exactly) and regularizes the remaining sum n: the finite
    -pi/(24 L).  Under the cutoff scheme the same route returns the bulk
    subtracted cutoff total, which approaches that value as eps^2.

    INTEGRATE_REGULARIZED_DENSITY instead integrates the continued
    electric density over [delta, L - delta] and returns a
    :class:`WindowIntegral`; the result grows like cot(pi delta / L) and
    has no delta -> 0 limit.  delta = 0 is rejected with that diagnosis
    rather than attempted.
    """
    if scheme is None:
        scheme = RegScheme.zeta()
    if route is Route.SUM_THEN_REGULARIZE:
        if scheme.kind is RegKind.ZETA:
            return free_total_energy(g)
        return (math.pi / (2.0 * g.length)) * regsum.abel_sum_linear_minus_bulk(
            scheme.epsilon
        )
    if route is not Route.INTEGRATE_REGULARIZED_DENSITY:
        raise DomainError(f"unknown route {route!r}")
    if scheme.kind is not RegKind.ZETA:
        raise DomainError(
            "the window integral probes the continued density; use the zeta scheme"
        )
    if delta is None:
        raise DomainError("the window integral requires a boundary margin delta")
    delta = float(delta)
    if delta == 0.0:
        raise SingularityError(
            "the continued electric density integrates to cot(pi delta / L)/(8 L) "
            "+ finite as delta -> 0; the full-interval integral diverges"
        )
    if not math.isfinite(delta) or delta < 0.0 or delta >= 0.5 * g.length:
        raise DomainError(f"delta must lie in (0, L/2), got {delta!r}")

    def integrand(z: float) -> float:
        return electric_density(g, Position.from_z(z, g), RegScheme.zeta())

    value, err = quad(
        integrand, delta, g.length - delta, epsabs=1e-10, epsrel=1e-11, limit=200
    )
    estimate = specfun.cot(math.pi * delta / g.length) / (8.0 * g.length)
    return WindowIntegral(
        value=value, delta=delta, divergent_estimate=estimate, quadrature_error=err
    )


# Constant part of the interaction correction: the coefficient 1/8 * 1/18
# must reduce to 1/144 for the density and total-energy forms to agree.
_INTERACTION_CONSTANT = Fraction(1, 8) * Fraction(1, 18)
if _INTERACTION_CONSTANT != Fraction(1, 144):
    raise AssertionError("interaction constant-part identity 8 * 18 = 144 broken")


def interacting_density(g: Geometry, pos: Position, c: Couplings) -> float:
    """Vacuum energy density with the quartic interaction, continued scheme.

    -pi/(24 L^2) - (alpha pi^2 / (8 m^2 L^4)) (1/18 + 1/sin^4 theta).
    Diverges like 1/sin^4 near the walls.
    """
    check_position(g, pos)
    _warn_if_strong(c, g)
    if not pos.interior:
        raise SingularityError("the interaction correction diverges on the walls")
    free_constant = free_total_energy(g) / g.length
    csc2 = specfun.csc2(pos.theta)
    prefactor = -c.alpha * math.pi ** 2 / (8.0 * c.m ** 2 * g.length ** 4)
    return free_constant + prefactor * (1.0 / 18.0 + csc2 * csc2)


def interacting_total_energy(g: Geometry, c: Couplings) -> float:
    """Total vacuum energy with the quartic interaction.

    -pi/(24 L) - alpha pi^2 / (144 m^2 L^3).  The correction equals L
    times the constant part of the interacting density (1/8 * 1/18 =
    1/144 exactly), while the integrated position-dependent part is the
    series sum n^2, which the engine assigns zeta(-2) = 0.
    """
    _warn_if_strong(c, g)
    free = free_total_energy(g)
    scale = c.alpha * math.pi ** 2 / (c.m ** 2 * g.length ** 3)
    correction = -scale * float(_INTERACTION_CONSTANT)
    divergent_part = regsum.zeta_regularize_power(
        PowerSeriesSpec(exponent=2.0, scale=-scale)
    )
    if divergent_part != 0.0:
        raise AssertionError("sum n^2 must regularize to exactly zero")
    return free + correction + divergent_part
