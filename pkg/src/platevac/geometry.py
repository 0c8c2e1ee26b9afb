"""Interval geometry and scaled positions shared by the field modules.

Natural units throughout: hbar = c = 1, so energies and masses carry the
dimension of inverse length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Geometry", "Position", "check_position"]


@dataclass(frozen=True)
class Geometry:
    """Plate (or interval) separation L."""

    length: float

    def __post_init__(self):
        length = float(self.length)
        if not math.isfinite(length) or length <= 0.0:
            raise DomainError(f"length must be finite and > 0, got {self.length!r}")
        object.__setattr__(self, "length", length)


@dataclass(frozen=True)
class Position:
    """A point between the walls, as physical z and scaled theta = pi z / L.

    The two representations always satisfy theta * L = pi * z; build
    instances through :meth:`from_z` or :meth:`from_theta` so the other
    coordinate is derived consistently.
    """

    z: float
    theta: float

    @classmethod
    def from_z(cls, z: float, g: Geometry) -> "Position":
        z = float(z)
        if not math.isfinite(z) or z < 0.0 or z > g.length:
            raise DomainError(f"z = {z!r} lies outside the interval [0, {g.length}]")
        return cls(z=z, theta=math.pi * z / g.length)

    @classmethod
    def from_theta(cls, theta: float, g: Geometry) -> "Position":
        theta = float(theta)
        if not math.isfinite(theta) or theta < 0.0 or theta > math.pi:
            raise DomainError(f"theta = {theta!r} lies outside [0, pi]")
        return cls(z=g.length * theta / math.pi, theta=theta)

    @property
    def interior(self) -> bool:
        return 0.0 < self.theta < math.pi


def check_position(g: Geometry, pos: Position) -> Position:
    """Validate that ``pos`` belongs to the interval described by ``g``."""
    if not (0.0 <= pos.z <= g.length):
        raise DomainError(f"z = {pos.z!r} lies outside the interval [0, {g.length}]")
    if abs(pos.theta * g.length - math.pi * pos.z) > 1e-12 * math.pi * g.length:
        raise DomainError(
            f"inconsistent position: theta = {pos.theta!r} does not match "
            f"pi * z / L for z = {pos.z!r}, L = {g.length!r}"
        )
    return pos
