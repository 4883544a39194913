"""Near-field line-of-sight channel coefficients with visibility masking.

An element contributes only when its outward normal faces the target
(strict positive dot product); everything else is exactly zero. For a
planar array with +z normals this reduces to requiring the target to sit
in the forward hemisphere. Visible elements carry the spherical-wave
coefficient (wl / (4*pi*d)) * exp(-i*2*pi*d/wl) at propagation distance d,
with no far-field approximation at any range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, InvalidWavelength, TargetInsideArray
from .geometry import TWO_PI, ArrayGeometry, Element, SphericalPoint

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True, eq=False)
class ChannelVector:
    """Per-element complex gains plus the visibility mask that shaped them."""

    gains: np.ndarray
    visible: np.ndarray
    wavelength_m: float
    target: SphericalPoint

    def __post_init__(self):
        self.gains.setflags(write=False)
        self.visible.setflags(write=False)

    def __len__(self) -> int:
        return self.gains.shape[0]


def los_gains(positions, normals, tx, ty, tz, wavelength):
    """Gain kernel shared by the scalar channel and the grid sweeps.

    Target components broadcast against the element axis, giving arrays of
    shape ``targets + (n,)``. Returns ``(gains, visible, dist)``. Because
    both the single-target path and the vectorized sweeps run through this
    one function (and accumulate in element index order), their per-element
    values agree bit for bit.
    """
    tx = np.asarray(tx, dtype=np.float64)[..., np.newaxis]
    ty = np.asarray(ty, dtype=np.float64)[..., np.newaxis]
    tz = np.asarray(tz, dtype=np.float64)[..., np.newaxis]
    dx = tx - positions[:, 0]
    dy = ty - positions[:, 1]
    dz = tz - positions[:, 2]
    d2 = dx * dx + dy * dy + dz * dz
    dist = np.sqrt(d2)
    if np.any(dist == 0.0):
        raise DegenerateGeometry("target coincides with an element position")
    facing = dx * normals[:, 0] + dy * normals[:, 1] + dz * normals[:, 2]
    visible = facing > 0.0
    amp = wavelength / (FOUR_PI * dist)
    phase = (TWO_PI / wavelength) * dist
    gains = np.where(visible, amp * np.exp(-1j * phase), 0j)
    return gains, visible, dist


def element_visible(element: Element, target_xyz) -> bool:
    """True when the element's normal strictly faces the target point."""
    t = np.asarray(target_xyz, dtype=np.float64)
    dx = t[0] - element.position[0]
    dy = t[1] - element.position[1]
    dz = t[2] - element.position[2]
    if dx * dx + dy * dy + dz * dz == 0.0:
        raise DegenerateGeometry("target coincides with the element position")
    facing = dx * element.normal[0] + dy * element.normal[1] + dz * element.normal[2]
    return bool(facing > 0.0)


def los_channel(geometry: ArrayGeometry, target: SphericalPoint, wavelength: float) -> ChannelVector:
    """Channel coefficients from every element toward one target point."""
    wl = float(wavelength)
    if not math.isfinite(wl) or wl <= 0.0:
        raise InvalidWavelength(f"wavelength must be positive and finite, got {wavelength!r}")
    if geometry.radius_m is not None and target.r <= geometry.radius_m:
        raise TargetInsideArray(
            f"target range {target.r} m does not clear the array radius {geometry.radius_m} m"
        )
    t = target.to_cartesian()
    gains, visible, _ = los_gains(geometry.positions, geometry.normals, t[0], t[1], t[2], wl)
    return ChannelVector(gains=gains, visible=visible, wavelength_m=wl, target=target)


def channel_energy(h: ChannelVector) -> float:
    """Sum of squared gain magnitudes, accumulated in element order."""
    g = h.gains
    e = g.real * g.real + g.imag * g.imag
    return float(np.cumsum(e)[-1])
