"""Scalar beam-quality figures extracted from swept patterns.

Half-power widths come from linear interpolation of the 0.5-of-peak
crossings along the axis cuts through the peak cell. The main lobe on a
cut is the contiguous region around the peak bounded by the first local
minima; the sidelobe level is the maximum over everything outside the
main lobe's bounding box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beamforming import DB_FLOOR
from .errors import DegeneratePattern
from .geometry import TWO_PI, SphericalPoint, sph_to_cart
from .sweep import AngularPatternGrid, DistancePattern


@dataclass(frozen=True)
class BeamMetrics:
    """Pointing, beamwidth, and sidelobe figures for one angular beam."""

    peak_theta: float
    peak_phi: float
    pointing_error_rad: float
    hpbw_theta: float
    hpbw_phi: float
    peak_sidelobe_db: float
    degenerate: bool = False


@dataclass(frozen=True)
class FocusMetrics:
    """Range-domain focusing figures for one distance pattern.

    ``one_sided`` is set when a half-power crossing was missing inside the
    sweep window and the window edge substituted for it.
    """

    peak_r_m: float
    depth_of_focus_m: float
    focal_error_m: float
    one_sided: bool = False


@dataclass(frozen=True)
class IsotropyReport:
    """Spread of beam metrics across focal points."""

    hpbw_theta_min: float
    hpbw_theta_max: float
    hpbw_theta_ratio: float
    hpbw_phi_min: float
    hpbw_phi_max: float
    hpbw_phi_ratio: float
    sidelobe_min_db: float
    sidelobe_max_db: float
    sidelobe_spread_db: float
    n_beams: int


def great_circle_angle(theta_a: float, phi_a: float, theta_b: float, phi_b: float) -> float:
    """Angle in radians between two directions on the unit sphere."""
    ax, ay, az = sph_to_cart(1.0, theta_a, phi_a)
    bx, by, bz = sph_to_cart(1.0, theta_b, phi_b)
    dot = ax * bx + ay * by + az * bz
    return float(np.arccos(np.clip(dot, -1.0, 1.0)))


def _interp_crossing(c_in, v_in, c_out, v_out, level):
    frac = (v_in - level) / (v_in - v_out)
    return c_in + frac * (c_out - c_in)


def _crossing_linear(values, coords, peak: int, step: int, level: float):
    """First crossing below ``level`` walking from the peak.

    Returns (coordinate, found). A missing crossing clamps to the
    boundary coordinate on that side.
    """
    i = peak
    while True:
        j = i + step
        if j < 0 or j >= len(values):
            return float(coords[i]), False
        if values[j] < level:
            return (
                _interp_crossing(float(coords[i]), float(values[i]), float(coords[j]), float(values[j]), level),
                True,
            )
        i = j


def _crossing_cyclic(values, coords, peak: int, step: int, level: float, period: float):
    """Crossing search on a periodic cut, capped at half a period per side."""
    m = len(values)
    delta = period / m
    for s in range(1, m // 2 + 1):
        j = (peak + step * s) % m
        if values[j] < level:
            c_in = float(coords[peak]) + step * (s - 1) * delta
            v_in = float(values[(peak + step * (s - 1)) % m])
            c_out = float(coords[peak]) + step * s * delta
            return _interp_crossing(c_in, v_in, c_out, float(values[j]), level), True
    return float(coords[peak]) + step * (period / 2.0), False


def _lobe_edge_linear(values, peak: int, step: int) -> int:
    """Index of the first local minimum walking from the peak."""
    i = peak
    while 0 <= i + step < len(values) and values[i + step] < values[i]:
        i += step
    return i


def _lobe_steps_cyclic(values, peak: int, step: int) -> int:
    """Steps to the first local minimum on a periodic cut, at most half a period."""
    m = len(values)
    taken = 0
    for s in range(1, m // 2 + 1):
        cur = (peak + step * s) % m
        prev = (peak + step * (s - 1)) % m
        if values[cur] < values[prev]:
            taken = s
        else:
            break
    return taken


def _axis_cut_width(values, coords, peak: int, level: float, pole_low: bool, pole_high: bool) -> float:
    """Half-power width along a non-periodic cut.

    When the peak sits exactly on a pole sample the beam physically
    continues through the pole, so the width found on the open side is
    mirrored instead of clamping at the pole.
    """
    left, _ = _crossing_linear(values, coords, peak, -1, level)
    right, _ = _crossing_linear(values, coords, peak, +1, level)
    peak_c = float(coords[peak])
    if peak == 0 and pole_low:
        return 2.0 * (right - peak_c)
    if peak == len(values) - 1 and pole_high:
        return 2.0 * (peak_c - left)
    return right - left


def angular_metrics(grid: AngularPatternGrid, focal: SphericalPoint | None = None) -> BeamMetrics:
    """Extract pointing, half-power widths, and sidelobe level for one beam."""
    if focal is None:
        focal = grid.focal
    if focal is None:
        raise ValueError("a focal point is required to compute the pointing error")
    p = grid.power
    peak_val = float(np.max(p))
    if peak_val <= 0.0 or peak_val == float(np.min(p)):
        raise DegeneratePattern("pattern is flat, no distinct peak to measure")
    i_pk, j_pk = divmod(int(np.argmax(p)), p.shape[1])
    theta_axis = grid.theta_axis
    phi_axis = grid.phi_axis
    peak_theta = float(theta_axis[i_pk])
    peak_phi = float(phi_axis[j_pk])
    level = 0.5 * peak_val

    tcut = p[:, j_pk]
    hpbw_theta = _axis_cut_width(
        tcut, theta_axis, i_pk, level,
        pole_low=float(theta_axis[0]) == 0.0,
        pole_high=float(theta_axis[-1]) == math.pi,
    )
    i_lo = _lobe_edge_linear(tcut, i_pk, -1)
    i_hi = _lobe_edge_linear(tcut, i_pk, +1)

    span = float(phi_axis[-1]) - float(phi_axis[0])
    cyclic = abs(span - TWO_PI) < 1e-12
    if cyclic:
        # Drop the duplicate endpoint column and walk modulo one period.
        row = p[i_pk, :-1]
        m = row.shape[0]
        j_cyc = j_pk % m
        left, _ = _crossing_cyclic(row, phi_axis, j_cyc, -1, level, TWO_PI)
        right, _ = _crossing_cyclic(row, phi_axis, j_cyc, +1, level, TWO_PI)
        hpbw_phi = right - left
        if float(np.max(row)) == float(np.min(row)):
            lobe_cols = set(range(p.shape[1]))
        else:
            back = _lobe_steps_cyclic(row, j_cyc, -1)
            fwd = _lobe_steps_cyclic(row, j_cyc, +1)
            lobe_cols = {(j_cyc + t) % m for t in range(-back, fwd + 1)}
            if 0 in lobe_cols:
                lobe_cols.add(p.shape[1] - 1)
    else:
        prow = p[i_pk, :]
        hpbw_phi = _axis_cut_width(prow, phi_axis, j_pk, level, False, False)
        j_lo = _lobe_edge_linear(prow, j_pk, -1)
        j_hi = _lobe_edge_linear(prow, j_pk, +1)
        lobe_cols = set(range(j_lo, j_hi + 1))

    outside = np.ones(p.shape, dtype=bool)
    outside[i_lo : i_hi + 1, sorted(lobe_cols)] = False
    rest = p[outside]
    if rest.size == 0:
        psl_db = DB_FLOOR
    else:
        psl = float(np.max(rest))
        psl_db = DB_FLOOR if psl <= 0.0 else 10.0 * math.log10(psl / peak_val)

    return BeamMetrics(
        peak_theta=peak_theta,
        peak_phi=peak_phi,
        pointing_error_rad=great_circle_angle(peak_theta, peak_phi, focal.theta, focal.phi),
        hpbw_theta=hpbw_theta,
        hpbw_phi=hpbw_phi,
        peak_sidelobe_db=psl_db,
    )


def focus_metrics(pattern: DistancePattern) -> FocusMetrics:
    """Peak range, depth of focus, and focal error of a distance pattern."""
    p = pattern.power
    peak_val = float(np.max(p))
    if peak_val <= 0.0 or peak_val == float(np.min(p)):
        raise DegeneratePattern("distance pattern is flat, no distinct peak to measure")
    i_pk = int(np.argmax(p))
    level = 0.5 * peak_val
    left, left_found = _crossing_linear(p, pattern.r_axis, i_pk, -1, level)
    right, right_found = _crossing_linear(p, pattern.r_axis, i_pk, +1, level)
    peak_r = float(pattern.r_axis[i_pk])
    return FocusMetrics(
        peak_r_m=peak_r,
        depth_of_focus_m=right - left,
        focal_error_m=abs(peak_r - pattern.focal_range_m),
        one_sided=not (left_found and right_found),
    )


def isotropy_report(per_focal_metrics) -> IsotropyReport:
    """Min/max/ratio summary of beam metrics across focal points."""
    entries = list(per_focal_metrics)
    if len(entries) < 2:
        raise ValueError("need at least two beams to summarize isotropy")
    usable = [m for m in entries if not m.degenerate]
    if not usable:
        raise DegeneratePattern("every beam was degenerate")
    ht = [m.hpbw_theta for m in usable]
    hp = [m.hpbw_phi for m in usable]
    sl = [m.peak_sidelobe_db for m in usable]
    return IsotropyReport(
        hpbw_theta_min=min(ht),
        hpbw_theta_max=max(ht),
        hpbw_theta_ratio=max(ht) / min(ht),
        hpbw_phi_min=min(hp),
        hpbw_phi_max=max(hp),
        hpbw_phi_ratio=max(hp) / min(hp),
        sidelobe_min_db=min(sl),
        sidelobe_max_db=max(sl),
        sidelobe_spread_db=max(sl) - min(sl),
        n_beams=len(usable),
    )
