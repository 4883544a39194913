"""CSV and sidecar emission with round-trip-safe float formatting.

All files are written with LF line endings and 17-significant-digit
decimals, enough to reconstruct every double exactly. Pattern CSVs carry
power in dB with exact zeros pinned at the floor value; readers map
anything at or below the floor back to linear 0.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .beamforming import DB_FLOOR, to_db
from .errors import ParseError
from .geometry import ArrayGeometry
from .sweep import AngularPatternGrid, DistancePattern

GEOMETRY_HEADER = "index,x,y,z,nx,ny,nz"
ANGULAR_HEADER = "theta_rad,phi_rad,power_db"
DISTANCE_HEADER = "r_m,power_db"
METRICS_HEADER = "focal_theta,focal_phi,peak_theta,peak_phi,pointing_err,hpbw_theta,hpbw_phi,psl_db"
FOCUS_HEADER = "focal_theta,focal_phi,peak_r_m,depth_of_focus_m,focal_error_m,one_sided"


def fmt(x: float) -> str:
    """Decimal text with 17 significant digits."""
    return format(float(x), ".17g")


def _write_lines(path, lines) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def write_geometry_csv(path, geometry: ArrayGeometry) -> None:
    """One row per element: index, position, outward normal."""
    lines = [GEOMETRY_HEADER]
    pos = geometry.positions
    nrm = geometry.normals
    for k in range(geometry.n):
        fields = [str(k)]
        fields.extend(fmt(v) for v in pos[k])
        fields.extend(fmt(v) for v in nrm[k])
        lines.append(",".join(fields))
    _write_lines(path, lines)


def write_angular_csv(path, grid: AngularPatternGrid) -> None:
    """Full grid in dB, theta outer loop, phi inner loop."""
    db = to_db(grid.power)
    lines = [ANGULAR_HEADER]
    for i, th in enumerate(grid.theta_axis):
        ts = fmt(th)
        for j, ph in enumerate(grid.phi_axis):
            lines.append(f"{ts},{fmt(ph)},{fmt(db[i, j])}")
    _write_lines(path, lines)


def write_distance_csv(path, pattern: DistancePattern) -> None:
    db = to_db(pattern.power)
    lines = [DISTANCE_HEADER]
    for i, r in enumerate(pattern.r_axis):
        lines.append(f"{fmt(r)},{fmt(db[i])}")
    _write_lines(path, lines)


def write_meta(path, entries: dict) -> None:
    """Sidecar of ``key = value`` lines, in insertion order."""
    lines = [f"{key} = {value}" for key, value in entries.items()]
    _write_lines(path, lines)


def read_meta(path) -> dict:
    """Parse a sidecar back into an ordered string-to-string mapping."""
    entries: dict[str, str] = {}
    with open(Path(path), "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            if not key:
                raise ParseError("empty key", line=lineno)
            entries[key] = value.strip()
    return entries


def write_metrics_csv(path, rows) -> None:
    """Angular metrics table, one row of eight floats per focal point."""
    lines = [METRICS_HEADER]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    _write_lines(path, lines)


def write_focus_csv(path, rows) -> None:
    """Range metrics table; the last column is the one-sided flag (0/1)."""
    lines = [FOCUS_HEADER]
    for row in rows:
        *floats, one_sided = row
        lines.append(",".join([fmt(v) for v in floats] + [str(int(one_sided))]))
    _write_lines(path, lines)


def _split_csv_line(line: str, expected: int, lineno: int):
    parts = line.split(",")
    if len(parts) != expected:
        raise ParseError(f"expected {expected} fields, got {len(parts)}", line=lineno)
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno) from None


def _db_to_linear(db: float) -> float:
    if db <= DB_FLOOR:
        return 0.0
    return 10.0 ** (db / 10.0)


def read_angular_csv(path):
    """Reconstruct (theta_axis, phi_axis, linear power) from a pattern CSV."""
    thetas: list[float] = []
    phis: list[float] = []
    values: list[float] = []
    with open(Path(path), "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != ANGULAR_HEADER:
            raise ParseError(f"expected header {ANGULAR_HEADER!r}, got {header!r}", line=1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            th, ph, db = _split_csv_line(line, 3, lineno)
            if not thetas or th != thetas[-1]:
                thetas.append(th)
            if len(thetas) == 1:
                phis.append(ph)
            values.append(_db_to_linear(db))
    if not values:
        raise ParseError("no data rows")
    t_n, p_n = len(thetas), len(phis)
    if t_n * p_n != len(values):
        raise ParseError(f"grid is ragged: {t_n} thetas x {p_n} phis != {len(values)} rows")
    theta_axis = np.asarray(thetas, dtype=np.float64)
    phi_axis = np.asarray(phis, dtype=np.float64)
    power = np.asarray(values, dtype=np.float64).reshape(t_n, p_n)
    return theta_axis, phi_axis, power


def read_distance_csv(path):
    """Reconstruct (r_axis, linear power) from a distance CSV."""
    rs: list[float] = []
    values: list[float] = []
    with open(Path(path), "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != DISTANCE_HEADER:
            raise ParseError(f"expected header {DISTANCE_HEADER!r}, got {header!r}", line=1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            r, db = _split_csv_line(line, 2, lineno)
            rs.append(r)
            values.append(_db_to_linear(db))
    if not values:
        raise ParseError("no data rows")
    return np.asarray(rs, dtype=np.float64), np.asarray(values, dtype=np.float64)
