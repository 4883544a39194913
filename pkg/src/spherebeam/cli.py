"""Command line entry point.

Subcommands: ``geometry`` emits a layout CSV, ``pattern angle`` and
``pattern distance`` run sweeps, ``metrics`` recomputes figures from an
emitted pattern CSV, ``run`` executes a preset or scenario file, and
``preset list`` names the shipped configurations. Emitting commands all
require ``--out``. Numeric flags are passed through the scenario parser,
so angle-valued flags accept pi fractions like ``2pi/3``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileio
from .errors import SpherebeamError, ValidationError
from .metrics import angular_metrics, focus_metrics
from .scenario import (
    geometry_from_fields,
    load_preset,
    parse_focal_text,
    parse_scenario,
    preset_names,
    run_scenario,
)
from .sweep import AngularPatternGrid, DistancePattern


def _add_geometry_flags(parser: argparse.ArgumentParser, as_text: bool) -> None:
    """Geometry flags; string-typed when they feed the scenario parser."""
    num = str if as_text else float
    cnt = str if as_text else int
    parser.add_argument("--kind", required=True, help="array layout family")
    parser.add_argument("--n", type=cnt, help="element count")
    parser.add_argument("--radius", type=num, help="sphere radius in meters")
    parser.add_argument("--spacing", type=num, help="planar lattice pitch in meters")
    parser.add_argument("--n-rings", dest="n_rings", type=cnt, help="latitude ring count")
    parser.add_argument("--ring-policy", dest="ring_policy", help="'proportional' or 'fixed:<count>'")
    parser.add_argument("--subdivision", type=cnt, help="icosahedron subdivision level")
    parser.add_argument("--turns", type=num, help="spiral curve turn count")


def _add_beam_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--wavelength", required=True, help="carrier wavelength in meters")
    parser.add_argument(
        "--focal",
        action="append",
        required=True,
        metavar="R,THETA,PHI",
        help="focal point triple, repeatable; angles accept pi fractions",
    )
    parser.add_argument("--normalization", help="grid_max (default) or focal")
    parser.add_argument("--threads", type=int, help="sweep worker threads (default: all cores)")
    parser.add_argument("--out", required=True, help="output directory")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherebeam",
        description="Spherical and planar antenna array beam pattern simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("geometry", help="emit an element layout CSV")
    _add_geometry_flags(g, as_text=False)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=_cmd_geometry)

    pat = sub.add_parser("pattern", help="run a beam pattern sweep")
    pat_sub = pat.add_subparsers(dest="pattern_kind", required=True)

    pa = pat_sub.add_parser("angle", help="theta x phi sweep at a fixed probe range")
    _add_geometry_flags(pa, as_text=True)
    _add_beam_flags(pa)
    pa.add_argument("--theta-samples", dest="theta_samples", help="theta sample count")
    pa.add_argument("--phi-samples", dest="phi_samples", help="phi sample count")
    pa.add_argument("--eval-range", dest="eval_range", help="probe range in meters")
    pa.set_defaults(func=_cmd_pattern_angle)

    pd = pat_sub.add_parser("distance", help="range sweep along the focal direction")
    _add_geometry_flags(pd, as_text=True)
    _add_beam_flags(pd)
    pd.add_argument("--r-min", dest="r_min", help="sweep window start in meters")
    pd.add_argument("--r-max", dest="r_max", help="sweep window end in meters")
    pd.add_argument("--r-samples", dest="r_samples", help="range sample count")
    pd.set_defaults(func=_cmd_pattern_distance)

    m = sub.add_parser("metrics", help="recompute metrics from an emitted pattern CSV")
    m.add_argument("pattern", help="path to a pattern CSV")
    m.add_argument(
        "--focal",
        metavar="R,THETA,PHI",
        help="focal point override when no sidecar is present",
    )
    m.set_defaults(func=_cmd_metrics)

    r = sub.add_parser("run", help="run a preset or scenario file end to end")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="name of a shipped preset")
    src.add_argument("--scenario", help="path to a scenario file")
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--threads", type=int, help="sweep worker threads (default: all cores)")
    r.set_defaults(func=_cmd_run)

    p = sub.add_parser("preset", help="inspect shipped presets")
    p_sub = p.add_subparsers(dest="preset_action", required=True)
    pl = p_sub.add_parser("list", help="list preset names")
    pl.set_defaults(func=_cmd_preset_list)

    return parser


def _cmd_geometry(args) -> int:
    geometry = geometry_from_fields(
        args.kind,
        n=args.n,
        radius=args.radius,
        spacing=args.spacing,
        n_rings=args.n_rings,
        ring_policy=_ring_policy_value(args.ring_policy),
        subdivision=args.subdivision,
        turns=args.turns,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "geometry.csv"
    fileio.write_geometry_csv(path, geometry)
    print(f"wrote {path} ({geometry.n} elements)")
    return 0


def _ring_policy_value(text):
    if text is None:
        return None
    if text == "proportional":
        return "proportional"
    if text.startswith("fixed:"):
        try:
            return int(text[len("fixed:") :])
        except ValueError:
            pass
    raise ValidationError(
        f"ring_policy must be 'proportional' or 'fixed:<count>', got {text!r}",
        field="ring_policy",
    )


def _document_from_args(args, sweep: str, extra_keys) -> str:
    """Rebuild a scenario document from flags so validation has one path."""
    lines = []
    keys = ("kind", "n", "radius", "spacing", "n_rings", "ring_policy", "subdivision", "turns", "wavelength")
    for key in keys:
        value = getattr(args, key)
        if value is not None:
            lines.append(f"{key} = {value}")
    for focal in args.focal:
        lines.append(f"focal = {focal}")
    lines.append(f"sweep = {sweep}")
    for key in extra_keys:
        value = getattr(args, key)
        if value is not None:
            lines.append(f"{key} = {value}")
    if args.normalization is not None:
        lines.append(f"normalization = {args.normalization}")
    return "\n".join(lines) + "\n"


def _cmd_pattern_angle(args) -> int:
    doc = _document_from_args(args, "angle", ("theta_samples", "phi_samples", "eval_range"))
    scenario = parse_scenario(doc)
    return run_scenario(scenario, out_dir=args.out, threads=args.threads)


def _cmd_pattern_distance(args) -> int:
    doc = _document_from_args(args, "distance", ("r_min", "r_max", "r_samples"))
    scenario = parse_scenario(doc)
    return run_scenario(scenario, out_dir=args.out, threads=args.threads)


def _resolve_focal(args, meta: dict) -> "SphericalPoint":
    if args.focal is not None:
        return parse_focal_text(args.focal)
    if "focal" in meta:
        return parse_focal_text(meta["focal"])
    raise ValidationError(
        "no focal point available; pass --focal or keep the .meta sidecar next to the CSV",
        field="focal",
    )


def _cmd_metrics(args) -> int:
    path = Path(args.pattern)
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
    sidecar = path.with_suffix(".meta")
    meta = fileio.read_meta(sidecar) if sidecar.exists() else {}
    focal = _resolve_focal(args, meta)

    if header == fileio.ANGULAR_HEADER:
        theta_axis, phi_axis, power = fileio.read_angular_csv(path)
        grid = AngularPatternGrid(
            theta_axis=theta_axis,
            phi_axis=phi_axis,
            power=power,
            focal=focal,
            eval_range_m=float(meta.get("eval_range", focal.r)),
            normalization=meta.get("normalization", "grid_max"),
        )
        m = angular_metrics(grid)
        print(f"peak_theta = {fileio.fmt(m.peak_theta)}")
        print(f"peak_phi = {fileio.fmt(m.peak_phi)}")
        print(f"pointing_err = {fileio.fmt(m.pointing_error_rad)}")
        print(f"hpbw_theta = {fileio.fmt(m.hpbw_theta)}")
        print(f"hpbw_phi = {fileio.fmt(m.hpbw_phi)}")
        print(f"psl_db = {fileio.fmt(m.peak_sidelobe_db)}")
    elif header == fileio.DISTANCE_HEADER:
        r_axis, power = fileio.read_distance_csv(path)
        pattern = DistancePattern(
            r_axis=r_axis,
            power=power,
            direction=(focal.theta, focal.phi),
            focal_range_m=focal.r,
        )
        m = focus_metrics(pattern)
        print(f"peak_r_m = {fileio.fmt(m.peak_r_m)}")
        print(f"depth_of_focus_m = {fileio.fmt(m.depth_of_focus_m)}")
        print(f"focal_error_m = {fileio.fmt(m.focal_error_m)}")
        print(f"one_sided = {int(m.one_sided)}")
    else:
        raise ValidationError(f"unrecognized pattern CSV header {header!r}")
    return 0


def _cmd_run(args) -> int:
    if args.preset is not None:
        scenario = load_preset(args.preset)
    else:
        with open(args.scenario, "r", encoding="utf-8") as fh:
            scenario = parse_scenario(fh.read())
    return run_scenario(scenario, out_dir=args.out, threads=args.threads)


def _cmd_preset_list(args) -> int:
    for name in preset_names():
        print(name)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpherebeamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
