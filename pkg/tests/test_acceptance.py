"""End-to-end checks, one per shipping criterion.

Each test is a single function so `pytest -v` prints one pass/fail line per
criterion. Two criteria fail as measured today; their asserts state the bound
and the message carries the observed numbers. The root causes are behavioral,
not bugs in the sweep code: beams aimed between lattice lines of the 2 degree
angular grid peak on a neighboring line (criterion 1), and depth of focus
tracks the aperture curvature rather than the radius to wavelength quotient
alone (criterion 4).
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import random_rotation, z_rotation

from spherebeam import (
    AngularSweepSpec,
    SphericalPoint,
    angular_metrics,
    angular_sweep,
    beam_response,
    build_geometry,
    channel_energy,
    conjugate_weights,
    distance_sweep,
    focus_metrics,
    geometry_from_fields,
    golden_spiral_saa,
    load_preset,
    los_channel,
    multi_focal_overlay,
    polyhedral_saa,
    ring_saa,
    rotate,
    rotate_point,
    spiral_curve_saa,
    upa,
)

GRID_STEP_RAD = math.pi / 180.0
POLE_EPS = 1e-12


def _run_preset_overlay(name, threads=1):
    scenario = load_preset(name)
    geometry = build_geometry(scenario)
    spec = AngularSweepSpec(
        theta_samples=scenario.theta_samples,
        phi_samples=scenario.phi_samples,
        eval_range_m=scenario.eval_range,
    )
    overlay = multi_focal_overlay(
        geometry, scenario.wavelength, scenario.focals, spec, threads=threads
    )
    return scenario, overlay


def test_criterion_1_fig4_saa_eight_beams_point_and_match():
    t0 = time.perf_counter()
    scenario, overlay = _run_preset_overlay("fig4_saa", threads=1)
    elapsed = time.perf_counter() - t0

    assert overlay.skipped == ()
    assert len(overlay.beams) == 8
    metrics = [angular_metrics(beam) for beam in overlay.beams]

    hpbw_theta = [m.hpbw_theta for m in metrics]
    ratio_theta = max(hpbw_theta) / min(hpbw_theta)
    assert ratio_theta <= 1.5, f"theta width max/min ratio {ratio_theta:.4f} exceeds 1.5"

    # beams straight along the axis report a full-turn azimuth width by
    # construction, so the azimuth comparison covers the six tilted beams
    tilted = [m for m, f in zip(metrics, scenario.focals) if 0.0 < f.theta < math.pi]
    hpbw_phi = [m.hpbw_phi for m in tilted]
    ratio_phi = max(hpbw_phi) / min(hpbw_phi)
    assert ratio_phi <= 1.5, f"phi width max/min ratio {ratio_phi:.4f} exceeds 1.5"

    assert elapsed < 10.0, f"eight 181x181 sweeps took {elapsed:.2f} s single-threaded"

    errors = [m.pointing_error_rad for m in metrics]
    worst = max(errors)
    detail = ", ".join(
        f"({f.theta:.4f},{f.phi:.4f})->{e:.6f}" for f, e in zip(scenario.focals, errors)
    )
    assert worst <= GRID_STEP_RAD, (
        f"pointing error must stay within one grid step ({GRID_STEP_RAD:.6f} rad) "
        f"but the worst beam misses by {worst:.6f} rad; per-beam (theta,phi)->error: {detail}. "
        f"The failing beams aim between lines of the 2 degree sampling lattice and "
        f"their strongest grid cell lands on a sidelobe row"
    )


def test_criterion_2_fig4_upa_rear_focals_skipped_and_beams_broaden():
    scenario, overlay = _run_preset_overlay("fig4_upa", threads=1)

    rear = {i for i, f in enumerate(scenario.focals) if f.theta > math.pi / 2.0}
    assert rear == {3, 4, 5, 7}
    skipped_idx = {scenario.focals.index(f) for f in overlay.skipped}
    assert skipped_idx == rear, f"skipped {sorted(skipped_idx)}, expected {sorted(rear)}"

    for beam in overlay.beams:
        mask = beam.theta_axis > math.pi / 2.0
        rear_cells = beam.power[mask, :]
        assert_array_equal(rear_cells, np.zeros_like(rear_cells))

    by_theta = {beam.focal.theta: angular_metrics(beam) for beam in overlay.beams}
    near_boresight = by_theta[math.pi / 6.0].hpbw_theta
    toward_horizon = by_theta[math.pi / 3.0].hpbw_theta
    assert toward_horizon > near_boresight, (
        f"HPBW_theta at theta=pi/3 ({math.degrees(toward_horizon):.3f} deg) should exceed "
        f"theta=pi/6 ({math.degrees(near_boresight):.3f} deg)"
    )


def test_criterion_3_fig5_focusing_sharpens_with_radius():
    focal = SphericalPoint(30.0, math.pi / 4.0, math.pi / 4.0)
    step = 95.0 / 959.0
    results = {}
    for radius in (0.5, 1.0, 2.0):
        g = golden_spiral_saa(100, radius)
        pattern = distance_sweep(g, 0.01, focal, 5.0, 100.0, 960, threads=1)
        results[radius] = focus_metrics(pattern)

    err = results[2.0].focal_error_m
    assert err <= step, f"R=2 focal error {err:.5f} m exceeds one range sample {step:.5f} m"

    dof = [results[r].depth_of_focus_m for r in (0.5, 1.0, 2.0)]
    assert dof[0] > dof[1] > dof[2], (
        f"depth of focus must shrink with radius, got {dof[0]:.4f}, {dof[1]:.4f}, {dof[2]:.4f} m"
    )


def test_criterion_4_matched_radius_wavelength_quotient():
    focal = SphericalPoint(30.0, math.pi / 4.0, math.pi / 4.0)
    pair = {}
    for radius, wavelength in ((2.0, 0.01), (1.0, 0.005)):
        g = golden_spiral_saa(100, radius)
        pattern = distance_sweep(g, wavelength, focal, 5.0, 100.0, 960, threads=1)
        pair[(radius, wavelength)] = focus_metrics(pattern).depth_of_focus_m

    a = pair[(2.0, 0.01)]
    b = pair[(1.0, 0.005)]
    gap = abs(a - b) / max(a, b)
    assert gap <= 0.25, (
        f"holding radius/wavelength at 200 should keep depth of focus within 25%, "
        f"got {a:.4f} m (R=2, wl=0.01) vs {b:.4f} m (R=1, wl=0.005), gap {gap:.1%}. "
        f"Depth of focus follows wavelength*focal_range^2/R^2, not the quotient alone"
    )


def _probe_set():
    thetas = np.linspace(0.15, math.pi - 0.15, 9)
    phis = np.linspace(0.0, 2.0 * math.pi, 9, endpoint=False)
    probes = [SphericalPoint(30.0, float(t), float(p)) for t in thetas for p in phis]
    probes.append(SphericalPoint(30.0, 0.0, 0.0))
    probes.append(SphericalPoint(30.0, math.pi, 0.0))
    return probes


def _normalized_responses(geometry, focal, probes, wavelength):
    h = los_channel(geometry, focal, wavelength)
    w = conjugate_weights(h)
    raw = np.array([beam_response(w, los_channel(geometry, p, wavelength)) for p in probes])
    return raw / raw.max()


def test_criterion_5_patterns_ride_with_rigid_rotations():
    rng = np.random.default_rng(2026)
    probes = _probe_set()

    saa = golden_spiral_saa(100, 0.5)
    saa_focal = SphericalPoint(30.0, math.pi / 6.0, math.pi / 6.0)
    base = _normalized_responses(saa, saa_focal, probes, 0.01)
    for _ in range(20):
        rot = random_rotation(rng)
        turned = _normalized_responses(
            rotate(saa, rot),
            rotate_point(saa_focal, rot),
            [rotate_point(p, rot) for p in probes],
            0.01,
        )
        assert_allclose(turned, base, rtol=1e-9, atol=1e-9)

    planar = upa(100, 0.005)
    upa_focal = SphericalPoint(30.0, math.pi / 3.0, math.pi / 3.0)
    front = [p for p in probes if p.theta < math.pi / 2.0]
    base_upa = _normalized_responses(planar, upa_focal, front, 0.01)
    for _ in range(20):
        rot = z_rotation(float(rng.uniform(0.0, 2.0 * math.pi)))
        turned = _normalized_responses(
            rotate(planar, rot),
            rotate_point(upa_focal, rot),
            [rotate_point(p, rot) for p in front],
            0.01,
        )
        assert_allclose(turned, base_upa, rtol=1e-9, atol=1e-9)


def test_criterion_6_conjugate_weights_are_the_matched_filter():
    rng = np.random.default_rng(606)
    for _ in range(50):
        n = int(rng.integers(30, 121))
        radius = float(rng.uniform(0.3, 2.0))
        wavelength = float(rng.uniform(0.005, 0.05))
        g = golden_spiral_saa(n, radius)
        target = SphericalPoint(
            float(rng.uniform(radius + 5.0, 60.0)),
            float(rng.uniform(0.0, math.pi)),
            float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        h = los_channel(g, target, wavelength)
        w = conjugate_weights(h)
        assert_allclose(beam_response(w, h), channel_energy(h), rtol=1e-9)
        for _ in range(10):
            probe = SphericalPoint(
                float(rng.uniform(radius + 5.0, 60.0)),
                float(rng.uniform(0.0, math.pi)),
                float(rng.uniform(0.0, 2.0 * math.pi)),
            )
            hp = los_channel(g, probe, wavelength)
            assert beam_response(w, hp) <= channel_energy(hp) * (1.0 + 1e-12)


def _random_geometry(rng, index):
    kind = index % 5
    if kind == 0:
        return golden_spiral_saa(int(rng.integers(20, 65)), float(rng.uniform(0.3, 1.0)))
    if kind == 1:
        return upa(int(rng.integers(4, 9)) ** 2, float(rng.uniform(0.003, 0.02)))
    if kind == 2:
        return ring_saa(int(rng.integers(3, 7)), "proportional", float(rng.uniform(0.3, 1.0)))
    if kind == 3:
        return polyhedral_saa(int(rng.integers(0, 2)), float(rng.uniform(0.3, 1.0)))
    return spiral_curve_saa(
        int(rng.integers(20, 65)), float(rng.uniform(2.0, 6.0)), float(rng.uniform(0.3, 1.0))
    )


def test_criterion_7_threaded_sweep_is_bitwise_direct_summation():
    rng = np.random.default_rng(707)
    for index in range(10):
        g = _random_geometry(rng, index)
        wavelength = float(rng.uniform(0.005, 0.05))
        theta_max = math.pi / 2.0 - 0.1 if g.radius_m is None else math.pi
        focal = SphericalPoint(
            30.0, float(rng.uniform(0.05, theta_max - 0.05)), float(rng.uniform(0.0, 2.0 * math.pi))
        )
        spec = AngularSweepSpec(theta_samples=31, phi_samples=31, eval_range_m=30.0)
        grid = angular_sweep(g, wavelength, focal, spec, threads=4)

        h = los_channel(g, focal, wavelength)
        w = conjugate_weights(h)
        raw = np.empty((31, 31))
        for i, th in enumerate(grid.theta_axis):
            for j, ph in enumerate(grid.phi_axis):
                probe = SphericalPoint(30.0, float(th), float(ph))
                raw[i, j] = beam_response(w, los_channel(g, probe, wavelength))
        assert np.array_equal(grid.power, raw / raw.max()), f"scenario {index} diverged"

        ranged = distance_sweep(g, wavelength, focal, 5.0, 60.0, 97, threads=4)
        again = distance_sweep(g, wavelength, focal, 5.0, 60.0, 97, threads=1)
        assert np.array_equal(ranged.power, again.power)


MIN_CHORD_N100_R05 = 0.1545186866014574


def test_criterion_8_geometry_invariants_hold():
    cases = [
        golden_spiral_saa(100, 0.5),
        golden_spiral_saa(257, 7.0),
        ring_saa(5, "proportional", 2.0),
        polyhedral_saa(2, 7.0),
        spiral_curve_saa(64, 5.0, 1.5),
    ]
    for g in cases:
        radii = np.sqrt(np.sum(g.positions * g.positions, axis=1))
        tol = 1e-12 * max(1.0, g.radius_m)
        assert np.max(np.abs(radii - g.radius_m)) <= tol

    for n in (100, 101):
        z = golden_spiral_saa(n, 0.5).positions[:, 2]
        assert_array_equal(z, -z[::-1])

    for s in (0, 1, 2, 3):
        assert polyhedral_saa(s, 1.0).n == 10 * 4**s + 2

    d = 0.005
    g = upa(100, d)
    marks = (np.arange(10) - 4.5) * d
    expected = np.stack(
        [
            np.repeat(marks, 10),
            np.tile(marks, 10),
            np.zeros(100),
        ],
        axis=1,
    )
    assert_array_equal(g.positions, expected)

    pts = golden_spiral_saa(100, 0.5).positions
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    np.fill_diagonal(dist, np.inf)
    assert_allclose(float(dist.min()), MIN_CHORD_N100_R05, rtol=1e-13)
