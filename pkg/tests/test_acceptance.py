"""End-to-end acceptance checks, one per shipped guarantee.

Each test prints a single PASS/FAIL line with its headline numbers; the
assertions hold the same conditions, so a FAIL line always comes with a
pytest failure.
"""

import json
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from polyconvex.approx import power_map_samples, uniform_approx_test
from polyconvex.balls import (
    Ball,
    BallConfig,
    certify,
    halfplane_bound,
    kallin_poly,
    sample_ball,
)
from polyconvex.hull import HullQuery, escape_search, evaluate_witness
from polyconvex.planar import planar_hull
from polyconvex.rng import make_rng
from polyconvex.upoly import poly_derivative
from polyconvex.variety import (
    exceptional_set,
    levi_fd_check,
    mixed_term_numeric,
    psi,
    sample_variety,
)

# committed pilot threshold for the (m, n) = (2, 3) approximation experiment:
# pilot envelope reached 0.4223 by degree 7 (seeds 0/1), committed bound 0.5
PILOT_THRESHOLD_23 = 0.5
PILOT_MAX_DEGREE_23 = 7


def _line(num, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")


def test_criterion_1_sharp_lower_bound():
    started = time.perf_counter()
    rng_cfg = np.random.default_rng(20260823)
    worst_rel = 0.0
    violations = 0
    for k in range(100):
        n = int(rng_cfg.integers(2, 4))
        while True:
            b = rng_cfg.normal(size=n) * 3.0
            r = float(rng_cfg.uniform(0.05, 1.0))
            if np.linalg.norm(b) - r > 1.05:
                break
        bound = halfplane_bound(b, r)
        z = sample_ball(b.astype(complex), r, 100_000, make_rng(k), on_sphere=True)
        mc = float(kallin_poly(z).real.min())
        if mc < bound - 1e-9:
            violations += 1
        worst_rel = max(worst_rel, (mc - bound) / bound)
    elapsed = time.perf_counter() - started
    ok = violations == 0 and worst_rel <= 0.02 and elapsed <= 10.0
    _line(1, ok, f"MC min >= (|b|-r)^2 on 100 balls, worst gap "
                 f"{worst_rel:.4f} <= 0.02, {elapsed:.1f}s <= 10s")
    assert violations == 0
    assert worst_rel <= 0.02
    assert elapsed <= 10.0


def _random_admissible_config(rng):
    """Disjoint balls with centres e^{i theta} b, one theta per config."""
    n = int(rng.integers(2, 4))
    count = int(rng.integers(2, 7))
    theta = float(rng.choice([0.0, rng.uniform(0.0, np.pi / 2)]))
    direction = rng.normal(size=n)
    direction /= np.linalg.norm(direction)
    balls = []
    pos = 0.0
    for _ in range(count):
        radius = float(rng.uniform(0.5, 1.0))
        centre = direction * pos + rng.normal(size=n) * 0.1
        balls.append(Ball(np.exp(1j * theta) * centre, radius))
        pos += 4.0 + rng.uniform(0.0, 2.0)
    return BallConfig(tuple(balls)), theta


def test_criterion_2_certify_random_configs():
    started = time.perf_counter()
    rng = np.random.default_rng(7)
    certified = 0
    margins = []
    saw_real = saw_rotated = False
    for k in range(20):
        cfg, theta = _random_admissible_config(rng)
        saw_real |= theta == 0.0
        saw_rotated |= theta > 0.0
        cert = certify(cfg, samples_per_ball=8000, resolution=256, seed=k)
        if cert.verdict == "CERTIFIED":
            certified += 1
        margins += [lvl["planar"]["hull_margin"] for lvl in cert.levels
                    if lvl.get("planar")]
    elapsed = time.perf_counter() - started
    ok = (certified == 20 and saw_real and saw_rotated
          and min(margins) > 0 and elapsed <= 60.0)
    _line(2, ok, f"{certified}/20 configs CERTIFIED, min hull margin "
                 f"{min(margins):.3f} > 0, {elapsed:.1f}s <= 60s")
    assert certified == 20
    assert saw_real and saw_rotated
    assert min(margins) > 0
    assert elapsed <= 60.0


def test_criterion_3_negative_hypothesis_control(tmp_path):
    cfg = {
        "balls": [
            {"centre": [[1, 0], [0, 1]], "radius": 1.0},
            {"centre": [[6, 0], [0, 0]], "radius": 1.0},
        ],
        "samples_per_ball": 500,
        "seed": 0,
    }
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    res = subprocess.run(
        [sys.executable, "-m", "polyconvex.cli", "certify-balls",
         "--config", "cfg.json"],
        cwd=tmp_path, capture_output=True, text=True,
    )
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    result = report["result"]
    ok = (res.returncode == 2
          and result["verdict"] == "NOT_CERTIFIED"
          and result["failure"]["check"] == "NotInPencil"
          and any("never claims" in note for note in result["notes"]))
    _line(3, ok, f"centre (1, i) -> NotInPencil, NOT_CERTIFIED, exit "
                 f"{res.returncode} == 2, no non-convexity claim")
    assert res.returncode == 2
    assert result["verdict"] == "NOT_CERTIFIED"
    assert result["failure"]["check"] == "NotInPencil"
    assert any("never claims" in note for note in result["notes"])


def test_criterion_4_two_circles():
    started = time.perf_counter()
    th = np.linspace(0, 2 * np.pi, 240, endpoint=False)
    real_circle = np.stack([np.cos(th).astype(complex),
                            np.sin(th).astype(complex)], axis=1)
    complex_circle = np.stack([np.exp(1j * th),
                               np.zeros_like(th, dtype=complex)], axis=1)
    probe = np.array([0j, 0j])

    verdict = escape_search(HullQuery(probe=probe, samples=real_circle,
                                      degree=2, seed=0))
    at_probe, on_samples = evaluate_witness(verdict, probe, real_circle)
    escaped_ok = (verdict.status == "ESCAPED" and verdict.rho <= 0.05
                  and abs(at_probe - 1.0) <= 1e-12
                  and abs(on_samples - verdict.rho) <= 1e-12)

    rhos = []
    for d in range(1, 7):
        v = escape_search(HullQuery(probe=probe, samples=complex_circle,
                                    degree=d, seed=0))
        rhos.append((v.status, v.rho))
    trapped_ok = all(s == "NO_ESCAPE_AT_DEGREE" and r >= 0.99 for s, r in rhos)
    elapsed = time.perf_counter() - started
    ok = escaped_ok and trapped_ok and elapsed <= 30.0
    _line(4, ok, f"R^2 circle: ESCAPED rho={verdict.rho:.2e} <= 0.05, replay "
                 f"exact; C x {{0}} circle: NO_ESCAPE d=1..6 min rho "
                 f"{min(r for _, r in rhos):.4f} >= 0.99, {elapsed:.1f}s <= 30s")
    assert escaped_ok
    assert trapped_ok
    assert elapsed <= 30.0


def test_criterion_5_levi_identity():
    rng = np.random.default_rng(11)
    worst_rel = 0.0
    worst_cross = 0.0
    for _ in range(100):
        dp = int(rng.integers(1, 6))
        dq = int(rng.integers(1, 6))
        # modest coefficient and point scales keep the O(h^2) truncation
        # term of the 5-point stencil under the absolute tolerance
        p = 0.5 * (rng.normal(size=dp + 1) + 1j * rng.normal(size=dp + 1))
        q = 0.5 * (rng.normal(size=dq + 1) + 1j * rng.normal(size=dq + 1))
        z = complex(*rng.normal(size=2)) * 0.3
        w = complex(*rng.normal(size=2)) * 0.3
        d = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        scale = max(abs(d[0]), abs(d[1]))
        d = (d[0] / scale, d[1] / scale)
        _, _, rel = levi_fd_check(p, q, z, w, d, h=1e-4)
        worst_rel = max(worst_rel, rel)
        worst_cross = max(worst_cross, abs(mixed_term_numeric(p, q, z, w, h=1e-4)))
    ok = worst_rel <= 1e-4 and worst_cross <= 1e-6
    _line(5, ok, f"Levi FD worst relative error {worst_rel:.2e} <= 1e-4, "
                 f"worst cross term {worst_cross:.2e} <= 1e-6 over 100 draws")
    assert worst_rel <= 1e-4
    assert worst_cross <= 1e-6


def test_criterion_6_determinant_identity():
    rng = np.random.default_rng(13)
    checked = 0
    worst = 0.0
    for pair in range(10):
        dp = int(rng.integers(2, 5))
        dq = int(rng.integers(2, 5))
        p = rng.normal(size=dp + 1) + 1j * rng.normal(size=dp + 1)
        q = rng.normal(size=dq + 1) + 1j * rng.normal(size=dq + 1)
        pts = sample_variety(p, q, count=max(100 // dq + 1, 34), seed=pair)
        for v in pts[:100]:
            dpv = np.conj(poly_derivative(p, v.z))
            dqv = np.conj(poly_derivative(q, v.w))
            a = np.array([[0.5 * dpv, -0.5 * dqv], [-0.5j * dpv, -0.5j * dqv]])
            det = abs(np.linalg.det(a))
            closed = abs(dpv) * abs(dqv) / 2.0
            worst = max(worst, abs(det - closed) / max(1.0, closed))
            checked += 1
    ok = checked >= 1000 and worst <= 1e-12
    _line(6, ok, f"|det A| = |p'||q'|/2 within {worst:.2e} <= 1e-12 at "
                 f"{checked} variety points across 10 pairs")
    assert checked >= 1000
    assert worst <= 1e-12


def test_criterion_7_exceptional_set():
    exc = exceptional_set([0, 0, 1], [0, 0, 0, 1])  # p = z^2, q = w^3
    pts = exc.points
    exact_ok = (len(pts) == 1 and abs(pts[0].z) <= 1e-6 and abs(pts[0].w) <= 1e-6)

    rng = np.random.default_rng(17)
    bounds_ok = True
    for pair in range(10):
        dp = int(rng.integers(2, 6))
        dq = int(rng.integers(2, 6))
        p = rng.normal(size=dp + 1) + 1j * rng.normal(size=dp + 1)
        q = rng.normal(size=dq + 1) + 1j * rng.normal(size=dq + 1)
        e = exceptional_set(p, q, seed=pair)
        bounds_ok &= len(e.z1) <= (dp - 1) * dq and len(e.z2) <= (dq - 1) * dp
    ok = exact_ok and bounds_ok
    _line(7, ok, "p=z^2, q=w^3 gives Z = {(0,0)} exactly; cardinality bounds "
                 "hold on 10 random pairs")
    assert exact_ok
    assert bounds_ok


def test_criterion_8_approximation():
    # p = z, q = w: conj(z) = w on S, exact at degree 1
    pts = sample_variety([0, 1], [0, 1], count=150, seed=0)
    rep = uniform_approx_test([(v.z, v.w) for v in pts],
                              np.conj([v.z for v in pts]), [1], seed=0)
    exact_err = rep.errors[0]

    # gcd(2, 3) = 1: envelope is non-increasing and beats the pilot threshold
    pairs, z = power_map_samples(2, 3, count=900, seed=0)
    held_pairs, held_z = power_map_samples(2, 3, count=1800, seed=1, boundary=512)
    rep23 = uniform_approx_test(pairs, np.conj(z),
                                range(1, PILOT_MAX_DEGREE_23 + 1),
                                held_out=(held_pairs, np.conj(held_z)))
    mono_ok = all(a >= b for a, b in zip(rep23.errors, rep23.errors[1:]))
    thresh_ok = rep23.errors[-1] <= PILOT_THRESHOLD_23

    # gcd(2, 2) = 2: the z -> -z symmetry obstruction keeps the error up
    pairs2, z2 = power_map_samples(2, 2, count=600, seed=0)
    sym_z = np.concatenate([z2, -z2])
    sym_pairs = np.stack([sym_z ** 2, np.conj(sym_z) ** 2], axis=1)
    rep22 = uniform_approx_test(pairs2, np.conj(z2), [1, 2, 3, 4],
                                held_out=(sym_pairs, np.conj(sym_z)))
    # any algebra element is even in z, conj(z) is odd: sup error over a
    # symmetric held-out set is at least max |z| over it
    floor = 0.95 * float(np.abs(sym_z).max())
    obstruction_ok = all(e >= floor for e in rep22.errors)

    ok = exact_err <= 1e-10 and mono_ok and thresh_ok and obstruction_ok
    _line(8, ok, f"p=z,q=w degree-1 error {exact_err:.1e} <= 1e-10; (2,3) "
                 f"envelope non-increasing, final {rep23.errors[-1]:.3f} <= "
                 f"{PILOT_THRESHOLD_23}; (2,2) errors >= {floor:.2f} at all degrees")
    assert exact_err <= 1e-10
    assert mono_ok
    assert thresh_ok
    assert obstruction_ok


def test_criterion_9_planar_hull_engine():
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 360, endpoint=False))
    hull = planar_hull(circle, resolution=512)
    area_rel = abs(hull.area() - np.pi) / np.pi

    mono_fail = idem_fail = 0
    bounds = (-5, 5, -5, 5)
    for seed in range(20):
        rng = np.random.default_rng(seed)
        pts = rng.normal(size=30) + 1j * rng.normal(size=30)
        sub = pts[: int(rng.integers(5, 25))]
        small = planar_hull(sub, resolution=128, bounds=bounds, dilation=2)
        big = planar_hull(pts, resolution=128, bounds=bounds, dilation=2)
        if np.any(small.mask & ~big.mask):
            mono_fail += 1
        again = planar_hull(big.cell_centres(), resolution=128, bounds=bounds,
                            dilation=2)
        if not np.array_equal(big.mask, again.mask):
            idem_fail += 1
    ok = area_rel <= 0.05 and mono_fail == 0 and idem_fail == 0
    _line(9, ok, f"circle hull area within {area_rel:.3f} <= 0.05 of pi; "
                 f"monotone 20/20, idempotent 20/20")
    assert area_rel <= 0.05
    assert mono_fail == 0
    assert idem_fail == 0


def test_criterion_10_byte_determinism(tmp_path):
    th = np.linspace(0, 2 * np.pi, 60, endpoint=False)
    rows = ["x_re,x_im,y_re,y_im"]
    rows += [f"{float(np.cos(t))!r},0.0,{float(np.sin(t))!r},0.0" for t in th]
    (tmp_path / "samples.csv").write_text("\n".join(rows) + "\n")
    (tmp_path / "probes.csv").write_text("0.0,0.0,0.0,0.0\n")

    configs = {
        "certify-balls": {
            "balls": [{"centre": [[0, 0]], "radius": 1.0},
                      {"centre": [[4, 0]], "radius": 1.0}],
            "samples_per_ball": 1000, "resolution": 64, "seed": 0,
        },
        "hull-membership": {
            "samples_csv": "samples.csv", "probes_csv": "probes.csv",
            "degree": 2, "iterations": 300, "restarts": 2, "seed": 0,
        },
        "variety-report": {
            "p": [[0, 0], [0, 0], [1, 0]], "q": [[0, 0], [1, 0]],
            "sample_count": 120, "degrees": [1, 2], "seed": 0,
        },
        "approx-test": {"m": 2, "n": 3, "degrees": [1, 2], "train_count": 150,
                        "seed": 0},
        "sample-variety": {"p": [[0, 0], [0, 0], [1, 0]],
                           "q": [[0, 0], [1, 0]], "count": 20, "seed": 0},
    }
    stable = []
    for sub, cfg in configs.items():
        path = tmp_path / f"{sub}.json"
        path.write_text(json.dumps(cfg))
        blobs = []
        for out in ("o1", "o2"):
            res = subprocess.run(
                [sys.executable, "-m", "polyconvex.cli", sub,
                 "--config", path.name, "--out", out],
                cwd=tmp_path, capture_output=True, text=True,
            )
            assert res.returncode == 0, (sub, res.stderr)
            blobs.append((tmp_path / out / "report.json").read_bytes())
        stable.append(blobs[0] == blobs[1])
    ok = all(stable)
    _line(10, ok, f"{sum(stable)}/5 subcommands byte-reproduce report.json "
                  "on re-run")
    assert all(stable)
