"""Command-line orchestration and bit-stable report emission.

Every subcommand reads a schema-validated JSON config, runs the relevant
module, and writes ``<out>/report.json``. Reports are deterministic for a
fixed config and seed: keys are sorted, floats round-trip through repr, and
wall-clock timing goes to stderr instead of the report. Exit codes: 0 for
CERTIFIED/completed, 2 for NOT_CERTIFIED, 1 for input errors.
"""

import csv
import json
import math
import sys
import time
from pathlib import Path

import click
import jsonschema
import numpy as np

from . import __version__, schemas, svgplot
from .approx import power_map_samples, uniform_approx_test
from .balls import Ball, BallConfig, certify
from .errors import ConfigInvalid, DisjointnessViolated, PolyconvexError
from .hull import hull_scan
from .variety import sample_variety, variety_report


def _load_config(path, subcommand):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(raw, schemas.BY_SUBCOMMAND[subcommand])
    except jsonschema.ValidationError as exc:
        pointer = "/" + "/".join(str(p) for p in exc.absolute_path)
        raise ConfigInvalid(f"config invalid at {pointer}: {exc.message}", pointer=pointer) from exc
    return raw


def _to_complex(pair):
    return complex(pair[0], pair[1])


def _emit(report, out_dir, fmt):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    (out / "report.json").write_text(text + "\n")
    if fmt == "json":
        click.echo(text)
    return out


def _report(subcommand, config, seed, result):
    return {
        "tool": "polyconvex",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "result": result,
    }


def _common(func):
    func = click.option("--config", "config_path", required=True,
                        type=click.Path(), help="JSON config file")(func)
    func = click.option("--seed", type=int, default=None,
                        help="override the config seed")(func)
    func = click.option("--out", "out_dir", default="out", show_default=True,
                        help="output directory")(func)
    func = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                        default="text", show_default=True)(func)
    func = click.option("--svg", is_flag=True, help="emit SVG artifacts")(func)
    return func


@click.group()
@click.version_option(__version__)
def main():
    """Numerical polynomial-convexity certificates."""


def _run(subcommand, config_path, seed, handler):
    started = time.perf_counter()
    cfg = _load_config(config_path, subcommand)
    if seed is not None:
        cfg["seed"] = seed
    cfg.setdefault("seed", 0)
    code, report, artifacts = handler(cfg, Path(config_path).parent)
    click.echo(f"[{subcommand}] {time.perf_counter() - started:.2f}s", err=True)
    return code, report, artifacts


def _cli_body(subcommand, config_path, seed, out_dir, fmt, svg, handler):
    try:
        code, report, artifacts = _run(subcommand, config_path, seed, handler)
    except ConfigInvalid as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except PolyconvexError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)
    out = _emit(report, out_dir, fmt)
    for name, text in artifacts:
        if name.endswith(".svg") and not svg:
            continue
        svgplot.write_svg(text, out / name)
    if fmt == "text":
        _summary(subcommand, report)
    sys.exit(code)


def _summary(subcommand, report):
    result = report["result"]
    if subcommand == "certify-balls":
        click.echo(f"verdict: {result['verdict']}")
        if result.get("failure"):
            click.echo(f"failure: {result['failure']['check']}")
    elif subcommand == "hull-membership":
        for v in result["verdicts"]:
            click.echo(f"probe {v['probe']}: {v['status']} (rho={v['rho']:.6f})")
    elif subcommand == "variety-report":
        click.echo(f"exceptional points: {len(result['exceptional']['Z1']) + len(result['exceptional']['Z2'])}")
        click.echo(f"approx errors: {result['approx']['errors']}")
    elif subcommand == "approx-test":
        click.echo(f"errors: {result['errors']}")
    elif subcommand == "sample-variety":
        click.echo(f"points: {result['count']}, worst residual {result['max_residual']:.3e}")


@main.command("certify-balls")
@_common
def certify_balls(config_path, seed, out_dir, fmt, svg):
    """Kallin certificate for a disjoint closed-ball union."""

    def handler(cfg, _base):
        balls = [Ball(centre=[_to_complex(c) for c in b["centre"]], radius=b["radius"])
                 for b in cfg["balls"]]
        try:
            cert = certify(
                BallConfig(tuple(balls)),
                samples_per_ball=cfg.get("samples_per_ball", 20000),
                resolution=cfg.get("resolution", 256),
                seed=cfg["seed"],
            )
            result = cert.to_dict()
        except DisjointnessViolated as exc:
            result = {
                "verdict": "NOT_CERTIFIED",
                "failure": {"check": "DisjointnessViolated", "detail": str(exc)},
                "levels": [],
            }
        artifacts = []
        thetas = [rec["theta"] for lvl in result["levels"]
                  for rec in lvl.get("ball_checks", [])]
        if thetas:
            artifacts.append(("halfplanes.svg", svgplot.halfplanes_svg(thetas)))
        code = 0 if result["verdict"] == "CERTIFIED" else 2
        return code, _report("certify-balls", cfg, cfg["seed"], result), artifacts

    _cli_body("certify-balls", config_path, seed, out_dir, fmt, svg, handler)


def _read_complex_csv(path):
    rows = []
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    vals = [float(x) for x in row]
                except ValueError:
                    continue  # header
                rows.append(vals)
    except OSError as exc:
        raise ConfigInvalid(f"cannot read CSV {path}: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) or len(r) % 2 for r in rows):
        raise ConfigInvalid(f"CSV {path} must have 2n real columns")
    arr = np.asarray(rows)
    return arr[:, 0::2] + 1j * arr[:, 1::2]


@main.command("hull-membership")
@_common
@click.option("--degree", type=int, default=None, help="override config degree")
@click.option("--restarts", type=int, default=None)
def hull_membership(config_path, seed, out_dir, fmt, svg, degree, restarts):
    """Escape-polynomial search for probe points against sampled K."""

    def handler(cfg, base):
        if degree is not None:
            cfg["degree"] = degree
        if restarts is not None:
            cfg["restarts"] = restarts
        samples = _read_complex_csv(base / cfg["samples_csv"])
        probes = _read_complex_csv(base / cfg["probes_csv"])
        if samples.shape[1] != probes.shape[1]:
            raise ConfigInvalid("samples and probes must share a dimension")
        verdicts = hull_scan(
            samples, probes,
            degree=cfg.get("degree", 2),
            restarts=cfg.get("restarts", 5),
            iterations=cfg.get("iterations", 1500),
            seed=cfg["seed"],
        )
        result = {
            "verdicts": [
                dict(v.to_dict(), probe=[[float(p.real), float(p.imag)] for p in probe])
                for v, probe in zip(verdicts, probes)
            ]
        }
        return 0, _report("hull-membership", cfg, cfg["seed"], result), []

    _cli_body("hull-membership", config_path, seed, out_dir, fmt, svg, handler)


@main.command("variety-report")
@_common
def variety_report_cmd(config_path, seed, out_dir, fmt, svg):
    """Plurisubharmonic / totally-real certificates on q(w) = conj(p(z))."""

    def handler(cfg, _base):
        ball = cfg.get("ball", {"centre": [[0, 0], [0, 0]], "radius": 2.0})
        rep = variety_report(
            [_to_complex(c) for c in cfg["p"]],
            [_to_complex(c) for c in cfg["q"]],
            centre=tuple(_to_complex(c) for c in ball["centre"]),
            radius=ball["radius"],
            sample_count=cfg.get("sample_count", 200),
            degrees=tuple(cfg.get("degrees", [1, 2, 3, 4])),
            seed=cfg["seed"],
        )
        result = rep.to_dict()
        artifacts = [("error-curve.svg",
                      svgplot.error_curve_svg(result["approx"]["degrees"],
                                              result["approx"]["errors"]))]
        return 0, _report("variety-report", cfg, cfg["seed"], result), artifacts

    _cli_body("variety-report", config_path, seed, out_dir, fmt, svg, handler)


@main.command("approx-test")
@_common
def approx_test(config_path, seed, out_dir, fmt, svg):
    """Uniform approximation of conj(z) by the algebra of z^m and conj(z)^n."""

    def handler(cfg, _base):
        m, n = cfg["m"], cfg["n"]
        count = cfg.get("train_count", 600)
        pairs, z = power_map_samples(m, n, count=count, seed=cfg["seed"])
        held_pairs, held_z = power_map_samples(m, n, count=4 * count,
                                               seed=cfg["seed"] + 1, boundary=512)
        g = math.gcd(m, n)
        if g > 1:
            # negative control: keep +-rotated copies so the symmetry
            # obstruction is visible in the held-out sup
            rot = held_z * np.exp(2j * np.pi / g)
            held_z = np.concatenate([held_z, rot])
            held_pairs = np.stack([held_z ** m, np.conj(held_z) ** n], axis=1)
        rep = uniform_approx_test(
            pairs, np.conj(z), cfg["degrees"],
            held_out=(held_pairs, np.conj(held_z)), target="conj(z)",
        )
        result = dict(rep.to_dict(), m=m, n=n, gcd=g, dense_in_disk_algebra=(g == 1))
        artifacts = [("error-curve.svg",
                      svgplot.error_curve_svg(result["degrees"], result["errors"]))]
        return 0, _report("approx-test", cfg, cfg["seed"], result), artifacts

    _cli_body("approx-test", config_path, seed, out_dir, fmt, svg, handler)


@main.command("sample-variety")
@_common
def sample_variety_cmd(config_path, seed, out_dir, fmt, svg):
    """Seeded samples of S = {q(w) = conj(p(z))} over a z-disk."""

    def handler(cfg, _base):
        disk = cfg.get("disk", {"centre": [0, 0], "radius": 1.0})
        pts = sample_variety(
            [_to_complex(c) for c in cfg["p"]],
            [_to_complex(c) for c in cfg["q"]],
            centre=_to_complex(disk["centre"]),
            radius=disk["radius"],
            count=cfg.get("count", 100),
            seed=cfg["seed"],
        )
        result = {
            "count": len(pts),
            "max_residual": max((p.residual for p in pts), default=0.0),
            "points": [
                {"z": [p.z.real, p.z.imag], "w": [p.w.real, p.w.imag],
                 "residual": p.residual}
                for p in pts
            ],
        }
        artifacts = [("points.csv", points_csv_text(pts))]
        return 0, _report("sample-variety", cfg, cfg["seed"], result), artifacts

    _cli_body("sample-variety", config_path, seed, out_dir, fmt, svg, handler)


def points_csv_text(points) -> str:
    """CSV with columns z_re, z_im, w_re, w_im, residual."""
    lines = ["z_re,z_im,w_re,w_im,residual"]
    for p in points:
        lines.append(",".join([repr(p.z.real), repr(p.z.imag),
                               repr(p.w.real), repr(p.w.imag), repr(p.residual)]))
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
