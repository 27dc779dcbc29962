"""Certificates and experiments on S = {(z, w) : q(w) = conj(p(z))} in C^2.

Psi(z, w) = |conj(p(z)) - q(w)|^2 is a nonnegative plurisubharmonic function
with S as its zero set; its Levi form is |p'(z)|^2 |u|^2 + |q'(w)|^2 |v|^2
with vanishing cross terms. Off the finite exceptional set where p' q'
vanishes, S is locally contained in totally-real submanifolds, detected by
the 2x2 determinant test |det A| = |p'(z)| |q'(w)| / 2.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import Degenerate, NotOnVariety
from .rng import make_rng
from .upoly import UnivariatePolynomial, as_poly, poly_derivative, poly_eval, roots

TAU_VARIETY = 1e-8
TAU_DET = 1e-8
TAU_DEDUP = 1e-6
TAU_EXCL = 1e-3


@dataclass(frozen=True)
class VarietyPoint:
    z: complex
    w: complex
    residual: float


@dataclass(frozen=True)
class ExceptionalSet:
    z1: tuple  # points with p'(z) = 0
    z2: tuple  # points with q'(w) = 0

    @property
    def points(self) -> tuple:
        merged = list(self.z1)
        for pt in self.z2:
            if all(
                abs(pt.z - other.z) + abs(pt.w - other.w) > TAU_DEDUP for other in merged
            ):
                merged.append(pt)
        return tuple(merged)


def psi(p, q, z, w):
    """Psi(z, w) = |conj(p(z)) - q(w)|^2; zero exactly on S."""
    val = np.conj(poly_eval(p, z)) - poly_eval(q, w)
    return np.abs(val) ** 2


def levi_form(p, q, z, w, direction) -> float:
    """Levi form of Psi at (z, w) along the complex direction (u, v)."""
    u, v = direction
    return float(
        np.abs(poly_derivative(p, z)) ** 2 * abs(u) ** 2
        + np.abs(poly_derivative(q, w)) ** 2 * abs(v) ** 2
    )


def _levi_numeric(p, q, z, w, direction, h):
    u, v = direction
    vals = 0.0
    for mult in (1.0, -1.0, 1.0j, -1.0j):
        vals += psi(p, q, z + h * mult * u, w + h * mult * v)
    return (vals - 4.0 * psi(p, q, z, w)) / (4.0 * h * h)


def levi_fd_check(p, q, z, w, direction, h: float = 1e-4):
    """(analytic, 5-point finite difference, relative error)."""
    if not h > 0:
        raise ValueError("step must be positive")
    analytic = levi_form(p, q, z, w, direction)
    numeric = float(_levi_numeric(p, q, z, w, direction, h))
    denom = max(abs(analytic), abs(numeric), 1e-30)
    return analytic, numeric, abs(analytic - numeric) / denom


def mixed_term_numeric(p, q, z, w, h: float = 1e-4) -> complex:
    """Finite-difference value of the cross term d^2 Psi / dz dwbar.

    Recovered by polarization from the numeric Levi values along (1,0),
    (0,1), (1,1) and (1,i).
    """
    l10 = _levi_numeric(p, q, z, w, (1, 0), h)
    l01 = _levi_numeric(p, q, z, w, (0, 1), h)
    l11 = _levi_numeric(p, q, z, w, (1, 1), h)
    l1i = _levi_numeric(p, q, z, w, (1, 1j), h)
    return complex((l11 - l10 - l01) / 2.0, (l1i - l10 - l01) / 2.0)


def totally_real_test(p, q, z0, w0, tau_det: float = TAU_DET,
                      tau_variety: float = TAU_VARIETY):
    """Determinant test for total reality of S at an on-variety point.

    Builds A = [[d rho_1/d zbar, d rho_1/d wbar], [d rho_2/d zbar,
    d rho_2/d wbar]] for rho_1 = Re(p(z) - q(w)), rho_2 = Im(-p(z) - q(w)),
    and compares |det A| with the closed form |p'(z0)| |q'(w0)| / 2.
    Returns (totally_real, |det A|).
    """
    if float(psi(p, q, z0, w0)) > tau_variety:
        raise NotOnVariety(
            f"Psi = {float(psi(p, q, z0, w0)):.3e} exceeds tolerance at the point"
        )
    dp = np.conj(poly_derivative(p, z0))
    dq = np.conj(poly_derivative(q, w0))
    a = np.array([[0.5 * dp, -0.5 * dq], [-0.5j * dp, -0.5j * dq]])
    det = np.linalg.det(a)
    closed_form = abs(dp) * abs(dq) / 2.0
    assert abs(abs(det) - closed_form) <= 1e-12 * max(1.0, closed_form)
    return bool(abs(det) > tau_det), float(abs(det))


def _fiber_roots(poly, target, seed):
    """Roots w of poly(w) - target."""
    return roots(as_poly(poly).shifted(-target), seed=seed)


def exceptional_set(p, q, seed: int = 0) -> ExceptionalSet:
    """Z1 u Z2: on-variety points where p' or q' vanishes."""
    p, q = as_poly(p), as_poly(q)
    if p.degree < 1 or q.degree < 1:
        raise Degenerate("p and q must be non-constant")

    def build(crit_poly, other, swap):
        pts = []
        if crit_poly.degree >= 1:
            for k, x0 in enumerate(roots(crit_poly, seed=seed)):
                target = np.conj(poly_eval(p if not swap else q, x0))
                for y in _fiber_roots(other, target, seed=seed + 17 * (k + 1)):
                    z, w = (x0, y) if not swap else (y, x0)
                    pts.append(
                        VarietyPoint(z=complex(z), w=complex(w),
                                     residual=float(np.sqrt(psi(p, q, z, w))))
                    )
        return _dedup(pts)

    z1 = build(p.derivative(), q, swap=False)
    z2 = build(q.derivative(), p, swap=True)
    return ExceptionalSet(z1=tuple(z1), z2=tuple(z2))


def _dedup(points, tol: float = TAU_DEDUP):
    out = []
    for pt in points:
        if all(abs(pt.z - o.z) + abs(pt.w - o.w) > tol for o in out):
            out.append(pt)
    return out


def sample_variety(p, q, centre=0.0, radius=1.0, count=100, seed=0,
                   tau_variety: float = TAU_VARIETY):
    """Seeded variety samples over a z-disk: all fibre roots per random z."""
    if count < 1:
        raise ValueError("count must be >= 1")
    p, q = as_poly(p), as_poly(q)
    if q.degree < 1:
        raise Degenerate("q must be non-constant to solve fibres")
    rng = make_rng(seed, stream=23)
    u = np.sqrt(rng.uniform(size=count))
    ang = rng.uniform(0.0, 2 * np.pi, size=count)
    zs = complex(centre) + radius * u * np.exp(1j * ang)
    points = []
    for k, z in enumerate(zs):
        target = complex(np.conj(poly_eval(p, z)))
        try:
            ws = _fiber_roots(q, target, seed=seed + 31 * (k + 1))
        except Degenerate:
            continue  # fibre solve failed for this z; skip and report fewer points
        for w in ws:
            res = float(np.sqrt(psi(p, q, z, w)))
            if res <= tau_variety:
                points.append(VarietyPoint(z=complex(z), w=complex(w), residual=res))
    return points


@dataclass
class VarietyReport:
    p: list
    q: list
    exceptional: ExceptionalSet
    levi_checks: list = field(default_factory=list)
    totally_real: list = field(default_factory=list)
    approx: dict | None = None
    hull_checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def pt(v):
            return {"z": [v.z.real, v.z.imag], "w": [v.w.real, v.w.imag],
                    "residual": v.residual}

        return {
            "p": self.p,
            "q": self.q,
            "exceptional": {
                "Z1": [pt(v) for v in self.exceptional.z1],
                "Z2": [pt(v) for v in self.exceptional.z2],
            },
            "levi_checks": self.levi_checks,
            "totally_real": self.totally_real,
            "approx": self.approx,
            "hull_checks": self.hull_checks,
        }


def variety_report(p, q, centre=(0.0, 0.0), radius: float = 2.0,
                   sample_count: int = 200, degrees=(1, 2, 3, 4),
                   hull_probes: int = 3, hull_degree: int = 4, seed: int = 0,
                   tau_excl: float = TAU_EXCL) -> VarietyReport:
    """Bundle all variety certificates for S intersected with a ball.

    Composes: the exceptional set, Levi finite-difference spot checks,
    the totally-real determinant test away from the exceptional set,
    a uniform-approximation experiment, and hull-oracle probes off S.
    """
    from .approx import uniform_approx_test  # local import to avoid a cycle
    from .hull import HullQuery, escape_search

    p, q = as_poly(p), as_poly(q)
    if p.degree < 1 or q.degree < 1:
        raise Degenerate("p and q must be non-constant")
    zc, wc = complex(centre[0]), complex(centre[1])
    exc = exceptional_set(p, q, seed=seed)

    rng = make_rng(seed, stream=41)
    levi_checks = []
    for _ in range(10):
        z = complex(*rng.normal(size=2))
        w = complex(*rng.normal(size=2))
        direction = (complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        analytic, numeric, rel = levi_fd_check(p, q, z, w, direction)
        cross = mixed_term_numeric(p, q, z, w)
        levi_checks.append(
            {"analytic": analytic, "numeric": numeric, "relative_error": rel,
             "cross_term_abs": abs(cross)}
        )

    pts = sample_variety(p, q, centre=zc, radius=radius, count=sample_count, seed=seed)
    in_ball = [
        v for v in pts
        if abs(v.z - zc) ** 2 + abs(v.w - wc) ** 2 <= radius ** 2
    ]
    tr_records = []
    for v in in_ball:
        near_exc = any(
            abs(v.z - e.z) <= tau_excl and abs(v.w - e.w) <= tau_excl
            for e in exc.points
        )
        if near_exc:
            continue
        ok, det = totally_real_test(p, q, v.z, v.w)
        tr_records.append({"z": [v.z.real, v.z.imag], "w": [v.w.real, v.w.imag],
                           "totally_real": ok, "abs_det": det})

    train = [(v.z, v.w) for v in in_ball]
    target = np.conj([v.z for v in in_ball])
    held = sample_variety(p, q, centre=zc, radius=radius, count=4 * sample_count,
                          seed=seed + 1)
    held_in = [
        v for v in held
        if abs(v.z - zc) ** 2 + abs(v.w - wc) ** 2 <= radius ** 2
    ]
    approx = uniform_approx_test(
        train, target, degrees,
        held_out=([(v.z, v.w) for v in held_in], np.conj([v.z for v in held_in])),
    )

    hull_checks = []
    for k, v in enumerate(in_ball[:hull_probes]):
        probe = np.array([v.z, v.w + 0.75], dtype=np.complex128)
        verdict = escape_search(
            HullQuery(probe=probe, samples=np.array(train), degree=hull_degree,
                      seed=seed + 101 + k)
        )
        hull_checks.append({"probe": [float(probe[0].real), float(probe[0].imag),
                                      float(probe[1].real), float(probe[1].imag)],
                            "status": verdict.status, "rho": verdict.rho})

    return VarietyReport(
        p=[[c.real, c.imag] for c in p.coefficients],
        q=[[c.real, c.imag] for c in q.coefficients],
        exceptional=exc,
        levi_checks=levi_checks,
        totally_real=tr_records,
        approx=approx.to_dict(),
        hull_checks=hull_checks,
    )
