"""Uniform approximation experiments on sampled compacts in C^2.

For each total degree, fits the target over the monomials z^j w^k by
column-scaled least squares sharpened with Lawson reweighting (iteratively
reweighted least squares converging toward the minimax fit), then scores the
sup-norm residual on a held-out set. The reported error at degree d is the
best achieved by any fitted polynomial of total degree <= d, so the curve is
non-increasing by construction while every value is realized by an explicit
polynomial.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lstsq

from .errors import IllConditioned
from .rng import make_rng

OVERSAMPLE = 3
_LAWSON_ITERS = 40


@dataclass
class ApproxReport:
    degrees: list
    errors: list  # monotone envelope: best sup error at total degree <= d
    raw_errors: list  # per-degree fit, before the envelope
    target: str = "target"

    def to_dict(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "errors": [float(e) for e in self.errors],
            "raw_errors": [float(e) for e in self.raw_errors],
            "target": self.target,
        }


def _pairs(points) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    if pts.shape[1] != 2:
        raise ValueError("points must be pairs (z, w)")
    return pts


def _design(pts, degree):
    z, w = pts[:, 0], pts[:, 1]
    cols = [z ** j * w ** k for j in range(degree + 1) for k in range(degree + 1 - j)]
    return np.stack(cols, axis=1)


def _lawson_fit(a, f):
    """Minimax-leaning fit: Lawson-weighted, column-scaled least squares."""
    weights = np.ones(len(f))
    best = (np.inf, None)
    for _ in range(_LAWSON_ITERS):
        sw = np.sqrt(weights)[:, None]
        aw = a * sw
        scale = np.linalg.norm(aw, axis=0)
        scale[scale == 0] = 1.0
        coeffs, _, _, _ = lstsq(aw / scale, f * sw[:, 0], lapack_driver="gelsy")
        coeffs = coeffs / scale
        resid = np.abs(a @ coeffs - f)
        worst = float(resid.max())
        if not np.isfinite(worst):
            raise IllConditioned("least-squares fit produced non-finite residuals")
        if worst < best[0]:
            best = (worst, coeffs)
        weights = weights * (resid + 1e-14)
        weights = weights / weights.sum()
    return best[1]


def uniform_approx_test(points, values, degrees, held_out=None, seed=0,
                        target: str = "target") -> ApproxReport:
    """Sup-norm approximation errors of ``values`` over nested monomial bases.

    ``held_out`` is (points, values); when omitted, a seeded 4x split of the
    input is carved out for honest sup-norm residuals.
    """
    pts = _pairs(points)
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if vals.size != pts.shape[0]:
        raise ValueError("values must match points")
    degrees = sorted(int(d) for d in degrees)
    if held_out is None:
        rng = make_rng(seed, stream=53)
        perm = rng.permutation(pts.shape[0])
        cut = max(1, pts.shape[0] // 5)
        hold_idx, train_idx = perm[:cut], perm[cut:]
        held_pts, held_vals = pts[hold_idx], vals[hold_idx]
        pts, vals = pts[train_idx], vals[train_idx]
    else:
        held_pts, held_vals = _pairs(held_out[0]), np.asarray(held_out[1], dtype=np.complex128).ravel()

    raw, envelope = [], []
    best = np.inf
    for d in degrees:
        basis_size = (d + 1) * (d + 2) // 2
        if pts.shape[0] < OVERSAMPLE * basis_size:
            raise IllConditioned(
                f"need >= {OVERSAMPLE * basis_size} samples at degree {d}", degree=d
            )
        a = _design(pts, d)
        coeffs = _lawson_fit(a, vals)
        err = float(np.abs(_design(held_pts, d) @ coeffs - held_vals).max())
        raw.append(err)
        best = min(best, err)
        envelope.append(best)
    return ApproxReport(degrees=degrees, errors=envelope, raw_errors=raw, target=target)


def power_map_samples(m, n, count=600, seed=0, boundary=200):
    """Disk samples mapped by z -> (z^m, conj(z)^n) plus boundary rings.

    Returns (pairs, z) with the pre-image kept for building targets; the
    boundary rings keep the sup-norm fit honest near |z| = 1.
    """
    rng = make_rng(seed, stream=61)
    u = np.sqrt(rng.uniform(size=count))
    ang = rng.uniform(0.0, 2 * np.pi, size=count)
    z = u * np.exp(1j * ang)
    if boundary:
        th = np.linspace(0.0, 2 * np.pi, boundary, endpoint=False)
        z = np.concatenate([z, np.exp(1j * th), 0.95 * np.exp(1j * th)])
    pairs = np.stack([z ** m, np.conj(z) ** n], axis=1)
    return pairs, z
