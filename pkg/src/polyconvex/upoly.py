"""Univariate complex polynomials: evaluation, derivative, all roots.

Coefficients are stored in ascending degree. Roots come from simultaneous
Aberth-Ehrlich iteration started at seeded random points inside the Cauchy
root bound, then polished by a few Newton steps.
"""

import numpy as np

from ._kernels import aberth_iterate
from .errors import Degenerate
from .rng import make_rng

TAU_ROOT = 1e-10
_MAX_ITER = 200


class UnivariatePolynomial:
    def __init__(self, coefficients):
        c = np.atleast_1d(np.asarray(coefficients, dtype=np.complex128))
        # strip exactly-zero leading coefficients
        nz = np.nonzero(c)[0]
        self.coefficients = c[: nz[-1] + 1] if nz.size else c[:1]

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, z):
        return poly_eval(self, z)

    def derivative(self) -> "UnivariatePolynomial":
        c = self.coefficients
        if c.size == 1:
            return UnivariatePolynomial([0.0])
        return UnivariatePolynomial(c[1:] * np.arange(1, c.size))

    def shifted(self, constant) -> "UnivariatePolynomial":
        c = self.coefficients.copy()
        c[0] += constant
        return UnivariatePolynomial(c)


def as_poly(p) -> UnivariatePolynomial:
    return p if isinstance(p, UnivariatePolynomial) else UnivariatePolynomial(p)


def poly_eval(p, z):
    """Horner evaluation, vectorized over z."""
    c = as_poly(p).coefficients
    z = np.asarray(z, dtype=np.complex128)
    out = np.full(z.shape, c[-1], dtype=np.complex128)
    for k in range(c.size - 2, -1, -1):
        out = out * z + c[k]
    return out if out.shape else complex(out)


def poly_derivative(p, z):
    return poly_eval(as_poly(p).derivative(), z)


def roots(p, seed: int = 0, max_iter: int = _MAX_ITER, tau_root: float = TAU_ROOT) -> np.ndarray:
    """All degree-many roots, with multiplicity."""
    p = as_poly(p)
    c = p.coefficients
    if p.degree < 1:
        raise Degenerate("cannot take roots of a constant polynomial")
    # factor out roots at the origin
    lead_zeros = 0
    while c[lead_zeros] == 0:
        lead_zeros += 1
    core = c[lead_zeros:]
    deg = core.size - 1
    found = [0.0 + 0.0j] * lead_zeros
    if deg >= 1:
        monic = core / core[-1]
        bound = 1.0 + float(np.abs(monic[:-1]).max(initial=0.0))
        rng = make_rng(seed, stream=11)
        u = rng.uniform(size=deg)
        ang = rng.uniform(0.0, 2 * np.pi, size=deg)
        init = bound * np.sqrt(u) * np.exp(1j * ang)
        dcoeffs = monic[1:] * np.arange(1, monic.size)
        x, _ = aberth_iterate(monic, dcoeffs, init, max_iter, 1e-14)
        # Newton polish
        dpoly = UnivariatePolynomial(dcoeffs)
        mpoly = UnivariatePolynomial(monic)
        for _ in range(3):
            pv = poly_eval(mpoly, x)
            dv = poly_eval(dpoly, x)
            step = np.where(dv == 0, 0.0, pv / np.where(dv == 0, 1.0, dv))
            x = x - step
        scale = float(np.abs(monic).sum())
        resid = np.abs(poly_eval(mpoly, x)) / (scale * np.maximum(1.0, np.abs(x)) ** deg)
        if float(resid.max()) > tau_root:
            raise Degenerate(
                f"root refinement failed: worst scaled residual {float(resid.max()):.3e}"
            )
        found.extend(x.tolist())
    out = np.asarray(found, dtype=np.complex128)
    out = _centroid_clusters(out)
    # deterministic order for reproducible reports
    return out[np.lexsort((out.imag, out.real))]


def _centroid_clusters(x: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Replace clusters of nearly coincident roots by their centroid.

    Aberth scatters a multiplicity-m root symmetrically around the true
    value; averaging the cluster recovers it to far better accuracy.
    """
    x = x.copy()
    used = np.zeros(x.size, dtype=bool)
    for i in range(x.size):
        if used[i]:
            continue
        near = np.abs(x - x[i]) <= tol * max(1.0, abs(x[i]))
        near &= ~used | (np.arange(x.size) == i)
        if near.sum() > 1:
            x[near] = x[near].mean()
        used |= near
    return x
