"""Pure-Python (numpy/scipy) fallbacks for the compiled kernels."""

import numpy as np
from scipy import ndimage

_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def flood_from_border(blocked):
    blocked = np.asarray(blocked, dtype=bool)
    free = ~blocked
    seed = np.zeros_like(free)
    seed[0, :] = free[0, :]
    seed[-1, :] = free[-1, :]
    seed[:, 0] = free[:, 0]
    seed[:, -1] = free[:, -1]
    return ndimage.binary_propagation(seed, mask=free, structure=_CROSS)


def aberth_iterate(coeffs, dcoeffs, roots, max_iter, tol):
    c = np.asarray(coeffs, dtype=np.complex128)
    dc = np.asarray(dcoeffs, dtype=np.complex128)
    x = np.array(roots, dtype=np.complex128, copy=True)
    m = x.size
    for it in range(max_iter):
        pv = np.polyval(c[::-1], x)
        dpv = np.polyval(dc[::-1], x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = dpv - pv * s
        delta = np.where(denom == 0, 0.0, pv / np.where(denom == 0, 1.0, denom))
        x -= delta
        if np.max(np.abs(delta) / (1.0 + np.abs(x))) < tol:
            return x, it + 1
    return x, max_iter
