# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: border flood fill and Aberth-Ehrlich iteration."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def flood_from_border(blocked):
    """Cells reachable from the grid border through non-blocked cells.

    4-connected flood fill. Returns a boolean array of the same shape.
    """
    cdef cnp.uint8_t[:, ::1] blk = np.ascontiguousarray(blocked, dtype=np.uint8)
    cdef Py_ssize_t ny = blk.shape[0]
    cdef Py_ssize_t nx = blk.shape[1]
    out = np.zeros((ny, nx), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] reached = out
    stack_arr = np.empty(ny * nx, dtype=np.intp)
    cdef Py_ssize_t[::1] stack = stack_arr
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i, j, cur, ci, cj

    for j in range(nx):
        if not blk[0, j] and not reached[0, j]:
            reached[0, j] = 1
            stack[top] = j
            top += 1
        if not blk[ny - 1, j] and not reached[ny - 1, j]:
            reached[ny - 1, j] = 1
            stack[top] = (ny - 1) * nx + j
            top += 1
    for i in range(ny):
        if not blk[i, 0] and not reached[i, 0]:
            reached[i, 0] = 1
            stack[top] = i * nx
            top += 1
        if not blk[i, nx - 1] and not reached[i, nx - 1]:
            reached[i, nx - 1] = 1
            stack[top] = i * nx + nx - 1
            top += 1

    while top > 0:
        top -= 1
        cur = stack[top]
        ci = cur // nx
        cj = cur % nx
        if ci > 0 and not blk[ci - 1, cj] and not reached[ci - 1, cj]:
            reached[ci - 1, cj] = 1
            stack[top] = cur - nx
            top += 1
        if ci < ny - 1 and not blk[ci + 1, cj] and not reached[ci + 1, cj]:
            reached[ci + 1, cj] = 1
            stack[top] = cur + nx
            top += 1
        if cj > 0 and not blk[ci, cj - 1] and not reached[ci, cj - 1]:
            reached[ci, cj - 1] = 1
            stack[top] = cur - 1
            top += 1
        if cj < nx - 1 and not blk[ci, cj + 1] and not reached[ci, cj + 1]:
            reached[ci, cj + 1] = 1
            stack[top] = cur + 1
            top += 1

    return out.astype(bool)


def aberth_iterate(coeffs, dcoeffs, roots, int max_iter, double tol):
    """Simultaneous (Jacobi-style) Aberth-Ehrlich refinement.

    ``coeffs``/``dcoeffs`` are ascending-degree complex coefficients of the
    polynomial and its derivative; ``roots`` holds the initial guesses and is
    not modified. Returns (refined roots, iterations used).
    """
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[::1] dc = np.ascontiguousarray(dcoeffs, dtype=np.complex128)
    x_arr = np.array(roots, dtype=np.complex128, copy=True)
    cdef double complex[::1] x = x_arr
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t nc = c.shape[0]
    cdef Py_ssize_t ndc = dc.shape[0]
    delta_arr = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] delta = delta_arr
    cdef Py_ssize_t it, i, j, k
    cdef double complex pv, dpv, s, xi, denom
    cdef double maxstep, step

    for it in range(max_iter):
        maxstep = 0.0
        for i in range(m):
            xi = x[i]
            pv = c[nc - 1]
            for k in range(nc - 2, -1, -1):
                pv = pv * xi + c[k]
            dpv = dc[ndc - 1]
            for k in range(ndc - 2, -1, -1):
                dpv = dpv * xi + dc[k]
            s = 0
            for j in range(m):
                if j != i:
                    s = s + 1.0 / (xi - x[j])
            denom = dpv - pv * s
            if denom == 0:
                delta[i] = 0
            else:
                delta[i] = pv / denom
            step = abs(delta[i]) / (1.0 + abs(xi))
            if step > maxstep:
                maxstep = step
        for i in range(m):
            x[i] = x[i] - delta[i]
        if maxstep < tol:
            return x_arr, it + 1
    return x_arr, max_iter
