"""Grid geometry of planar compacts.

The one-variable hull of a compact K in C is K together with the bounded
components of its complement. On a grid this is: occupy the cells meeting K
(conservatively thickened so sampled curves are connected), flood-fill the
complement from the border, and keep everything the flood never reaches.
A final erosion undoes the thickening, which makes the construction a
morphological closing plus hole fill: monotone and idempotent in tests.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ._kernels import flood_from_border
from .errors import DegenerateBox, ThetaOutOfRange

TOL_ANGLE = 1e-9
DEFAULT_RESOLUTION = 512
_MAX_DILATION = 8


@dataclass(frozen=True)
class GridMask:
    """Boolean occupancy over a padded uniform grid.

    ``origin`` is the centre of cell (row 0, col 0); ``cell`` the spacing.
    """

    origin: tuple
    cell: float
    mask: np.ndarray

    @property
    def shape(self):
        return self.mask.shape

    def cell_centres(self) -> np.ndarray:
        """Complex centres of the occupied cells."""
        iy, ix = np.nonzero(self.mask)
        return (self.origin[0] + ix * self.cell) + 1j * (self.origin[1] + iy * self.cell)

    def area(self) -> float:
        return float(self.mask.sum()) * self.cell ** 2

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y"])
            for c in self.cell_centres():
                writer.writerow([repr(float(c.real)), repr(float(c.imag))])


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise DegenerateBox("no sample points")
    if not np.all(np.isfinite(pts.view(np.float64))):
        raise DegenerateBox("sample points must be finite")
    return pts


def _auto_dilation(pts: np.ndarray, cell: float) -> int:
    """Cells needed to bridge consecutive samples of a curve."""
    if pts.size < 2:
        return 1
    d = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(d, np.inf)
    gap = float(np.median(d.min(axis=1))) if pts.size > 1 else 0.0
    return int(min(_MAX_DILATION, max(1, math.ceil(gap / (2 * cell)))))


def planar_hull(points, resolution: int = DEFAULT_RESOLUTION, bounds=None, dilation=None) -> GridMask:
    """Grid approximation of the polynomial hull of a planar sample cloud.

    ``bounds=(xmin, xmax, ymin, ymax)`` pins the grid (useful for comparing
    masks across sample sets); ``dilation`` pins the thickening radius.
    """
    if resolution < 32:
        raise ValueError("resolution must be >= 32")
    pts = _as_points(points)
    if bounds is None:
        xmin, xmax = float(pts.real.min()), float(pts.real.max())
        ymin, ymax = float(pts.imag.min()), float(pts.imag.max())
    else:
        xmin, xmax, ymin, ymax = map(float, bounds)
    extent = max(xmax - xmin, ymax - ymin)
    if extent == 0.0:
        # all points coincide: single-cell mask
        return GridMask(origin=(xmin, ymin), cell=1.0 / resolution, mask=np.ones((1, 1), dtype=bool))
    cell = extent / resolution
    if dilation is None:
        dilation = _auto_dilation(np.unique(pts), cell)
    pad = dilation + 4
    nx = int(math.ceil((xmax - xmin) / cell)) + 1 + 2 * pad
    ny = int(math.ceil((ymax - ymin) / cell)) + 1 + 2 * pad
    origin = (xmin - pad * cell, ymin - pad * cell)
    ix = np.clip(np.round((pts.real - origin[0]) / cell).astype(int), 0, nx - 1)
    iy = np.clip(np.round((pts.imag - origin[1]) / cell).astype(int), 0, ny - 1)
    occ = np.zeros((ny, nx), dtype=bool)
    occ[iy, ix] = True
    struct = np.ones((2 * dilation + 1, 2 * dilation + 1), dtype=bool)
    thick = ndimage.binary_dilation(occ, structure=struct)
    reached = flood_from_border(thick)
    filled = thick | ~reached
    hull = ndimage.binary_erosion(filled, structure=struct)
    return GridMask(origin=origin, cell=cell, mask=hull)


def _check_thetas(thetas, tol=TOL_ANGLE):
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if th.size == 0:
        raise ThetaOutOfRange("empty half-plane family")
    if np.any(th < -tol) or np.any(th > np.pi / 2 + tol):
        bad = th[(th < -tol) | (th > np.pi / 2 + tol)][0]
        raise ThetaOutOfRange(f"theta = {bad} outside [0, pi/2]")
    return th


def in_halfplane(w, theta) -> np.ndarray:
    """Membership in H_theta = {u+iv : u cos 2theta + v sin 2theta > 1}."""
    w = np.asarray(w, dtype=np.complex128)
    return w.real * np.cos(2 * theta) + w.imag * np.sin(2 * theta) > 1


def halfplane_union_misses_disk(thetas, resolution: int = 256) -> bool:
    """The union of tangent half-planes H_theta avoids the closed unit disk.

    Analytic: the boundary line of each H_theta is at distance exactly 1 from
    the origin, so the open half-plane beyond it misses the disk. A grid of
    disk points cross-validates.
    """
    th = _check_thetas(thetas)
    # distance from origin to {u cos + v sin = 1} is 1/|(cos, sin)| = 1
    normals = np.hypot(np.cos(2 * th), np.sin(2 * th))
    assert np.allclose(normals, 1.0, atol=1e-12)
    xs = np.linspace(-1.0, 1.0, resolution)
    gx, gy = np.meshgrid(xs, xs)
    w = (gx + 1j * gy).ravel()
    w = w[np.abs(w) <= 1.0]
    for theta in th:
        if np.any(in_halfplane(w, theta)):
            return False  # unreachable for valid thetas; kept as cross-check
    return True


def complement_connected(thetas, resolution: int = 256) -> bool:
    """Connectivity of C minus the union of half-planes, on a side-8 box.

    For thetas in [0, pi/2] the strip {-1 <= u <= 1, v <= 0} avoids every
    H_theta, so the complement is connected; the grid check validates that.
    """
    th = _check_thetas(thetas)
    xs = np.linspace(-4.0, 4.0, resolution)
    gx, gy = np.meshgrid(xs, xs)
    w = gx + 1j * gy
    blocked = np.zeros(w.shape, dtype=bool)
    for theta in th:
        blocked |= in_halfplane(w, theta)
    reached = flood_from_border(blocked)
    free = ~blocked
    return bool(np.array_equal(reached & free, free))


def hull_disjoint_from_disk(points, resolution: int = DEFAULT_RESOLUTION, dilation=None):
    """Whether the grid hull of ``points`` misses the closed unit disk.

    Returns (verdict, margin): margin is the least distance from a hull cell
    to the disk, shrunk by half a cell diagonal to stay conservative.
    """
    hull = planar_hull(points, resolution=resolution, dilation=dilation)
    centres = hull.cell_centres()
    margin = float(np.abs(centres).min() - 1.0 - hull.cell * math.sqrt(2) / 2)
    return margin > 0.0, margin
