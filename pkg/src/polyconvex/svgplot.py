"""Deterministic SVG emission: fixed viewport, no timestamps, stable floats."""

from .errors import IoFailure

VIEW = 600  # px, square viewport


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _header() -> str:
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">\n'
        f'<rect width="{VIEW}" height="{VIEW}" fill="white"/>\n'
    )


def _to_px(x, y, xmin, xmax, ymin, ymax):
    sx = VIEW / (xmax - xmin)
    sy = VIEW / (ymax - ymin)
    return (x - xmin) * sx, VIEW - (y - ymin) * sy


def _unit_circle(xmin, xmax, ymin, ymax) -> str:
    cx, cy = _to_px(0.0, 0.0, xmin, xmax, ymin, ymax)
    r = VIEW / (xmax - xmin)
    return (
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
        'fill="none" stroke="crimson" stroke-width="1.5"/>\n'
    )


def grid_mask_svg(mask, unit_circle: bool = True) -> str:
    """Filled cells of a GridMask, optional unit-circle overlay."""
    ny, nx = mask.shape
    half = mask.cell / 2.0
    xmin = mask.origin[0] - half
    ymin = mask.origin[1] - half
    xmax = xmin + nx * mask.cell
    ymax = ymin + ny * mask.cell
    span = max(xmax - xmin, ymax - ymin, 2.5)
    xmid, ymid = (xmin + xmax) / 2.0, (ymin + ymax) / 2.0
    xmin, xmax = xmid - span / 2, xmid + span / 2
    ymin, ymax = ymid - span / 2, ymid + span / 2
    parts = [_header()]
    side = VIEW / span * mask.cell
    for c in sorted(mask.cell_centres(), key=lambda v: (v.real, v.imag)):
        px, py = _to_px(c.real - half, c.imag + half, xmin, xmax, ymin, ymax)
        parts.append(
            f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(side)}" '
            f'height="{_fmt(side)}" fill="steelblue"/>\n'
        )
    if unit_circle:
        parts.append(_unit_circle(xmin, xmax, ymin, ymax))
    parts.append("</svg>\n")
    return "".join(parts)


def halfplanes_svg(thetas, span: float = 6.0) -> str:
    """Half-planes H_theta as shaded bands over a centred box, with the
    closed unit disk overlaid."""
    import numpy as np

    xmin = ymin = -span / 2
    xmax = ymax = span / 2
    parts = [_header()]
    res = 120
    cell = span / res
    side = VIEW / res
    xs = np.linspace(xmin + cell / 2, xmax - cell / 2, res)
    gx, gy = np.meshgrid(xs, xs)
    covered = np.zeros(gx.shape, dtype=bool)
    for theta in sorted(float(t) for t in np.atleast_1d(thetas)):
        covered |= gx * np.cos(2 * theta) + gy * np.sin(2 * theta) > 1
    for iy, ix in zip(*np.nonzero(covered)):
        px, py = _to_px(gx[iy, ix] - cell / 2, gy[iy, ix] + cell / 2, xmin, xmax, ymin, ymax)
        parts.append(
            f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(side)}" '
            f'height="{_fmt(side)}" fill="goldenrod"/>\n'
        )
    parts.append(_unit_circle(xmin, xmax, ymin, ymax))
    parts.append("</svg>\n")
    return "".join(parts)


def error_curve_svg(degrees, errors) -> str:
    """Error-vs-degree polyline on fixed axes (log-free, clamped to [0, max])."""
    parts = [_header()]
    margin = 60.0
    parts.append(
        f'<line x1="{margin}" y1="{VIEW - margin}" x2="{VIEW - margin}" '
        f'y2="{VIEW - margin}" stroke="black"/>\n'
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{VIEW - margin}" stroke="black"/>\n'
    )
    degrees = list(degrees)
    errors = [float(e) for e in errors]
    if degrees and errors:
        dmax = max(degrees)
        dmin = min(degrees)
        emax = max(max(errors), 1e-16)
        pts = []
        for d, e in zip(degrees, errors):
            fx = 0.0 if dmax == dmin else (d - dmin) / (dmax - dmin)
            px = margin + fx * (VIEW - 2 * margin)
            py = VIEW - margin - (e / emax) * (VIEW - 2 * margin)
            pts.append(f"{_fmt(px)},{_fmt(py)}")
        parts.append(
            '<polyline fill="none" stroke="steelblue" stroke-width="2" '
            f'points="{" ".join(pts)}"/>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)


def write_svg(text: str, path) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
