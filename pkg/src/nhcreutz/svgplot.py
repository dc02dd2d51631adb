"""Static SVG emitters: parameter-grid heatmaps and complex-plane
spectrum scatters. Presentation only; data values are embedded as drawn."""

import math

import numpy as np

_W, _H = 640, 560
_ML, _MR, _MT, _MB = 70, 30, 30, 60  # plot margins

_NAN_GRAY = "#b0b0b0"
_NEG = (33, 62, 219)
_MID = (245, 245, 245)
_POS = (200, 28, 28)


def _lerp(c0, c1, t):
    return tuple(round(a + (b - a) * t) for a, b in zip(c0, c1))


def _color(v, vmin, vmax):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return _NAN_GRAY
    if vmax <= vmin:
        t = 0.5
    else:
        t = (v - vmin) / (vmax - vmin)
    t = min(1.0, max(0.0, t))
    rgb = _lerp(_NEG, _MID, 2.0 * t) if t < 0.5 else _lerp(_MID, _POS, 2.0 * t - 1.0)
    return "#%02x%02x%02x" % rgb


def _fmt(x):
    return repr(float(x))


def heatmap(t0_vals, gbar_vals, values, label, tbar, g0, cmd=None):
    """SVG heatmap of values[i_gbar][i_t0] over the (t0, gbar) grid with
    the four exceptional lines overdrawn; None/NaN cells are gray."""
    t0_vals = np.asarray(t0_vals, dtype=float)
    gbar_vals = np.asarray(gbar_vals, dtype=float)
    nx, ny = len(t0_vals), len(gbar_vals)
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    finite = [v for row in values for v in row
              if v is not None and not math.isnan(v)]
    vmin = min(finite) if finite else 0.0
    vmax = max(finite) if finite else 1.0
    x0, x1 = float(t0_vals[0]), float(t0_vals[-1])
    y0, y1 = float(gbar_vals[0]), float(gbar_vals[-1])

    def px(t0):
        return _ML + pw * (t0 - x0) / (x1 - x0)

    def py(gbar):
        return _MT + ph * (y1 - gbar) / (y1 - y0)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">']
    if cmd:
        out.append(f"<!-- cmd: {cmd} -->")
    out.append(f"<!-- value: {label}, range [{_fmt(vmin)}, {_fmt(vmax)}] -->")
    out.append(f'<clipPath id="plot"><rect x="{_ML}" y="{_MT}" '
               f'width="{pw}" height="{ph}"/></clipPath>')
    # cell rectangles centered on grid nodes
    cw, ch = pw / nx, ph / ny
    out.append('<g clip-path="url(#plot)">')
    for iy in range(ny):
        for ix in range(nx):
            c = _color(values[iy][ix], vmin, vmax)
            x = px(t0_vals[ix]) - cw / 2.0
            y = py(gbar_vals[iy]) - ch / 2.0
            out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw:.2f}" '
                       f'height="{ch:.2f}" fill="{c}"/>')
    # exceptional lines: gbar = -g0 +- (tbar + t0) and gbar = g0 +- (tbar - t0)
    for sign in (1.0, -1.0):
        for (a, b) in ((-g0 + sign * tbar, sign), (g0 + sign * tbar, -sign)):
            out.append(f'<polyline fill="none" stroke="black" '
                       f'stroke-width="1.2" points="'
                       f'{px(x0):.2f},{py(a + b * x0):.2f} '
                       f'{px(x1):.2f},{py(a + b * x1):.2f}"/>')
    out.append("</g>")
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="black"/>')
    out.append(f'<text x="{_ML + pw / 2:.0f}" y="{_H - 18}" '
               f'text-anchor="middle" font-size="14">t0</text>')
    out.append(f'<text x="18" y="{_MT + ph / 2:.0f}" text-anchor="middle" '
               f'font-size="14" transform="rotate(-90 18 {_MT + ph / 2:.0f})">'
               f'gbar</text>')
    for t, anchor in ((x0, "start"), (x1, "end")):
        out.append(f'<text x="{px(t):.0f}" y="{_H - 40}" '
                   f'text-anchor="{anchor}" font-size="12">{_fmt(t)}</text>')
    for gv in (y0, y1):
        out.append(f'<text x="{_ML - 6}" y="{py(gv) + 4:.0f}" '
                   f'text-anchor="end" font-size="12">{_fmt(gv)}</text>')
    out.append(f'<text x="{_ML}" y="20" font-size="14">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def scatter(sets, cmd=None):
    """SVG complex-plane scatter; sets is a list of (name, eigenvalues).
    The first set is drawn as dots, the second as crosses."""
    pts = np.concatenate([np.asarray(e, dtype=complex).ravel()
                          for _, e in sets]) if sets else np.zeros(0, complex)
    if pts.size:
        xr = (float(pts.real.min()), float(pts.real.max()))
        yr = (float(pts.imag.min()), float(pts.imag.max()))
    else:
        xr = yr = (-1.0, 1.0)
    padx = 0.05 * (xr[1] - xr[0]) or 1.0
    pady = 0.05 * (yr[1] - yr[0]) or 1.0
    x0, x1 = xr[0] - padx, xr[1] + padx
    y0, y1 = yr[0] - pady, yr[1] + pady
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(x):
        return _ML + pw * (x - x0) / (x1 - x0)

    def py(y):
        return _MT + ph * (y1 - y) / (y1 - y0)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">']
    if cmd:
        out.append(f"<!-- cmd: {cmd} -->")
    colors = ("#1f4fd1", "#c81c1c")
    for idx, (name, eigs) in enumerate(sets):
        eigs = np.asarray(eigs, dtype=complex).ravel()
        col = colors[idx % len(colors)]
        out.append(f"<!-- set {name}: {len(eigs)} points -->")
        for e in eigs:
            x, y = px(e.real), py(e.imag)
            if idx % 2 == 0:
                out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" '
                           f'fill="{col}" fill-opacity="0.7"/>')
            else:
                out.append(f'<path d="M{x - 3:.2f},{y - 3:.2f} '
                           f'L{x + 3:.2f},{y + 3:.2f} M{x - 3:.2f},{y + 3:.2f} '
                           f'L{x + 3:.2f},{y - 3:.2f}" stroke="{col}" '
                           f'stroke-width="1.5"/>')
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="black"/>')
    out.append(f'<text x="{_ML + pw / 2:.0f}" y="{_H - 18}" '
               f'text-anchor="middle" font-size="14">Re E</text>')
    out.append(f'<text x="18" y="{_MT + ph / 2:.0f}" text-anchor="middle" '
               f'font-size="14" transform="rotate(-90 18 {_MT + ph / 2:.0f})">'
               f'Im E</text>')
    for idx, (name, _) in enumerate(sets):
        out.append(f'<text x="{_ML + 8 + 90 * idx}" y="20" font-size="13" '
                   f'fill="{colors[idx % len(colors)]}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
