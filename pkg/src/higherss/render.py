"""Text and SVG pictures of the zonotope B_w.

Cells of B_w are unit squares centred at lattice points.  The origin cell is
drawn solid and the n points a^i - e_i/2 (the boundary midpoints the i-th
differential points to) are marked with their index.  Rays and lines of
saturated or extended letters are cut at ``truncation``.
"""

from __future__ import annotations

from fractions import Fraction

from .words import Word, b_region, differential_data

CELL = 24
PALETTE = {
    "cell": "#9ecae1",
    "origin": "#08306b",
    "edge": "#3f3f3f",
    "marker": "#d94801",
    "text": "#000000",
    "background": "#ffffff",
}


class RenderError(ValueError):
    pass


def markers(w: Word) -> list[tuple[int, tuple[Fraction, ...]]]:
    """(i, a^i - e_i/2) for every index i."""
    a = differential_data(w).a
    out = []
    for i in range(w.n):
        pt = tuple(Fraction(v) - (Fraction(1, 2) if k == i else 0) for k, v in enumerate(a[i]))
        out.append((i + 1, pt))
    return out


def ascii_b(w: Word, truncation: int = 3) -> str:
    """Doubled-resolution text grid: even columns/rows are cells, odd ones cell borders.

    ``#`` cell of B, ``@`` the origin cell, ``.`` lattice point outside B,
    digits mark a^i - e_i/2.
    """
    if w.n != 2:
        raise RenderError("ascii rendering needs n = 2")
    B = b_region(w, truncation)
    marks = {tuple(int(2 * v) for v in pt): i for i, pt in markers(w)}
    cells = {(2 * x, 2 * y) for x, y in B}
    spots = list(cells) + list(marks)
    lo_x = min(p[0] for p in spots) - 2
    hi_x = max(p[0] for p in spots) + 2
    lo_y = min(p[1] for p in spots) - 2
    hi_y = max(p[1] for p in spots) + 2
    lines = []
    for y in range(hi_y, lo_y - 1, -1):
        row = []
        for x in range(lo_x, hi_x + 1):
            if (x, y) in marks:
                row.append(str(marks[(x, y)]) if marks[(x, y)] < 10 else "*")
            elif (x, y) == (0, 0):
                row.append("@")
            elif (x, y) in cells:
                row.append("#")
            elif x % 2 == 0 and y % 2 == 0:
                row.append(".")
            else:
                row.append(" ")
        lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def _num(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{float(v):.1f}"


def svg_b(w: Word, truncation: int = 3) -> str:
    """SVG with 24-unit cells; n = 3 is drawn as one panel per value of the last coordinate."""
    if w.n not in (2, 3):
        raise RenderError("svg rendering needs n = 2 or n = 3")
    B = b_region(w, truncation)
    mk = markers(w)
    if w.n == 2:
        layers = {0: {(x, y) for x, y in B}}
        layer_marks = {0: [(i, (pt[0], pt[1]), False) for i, pt in mk]}
    else:
        layers = {}
        layer_marks = {}
        for x, y, z in B:
            layers.setdefault(z, set()).add((x, y))
        for i, pt in mk:
            z = pt[2]
            # a marker between two layers is drawn hollow in both
            zs = [int(z)] if z.denominator == 1 else [int(z - Fraction(1, 2)), int(z + Fraction(1, 2))]
            for k in zs:
                layer_marks.setdefault(k, []).append((i, (pt[0], pt[1]), z.denominator != 1))
                layers.setdefault(k, set())
    all_xy = [p for s in layers.values() for p in s] + [m[1] for ms in layer_marks.values() for m in ms]
    lo_x = min(Fraction(p[0]) for p in all_xy) - 1
    hi_x = max(Fraction(p[0]) for p in all_xy) + 1
    lo_y = min(Fraction(p[1]) for p in all_xy) - 1
    hi_y = max(Fraction(p[1]) for p in all_xy) + 1
    lo_x, hi_x, lo_y, hi_y = int(lo_x // 1), -int(-hi_x // 1), int(lo_y // 1), -int(-hi_y // 1)
    pw = (hi_x - lo_x + 1) * CELL
    ph = (hi_y - lo_y + 1) * CELL
    title = CELL if w.n == 3 else 0
    keys = sorted(layers)
    width = len(keys) * pw + (len(keys) - 1) * CELL
    height = ph + title
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{PALETTE["background"]}"/>',
    ]
    for n_panel, k in enumerate(keys):
        ox = n_panel * (pw + CELL)
        oy = title
        if w.n == 3:
            out.append(
                f'<text x="{ox + 2}" y="{CELL - 6}" font-family="monospace" font-size="12" fill="{PALETTE["text"]}">x3={k}</text>'
            )

        def cx(x):
            return ox + (Fraction(x) - lo_x) * CELL

        def cy(y):
            return oy + (hi_y - Fraction(y)) * CELL

        for x, y in sorted(layers[k]):
            fill = PALETTE["origin"] if (x, y) == (0, 0) and k == 0 else PALETTE["cell"]
            out.append(
                f'<rect x="{_num(cx(x))}" y="{_num(cy(y))}" width="{CELL}" height="{CELL}" '
                f'fill="{fill}" stroke="{PALETTE["edge"]}" stroke-width="1"/>'
            )
        for i, (mx, my), hollow in sorted(layer_marks.get(k, [])):
            px = cx(Fraction(mx) + Fraction(1, 2))
            py = cy(my) + Fraction(CELL, 2)
            fill = "none" if hollow else PALETTE["marker"]
            out.append(
                f'<circle cx="{_num(px)}" cy="{_num(py)}" r="5" fill="{fill}" stroke="{PALETTE["marker"]}" stroke-width="2"/>'
            )
            out.append(
                f'<text x="{_num(px + 6)}" y="{_num(py - 6)}" font-family="monospace" font-size="10" '
                f'fill="{PALETTE["text"]}">{i}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
