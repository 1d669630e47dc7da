"""SVG drawing of a packing, circles colored by how many neighbors they touch."""

from __future__ import annotations

from .instance import centers, contact_counts

# index = contact count, last entry for 6 or more
PALETTE = (
    "#f2f2f2",
    "#fde0c5",
    "#facba6",
    "#f8b58b",
    "#f59e72",
    "#f2855d",
    "#c0392b",
)


def color_for(count: int) -> str:
    return PALETTE[min(int(count), len(PALETTE) - 1)]


def render_svg(layout, R: float, eps: float = 1e-10, size: int = 600) -> str:
    """SVG 1.1 document; identical inputs give identical bytes."""
    pos = centers(layout)
    counts = contact_counts(pos, eps)
    lo, span = -R - 1.0, 2.0 * (R + 1.0)
    stroke = span / 600.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{lo:.17g} {lo:.17g} {span:.17g} {span:.17g}">',
        f'<circle cx="0" cy="0" r="{R:.17g}" fill="none" stroke="#000000" stroke-width="{stroke:.6g}"/>',
    ]
    # y is flipped so the picture matches the usual math orientation
    for (x, y), c in zip(pos, counts):
        out.append(
            f'<circle cx="{x:.17g}" cy="{-y + 0.0:.17g}" r="1" fill="{color_for(c)}" '
            f'stroke="#333333" stroke-width="{stroke:.6g}" data-contacts="{int(c)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
