import re

import numpy as np

from pecc.instance import write_solution
from pecc.render import PALETTE, color_for, render_svg


def fills(svg):
    return re.findall(r'r="1" fill="(#[0-9a-f]{6})"', svg)


def test_hexagon_center_gets_six_color(hex7):
    svg = render_svg(hex7, 3.0, eps=1e-10)
    f = fills(svg)
    assert len(f) == 7
    assert f[0] == PALETTE[6]
    assert f[1:] == [PALETTE[3]] * 6


def test_single_circle():
    f = fills(render_svg([0.0, 0.0], 1.0))
    assert f == [PALETTE[0]]


def test_palette_caps_at_six():
    assert color_for(9) == color_for(6) == PALETTE[-1]
    assert len(set(PALETTE)) == 7


def test_viewbox_and_container():
    svg = render_svg([0.0, 0.0, 2.0, 0.0], 3.0)
    assert 'viewBox="-4 -4 8 8"' in svg
    assert '<circle cx="0" cy="0" r="3" fill="none"' in svg
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")


def test_deterministic(tmp_path):
    x = np.random.default_rng(0).uniform(-3, 3, 20)
    assert render_svg(x, 4.0) == render_svg(x.copy(), 4.0)
