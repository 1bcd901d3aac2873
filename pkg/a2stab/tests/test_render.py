"""
Tests for the DOT and SVG renderers.
"""

import cmath
import math
import re

import pytest

from a2stab.core import braidgroup as bg
from a2stab.core import tilting as tl
from a2stab.core.tilting import Heart
from a2stab.models import NodeStyle, RenderSpec
from a2stab.render import svg
from a2stab.render.dot import to_dot


def _hyperbolic_distance(p, q):
    return 2 * math.atanh(abs(p - q) / abs(1 - p.conjugate() * q))


class TestDot:
    @pytest.mark.parametrize("n, radius", [(3, 4), (2, 3)])
    def test_counts_match_group_ball(self, n, radius):
        text = to_dot(tl.projective_exchange_graph(n, radius))
        nodes, edges = tl.psl2_ball(n, radius)
        assert len(re.findall(r"^  h\d+ \[", text, flags=re.M)) == nodes
        assert text.count(" -> ") == edges

    def test_level_two_has_no_chain_nodes(self):
        assert 'shape="box"' not in to_dot(tl.projective_exchange_graph(2, 3))

    def test_level_six_has_chain_nodes(self):
        text = to_dot(tl.projective_exchange_graph(6, 2))
        assert 'shape="box"' in text
        assert 'shape="circle"' in text

    def test_header(self):
        lines = to_dot(tl.projective_exchange_graph(3, 1), name="eg").splitlines()
        assert lines[0] == 'digraph "eg" {'
        assert lines[-1] == "}"

    def test_infinite_level(self):
        text = to_dot(tl.projective_exchange_graph(math.inf, 2))
        assert 'n="inf"' in text

    def test_deterministic(self):
        assert to_dot(tl.exchange_graph(4, 3)) == to_dot(tl.exchange_graph(4, 3))


class TestGeometry:
    def test_cayley_maps_i_to_origin(self):
        assert svg.cayley(1j) == pytest.approx(0)

    def test_level_two_base_is_fixed_by_upsilon(self):
        base = svg.base_point(2)
        ups = bg.psl2_quotient(bg.upsilon(2)).matrix
        assert svg.mobius(ups, base) == pytest.approx(base)

    def test_level_two_canonical_heart_at_center(self):
        assert svg.disc_position(tl.canonical_heart(2)) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, math.inf])
    def test_positions_inside_disc(self, n):
        for heart in tl.projective_exchange_graph(n, 3).nodes:
            assert abs(svg.disc_position(heart)) < 1

    def test_distinct_full_hearts_get_distinct_positions(self):
        hearts = tl.projective_exchange_graph(3, 3).full_hearts()
        points = {(round(p.real, 9), round(p.imag, 9)) for p in map(svg.disc_position, hearts)}
        assert len(points) == len(hearts)

    def test_chain_midpoint(self):
        # (id, 1) is halfway along the chain from (id, 0) to its far end at n = 4.
        mid = svg.disc_position(Heart(bg.identity(4), 1))
        start = svg.disc_position(tl.canonical_heart(4))
        far, _ = tl.canonicalize(Heart(bg.identity(4), 2))
        end = svg.disc_position(far)
        assert _hyperbolic_distance(start, mid) == pytest.approx(_hyperbolic_distance(mid, end), rel=1e-9)
        assert _hyperbolic_distance(start, mid) + _hyperbolic_distance(mid, end) == pytest.approx(
            _hyperbolic_distance(start, end), rel=1e-9
        )

    def test_geodesic_endpoints(self):
        p, q = 0.3 + 0.1j, -0.2 + 0.5j
        assert svg.geodesic_point(p, q, 0.0) == pytest.approx(p)
        assert svg.geodesic_point(p, q, 1.0) == pytest.approx(q)

    def test_ray_distance(self):
        p = 0.2 - 0.3j
        point = svg.geodesic_ray_point(p, 1j, 1.5)
        assert _hyperbolic_distance(p, point) == pytest.approx(1.5)

    def test_orthogonal_center_of_ideal_points(self):
        assert svg._orthogonal_center(1 + 0j, 1j) == pytest.approx(1 + 1j)

    def test_diameter_has_no_center(self):
        assert svg._orthogonal_center(0.5 + 0j, -0.5 + 0j) is None

    def test_orthogonal_circle(self):
        p, q = 0.3 + 0.2j, -0.4 + 0.1j
        center = svg._orthogonal_center(p, q)
        radius = abs(center - p)
        assert abs(center - q) == pytest.approx(radius)
        assert abs(center) ** 2 == pytest.approx(radius**2 + 1)

    def test_farey_edges(self):
        edges = svg.farey_edges(2)
        assert len(edges) == 13
        assert all(abs(abs(p) - 1) < 1e-12 and abs(abs(q) - 1) < 1e-12 for p, q in edges)


class TestGraphSvg:
    def test_disc_layout(self):
        eg = tl.projective_exchange_graph(3, 2)
        text = svg.graph_svg(eg, RenderSpec(n=3, radius=2))
        assert text.startswith("<?xml")
        assert text.rstrip().endswith("</svg>")
        # One circle per node plus the boundary of the disc.
        assert text.count("<circle") == len(eg.nodes) + 1

    def test_linear_layout(self):
        eg = tl.projective_exchange_graph(4, 2)
        text = svg.graph_svg(eg, RenderSpec(n=4, radius=2, layout="linear"))
        assert text.count("<circle") == len(eg.nodes)
        assert "<path" not in text

    def test_style_colors(self):
        eg = tl.projective_exchange_graph(5, 1)
        spec = RenderSpec(n=5, radius=1, style=NodeStyle(full_color="#123456", chain_color="#abcdef"))
        text = svg.graph_svg(eg, spec)
        assert 'fill="#123456"' in text
        assert 'fill="#abcdef"' in text

    def test_deterministic(self):
        eg = tl.projective_exchange_graph(2, 3)
        spec = RenderSpec(n=2, radius=3)
        assert svg.graph_svg(eg, spec) == svg.graph_svg(eg, spec)

    def test_linear_positions_by_depth(self):
        eg = tl.projective_exchange_graph(3, 2)
        positions = svg.linear_positions(eg)
        start = positions[tl.canonical_heart(3)]
        assert start.real == pytest.approx(-0.9)


class TestRegionSvg:
    def test_ell_plus(self):
        points = svg.ell_curve(1)
        assert points[0] == pytest.approx(2 / 3)
        assert points[-1].imag == pytest.approx(2.0)
        for z in points[1:]:
            assert abs(cmath.exp(1j * math.pi * z) + 1) == pytest.approx(1)
            assert 0.5 < z.real < 2 / 3 + 1e-12

    def test_ell_minus_is_conjugate(self):
        plus, minus = svg.ell_curve(1, samples=20), svg.ell_curve(-1, samples=20)
        assert all(m == p.conjugate() for p, m in zip(plus, minus))

    def test_points_colored_by_verdict(self):
        text = svg.region_svg(3, [0.9, -0.25])
        assert 'class="outside"' in text
        assert 'class="interior"' in text

    def test_infinite_level(self):
        text = svg.region_svg(math.inf)
        assert "R_inf" in text
        assert text.count("<polyline") == 2
