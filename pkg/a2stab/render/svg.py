"""
SVG 1.1 drawings of projective exchange graphs and of the regions R_n.

Disc layout: a full heart (Φ, 0) sits at the image of a base point of the
upper half-plane under the Möbius action of Φ's class in PSL(2,ℤ), carried
to the unit disc by the Cayley map τ ↦ (τ − i)/(τ + i). At n = 2 the base
point is the fixed point of Υ, which fixes the canonical heart. A chain
heart (Φ, k) sits at fraction k/(n − 2) of the hyperbolic geodesic from
(Φ, 0) to the far end of its chain; at n = ∞ chains run along a geodesic
ray of step ``_INFTY_CHAIN_STEP``. Edges are geodesic arcs and the
background is the Farey tessellation. Placement is qualitative: only the
Möbius orbit is meaningful.
"""

import cmath
import logging
import math
from collections.abc import Iterable, Sequence

from a2stab.core import braidgroup as bg
from a2stab.core import schwarz
from a2stab.core.lattice import IntMatrix
from a2stab.core.tilting import ExchangeGraph, Heart, canonicalize
from a2stab.models.render import NodeStyle, RenderSpec
from a2stab.utils.validation import Level, _validate_level, is_infinite

logger = logging.getLogger(__name__)

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
)
_GENERIC_BASE = complex(0.21, 1.13)
_INFTY_CHAIN_STEP = 0.6
_FAREY_DEPTH = 6
_EPS = 1e-12


def _fmt(x: float) -> str:
    """Fixed-precision coordinate; identical inputs give identical bytes."""
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


# ---------------------------------------------------------------------------
# Hyperbolic geometry
# ---------------------------------------------------------------------------


def mobius(matrix: IntMatrix, tau: complex) -> complex:
    (a, b), (c, d) = matrix
    return (a * tau + b) / (c * tau + d)


def cayley(tau: complex) -> complex:
    """Upper half-plane to unit disc."""
    return (tau - 1j) / (tau + 1j)


def _fixed_point(matrix: IntMatrix) -> complex:
    """Fixed point in the upper half-plane of an elliptic element."""
    (a, b), (c, d) = matrix
    root = cmath.sqrt((d - a) ** 2 + 4 * b * c)
    tau = (a - d + root) / (2 * c)
    return tau if tau.imag > 0 else (a - d - root) / (2 * c)


def base_point(n: Level) -> complex:
    n = _validate_level(n)
    if not is_infinite(n) and int(n) == 2:
        return _fixed_point(bg.psl2_quotient(bg.upsilon(2)).matrix)
    return _GENERIC_BASE


def _to_origin(p: complex, w: complex) -> complex:
    return (w - p) / (1 - p.conjugate() * w)


def _from_origin(p: complex, w: complex) -> complex:
    return (w + p) / (1 + p.conjugate() * w)


def geodesic_point(p: complex, q: complex, fraction: float) -> complex:
    """Point at ``fraction`` of the hyperbolic distance from p to q along their geodesic."""
    moved = _to_origin(p, q)
    if abs(moved) < _EPS:
        return p
    radius = math.tanh(fraction * math.atanh(min(abs(moved), 1 - 1e-15)))
    return _from_origin(p, radius * moved / abs(moved))


def geodesic_ray_point(p: complex, direction: complex, distance: float) -> complex:
    """Point at hyperbolic ``distance`` from p, leaving p in ``direction``."""
    return _from_origin(p, math.tanh(distance / 2) * direction / abs(direction))


def disc_position(heart: Heart) -> complex:
    """Position of a heart on the unit disc."""
    n = heart.n
    base = base_point(n)
    anchor = cayley(mobius(bg.psl2_quotient(heart.phi).matrix, base))
    if heart.is_full:
        return anchor
    if is_infinite(n):
        outward = anchor if abs(anchor) > 1e-6 else 1 + 0j
        return geodesic_ray_point(anchor, outward, _INFTY_CHAIN_STEP * heart.k)
    far, _ = canonicalize(Heart(heart.phi, int(n) - 2))
    end = cayley(mobius(bg.psl2_quotient(far.phi).matrix, base))
    return geodesic_point(anchor, end, heart.k / (int(n) - 2))


def linear_positions(eg: ExchangeGraph) -> dict[Heart, complex]:
    """BFS layers as columns in [−1, 1]², nodes of a layer spread evenly by discovery order."""
    layers: dict[int, list[Heart]] = {}
    for heart in eg.nodes:
        layers.setdefault(eg.graph.nodes[heart]["depth"], []).append(heart)
    span = max(layers) if layers else 0
    out: dict[Heart, complex] = {}
    for depth, members in layers.items():
        x = -1 + 2 * depth / span if span else 0.0
        for i, heart in enumerate(members):
            y = 1 - 2 * (i + 1) / (len(members) + 1)
            out[heart] = complex(0.9 * x, 0.9 * y)
    return out


def layout_positions(eg: ExchangeGraph, layout: str) -> dict[Heart, complex]:
    if layout == "linear":
        return linear_positions(eg)
    return {heart: disc_position(heart.projective()) for heart in eg.nodes}


# ---------------------------------------------------------------------------
# SVG primitives
# ---------------------------------------------------------------------------


class _Canvas:
    """Maps a rectangle of the complex plane onto an SVG viewport with y pointing up."""

    def __init__(self, size: int, lower_left: complex, upper_right: complex):
        self.size = size
        self.lower_left = lower_left
        span = upper_right - lower_left
        self.scale = size / max(span.real, span.imag)
        self.parts: list[str] = []

    def xy(self, w: complex) -> tuple[float, float]:
        return (w.real - self.lower_left.real) * self.scale, self.size - (w.imag - self.lower_left.imag) * self.scale

    def add(self, part: str) -> None:
        self.parts.append(part)

    def circle(self, center: complex, r: float, stroke: str = "none", fill: str = "none", extra: str = "") -> None:
        x, y = self.xy(center)
        self.add(f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" stroke="{stroke}" fill="{fill}"{extra}/>')

    def line(self, p: complex, q: complex, stroke: str, width: float = 1.0) -> None:
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.add(
            f'  <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def polyline(self, points: Iterable[complex], stroke: str, width: float = 1.0, dash: str | None = None) -> None:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.xy(p) for p in points))
        dashed = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'  <polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{_fmt(width)}"{dashed}/>'
        )

    def text(self, at: complex, content: str, size: int = 10) -> None:
        x, y = self.xy(at)
        self.add(
            f'  <text x="{_fmt(x)}" y="{_fmt(y)}" font-family="Helvetica" font-size="{size}">{_escape(content)}</text>'
        )

    def arc(self, p: complex, q: complex, stroke: str, width: float = 1.0) -> None:
        """Hyperbolic geodesic from p to q in the unit disc."""
        center = _orthogonal_center(p, q)
        if center is None:
            self.line(p, q, stroke, width)
            return
        (x1, y1), (x2, y2), (cx, cy) = self.xy(p), self.xy(q), self.xy(center)
        r = abs(center - p) * self.scale
        sweep = 1 if (x2 - x1) * (cy - y1) - (y2 - y1) * (cx - x1) > 0 else 0
        self.add(
            f'  <path d="M {_fmt(x1)} {_fmt(y1)} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def render(self, title: str) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.size}" height="{self.size}" '
            f'viewBox="0 0 {self.size} {self.size}">\n  <title>{_escape(title)}</title>\n'
        )
        return _HEADER + head + "\n".join(self.parts) + "\n</svg>\n"


def _circumcenter(p: complex, q: complex, r: complex) -> complex | None:
    d = 2 * (p.real * (q.imag - r.imag) + q.real * (r.imag - p.imag) + r.real * (p.imag - q.imag))
    if abs(d) < _EPS:
        return None
    pp, qq, rr = abs(p) ** 2, abs(q) ** 2, abs(r) ** 2
    x = (pp * (q.imag - r.imag) + qq * (r.imag - p.imag) + rr * (p.imag - q.imag)) / d
    y = (pp * (r.real - q.real) + qq * (p.real - r.real) + rr * (q.real - p.real)) / d
    return complex(x, y)


def _orthogonal_center(p: complex, q: complex) -> complex | None:
    """Center of the circle through p, q orthogonal to the unit circle; None for a diameter."""
    if abs(p.real * q.imag - p.imag * q.real) < 1e-9:
        return None
    inner = p if abs(p) <= abs(q) else q
    if abs(inner) < 1 - 1e-9:
        return _circumcenter(p, q, 1 / inner.conjugate())
    return 2 * p * q / (p + q)


# ---------------------------------------------------------------------------
# Exchange graphs
# ---------------------------------------------------------------------------


def farey_edges(depth: int = _FAREY_DEPTH) -> list[tuple[complex, complex]]:
    """
    Ideal edges of the Farey tessellation down to ``depth`` mediant steps, as
    pairs of points on the unit circle.
    """

    def ideal(v: tuple[int, int]) -> complex:
        return 1 + 0j if v[1] == 0 else cayley(complex(v[0] / v[1]))

    edges = [((0, 1), (1, 0))]
    stack = [((0, 1), (1, 0), 0), ((0, 1), (-1, 0), 0)]
    while stack:
        left, right, level = stack.pop()
        if level >= depth:
            continue
        mid = (left[0] + right[0], left[1] + right[1])
        edges.extend([(left, mid), (mid, right)])
        stack.extend([(left, mid, level + 1), (mid, right, level + 1)])
    return sorted({(ideal(u), ideal(v)) for u, v in edges}, key=lambda e: (e[0].real, e[0].imag, e[1].real, e[1].imag))


def graph_svg(eg: ExchangeGraph, spec: RenderSpec) -> str:
    """
    Render an exchange graph; ``spec.layout`` picks the disc or the linear layout.

    Example
    -------
    >>> from a2stab.core.tilting import projective_exchange_graph
    >>> graph_svg(projective_exchange_graph(3, 1), RenderSpec(n=3, radius=1)).startswith("<?xml")
    True

    """
    style: NodeStyle = spec.style
    positions = layout_positions(eg, spec.layout)
    canvas = _Canvas(spec.size, complex(-1.05, -1.05), complex(1.05, 1.05))
    disc = spec.layout == "disc"
    if disc:
        canvas.circle(0j, canvas.scale, stroke="#000000", extra=' stroke-width="1"')
        for p, q in farey_edges():
            canvas.arc(p, q, style.tessellation_color, 0.5)
    for u, v, _ in sorted(eg.forward_edges(), key=lambda e: (positions[e[0]].real, positions[e[0]].imag, e[2])):
        if disc:
            canvas.arc(positions[u], positions[v], style.edge_color)
        else:
            canvas.line(positions[u], positions[v], style.edge_color)
    for heart in eg.nodes:
        size = style.node_size if heart.is_full else 0.6 * style.node_size
        color = style.full_color if heart.is_full else style.chain_color
        canvas.circle(positions[heart], size, stroke="#000000", fill=color, extra=' stroke-width="0.5"')
    level = "inf" if is_infinite(eg.n) else str(int(eg.n))
    logger.debug("SVG graph n=%s radius=%d layout=%s: %d nodes", level, eg.radius, spec.layout, len(positions))
    return canvas.render(f"Exchange graph n={level} radius={eg.radius}")


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------


def ell_curve(sign: int, samples: int = 200, height: float = 2.0) -> list[complex]:
    """
    The curve ℓ+ (``sign`` = 1) or ℓ− (``sign`` = −1) from the vertex 2/3
    until |Im z| reaches ``height``.

    On ℓ+, w = e^{iπz} runs over −1 + e^{iθ} with θ from π/3 down to 0.
    """
    theta_min = 2 * math.asin(0.5 * math.exp(-math.pi * height))
    points = []
    for j in range(samples + 1):
        theta = math.pi / 3 - (math.pi / 3 - theta_min) * j / samples
        w = -1 + cmath.exp(1j * theta)
        z = cmath.log(w) / (1j * math.pi)
        points.append(z if sign > 0 else z.conjugate())
    return points


def region_svg(n: Level, points: Sequence[complex] = (), style: NodeStyle | None = None, size: int = 480) -> str:
    """
    Plot the closure of R_n in the z-plane: the line Re z = (2−n)/2 (finite n),
    the curves ℓ±, the vertex 2/3, and ``points`` colored by their verdict.
    """
    n = _validate_level(n)
    style = style if style is not None else NodeStyle()
    height = 2.0
    line = schwarz.line_position(n)
    left = -3.5 if is_infinite(n) else line - 0.5
    width = 1.0 - left
    canvas = _Canvas(size, complex(left, -width / 2), complex(1.0, width / 2))
    canvas.line(complex(left, 0), complex(1.0, 0), style.tessellation_color, 0.5)
    canvas.line(complex(0, -height), complex(0, height), style.tessellation_color, 0.5)
    if not is_infinite(n):
        canvas.line(complex(line, -height), complex(line, height), style.edge_color, 1.5)
    canvas.polyline(ell_curve(1, height=height), style.edge_color, 1.5)
    canvas.polyline(ell_curve(-1, height=height), style.edge_color, 1.5)
    canvas.circle(complex(schwarz.TOP_VERTEX, 0), 3, fill=style.full_color)
    if not is_infinite(n):
        canvas.circle(complex(line, 0), 3, fill=style.full_color)
    for z in points:
        verdict = schwarz.region_classify(n, z).verdict
        color = style.chain_color if verdict == "outside" else style.full_color
        canvas.circle(complex(z), style.node_size, fill=color, extra=f' class="{verdict}"')
    label = "inf" if is_infinite(n) else str(int(n))
    canvas.text(complex(left + 0.05, width / 2 - 0.15), f"R_{label}", 14)
    return canvas.render(f"Region R_{label}")
