"""
Twisted and exponential periods of the cubic p(x) = x³ + ax + b.

Finite level n: φ(γ) = ∫_γ p(x)^ν dx with ν = (n−2)/2, γ a polyline between
two roots. The branch of p^ν is fixed by a stored value of log p at one
interior node (the anchor) and continued along the path factor by factor,
so half-integer ν never sees a principal-value jump mid-path.

n = ∞: φ(δ) = ∫_δ e^{p(x)} dx over a contour made of two rays from the
origin into sectors where x³ → −∞.

Parameter continuation (hypergeometric residuals, monodromy, the Schwarz
maps) moves whole cycle frames: roots are matched step to step, contour
nodes are carried by a local bump deformation and the anchor log is kept
continuous.
"""

from __future__ import annotations

import cmath
import dataclasses
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from typing import Any

import numpy as np
from cachetools import LRUCache, cached
from scipy.optimize import linear_sum_assignment
from scipy.special import gamma, roots_jacobi

from a2stab.errors import (
    CalibrationError,
    ConvergenceError,
    DiscriminantError,
    SingularParameterError,
    TrackingError,
)
from a2stab.utils.metrics import metrics
from a2stab.utils.settings import settings
from a2stab.utils.validation import Level, _validate_level

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)
_DISCRIMINANT_TOL = 1e-10
_ROOT_MATCH_TOL = 1e-7
_DETOUR_TOL = 1e-8
_DETOUR_CHORDS = 16
_MAX_SPLIT_DEPTH = 40
_MAX_BISECTIONS = 40
_STEP_FRACTION = 0.1
_BUMP_FRACTION = 0.45
_SINGULAR_TOL = 1e-8
_LOOP_MARGIN = 1e-3
_CUTOFF_MARGIN = 5.0

# Outgoing ray angles of the exponential cycles; both start on the ray at π.
EXP_RAY_IN = math.pi
EXP_RAYS_OUT = {1: math.pi / 3, 2: 5 * math.pi / 3}

Roots = tuple[complex, complex, complex]


# ---------------------------------------------------------------------------
# The cubic
# ---------------------------------------------------------------------------


def cubic_value(a: complex, b: complex, x: Any) -> Any:
    return x**3 + a * x + b


def discriminant(a: complex, b: complex) -> complex:
    """Return 4a³ + 27b², which vanishes exactly when p has a repeated root."""
    return 4 * a**3 + 27 * b**2


def cubic_roots(a: complex, b: complex) -> Roots:
    """
    Roots of x³ + ax + b sorted by (real part, imaginary part).

    Companion-matrix eigenvalues polished by two Newton steps, then shifted
    so the roots sum to zero.

    Raises
    ------
    DiscriminantError
        If |4a³ + 27b²| is below tolerance relative to its two terms.

    Example
    -------
    >>> cubic_roots(-1, 0)
    ((-1+0j), 0j, (1+0j))

    """
    a, b = complex(a), complex(b)
    delta = discriminant(a, b)
    if abs(delta) < _DISCRIMINANT_TOL * max(1.0, abs(4 * a**3), abs(27 * b**2)):
        raise DiscriminantError("cubic has a repeated root", a=str(a), b=str(b))
    roots = np.roots([1.0, 0.0, a, b]).astype(complex)
    for _ in range(2):
        roots = roots - cubic_value(a, b, roots) / (3 * roots**2 + a)
    roots = roots - roots.mean()
    ordered = sorted((complex(u) for u in roots), key=lambda u: (round(u.real, 9), u.imag))
    return ordered[0], ordered[1], ordered[2]


def _root_index(x: complex, roots: Sequence[complex]) -> int:
    distances = [abs(x - u) for u in roots]
    j = int(np.argmin(distances))
    scale = max(1.0, max(abs(u) for u in roots))
    if distances[j] > _ROOT_MATCH_TOL * scale:
        raise ValueError(f"path endpoint {x} is not a root of p")
    return j


def _point_segment_distance(x: complex, start: complex, end: complex) -> float:
    d = end - start
    if d == 0:
        return abs(x - start)
    s = ((x - start) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(x - (start + s * d))


# ---------------------------------------------------------------------------
# Contours
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Contour:
    """
    A polyline from one root of p to another.

    ``anchor_log`` is the value of log p at ``nodes[anchor_index]``; it fixes
    the branch of p^ν for the whole path.
    """

    nodes: tuple[complex, ...]
    anchor_index: int
    anchor_log: complex

    def __post_init__(self) -> None:
        if len(self.nodes) < 3:
            raise ValueError("a contour needs at least one interior node")
        if not 0 < self.anchor_index < len(self.nodes) - 1:
            raise ValueError(f"anchor index {self.anchor_index} is not an interior node")

    @property
    def start(self) -> complex:
        return self.nodes[0]

    @property
    def end(self) -> complex:
        return self.nodes[-1]

    @property
    def anchor(self) -> complex:
        return self.nodes[self.anchor_index]

    @classmethod
    def from_nodes(cls, a: complex, b: complex, nodes: Sequence[complex], anchor_index: int | None = None) -> Contour:
        """Build a contour anchored at the principal log of p at an interior node (the middle one by default)."""
        nodes = tuple(complex(x) for x in nodes)
        if len(nodes) == 2:
            nodes = (nodes[0], 0.5 * (nodes[0] + nodes[1]), nodes[1])
        index = len(nodes) // 2 if anchor_index is None else anchor_index
        value = cubic_value(a, b, nodes[index])
        if value == 0:
            raise ValueError("anchor node is a root of p")
        return cls(nodes, index, cmath.log(value))

    def reversed(self) -> Contour:
        return Contour(self.nodes[::-1], len(self.nodes) - 1 - self.anchor_index, self.anchor_log)

    def conjugate(self) -> Contour:
        """Mirror image, a contour for the cubic with conjugate coefficients."""
        return Contour(tuple(x.conjugate() for x in self.nodes), self.anchor_index, self.anchor_log.conjugate())

    def scaled(self, lam: complex) -> Contour:
        """Image under x ↦ λ²x, a contour for (λ⁴a, λ⁶b)."""
        lam = complex(lam)
        return Contour(tuple(lam**2 * x for x in self.nodes), self.anchor_index, self.anchor_log + 6 * cmath.log(lam))

    def to_dict(self) -> dict:
        return {
            "nodes": [[x.real, x.imag] for x in self.nodes],
            "anchor_index": self.anchor_index,
            "anchor_log": [self.anchor_log.real, self.anchor_log.imag],
        }


def _detour_arc(start: complex, end: complex, center: complex, radius: float) -> list[complex]:
    """Semicircle around ``center`` on the left of the direction start → end."""
    d = (end - start) / abs(end - start)
    return [center - radius * d * cmath.exp(-1j * math.pi * k / _DETOUR_CHORDS) for k in range(_DETOUR_CHORDS + 1)]


def segment_cycle(a: complex, b: complex, start: int, end: int) -> Contour:
    """
    Straight path between roots ``start`` and ``end`` (indices into the sorted roots).

    If the third root lies on the segment, the path detours around it by a
    semicircle of radius a quarter of its distance to the nearer endpoint,
    on the left of the direction of travel.
    """
    if {start, end} - {0, 1, 2} or start == end:
        raise ValueError(f"root indices must be two distinct values in 0..2, got {start}, {end}")
    roots = cubic_roots(a, b)
    first, last = roots[start], roots[end]
    (other,) = (roots[j] for j in range(3) if j not in (start, end))
    nodes = [first]
    if _point_segment_distance(other, first, last) < _DETOUR_TOL * abs(last - first):
        radius = 0.25 * min(abs(other - first), abs(other - last))
        logger.warning("Root %s lies on the path %s -> %s; detouring with radius %.3g", other, first, last, radius)
        nodes.extend(_detour_arc(first, last, other, radius))
    else:
        nodes.append(0.5 * (first + last))
    nodes.append(last)
    return Contour.from_nodes(a, b, nodes)


def standard_cycles(a: complex, b: complex) -> tuple[Contour, Contour]:
    """γ1 = u1 → u2 and γ2 = u2 → u3 in the sorted root order, anchored at their midpoints."""
    return segment_cycle(a, b, 0, 1), segment_cycle(a, b, 1, 2)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class QuadConfig:
    """Quadrature knobs; unset values fall back to ``settings``."""

    node_count: int
    truncation_radius: float
    target_tol: float
    max_doublings: int

    def __post_init__(self) -> None:
        if self.node_count < 8:
            raise ValueError(f"node_count must be >= 8, got {self.node_count}")
        if self.truncation_radius <= 0 or self.target_tol <= 0:
            raise ValueError("truncation_radius and target_tol must be positive")

    @classmethod
    def from_settings(
        cls,
        node_count: int | None = None,
        truncation_radius: float | None = None,
        target_tol: float | None = None,
        max_doublings: int | None = None,
    ) -> QuadConfig:
        return cls(
            node_count=node_count if node_count is not None else settings.quad_nodes,
            truncation_radius=truncation_radius if truncation_radius is not None else settings.truncation_radius,
            target_tol=target_tol if target_tol is not None else settings.target_tol,
            max_doublings=max_doublings if max_doublings is not None else settings.max_doublings,
        )


@dataclasses.dataclass(frozen=True)
class QuadratureResult:
    value: complex
    est_error: float
    doublings: int


@dataclasses.dataclass(frozen=True)
class PeriodPair:
    """Two periods (φ¹, φ²) evaluated at one point of the unfolding space."""

    phi1: complex
    phi2: complex

    @property
    def ratio(self) -> complex:
        return self.phi2 / self.phi1

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2], dtype=complex)

    def to_dict(self) -> dict:
        return {"phi1": [self.phi1.real, self.phi1.imag], "phi2": [self.phi2.real, self.phi2.imag]}


Segment = tuple[complex, complex, int | None, int | None]


def _refine_segment(
    start: complex, end: complex, start_root: int | None, end_root: int | None, roots: Roots, depth: int = 0
) -> list[Segment]:
    """Halve a segment until it is no longer than its distance to any root other than its own endpoints."""
    skip = {start_root, end_root}
    dist = min((_point_segment_distance(u, start, end) for j, u in enumerate(roots) if j not in skip), default=math.inf)
    if abs(end - start) <= dist or depth >= _MAX_SPLIT_DEPTH:
        return [(start, end, start_root, end_root)]
    mid = 0.5 * (start + end)
    return _refine_segment(start, mid, start_root, None, roots, depth + 1) + _refine_segment(
        mid, end, None, end_root, roots, depth + 1
    )


def _propagate_logs(segment: Segment, roots: Roots, logs: list) -> list:
    start, end, start_root, end_root = segment
    out = list(logs)
    for j, u in enumerate(roots):
        if j == end_root:
            out[j] = None
        elif j == start_root:
            out[j] = cmath.log(end - start)
        else:
            out[j] = logs[j] + cmath.log((end - u) / (start - u))
    return out


class PeriodEngine:
    """
    Gauss–Jacobi / Gauss–Legendre evaluation of twisted and exponential periods.

    Quadrature rules are kept in an LRU cache keyed by (nodes, alpha, beta).
    Every integral is recomputed with doubled node counts until two
    successive values agree to ``target_tol``.
    """

    def __init__(self, config: QuadConfig | None = None, cache_max_size: int | None = None):
        """
        Initialize the engine.

        Args:
        ----
        config : QuadConfig | None
            Quadrature knobs (default: from settings)
        cache_max_size : int | None
            Number of cached quadrature rules (default: from settings)

        """
        self.config = config if config is not None else QuadConfig.from_settings()
        self._cache: LRUCache[str, Any] = LRUCache(
            maxsize=cache_max_size if cache_max_size is not None else settings.cache_max_size
        )
        logger.debug(
            "PeriodEngine initialised (nodes=%d, tol=%.1e, max_doublings=%d)",
            self.config.node_count,
            self.config.target_tol,
            self.config.max_doublings,
        )

    def _cache_get(self, key: str) -> Any | None:
        value = self._cache.get(key)
        if value is not None:
            logger.debug("Cache hit: %s", key)
            metrics.record_cache_hit()
            return value
        logger.debug("Cache miss: %s", key)
        metrics.record_cache_miss()
        return None

    def _cache_set(self, key: str, value: Any) -> None:
        self._cache[key] = value
        logger.debug("Cache set: %s", key)

    def _rule(self, nodes: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
        """Gauss–Jacobi rule for the weight (1−s)^alpha (1+s)^beta on [−1, 1]."""
        key = f"jacobi:{nodes}:{alpha:.12g}:{beta:.12g}"
        rule = self._cache_get(key)
        if rule is None:
            rule = roots_jacobi(nodes, alpha, beta)
            self._cache_set(key, rule)
        return rule

    def _converge(self, evaluate: Callable[[int], complex], what: str) -> QuadratureResult:
        nodes = self.config.node_count
        previous = evaluate(nodes)
        error = math.inf
        for doubling in range(1, self.config.max_doublings + 1):
            nodes *= 2
            current = evaluate(nodes)
            error = abs(current - previous)
            if error <= self.config.target_tol * max(1.0, abs(current)):
                return QuadratureResult(current, error, doubling)
            logger.debug("%s not converged at %d nodes (diff=%.3e)", what, nodes, error)
            previous = current
        raise ConvergenceError(
            f"{what} did not converge after {self.config.max_doublings} doublings",
            nodes=nodes,
            difference=error,
        )

    # -- twisted periods -----------------------------------------------------

    def _segment_value(self, segment: Segment, roots: Roots, logs: list, nu: float, moment: int, nodes: int) -> complex:
        start, end, start_root, end_root = segment
        alpha = nu if end_root is not None else 0.0
        beta = nu if start_root is not None else 0.0
        s, w = self._rule(nodes, alpha, beta)
        x = start + (end - start) * (1 + s) / 2
        log_p = np.zeros_like(x)
        for j, u in enumerate(roots):
            if j == start_root:
                log_p += cmath.log(end - start) - _LN2
            elif j == end_root:
                log_p += logs[j] - _LN2
            else:
                log_p += logs[j] + np.log((x - u) / (start - u))
        values = np.exp(nu * log_p)
        if moment:
            values = values * x**moment
        return complex((end - start) / 2 * np.dot(w, values))

    def twisted(self, n: Level, a: complex, b: complex, contour: Contour, moment: int = 0) -> QuadratureResult:
        """
        ∫ x^moment · p(x)^((n−2)/2) dx along ``contour``.

        Raises
        ------
        InvalidLevelError
            For n = ∞.
        DiscriminantError
            If p has a repeated root.
        ValueError
            If the contour does not run between two distinct roots.
        ConvergenceError
            If node doubling fails to stabilize a segment.

        """
        n = int(_validate_level(n, finite=True))
        nu = (n - 2) / 2
        roots = cubic_roots(a, b)
        s_idx, e_idx = _root_index(contour.start, roots), _root_index(contour.end, roots)
        if s_idx == e_idx:
            raise ValueError("a twisted cycle must join two distinct roots")
        nodes = [roots[s_idx], *contour.nodes[1:-1], roots[e_idx]]
        logs: list = [None if j == s_idx else cmath.log(roots[s_idx] - u) for j, u in enumerate(roots)]
        total, error, doublings = 0j, 0.0, 0
        anchor_sum = 0j
        last = len(nodes) - 2
        for k in range(len(nodes) - 1):
            pieces = _refine_segment(
                nodes[k], nodes[k + 1], s_idx if k == 0 else None, e_idx if k == last else None, roots
            )
            for piece in pieces:
                result = self._converge(
                    lambda count, piece=piece, logs=logs: self._segment_value(piece, roots, logs, nu, moment, count),
                    "twisted segment",
                )
                total += result.value
                error += result.est_error
                doublings += result.doublings
                logs = _propagate_logs(piece, roots, logs)
            if k + 1 == contour.anchor_index:
                anchor_sum = sum(logs)
        winding = (contour.anchor_log - anchor_sum) / (2j * math.pi)
        m = round(winding.real)
        if abs(winding - m) > 1e-6:
            raise TrackingError("anchor log is not a value of log p at the anchor node", anchor=str(contour.anchor))
        metrics.record_quadrature(doublings)
        return QuadratureResult(total * cmath.exp(2j * math.pi * nu * m), error, doublings)

    # -- exponential periods -------------------------------------------------

    def _ray_cutoff(self, abs_a: float, decay: float) -> float:
        """Smallest R with decay·R³ − |a|·R ≥ −ln(tol) + margin, at least the configured radius."""
        target = -math.log(self.config.target_tol) + _CUTOFF_MARGIN
        radius = max(1.0, (target / decay) ** (1 / 3))
        for _ in range(60):
            radius = ((target + abs_a * radius) / decay) ** (1 / 3)
        return max(radius, self.config.truncation_radius)

    def exp_ray(self, a: complex, theta: float) -> QuadratureResult:
        """
        ∫ e^{x³ + ax} dx along the ray from 0 to ∞ at angle ``theta``.

        The ray is truncated where the integrand falls below the target
        tolerance and integrated by composite Gauss–Legendre on unit panels.
        """
        decay = -math.cos(3 * theta)
        if decay <= 0:
            raise ValueError(f"ray angle {theta} is not in a sector where x³ → −∞")
        direction = cmath.exp(1j * theta)
        radius = self._ray_cutoff(abs(a), decay)
        panels = np.arange(math.ceil(radius), dtype=float)

        def evaluate(count: int) -> complex:
            s, w = self._rule(count, 0.0, 0.0)
            r = (panels[:, None] + (1 + s[None, :]) / 2).ravel()
            x = r * direction
            values = np.exp(x**3 + a * x).reshape(len(panels), count)
            return complex(direction * 0.5 * np.sum(values @ w))

        result = self._converge(evaluate, "exponential ray")
        metrics.record_quadrature(result.doublings)
        return result

    def exp_contour(self, a: complex, b: complex, theta_in: float, theta_out: float) -> QuadratureResult:
        """Contour in along ``theta_in`` and out along ``theta_out``; b enters as the factor e^b."""
        inward, outward = self.exp_ray(a, theta_in), self.exp_ray(a, theta_out)
        factor = cmath.exp(b)
        return QuadratureResult(
            factor * (outward.value - inward.value),
            abs(factor) * (inward.est_error + outward.est_error),
            inward.doublings + outward.doublings,
        )


default_engine = PeriodEngine()


def _engine(override: PeriodEngine | None) -> PeriodEngine:
    return override if override is not None else default_engine


def twisted_period(n: Level, a: complex, b: complex, path: Contour, engine: PeriodEngine | None = None) -> complex:
    """
    ∫_path p(x)^((n−2)/2) dx.

    Example
    -------
    >>> twisted_period(4, -1, 0, standard_cycles(-1, 0)[0])  # doctest: +SKIP
    (0.25+0j)

    """
    return _engine(engine).twisted(n, a, b, path).value


def exp_period(a: complex, b: complex, which: int, engine: PeriodEngine | None = None) -> complex:
    """
    ∫_δ e^{p(x)} dx for the cycle δ1 (rays π → π/3) or δ2 (rays π → 5π/3).

    Raises
    ------
    ValueError
        If ``which`` is not 1 or 2.

    """
    if which not in EXP_RAYS_OUT:
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    return _engine(engine).exp_contour(a, b, EXP_RAY_IN, EXP_RAYS_OUT[which]).value


def exp_period_at_origin(which: int) -> complex:
    """Closed form Γ(4/3)·(e^{iθ_out} − e^{iπ}) of the exponential period at a = b = 0."""
    return complex(gamma(4 / 3)) * (cmath.exp(1j * EXP_RAYS_OUT[which]) - cmath.exp(1j * EXP_RAY_IN))


def period_pair(n: Level, a: complex, b: complex, engine: PeriodEngine | None = None) -> PeriodPair:
    """Periods over the standard cycles (finite n) or the two exponential cycles (n = ∞)."""
    n = _validate_level(n)
    if math.isinf(n):
        return PeriodPair(exp_period(a, b, 1, engine), exp_period(a, b, 2, engine))
    return PeriodPair(*frame_at(a, b).periods(n, engine))


# ---------------------------------------------------------------------------
# Continuation
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CycleFrame:
    """Roots of p in tracked order together with cycles continued to (a, b)."""

    a: complex
    b: complex
    roots: Roots
    cycles: tuple[Contour, ...]

    def periods(self, n: Level, engine: PeriodEngine | None = None) -> tuple[complex, ...]:
        return tuple(_engine(engine).twisted(n, self.a, self.b, c).value for c in self.cycles)

    def moments(self, n: Level, engine: PeriodEngine | None = None) -> np.ndarray:
        """Rows (∫ p^ν, ∫ x·p^ν) per cycle."""
        eng = _engine(engine)
        return np.array(
            [[eng.twisted(n, self.a, self.b, c, moment=k).value for k in (0, 1)] for c in self.cycles], dtype=complex
        )

    def conjugate(self) -> CycleFrame:
        return CycleFrame(
            self.a.conjugate(),
            self.b.conjugate(),
            tuple(u.conjugate() for u in self.roots),  # type: ignore[arg-type]
            tuple(c.conjugate() for c in self.cycles),
        )


def frame_at(a: complex, b: complex, cycles: Sequence[Contour] | None = None) -> CycleFrame:
    a, b = complex(a), complex(b)
    return CycleFrame(a, b, cubic_roots(a, b), tuple(cycles) if cycles is not None else standard_cycles(a, b))


def _bump_radius(roots: Roots) -> float:
    return _BUMP_FRACTION * min(abs(roots[i] - roots[j]) for i in range(3) for j in range(i + 1, 3))


def _match_roots(old: Roots, new: Roots) -> Roots:
    cost = np.abs(np.subtract.outer(np.array(old), np.array(new)))
    rows, cols = linear_sum_assignment(cost)
    matched = [new[c] for _, c in sorted(zip(rows, cols))]
    return matched[0], matched[1], matched[2]


def _subdivide(contour: Contour, max_length: float) -> Contour:
    nodes: list[complex] = [contour.nodes[0]]
    anchor = 0
    for k in range(1, len(contour.nodes)):
        start, end = contour.nodes[k - 1], contour.nodes[k]
        pieces = max(1, math.ceil(abs(end - start) / max_length))
        nodes.extend(start + (end - start) * q / pieces for q in range(1, pieces + 1))
        if k == contour.anchor_index:
            anchor = len(nodes) - 1
    return Contour(tuple(nodes), anchor, contour.anchor_log)


def _move_contour(contour: Contour, old: Roots, new: Roots, rho: float, a: complex, b: complex) -> Contour:
    refined = _subdivide(contour, rho / 4)
    shifts = [v - u for u, v in zip(old, new)]
    moved = []
    for x in refined.nodes:
        dx = 0j
        for u, shift in zip(old, shifts):
            r2 = abs(x - u) ** 2 / rho**2
            if r2 < 1:
                dx += (1 - r2) ** 2 * shift
        moved.append(x + dx)
    moved[0] = new[_root_index(refined.start, old)]
    moved[-1] = new[_root_index(refined.end, old)]
    raw = cmath.log(cubic_value(a, b, moved[refined.anchor_index]))
    k = round(((refined.anchor_log - raw) / (2j * math.pi)).real)
    return Contour(tuple(moved), refined.anchor_index, raw + 2j * math.pi * k)


def _advance(frame: CycleFrame, a: complex, b: complex, depth: int) -> tuple[CycleFrame, int]:
    try:
        roots = cubic_roots(a, b)
    except DiscriminantError as exc:
        raise TrackingError("continuation path meets the discriminant", a=str(a), b=str(b)) from exc
    matched = _match_roots(frame.roots, roots)
    rho = _bump_radius(frame.roots)
    if max(abs(v - u) for u, v in zip(frame.roots, matched)) > _STEP_FRACTION * rho:
        if depth >= _MAX_BISECTIONS:
            raise TrackingError("step bisection limit reached", a=str(a), b=str(b))
        mid_a, mid_b = 0.5 * (frame.a + a), 0.5 * (frame.b + b)
        half, first = _advance(frame, mid_a, mid_b, depth + 1)
        full, second = _advance(half, a, b, depth + 1)
        return full, first + second + 1
    cycles = tuple(_move_contour(c, frame.roots, matched, rho, a, b) for c in frame.cycles)
    return CycleFrame(a, b, matched, cycles), 0


def continue_frame(frame: CycleFrame, a: complex, b: complex) -> CycleFrame:
    """
    Continue ``frame`` to (a, b) along the straight segment in parameter space.

    Steps are bisected while any root would move more than a tenth of the
    bump radius.

    Raises
    ------
    TrackingError
        If the segment meets the discriminant or bisection runs too deep.

    """
    result, bisections = _advance(frame, complex(a), complex(b), 0)
    if bisections:
        logger.debug("Continuation step to (%s, %s) used %d bisections", a, b, bisections)
    metrics.record_step(bisections)
    return result


def track_along(frame: CycleFrame, points: Iterable[tuple[complex, complex]]) -> list[CycleFrame]:
    """Continue ``frame`` through successive (a, b) points; returns the frame at each point."""
    frames = []
    for a, b in points:
        frame = continue_frame(frame, a, b)
        frames.append(frame)
    return frames


# ---------------------------------------------------------------------------
# Scaling
# ---------------------------------------------------------------------------


def scale_cubic(a: complex, b: complex, lam: complex) -> tuple[complex, complex]:
    """The ℂ*-action with weights (4, 6)."""
    return lam**4 * a, lam**6 * b


def scale_weight(n: Level, lam: complex) -> complex:
    """λ^(3n−4) with the principal log of λ, the factor twisted periods pick up under :func:`scale_cubic`."""
    n = int(_validate_level(n, finite=True))
    return cmath.exp((3 * n - 4) * cmath.log(lam))


def scale_frame(frame: CycleFrame, lam: complex) -> CycleFrame:
    a, b = scale_cubic(frame.a, frame.b, lam)
    return CycleFrame(
        a,
        b,
        tuple(lam**2 * u for u in frame.roots),  # type: ignore[arg-type]
        tuple(c.scaled(lam) for c in frame.cycles),
    )


# ---------------------------------------------------------------------------
# Differential equations
# ---------------------------------------------------------------------------


def hypergeom_slice(z: complex) -> tuple[complex, complex]:
    """(a, b) = (−3, 2(2z−1)); the discriminant meets the slice at z = 0 and z = 1."""
    return -3 + 0j, 2 * (2 * z - 1)


def hypergeom_coefficients(n: Level) -> tuple[float, float, float]:
    """(α, β, γ) of the hypergeometric equation satisfied by the level-n periods on the slice."""
    n = int(_validate_level(n, finite=True))
    return (4 - 3 * n) / 6, (8 - 3 * n) / 6, (3 - n) / 2


def _richardson(f: Callable[[complex], np.ndarray], x: complex, h: float) -> tuple[np.ndarray, ...]:
    """Value, first and second derivative by Richardson-extrapolated central differences."""
    f0 = f(x)
    plus, minus = f(x + h), f(x - h)
    half_plus, half_minus = f(x + h / 2), f(x - h / 2)
    d1 = (4 * (half_plus - half_minus) / h - (plus - minus) / (2 * h)) / 3
    d2 = (4 * (half_plus - 2 * f0 + half_minus) / (h / 2) ** 2 - (plus - 2 * f0 + minus) / h**2) / 3
    return f0, d1, d2


def hypergeom_residual(
    n: Level, z: complex, engine: PeriodEngine | None = None, fd_step: float | None = None
) -> float:
    """
    Normalized residual of z(1−z)φ'' + (γ − (α+β+1)z)φ' − αβφ = 0 for both standard cycles.

    Stencil periods come from the same cycles deformed to the nearby
    parameters, so all five evaluations sit on one branch.

    Raises
    ------
    SingularParameterError
        At z = 0 and z = 1.

    """
    n = int(_validate_level(n, finite=True))
    z = complex(z)
    dist = min(abs(z), abs(z - 1))
    if dist < _SINGULAR_TOL:
        raise SingularParameterError("the hypergeometric equation is singular at z = 0 and z = 1", z=str(z))
    h = (fd_step if fd_step is not None else settings.fd_step) * min(1.0, 0.5 * dist)
    base = frame_at(*hypergeom_slice(z))

    def periods(w: complex) -> np.ndarray:
        frame = base if w == z else continue_frame(base, *hypergeom_slice(w))
        return np.array(frame.periods(n, engine))

    phi, d1, d2 = _richardson(periods, z, h)
    alpha, beta, gamma_ = hypergeom_coefficients(n)
    lhs = z * (1 - z) * d2 + (gamma_ - (alpha + beta + 1) * z) * d1 - alpha * beta * phi
    residual = np.abs(lhs) / (1 + np.abs(phi) + np.abs(d1) + np.abs(d2))
    logger.debug("Hypergeometric residual n=%d z=%s: %s", n, z, residual)
    return float(residual.max())


AIRY_CONVENTIONS: tuple[tuple[float, float], ...] = ((1.0, -1 / 3), (3.0, 1.0))
_AIRY_CALIBRATION_POINT = 0.7 + 0.4j


def _exp_pair(a: complex, engine: PeriodEngine | None) -> np.ndarray:
    return np.array([exp_period(a, 0, 1, engine), exp_period(a, 0, 2, engine)])


def _airy_residuals(a: complex, convention: tuple[float, float], engine: PeriodEngine | None, h: float) -> np.ndarray:
    c2, c1 = convention
    phi, _, d2 = _richardson(lambda w: _exp_pair(w, engine), complex(a), h)
    return np.abs(c2 * d2 + c1 * a * phi) / (1 + np.abs(c2 * d2) + np.abs(c1 * a * phi))


@cached(cache=LRUCache(maxsize=4))
def airy_convention() -> tuple[float, float]:
    """
    The pair (c₂, c₁) with c₂φ'' + c₁·aφ = 0 for the exponential periods.

    Both candidate sign conventions are tried at one calibration point and
    the one the contours actually satisfy is kept.

    Raises
    ------
    CalibrationError
        If neither convention fits.

    """
    h = settings.exp_fd_step
    scores = [float(_airy_residuals(_AIRY_CALIBRATION_POINT, c, None, h).max()) for c in AIRY_CONVENTIONS]
    best = int(np.argmin(scores))
    if scores[best] > 1e-4:
        raise CalibrationError("no Airy-type convention fits the exponential periods", residuals=scores)
    logger.info("Airy-type convention calibrated to %s (residuals %s)", AIRY_CONVENTIONS[best], scores)
    return AIRY_CONVENTIONS[best]


def airy_residual(
    a: complex,
    engine: PeriodEngine | None = None,
    fd_step: float | None = None,
    convention: tuple[float, float] | None = None,
) -> float:
    """Normalized residual |c₂φ'' + c₁·aφ| of the calibrated Airy-type equation, maximized over δ1 and δ2."""
    convention = convention if convention is not None else airy_convention()
    h = fd_step if fd_step is not None else settings.exp_fd_step
    return float(_airy_residuals(complex(a), convention, engine, h).max())


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------


def circle_loop(center: complex, radius: float, samples: int = 64, start_angle: float = 0.0) -> list[complex]:
    """Counter-clockwise circle, closed: the last point equals the first."""
    points = [center + radius * cmath.exp(1j * (start_angle + 2 * math.pi * k / samples)) for k in range(samples)]
    return points + [points[0]]


def lollipop_loop(base: complex, center: complex, radius: float, samples: int = 64) -> list[complex]:
    """Straight stick from ``base`` to a circle around ``center``, once round counter-clockwise, and back."""
    angle = cmath.phase(base - center)
    touch = center + radius * cmath.exp(1j * angle)
    steps = max(1, math.ceil(abs(touch - base) / (2 * math.pi * radius / samples)))
    stick = [base + (touch - base) * k / steps for k in range(steps + 1)]
    circle = circle_loop(center, radius, samples, angle)
    return stick[:-1] + circle + stick[::-1][1:]


def monodromy_matrix(n: Level, loop: Sequence[complex], engine: PeriodEngine | None = None) -> np.ndarray:
    """
    Monodromy of the standard cycles along a closed loop in the z-slice.

    Returns M with (φ¹, φ²)_end = M·(φ¹, φ²)_start, computed from the two
    functionals ∫p^ν and ∫x·p^ν so that M is determined by the cycles.

    Raises
    ------
    ValueError
        If the loop is not closed.
    SingularParameterError
        If the loop passes within the margin of z = 0 or z = 1.
    TrackingError
        If continuation along the loop fails.

    """
    n = int(_validate_level(n, finite=True))
    points = [complex(z) for z in loop]
    if len(points) < 3 or abs(points[0] - points[-1]) > 1e-12:
        raise ValueError("a monodromy loop must be closed")
    if min(min(abs(z), abs(z - 1)) for z in points) < _LOOP_MARGIN:
        raise SingularParameterError("monodromy loop passes through a singular point", margin=_LOOP_MARGIN)
    start = frame_at(*hypergeom_slice(points[0]))
    end = track_along(start, (hypergeom_slice(z) for z in points[1:]))[-1]
    before, after = start.moments(n, engine), end.moments(n, engine)
    return after @ np.linalg.inv(before)


def round_monodromy(matrix: np.ndarray, tol: float = 1e-5) -> tuple[tuple[int, int], tuple[int, int]]:
    """
    Round a monodromy matrix to integers.

    Raises
    ------
    TrackingError
        If an entry is further than ``tol`` from an integer.

    """
    rounded = np.rint(matrix.real).astype(np.int64)
    if np.max(np.abs(matrix - rounded)) > tol:
        raise TrackingError("monodromy matrix is not integral", matrix=str(matrix.tolist()))
    return (int(rounded[0, 0]), int(rounded[0, 1])), (int(rounded[1, 0]), int(rounded[1, 1]))
