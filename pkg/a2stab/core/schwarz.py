"""
The regions R_n, R_∞ and the conformal maps onto them.

R_n is bounded by the line Re z = (2−n)/2 and by the curves

    ℓ+ : |e^{iπz} + 1| = 1        ℓ− : |e^{−iπz} + 1| = 1

which meet at the vertex 2/3. R_∞ drops the line.

f_n(t) = (1/πi)·log(ψ²/ψ¹) where (ψ¹, ψ²) is a fixed integral basis of the
level-n periods and t = −27b²/(4a³). The parameter is carried on the slice

    (a, b) = (−3κ², 2κ³r),   r² = t,   κ = (1+|t|)^(−1/6)

whose κ only keeps the roots of order one; period ratios are invariant under
the weighted ℂ*-action. The basis and the log branch are calibrated once per
level from the known images of a few probe points.
"""

from __future__ import annotations

import cmath
import dataclasses
import itertools
import logging
import math
from collections.abc import Callable, Sequence
from typing import Any, Literal

import numpy as np
from cachetools import LRUCache, cached
from scipy.optimize import newton

from a2stab.core import periods as pd
from a2stab.core.lattice import IntMatrix
from a2stab.errors import (
    CalibrationError,
    ConvergenceError,
    FitQualityError,
    SingularParameterError,
    StencilDegeneracyError,
)
from a2stab.utils.settings import settings
from a2stab.utils.validation import Level, _validate_level, is_infinite

logger = logging.getLogger(__name__)

Verdict = Literal[
    "interior",
    "boundary_line",
    "boundary_ell_plus",
    "boundary_ell_minus",
    "vertex",
    "outside",
]

TOP_VERTEX = 2 / 3
# t₀ = −1 sits at r₀ = i.
BASE_R = 1j
# f_∞ evaluates periods at μ·a, which makes the Schwarzian of the ratio a/3.
INFTY_SCALE = 2 ** (-1 / 3)
INFTY_BASE = 1.0

_SINGULAR_TOL = 1e-8
_DEGENERACY_TOL = 1e-10
_CALIBRATION_TOL = 1e-4
_MAX_ARG_JUMP = math.pi / 3
_MAX_REFINE_DEPTH = 12
_STEP_TO_SINGULARITY = 0.25
_PROBE_SAMPLES = 24
_SLOPE_VARIANCE_MAX = 1e-4


def line_position(n: Level) -> float:
    """Real part (2−n)/2 of the vertical side of R_n; −∞ for n = ∞."""
    n = _validate_level(n)
    return -math.inf if is_infinite(n) else (2 - n) / 2


def _level_label(n: Level) -> int | str:
    return "inf" if is_infinite(n) else int(n)


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class RegionQuery:
    """
    Verdict of :func:`region_classify`.

    ``distance_estimate`` is the smallest signed slack of the inequalities
    that apply at z: positive inside, negative outside.
    """

    verdict: Verdict
    distance_estimate: float

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "distance_estimate": self.distance_estimate}


def region_classify(n: Level, z: complex, tol: float | None = None) -> RegionQuery:
    """
    Classify ``z`` against the closure of R_n.

    With w = e^{iπz}, z is interior when Re z > (2−n)/2 (finite n only),
    |w+1| > 1 and |w⁻¹+1| > 1. The curve conditions are imposed on the strip
    0 ≤ Re z < 1, where ℓ± live; left of it they hold for the region's own
    sheet and are skipped, and Re z ≥ 1 is outside.

    Example
    -------
    >>> region_classify(3, -0.25).verdict
    'interior'

    """
    n = _validate_level(n)
    z = complex(z)
    tol = tol if tol is not None else settings.region_tol
    line = line_position(n)

    on_line_vertex = not is_infinite(n) and abs(z.real - line) <= tol and abs(z.imag) <= tol
    if abs(z - TOP_VERTEX) <= tol or on_line_vertex:
        return RegionQuery("vertex", 0.0)
    if z.real >= 1:
        return RegionQuery("outside", 1 - z.real)

    slacks: dict[str, float] = {}
    if not is_infinite(n):
        slacks["boundary_line"] = z.real - line
    if z.real >= 0:
        w = cmath.exp(1j * math.pi * z)
        slacks["boundary_ell_plus"] = abs(w + 1) - 1
        slacks["boundary_ell_minus"] = abs(1 / w + 1) - 1

    if not slacks:
        return RegionQuery("interior", math.inf)
    smallest = min(slacks.values())
    if smallest < -tol:
        return RegionQuery("outside", smallest)
    binding = [name for name, value in slacks.items() if abs(value) <= tol]
    if len(binding) > 1:
        return RegionQuery("vertex", smallest)
    if binding:
        return RegionQuery(binding[0], smallest)  # type: ignore[arg-type]
    return RegionQuery("interior", smallest)


# ---------------------------------------------------------------------------
# Map values
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class MapPoint:
    """z = f(t) with z = Log(e^{iπz})/(πi) + 2·branch_tag."""

    n: Level
    t: complex
    z: complex
    branch_tag: int

    def to_dict(self) -> dict:
        return {
            "n": _level_label(self.n),
            "t_re": self.t.real,
            "t_im": self.t.imag,
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "branch_tag": self.branch_tag,
        }


@dataclasses.dataclass(frozen=True)
class BranchCalibration:
    """
    Integral basis ``matrix`` (ψ = matrix·φ) and the even shift 2·``shift``
    added to the principal log at the basepoint.
    """

    matrix: IntMatrix
    shift: int
    score: float

    def to_dict(self) -> dict:
        return {"matrix": [list(row) for row in self.matrix], "shift": self.shift, "score": self.score}


def _branch_tag(z: complex) -> int:
    return -math.floor((1 - z.real) / 2)


def slice_point(r: complex) -> tuple[complex, complex]:
    """Point (−3κ², 2κ³r) of the unfolding space with parameter t = r²."""
    kappa = (1 + abs(r) ** 2) ** (-1 / 6)
    return -3 * kappa**2 + 0j, 2 * kappa**3 * complex(r)


def parameter_of(a: complex, b: complex) -> complex:
    """t = −27b²/(4a³)."""
    if a == 0:
        raise SingularParameterError("t is infinite at a = 0", a=str(a), b=str(b))
    return -27 * b**2 / (4 * a**3)


@cached(cache=LRUCache(maxsize=1))
def base_frame() -> pd.CycleFrame:
    """Standard cycles at the basepoint t₀ = −1."""
    return pd.frame_at(*slice_point(BASE_R))


@dataclasses.dataclass
class _Trace:
    """Samples of a continuation path with their period vectors."""

    params: list[complex]
    frames: list[Any]
    values: list[np.ndarray]

    def matrix(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)


def _ratio(values: np.ndarray, matrix: np.ndarray) -> complex:
    psi = matrix @ values
    return complex(psi[1] / psi[0])


def _unwrapped(ratios: np.ndarray) -> np.ndarray:
    """(1/πi)·log along the last axis, with the argument continued sample to sample."""
    theta = np.unwrap(np.angle(ratios), axis=-1)
    return (theta - 1j * np.log(np.abs(ratios))) / math.pi


class _Tracer:
    """Follows a parameter path, refining steps near singular points and where the tracked ratio turns fast."""

    def __init__(
        self,
        start: Any,
        advance: Callable[[Any, complex], Any],
        evaluate: Callable[[Any], np.ndarray],
        singular: Sequence[complex] = (),
        matrix: np.ndarray | None = None,
    ):
        self.advance = advance
        self.evaluate = evaluate
        self.singular = singular
        self.matrix = matrix
        self.start = start

    def _limit(self, x: complex) -> float:
        if not self.singular:
            return math.inf
        return _STEP_TO_SINGULARITY * min(abs(x - s) for s in self.singular)

    def run(self, first: complex, points: Sequence[complex]) -> _Trace:
        state = self.start
        trace = _Trace([first], [state], [self.evaluate(state)])
        for target in points:
            self._step(trace, complex(target), 0)
        return trace

    def _step(self, trace: _Trace, target: complex, depth: int) -> None:
        here = trace.params[-1]
        if depth < _MAX_REFINE_DEPTH and abs(target - here) > self._limit(here):
            self._step(trace, 0.5 * (here + target), depth + 1)
            self._step(trace, target, depth + 1)
            return
        state = self.advance(trace.frames[-1], target)
        values = self.evaluate(state)
        if self.matrix is not None and depth < _MAX_REFINE_DEPTH:
            before = _ratio(trace.values[-1], self.matrix)
            after = _ratio(values, self.matrix)
            if abs(cmath.phase(after / before)) > _MAX_ARG_JUMP:
                self._step(trace, 0.5 * (here + target), depth + 1)
                self._step(trace, target, depth + 1)
                return
        trace.params.append(target)
        trace.frames.append(state)
        trace.values.append(values)


def _geometric_path(start: complex, end: complex, samples: int) -> list[complex]:
    """Points from ``start`` (excluded) to ``end``, dense near the start when the path is long."""
    length = abs(end - start)
    if length == 0:
        return []
    s = np.expm1(np.linspace(0.0, math.log1p(length), samples + 1)[1:]) / length
    s[-1] = 1.0
    return [start + (end - start) * float(q) for q in s]


def _continuous_sqrt(t: complex, previous: complex) -> complex:
    root = cmath.sqrt(t)
    return root if abs(root - previous) <= abs(root + previous) else -root


def _r_path(t: complex, path: Sequence[complex] | None, samples: int) -> list[complex]:
    """r-samples after r₀ = i, for the straight r-path or a declared polyline in t."""
    if path is None:
        return _geometric_path(BASE_R, cmath.sqrt(t), samples)
    waypoints = [-1 + 0j, *(complex(p) for p in path), t]
    rs: list[complex] = []
    previous = BASE_R
    for start, end in zip(waypoints, waypoints[1:]):
        if min(pd._point_segment_distance(0j, start, end), pd._point_segment_distance(1 + 0j, start, end)) < _SINGULAR_TOL:
            raise SingularParameterError("declared path meets t = 0 or t = 1", start=str(start), end=str(end))
        for q in range(1, samples + 1):
            previous = _continuous_sqrt(start + (end - start) * q / samples, previous)
            rs.append(previous)
    return rs


def _finite_tracer(n: int, matrix: np.ndarray | None, engine: pd.PeriodEngine | None) -> _Tracer:
    return _Tracer(
        base_frame(),
        lambda frame, r: pd.continue_frame(frame, *slice_point(r)),
        lambda frame: np.array(frame.periods(n, engine), dtype=complex),
        singular=(1 + 0j, -1 + 0j),
        matrix=matrix,
    )


def _check_parameter(t: complex) -> None:
    if abs(t) < _SINGULAR_TOL or abs(t - 1) < _SINGULAR_TOL:
        raise SingularParameterError("f_n is singular at t = 0 and t = 1", t=str(t))
    if not cmath.isfinite(t):
        raise SingularParameterError("f_n is singular at t = ∞", t=str(t))


# ---------------------------------------------------------------------------
# Calibration
# ---------------------------------------------------------------------------


@cached(cache=LRUCache(maxsize=1))
def _candidate_matrices() -> np.ndarray:
    """Unimodular integer matrices with entries in [−3, 3], one of each ± pair."""
    found = []
    for a, b, c, d in itertools.product(range(-3, 4), repeat=4):
        if abs(a * d - b * c) != 1:
            continue
        if (a, b, c, d) > (-a, -b, -c, -d):
            continue
        found.append(((a, b), (c, d)))
    return np.array(found, dtype=np.int64)


def _probe_values(trace: _Trace, matrices: np.ndarray) -> np.ndarray:
    """Unwrapped (1/πi)·log ratio along a probe trace for every candidate, shape (K, samples)."""
    psi = np.einsum("kij,sj->ksi", matrices, trace.matrix())
    with np.errstate(divide="ignore", invalid="ignore"):
        return _unwrapped(psi[..., 1] / psi[..., 0])


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _pick(scores: np.ndarray, matrices: np.ndarray, shifts: np.ndarray, what: str) -> BranchCalibration:
    scores = np.nan_to_num(scores, nan=np.inf)
    k, m = np.unravel_index(int(np.argmin(scores)), scores.shape)
    best = float(scores[k, m])
    if best > _CALIBRATION_TOL:
        raise CalibrationError(f"no integral basis reproduces the boundary behaviour of {what}", score=best)
    chosen = matrices[k]
    result = BranchCalibration(
        ((int(chosen[0, 0]), int(chosen[0, 1])), (int(chosen[1, 0]), int(chosen[1, 1]))), int(shifts[m]), best
    )
    logger.info("Calibrated %s: basis %s, shift %d (score %.2e)", what, result.matrix, result.shift, best)
    return result


@cached(cache=LRUCache(maxsize=32))
def calibrate_branch(n: int) -> BranchCalibration:
    """
    Fix the period basis and log branch of f_n.

    Probe images: t = −1 real in ((2−n)/2, 2/3); t = 1/2 on the line;
    t = 4 on ℓ+; t = 10⁶ near 2/3; t = i in the upper half-plane.

    Raises
    ------
    CalibrationError
        If no unimodular basis with small entries fits.

    """
    n = int(_validate_level(n, finite=True))
    line = line_position(n)
    matrices = _candidate_matrices()
    shifts = np.arange(-3, 4)
    tracer = _finite_tracer(n, None, None)

    def final(t: complex) -> np.ndarray:
        trace = tracer.run(BASE_R, _geometric_path(BASE_R, cmath.sqrt(t), _PROBE_SAMPLES))
        values = _probe_values(trace, matrices)
        return values[:, -1][:, None] + 2 * shifts[None, :]

    base = _probe_values(tracer.run(BASE_R, []), matrices)[:, :1] + 2 * shifts[None, :]
    half, four, far, upper = final(0.5), final(4.0), final(1e6), final(1j)
    scores = (
        np.abs(base.imag)
        + _relu(line - base.real)
        + _relu(base.real - TOP_VERTEX)
        + np.abs(half.real - line)
        + np.abs(np.abs(np.exp(1j * math.pi * four) + 1) - 1)
        + _relu(np.abs(far - TOP_VERTEX) - 0.1)
        + _relu(-upper.imag)
    )
    return _pick(scores, matrices, shifts, f"f_{n}")


# ---------------------------------------------------------------------------
# f_n
# ---------------------------------------------------------------------------


def _trace_map(
    n: int, t: complex, path: Sequence[complex] | None, engine: pd.PeriodEngine | None
) -> tuple[complex, pd.CycleFrame, np.ndarray]:
    calibration = calibrate_branch(n)
    matrix = np.array(calibration.matrix, dtype=np.int64)
    tracer = _finite_tracer(n, matrix, engine)
    trace = tracer.run(BASE_R, _r_path(t, path, settings.path_samples))
    psi = trace.matrix() @ matrix.T
    z = complex(_unwrapped(psi[:, 1] / psi[:, 0])[-1]) + 2 * calibration.shift
    return z, trace.frames[-1], psi[-1]


def f_map(
    n: Level, t: complex, path: Sequence[complex] | None = None, engine: pd.PeriodEngine | None = None
) -> MapPoint:
    """
    Evaluate f_n(t).

    Without ``path`` the value is continued along the straight r-path from
    r₀ = i to √t for Im t ≥ 0, and defined by f_n(t̄) = conj f_n(t) below the
    real axis. ``path`` lists t-waypoints after t₀ = −1; the value is then
    continued along that polyline.

    Raises
    ------
    SingularParameterError
        At t = 0, 1, ∞ or if the declared path meets 0 or 1.
    TrackingError
        If continuation loses the roots.

    """
    n = int(_validate_level(n, finite=True))
    t = complex(t)
    _check_parameter(t)
    if path is None:
        if t.imag < 0:
            mirrored = f_map(n, t.conjugate(), None, engine)
            z = mirrored.z.conjugate()
            return MapPoint(n, t, z, _branch_tag(z))
        t = complex(t.real, 0.0) if t.imag == 0 else t
    z = _trace_map(n, t, path, engine)[0]
    logger.debug("f_%d(%s) = %s", n, t, z)
    return MapPoint(n, t, z, _branch_tag(z))


def map_frame(n: Level, t: complex, engine: pd.PeriodEngine | None = None) -> tuple[complex, pd.CycleFrame, np.ndarray]:
    """
    Value of f_n at t with the continued cycle frame and the basis periods ψ there.

    Uses the default path; below the real axis the frame is the mirror image.
    """
    n = int(_validate_level(n, finite=True))
    t = complex(t)
    _check_parameter(t)
    if t.imag < 0:
        z, frame, psi = _trace_map(n, t.conjugate(), None, engine)
        return z.conjugate(), frame.conjugate(), psi.conjugate()
    return _trace_map(n, complex(t.real, 0.0) if t.imag == 0 else t, None, engine)


# ---------------------------------------------------------------------------
# f_∞
# ---------------------------------------------------------------------------


def _exp_values(a: complex, b: complex, engine: pd.PeriodEngine | None) -> np.ndarray:
    scaled = INFTY_SCALE * a
    return np.array([pd.exp_period(scaled, b, 1, engine), pd.exp_period(scaled, b, 2, engine)], dtype=complex)


def _infty_tracer(b: complex, matrix: np.ndarray | None, engine: pd.PeriodEngine | None) -> _Tracer:
    return _Tracer(
        INFTY_BASE,
        lambda _, a: a,
        lambda a: _exp_values(a, b, engine),
        matrix=matrix,
    )


@cached(cache=LRUCache(maxsize=1))
def calibrate_infty_branch() -> BranchCalibration:
    """
    Fix the basis and branch of f_∞ from: a = 1 real below 2/3, a = 0 at 2/3,
    a = 3 real left of a = 1, a = 2e^{iπ/3} on ℓ+, a = e^{iπ/6} in the upper
    half-plane.
    """
    matrices = _candidate_matrices()
    shifts = np.arange(-3, 4)
    tracer = _infty_tracer(0j, None, None)

    def final(a: complex) -> np.ndarray:
        trace = tracer.run(INFTY_BASE, _geometric_path(INFTY_BASE, a, _PROBE_SAMPLES))
        return _probe_values(trace, matrices)[:, -1][:, None] + 2 * shifts[None, :]

    base = _probe_values(tracer.run(INFTY_BASE, []), matrices)[:, :1] + 2 * shifts[None, :]
    origin, right = final(0j), final(3.0)
    edge, upper = final(2 * cmath.exp(1j * math.pi / 3)), final(cmath.exp(1j * math.pi / 6))
    scores = (
        np.abs(base.imag)
        + _relu(base.real - TOP_VERTEX)
        + np.abs(origin - TOP_VERTEX)
        + np.abs(right.imag)
        + _relu(right.real - base.real)
        + np.abs(np.abs(np.exp(1j * math.pi * edge) + 1) - 1)
        + _relu(-upper.imag)
    )
    return _pick(scores, matrices, shifts, "f_inf")


def infty_basis_periods(a: complex, b: complex = 0, engine: pd.PeriodEngine | None = None) -> np.ndarray:
    """Calibrated basis periods ψ at map coordinate ``a``: the exponential periods at (μa, b) in the f_∞ basis."""
    matrix = np.array(calibrate_infty_branch().matrix, dtype=np.int64)
    return matrix @ _exp_values(complex(a), complex(b), engine)


def infty_ratio(a: complex, b: complex = 0, engine: pd.PeriodEngine | None = None) -> complex:
    """e^{iπ f_∞(a³)} = ψ²/ψ¹; b cancels."""
    psi = infty_basis_periods(a, b, engine)
    return complex(psi[1] / psi[0])


def f_infty_map(
    a: complex, path: Sequence[complex] | None = None, b: complex = 0, engine: pd.PeriodEngine | None = None
) -> MapPoint:
    """
    Evaluate f_∞ at t = a³, continued along the straight a-path from a = 1
    (or through the ``path`` waypoints).

    Without ``path``, points with Im a < 0 use f_∞(ā) = conj f_∞(a). The
    value does not depend on b.
    """
    a, b = complex(a), complex(b)
    if path is None and a.imag < 0:
        mirrored = f_infty_map(a.conjugate(), None, b.conjugate(), engine)
        z = mirrored.z.conjugate()
        return MapPoint(math.inf, a**3, z, _branch_tag(z))
    calibration = calibrate_infty_branch()
    matrix = np.array(calibration.matrix, dtype=np.int64)
    waypoints = [INFTY_BASE, *(complex(p) for p in path or ()), a]
    points: list[complex] = []
    for start, end in zip(waypoints, waypoints[1:]):
        points.extend(_geometric_path(start, end, settings.path_samples))
    trace = _infty_tracer(b, matrix, engine).run(INFTY_BASE, points)
    psi = trace.matrix() @ matrix.T
    z = complex(_unwrapped(psi[:, 1] / psi[:, 0])[-1]) + 2 * calibration.shift
    logger.debug("f_inf(a=%s) = %s", a, z)
    return MapPoint(math.inf, a**3, z, _branch_tag(z))


# ---------------------------------------------------------------------------
# Schwarzian derivatives
# ---------------------------------------------------------------------------


def schwarzian_from_stencil(values: Sequence[complex], h: float) -> complex:
    """
    S(g) = g'''/g' − (3/2)(g''/g')² from g at t−2h, t−h, t, t+h, t+2h.

    Raises
    ------
    StencilDegeneracyError
        If g' vanishes to working precision.

    """
    if len(values) != 5:
        raise ValueError(f"a five-point stencil needs 5 values, got {len(values)}")
    gm2, gm1, g0, gp1, gp2 = (complex(v) for v in values)
    d1 = (gm2 - 8 * gm1 + 8 * gp1 - gp2) / (12 * h)
    d2 = (-gm2 + 16 * gm1 - 30 * g0 + 16 * gp1 - gp2) / (12 * h**2)
    d3 = (-gm2 + 2 * gm1 - 2 * gp1 + gp2) / (2 * h**3)
    scale = max(1.0, max(abs(v) for v in (gm2, gm1, g0, gp1, gp2)))
    if abs(d1) <= _DEGENERACY_TOL * scale:
        raise StencilDegeneracyError("derivative vanishes on the stencil", derivative=abs(d1), step=h)
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def schwarzian_fd(g: Callable[[complex], complex], t: complex, h: float | None = None) -> complex:
    """Schwarzian of ``g`` at ``t``: stencils at h and h/2 combined by Richardson extrapolation."""
    h = h if h is not None else settings.fd_step
    t = complex(t)

    def at(step: float) -> complex:
        return schwarzian_from_stencil([g(t + k * step) for k in (-2, -1, 0, 1, 2)], step)

    coarse, fine = at(h), at(h / 2)
    return (4 * fine - coarse) / 3


def closed_form_schwarzian(a: complex) -> complex:
    """S(exp(a^{3/2})) = −(9a³+5)/(8a²)."""
    a = complex(a)
    return -(9 * a**3 + 5) / (8 * a**2)


def infty_schwarzian_constant(a: complex = 0.8 + 0.3j, engine: pd.PeriodEngine | None = None) -> complex:
    """
    The constant c with S(g) = c·a for g(a) = e^{iπ f_∞(a³)}, measured at ``a``.

    The scale μ puts c at 1/3 when the exponential periods satisfy
    3φ'' + aφ = 0; the measured value is reported as computed.
    """
    a = complex(a)
    if a == 0:
        raise SingularParameterError("the constant is read off at a nonzero a", a=str(a))
    return schwarzian_fd(lambda x: infty_ratio(x, 0, engine), a, settings.exp_fd_step) / a


# ---------------------------------------------------------------------------
# Vertex exponents
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class VertexExponents:
    """Local exponents of f_n at t = 0, 1, ∞ and, optionally, their log–log estimates."""

    n: int
    exact: tuple[float, float, float]
    numeric: dict[str, float] | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "exact": list(self.exact), "numeric": self.numeric}


def _slope(x: np.ndarray, y: np.ndarray, what: str) -> float:
    coeffs, cov = np.polyfit(x, y, 1, cov=True)
    if cov[0, 0] > _SLOPE_VARIANCE_MAX:
        raise FitQualityError(f"log-log fit at {what} is not linear", variance=float(cov[0, 0]))
    return float(coeffs[0])


def vertex_exponents(n: Level, verify: bool = False, engine: pd.PeriodEngine | None = None) -> VertexExponents:
    """
    Return (1/2, (n−1)/2, 1/3), optionally checked numerically.

    The check fits log|f_n − (2−n)/2| over t ∈ −[10⁻⁵, 10⁻⁴],
    log|f_n − 2/3| over t ∈ −[10⁶, 10⁷], and Im f_n against log(1−t) for
    t → 1⁻ (whose slope is −(n−1)/(2π)).

    Raises
    ------
    FitQualityError
        If a fit has slope variance above threshold.

    """
    n = int(_validate_level(n, finite=True))
    exact = (0.5, (n - 1) / 2, 1 / 3)
    if not verify:
        return VertexExponents(n, exact)
    line = line_position(n)

    def values(ts: np.ndarray) -> np.ndarray:
        return np.array([f_map(n, complex(t), engine=engine).z for t in ts])

    near_zero = -np.logspace(-5, -4, 6)
    near_inf = -np.logspace(6, 7, 6)
    near_one = 1 - np.logspace(-4, -3, 6)
    zero = _slope(np.log(np.abs(near_zero)), np.log(np.abs(values(near_zero) - line)), "t = 0")
    inf = -_slope(np.log(np.abs(near_inf)), np.log(np.abs(values(near_inf) - TOP_VERTEX)), "t = ∞")
    one = -math.pi * _slope(np.log(1 - near_one), values(near_one).imag, "t = 1")
    numeric = {"zero": zero, "one": one, "infinity": inf}
    logger.info("Vertex exponents n=%d: exact %s, fitted %s", n, exact, numeric)
    return VertexExponents(n, exact, numeric)


# ---------------------------------------------------------------------------
# Inverse map
# ---------------------------------------------------------------------------


_SEED_GRID = tuple(
    r * cmath.exp(1j * math.pi * q) for r in (0.05, 0.3, 0.8, 2.0, 6.0, 40.0) for q in (0.05, 0.3, 0.5, 0.7, 0.95)
)


@cached(cache=LRUCache(maxsize=32))
def _seed_values(n: Level) -> tuple[tuple[complex, complex], ...]:
    if is_infinite(n):
        return tuple((a, f_infty_map(a).z) for a in _seed_infty())
    return tuple((t, f_map(n, t).z) for t in _SEED_GRID)


def _seed_infty() -> tuple[complex, ...]:
    return tuple(r * cmath.exp(1j * math.pi * q / 3) for r in (0.3, 1.0, 2.0, 3.5) for q in (0.1, 0.5, 0.9))


def invert_map(n: Level, z: complex, tol: float = 1e-10, maxiter: int = 50) -> complex:
    """
    Solve f_n(t) = z (or f_∞(a³) = z, returning a) by secant iteration
    seeded at the nearest point of a fixed grid; Im z < 0 is solved by reflection.

    Raises
    ------
    ConvergenceError
        If the iteration does not converge.

    """
    n = _validate_level(n)
    z = complex(z)
    if z.imag < 0:
        return invert_map(n, z.conjugate(), tol, maxiter).conjugate()
    seeds = _seed_values(n)
    start = min(seeds, key=lambda pair: abs(pair[1] - z))[0]

    if is_infinite(n):

        def residual(x: complex) -> complex:
            return f_infty_map(x).z - z

    else:

        def residual(x: complex) -> complex:
            return f_map(n, x).z - z

    try:
        root = newton(residual, start, x1=start * (1 + 1e-3), tol=tol, maxiter=maxiter)
    except (RuntimeError, OverflowError) as exc:
        raise ConvergenceError("inverse map iteration did not converge", z=str(z), seed=str(start)) from exc
    root = complex(root)
    if abs(residual(root)) > 1e-8:
        raise ConvergenceError("inverse map iteration did not converge", z=str(z), seed=str(start))
    return root
