"""
Stability conditions on the principal component.

A stability condition is stored on its heart: the charges z1, z2 of the
heart's two simples (in :func:`a2stab.core.tilting.simples` order) and their
phase lifts in (0, 1]. The central charge on K₀ is recovered from the simple
classes, so group actions and wall crossing only move hearts and re-evaluate
one linear functional.

The fundamental domain U_n is tested object by object: S1, S2 and E are
looked up among the semistable objects up to shift, whatever the heart.
"""

from __future__ import annotations

import cmath
import dataclasses
import logging
import math
from collections import deque
from typing import Literal

import numpy as np

from a2stab.core import braidgroup as bg
from a2stab.core import periods as pd
from a2stab.core import schwarz
from a2stab.core.lattice import IDENTITY, IntMatrix, KClass, as_array, int_inverse
from a2stab.core.tilting import (
    Heart,
    ObjectDesc,
    apply_auteq_tracked,
    canonical_object,
    canonicalize,
    simples,
    tilt,
)
from a2stab.errors import (
    ChargeError,
    InvalidLevelError,
    LevelMismatchError,
    NonCanonicalHeartError,
    ReductionError,
    SingularParameterError,
    WallCrossingError,
)
from a2stab.utils.settings import settings
from a2stab.utils.validation import Level, _validate_level, is_infinite

logger = logging.getLogger(__name__)

Verdict = Literal[
    "case_a_interior",
    "case_b_interior",
    "boundary_upsilon",
    "boundary_sigma",
    "vertex_sigma",
    "vertex_upsilon",
    "outside",
]

_OMEGA = cmath.exp(2j * math.pi / 3)
_MAX_TILTS_PER_STEP = 4
# A lift may move by at most this much (in units of π) per walk step.
_MAX_LIFT_STEP = 0.5


def _level_label(n: Level) -> int | str:
    return "inf" if is_infinite(n) else int(n)


def _clean(z: complex) -> complex:
    z = complex(z)
    # −0.0 would put a negative real charge at phase −1.
    return complex(z.real, 0.0) if z.imag == 0 else z


def _principal_lift(z: complex) -> float:
    return cmath.phase(_clean(z)) / math.pi


def _lift_near_heart(z: complex) -> float:
    """Lift of ``z`` in (−1/2, 3/2]."""
    lift = _principal_lift(z)
    return lift + 2 if lift <= -0.5 else lift


# ---------------------------------------------------------------------------
# Stability points
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class StabilityPoint:
    """
    A stability condition with heart ``heart``.

    ``z1``, ``z2`` are the charges of the heart's simples and ``lift1``,
    ``lift2`` their phases, both in (0, 1].
    """

    heart: Heart
    z1: complex
    z2: complex
    lift1: float
    lift2: float

    @property
    def n(self) -> Level:
        return self.heart.n

    @property
    def charges(self) -> tuple[complex, complex]:
        return self.z1, self.z2

    def simple_matrix(self) -> IntMatrix:
        """Columns are the K-classes of the heart's simples."""
        c1, c2 = (s.kclass() for s in simples(self.heart))
        return ((c1.coeff_s1, c2.coeff_s1), (c1.coeff_s2, c2.coeff_s2))

    def functional(self) -> np.ndarray:
        """Central charge on the basis ([S1], [S2]) of K₀."""
        inverse = as_array(int_inverse(self.simple_matrix())).astype(float)
        return np.array([self.z1, self.z2], dtype=complex) @ inverse

    def charge(self, v: KClass) -> complex:
        return complex(self.functional() @ v.as_vector())

    def to_dict(self) -> dict:
        return {
            "n": _level_label(self.n),
            "heart": self.heart.to_dict(),
            "z1": [self.z1.real, self.z1.imag],
            "z2": [self.z2.real, self.z2.imag],
            "lift1": self.lift1,
            "lift2": self.lift2,
        }


def make_stability(heart: Heart, z1: complex, z2: complex) -> StabilityPoint:
    """
    Build the stability condition with heart ``heart`` and simple charges ``z1``, ``z2``.

    Raises
    ------
    ChargeError
        If a charge is zero or does not lie in the upper half-plane or on
        the negative real ray.

    Example
    -------
    >>> make_stability(Heart(bg.identity(3)), -1, 1j).lift2
    0.5

    """
    z1, z2 = _clean(z1), _clean(z2)
    lifts = []
    for index, z in ((1, z1), (2, z2)):
        if z == 0:
            raise ChargeError(f"charge of simple {index} is zero", simple=index)
        lift = _principal_lift(z)
        if lift <= 0:
            raise ChargeError(
                f"charge of simple {index} has phase {lift:.6g}, outside (0, 1]", simple=index, charge=str(z)
            )
        lifts.append(lift)
    return StabilityPoint(heart, z1, z2, lifts[0], lifts[1])


def from_phases(
    n: Level, phase1: float, phase2: float, modulus1: float = 1.0, modulus2: float = 1.0
) -> StabilityPoint:
    """
    The stability condition on a heart ⟨S1[k], S2⟩[s] in which S1 and S2 are
    stable with the given phases and charge moduli.

    Raises
    ------
    ChargeError
        If no such heart exists (φ(S1) − φ(S2) ≥ 1, or a chain longer than
        n − 2 would be needed) or a modulus is not positive.

    """
    n = _validate_level(n)
    if modulus1 <= 0 or modulus2 <= 0:
        raise ChargeError("charge moduli must be positive", modulus1=modulus1, modulus2=modulus2)
    s = 1 - math.ceil(phase2)
    k = 1 - math.ceil(phase1 + s)
    if k < 0 or (not is_infinite(n) and k > n - 2):
        raise ChargeError(
            "no heart in the canonical frame carries these phases", phase1=phase1, phase2=phase2, n=_level_label(n)
        )
    heart, swapped = canonicalize(Heart(bg.shift_functor(n, s), k))
    z_first = modulus1 * cmath.exp(1j * math.pi * (phase1 + s + k))
    z_second = modulus2 * cmath.exp(1j * math.pi * (phase2 + s))
    if swapped:
        return make_stability(heart, z_second, z_first)
    return make_stability(heart, z_first, z_second)


def random_interior_point(n: Level, rng: np.random.Generator, margin: float = 0.05) -> StabilityPoint:
    """
    A random point strictly inside U_n, on a heart of the canonical frame.

    Half of the draws (none at n = 2) are case (a) points with a gap of at
    least ``margin`` from both ends; the rest are case (b) points on the
    canonical heart, drawn by rejection until |Z(E)| exceeds both simple
    moduli by a factor 1 + ``margin``/5.
    """
    n = _validate_level(n)
    if n != 2 and rng.random() < 0.5:
        upper = 3.0 if is_infinite(n) else (n - 2) / 2
        phase1 = float(rng.uniform(margin, 1 - margin))
        gap = float(rng.uniform(margin, upper - margin))
        m1, m2 = np.exp(rng.uniform(-1, 1, size=2))
        return from_phases(n, phase1, phase1 + gap, float(m1), float(m2))
    heart = Heart(bg.identity(n), 0)
    while True:
        delta = float(rng.uniform(0.02, 0.9))
        phase2 = float(rng.uniform(0.01, 0.99 - delta))
        m1, m2 = (float(m) for m in np.exp(rng.uniform(-0.7, 0.7, size=2)))
        z1 = m1 * cmath.exp(1j * math.pi * (phase2 + delta))
        z2 = m2 * cmath.exp(1j * math.pi * phase2)
        if abs(z1 + z2) > (1 + margin / 5) * max(m1, m2):
            return make_stability(heart, z1, z2)


# ---------------------------------------------------------------------------
# Semistable objects
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SemistableObject:
    obj: ObjectDesc
    phase: float
    charge: complex

    def to_dict(self) -> dict:
        return {"object": self.obj.describe(), "phase": self.phase, "charge": [self.charge.real, self.charge.imag]}


def semistable_set(sigma: StabilityPoint, tol: float | None = None) -> list[SemistableObject]:
    """
    Indecomposable semistable objects of ``sigma`` with phase in (0, 1].

    Both simples are always semistable. On a full heart the extension of the
    first simple by the second (the transport of E) is semistable when the
    first simple's phase is at least the second's; at n = 2 the opposite
    extension (the transport of F) is semistable in the opposite case. Chain
    hearts have no extensions between their simples.

    Raises
    ------
    WallCrossingError
        If a charge vanishes.

    """
    tol = tol if tol is not None else settings.region_tol
    if sigma.z1 == 0 or sigma.z2 == 0:
        raise WallCrossingError("a simple has zero charge", z1=str(sigma.z1), z2=str(sigma.z2))
    first, second = simples(sigma.heart)
    found = [
        SemistableObject(first, sigma.lift1, sigma.z1),
        SemistableObject(second, sigma.lift2, sigma.z2),
    ]
    if sigma.heart.is_full:
        total = sigma.z1 + sigma.z2
        phase = _principal_lift(total)
        if sigma.lift1 >= sigma.lift2 - tol:
            found.append(SemistableObject(ObjectDesc(sigma.heart.phi, "E", 0), phase, total))
        if sigma.n == 2 and sigma.lift2 >= sigma.lift1 - tol:
            found.append(SemistableObject(ObjectDesc(sigma.heart.phi, "F", 0), phase, total))
    return found


def _reference_objects(n: Level) -> dict[str, ObjectDesc]:
    bases = ("S1", "S2", "E", "F") if n == 2 else ("S1", "S2", "E")
    return {base: canonical_object(n, base) for base in bases}  # type: ignore[arg-type]


def canonical_semistables(sigma: StabilityPoint, tol: float | None = None) -> tuple[dict[str, SemistableObject], list[str]]:
    """
    Locate S1, S2, E (and F at n = 2) among the semistable objects, up to shift.

    Returns the matches, carrying the phase and charge of the unshifted
    object, and the labels of all semistable objects up to shift.
    """
    references = _reference_objects(sigma.n)
    matches: dict[str, SemistableObject] = {}
    labels = []
    for entry in semistable_set(sigma, tol):
        label = entry.obj.describe()
        for base, reference in references.items():
            offset = entry.obj.shift_offset(reference)
            if offset is not None:
                matches[base] = SemistableObject(reference, entry.phase - offset, entry.charge * (-1) ** offset)
                label = base
                break
        labels.append(label)
    return matches, labels


# ---------------------------------------------------------------------------
# Fundamental domain
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class UClass:
    verdict: Verdict
    semistable: tuple[str, ...]

    @property
    def inside(self) -> bool:
        return self.verdict != "outside"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "semistable": list(self.semistable)}


def _equal_moduli(x: complex, y: complex, tol: float) -> bool:
    return abs(abs(x) - abs(y)) <= tol * max(abs(x), abs(y))


def _check_level(n: Level, sigma: StabilityPoint) -> Level:
    n = _validate_level(n)
    if sigma.n != n:
        raise LevelMismatchError(f"level mismatch: {n} vs {sigma.n}", left=str(n), right=str(sigma.n))
    return n


def classify_fundamental(n: Level, sigma: StabilityPoint, tol: float | None = None) -> UClass:
    """
    Classify ``sigma`` against the closure of U_n.

    Case (a): S1, S2 are the only semistable objects up to shift and
    0 < φ(S2) − φ(S1) < (n−2)/2 (no upper bound at n = ∞). Case (b): S1, S2
    and E are, with |Z(S1)| < |Z(E)| and |Z(S2)| < |Z(E)|. Equalities within
    ``tol`` give the boundary verdicts; both moduli conditions binding is the
    Σ-fixed vertex, and the Υ-boundary with |Z(S1)| = |Z(S2)| the Υ-fixed one.

    Objects are matched up to shift, so ``sigma`` may sit on any heart: a
    translate Φ·σ is classified by where S1, S2 and E land, not rejected.

    Raises
    ------
    LevelMismatchError
        If ``sigma`` lives at another level.

    """
    n = _check_level(n, sigma)
    tol = tol if tol is not None else settings.region_tol
    matches, labels = canonical_semistables(sigma, tol)
    names = tuple(sorted(set(labels)))

    def verdict(v: Verdict) -> UClass:
        return UClass(v, names)

    if "S1" not in matches or "S2" not in matches:
        return verdict("outside")
    s1, s2 = matches["S1"], matches["S2"]
    others = set(names) - {"S1", "S2"}

    if not others:
        if is_infinite(n):
            return verdict("case_a_interior")
        slack = (n - 2) / 2 - (s2.phase - s1.phase)
        if slack > tol:
            return verdict("case_a_interior")
        if slack < -tol:
            return verdict("outside")
        return verdict("vertex_upsilon" if _equal_moduli(s1.charge, s2.charge, tol) else "boundary_upsilon")

    allowed = {"E", "F"} if n == 2 else {"E"}
    if "E" not in others or not others <= allowed:
        return verdict("outside")
    delta = s1.phase - s2.phase
    if n == 2 and abs(delta) <= tol:
        return verdict("vertex_upsilon" if _equal_moduli(s1.charge, s2.charge, tol) else "boundary_upsilon")
    if "F" in others:
        return verdict("outside")
    extension = abs(matches["E"].charge)
    slacks = [(extension - abs(s2.charge)) / extension, (extension - abs(s1.charge)) / extension]
    if min(slacks) < -tol:
        return verdict("outside")
    binding = sum(1 for value in slacks if abs(value) <= tol)
    if binding == 2:
        return verdict("vertex_sigma")
    return verdict("boundary_sigma" if binding else "case_b_interior")


def g_coordinate(sigma: StabilityPoint) -> complex:
    """
    g(σ) = (1/πi)·log(Z(S1)/Z(S2)), with Re g = φ(S1) − φ(S2) read from the phases.

    Raises
    ------
    NonCanonicalHeartError
        If S1 or S2 is not semistable, so their phases are undefined.

    """
    matches, _ = canonical_semistables(sigma)
    if "S1" not in matches or "S2" not in matches:
        raise NonCanonicalHeartError(
            "S1 and S2 must be semistable to read off g", heart=sigma.heart.label(), n=_level_label(sigma.n)
        )
    s1, s2 = matches["S1"], matches["S2"]
    return complex(s1.phase - s2.phase, -math.log(abs(s1.charge) / abs(s2.charge)) / math.pi)


# ---------------------------------------------------------------------------
# Group action and reduction
# ---------------------------------------------------------------------------


def act(phi: bg.AnyAutEq, sigma: StabilityPoint) -> StabilityPoint:
    """
    Φ·σ: heart Φ(heart), central charge Z∘Φ⁻¹ on K₀.

    Raises
    ------
    LevelMismatchError
        If Φ and σ live at different levels.

    """
    if phi.n != sigma.n:
        raise LevelMismatchError(f"level mismatch: {phi.n} vs {sigma.n}", left=str(phi.n), right=str(sigma.n))
    heart, _ = apply_auteq_tracked(phi, sigma.heart)
    moved = sigma.functional() @ as_array(int_inverse(bg.kaction(phi))).astype(float)
    z1, z2 = (complex(moved @ s.kclass().as_vector()) for s in simples(heart))
    return make_stability(heart, z1, z2)


def _largest(values: dict[str, float]) -> str:
    return max(values, key=values.get)  # type: ignore[arg-type]


def _reduction_move(n: Level, sigma: StabilityPoint) -> tuple[str, bg.AnyAutEq]:
    """
    The next move towards U_n.

    With S1 or S2 unstable, the heart is first brought back to the frame
    ⟨S1[k], S2⟩[s]. Otherwise a Σ-power rotates the largest of Z(S1), Z(S2),
    Z(E) onto E, or Υ swaps S1 and S2 when their gap is too wide.
    """
    matches, labels = canonical_semistables(sigma)
    if "S1" not in matches or "S2" not in matches:
        return "frame", sigma.heart.phi.inverse()
    s1, s2 = matches["S1"], matches["S2"]
    if "E" in matches:
        sizes = {"S1": abs(s1.charge), "S2": abs(s2.charge), "E": abs(matches["E"].charge)}
        biggest = _largest(sizes)
        if biggest == "S2":
            return "sigma", bg.sigma(n)
        if biggest == "S1":
            return "sigma_inv", bg.sigma(n).inverse()
    if is_infinite(n):
        # Unreachable with S1, S2 semistable; left to the search.
        return "frame", sigma.heart.phi.inverse()
    return "upsilon", bg.upsilon(int(n))


def _generators(n: Level) -> list[tuple[str, bg.AnyAutEq]]:
    gens = [("sigma", bg.sigma(n)), ("sigma_inv", bg.sigma(n).inverse())]
    if not is_infinite(n):
        ups = bg.upsilon(int(n))
        gens += [("upsilon", ups), ("upsilon_inv", ups.inverse())]
    return gens


def _search_reduction(n: Level, sigma: StabilityPoint, depth: int, cap: int) -> tuple[bg.AnyAutEq, StabilityPoint] | None:
    """Breadth-first search over generator words, visiting at most ``cap`` hearts."""
    start = act(sigma.heart.phi.inverse(), sigma)
    first = sigma.heart.phi
    queue = deque([(first, start, 0)])
    seen = {start.heart.projective()}
    while queue:
        total, current, level = queue.popleft()
        if classify_fundamental(n, current).inside:
            return total, current
        if level == depth:
            continue
        for _, g in _generators(n):
            moved = act(g, current)
            key = moved.heart.projective()
            if key in seen:
                continue
            if len(seen) >= cap:
                return None
            seen.add(key)
            queue.append((total.compose(g.inverse()), moved, level + 1))  # type: ignore[arg-type]
    return None


def reduce_to_fundamental(
    n: Level, sigma: StabilityPoint, cap: int | None = None, depth: int | None = None
) -> tuple[bg.AnyAutEq, StabilityPoint]:
    """
    Find Φ and σ₀ in the closure of U_n with σ = Φ·σ₀.

    Moves are chosen by :func:`_reduction_move`; if they do not land in U_n
    within ``cap`` steps a breadth-first search over Σ^{±1}, Υ^{±1} words of
    length up to ``depth`` takes over.

    Raises
    ------
    ReductionError
        If neither finds a representative; the context holds the moves tried.

    """
    n = _check_level(n, sigma)
    cap = cap if cap is not None else settings.reduction_cap
    depth = depth if depth is not None else settings.bfs_depth
    total: bg.AnyAutEq = bg.identity(n)
    current = sigma
    trace: list[str] = []
    for _ in range(cap):
        if classify_fundamental(n, current).inside:
            logger.debug("Reduced in %d moves: %s", len(trace), trace)
            return total, current
        name, move = _reduction_move(n, current)
        trace.append(name)
        current = act(move, current)
        total = total.compose(move.inverse())  # type: ignore[arg-type]
    logger.warning("Reduction moves did not converge after %d steps; searching", cap)
    found = _search_reduction(n, sigma, depth, cap)
    if found is None:
        raise ReductionError("reduction to the fundamental domain failed", moves=trace[-24:], cap=cap)
    return found


# ---------------------------------------------------------------------------
# Unfolding-space correspondence
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CubicPoint:
    """
    A point (a, b) of the unfolding space with the cycles and the integral
    basis that realize the charges: Z(S_i) = Σ_j basis[i][j]·∫_{cycle_j}.

    ``cycles`` of None means the standard cycles (finite n) or the two
    exponential contours (n = ∞).
    """

    n: Level
    a: complex
    b: complex
    cycles: tuple[pd.Contour, ...] | None = None
    basis: IntMatrix = IDENTITY

    @property
    def t(self) -> complex:
        if is_infinite(self.n):
            return self.a**3
        return schwarz.parameter_of(self.a, self.b)

    def to_dict(self) -> dict:
        data: dict = {
            "n": _level_label(self.n),
            "a": [self.a.real, self.a.imag],
            "b": [self.b.real, self.b.imag],
            "basis": [list(row) for row in self.basis],
        }
        try:
            t = self.t
            data["t"] = [t.real, t.imag]
        except SingularParameterError:
            data["t"] = None
        return data


def charges_from_cubic(n: Level, cubic: CubicPoint, engine: pd.PeriodEngine | None = None) -> pd.PeriodPair:
    """
    Charges (Z(S1), Z(S2)) at ``cubic``: the basis applied to the twisted
    periods over its cycles, or to the exponential periods at n = ∞.

    This is one branch of a multivalued correspondence; the branch is the one
    carried by the cycles.

    Raises
    ------
    DiscriminantError
        If the cubic has a repeated root (finite n).

    """
    n = _validate_level(n)
    if cubic.n != n:
        raise LevelMismatchError(f"level mismatch: {n} vs {cubic.n}", left=str(n), right=str(cubic.n))
    if is_infinite(n):
        values = np.array([pd.exp_period(cubic.a, cubic.b, j, engine) for j in (1, 2)], dtype=complex)
    else:
        values = np.array(pd.frame_at(cubic.a, cubic.b, cubic.cycles).periods(n, engine), dtype=complex)
    z = as_array(cubic.basis) @ values
    return pd.PeriodPair(complex(z[0]), complex(z[1]))


def _swap_rows(m: IntMatrix) -> IntMatrix:
    return m[1], m[0]


def cubic_from_stability(n: Level, sigma: StabilityPoint, engine: pd.PeriodEngine | None = None) -> CubicPoint:
    """
    The point of the unfolding space whose charges are those of ``sigma``.

    t = f_n⁻¹(g(σ)) fixes the orbit under the weighted ℂ*-action; the slice
    representative is then scaled by λ with λ^(3n−4) matching Z(S2). At
    n = ∞ the map coordinate gives a and b = log of the charge ratio.

    Raises
    ------
    NonCanonicalHeartError
        If ``sigma`` lies outside the closure of U_n.
    SingularParameterError
        At the two orbifold vertices (t = 0 and t = ∞) of finite level.
    ConvergenceError
        If the inverse map does not converge.

    """
    n = _check_level(n, sigma)
    verdict = classify_fundamental(n, sigma).verdict
    if verdict == "outside":
        raise NonCanonicalHeartError("stability condition is outside U_n; reduce it first", heart=sigma.heart.label())
    functional = sigma.functional()
    z = g_coordinate(sigma)

    if is_infinite(n):
        a_map = schwarz.invert_map(n, z)
        psi = schwarz.infty_basis_periods(a_map, 0, engine)
        b = cmath.log(complex(functional[1] / psi[0]))
        basis = _swap_rows(schwarz.calibrate_infty_branch().matrix)
        logger.debug("g=%s maps to a=%s, b=%s", z, a_map, b)
        return CubicPoint(n, schwarz.INFTY_SCALE * a_map, b, None, basis)

    if verdict == "vertex_sigma":
        raise SingularParameterError("the Σ-fixed vertex corresponds to t = ∞", t="inf", n=int(n))
    if verdict == "vertex_upsilon":
        raise SingularParameterError("the Υ-fixed vertex corresponds to t = 0", t="0", n=int(n))
    t = schwarz.invert_map(n, z)
    _, frame, psi = schwarz.map_frame(n, t, engine)
    scale = complex(functional[1] / psi[0])
    lam = cmath.exp(cmath.log(scale) / (3 * int(n) - 4))
    scaled = pd.scale_frame(frame, lam)
    basis = _swap_rows(schwarz.calibrate_branch(int(n)).matrix)
    logger.debug("g=%s maps to t=%s, λ=%s", z, t, lam)
    return CubicPoint(n, scaled.a, scaled.b, scaled.cycles, basis)


def sigma_on_cubic(cubic: CubicPoint, power: int = 1) -> CubicPoint:
    """
    Σ^power on the n = ∞ unfolding space: (a, b) ↦ (ωa, b − πi/3) per power,
    ω = e^{2πi/3}. Charges transform as Z ↦ Z∘Σ⁻¹.

    Raises
    ------
    InvalidLevelError
        For finite n.

    """
    if not is_infinite(cubic.n):
        raise InvalidLevelError("the Σ-action on (a, b) is defined at n = inf", n=_level_label(cubic.n))
    return CubicPoint(cubic.n, _OMEGA**power * cubic.a, cubic.b - power * 1j * math.pi / 3, None, cubic.basis)


# ---------------------------------------------------------------------------
# Wall crossing
# ---------------------------------------------------------------------------


def _simple_charges(functional: np.ndarray, heart: Heart) -> list[complex]:
    return [complex(functional @ s.kclass().as_vector()) for s in simples(heart)]


def wall_walk(sigma: StabilityPoint, target: tuple[complex, complex], steps: int = 64) -> StabilityPoint:
    """
    Move the central charge linearly from ``sigma`` to the one giving the
    simples of ``sigma.heart`` the charges ``target``, tilting whenever a
    simple's phase leaves (0, 1].

    Raises
    ------
    WallCrossingError
        If a charge vanishes on the path or a step moves a phase too far.

    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    start = sigma.functional()
    inverse = as_array(int_inverse(sigma.simple_matrix())).astype(float)
    end = np.array([complex(target[0]), complex(target[1])], dtype=complex) @ inverse
    scale = max(float(np.abs(start).max()), float(np.abs(end).max()))

    heart = sigma.heart
    charges = [sigma.z1, sigma.z2]
    lifts = [sigma.lift1, sigma.lift2]
    for step in range(1, steps + 1):
        s = step / steps
        functional = (1 - s) * start + s * end
        new = _simple_charges(functional, heart)
        for j in range(2):
            if abs(new[j]) <= 1e-12 * scale:
                raise WallCrossingError("a charge vanishes on the path", step=step, simple=j + 1)
            moved = cmath.phase(new[j] / charges[j]) / math.pi
            if abs(moved) > _MAX_LIFT_STEP:
                raise WallCrossingError("phase moved too far in one step; use more steps", step=step, steps=steps)
            lifts[j] += moved
        charges = new
        heart, charges, lifts = _settle(heart, functional, charges, lifts, step)
    return make_stability(heart, charges[0], charges[1])


def _settle(
    heart: Heart, functional: np.ndarray, charges: list[complex], lifts: list[float], step: int
) -> tuple[Heart, list[complex], list[float]]:
    """Tilt until both lifts are back in (0, 1]."""
    for _ in range(_MAX_TILTS_PER_STEP):
        low = [j for j in range(2) if lifts[j] <= 0]
        high = [j for j in range(2) if lifts[j] > 1]
        if low:
            j = min(low, key=lambda i: lifts[i])
            heart, target = tilt(heart, j + 1, "forward")
            moved_lift = lifts[j] + 1
        elif high:
            j = max(high, key=lambda i: lifts[i])
            heart, target = tilt(heart, j + 1, "backward")
            moved_lift = lifts[j] - 1
        else:
            return heart, charges, lifts
        charges = _simple_charges(functional, heart)
        lifts = [0.0, 0.0]
        lifts[target - 1] = moved_lift
        lifts[2 - target] = _lift_near_heart(charges[2 - target])
        logger.debug("Walk step %d: tilted simple %d, now at %s", step, j + 1, heart.label())
    raise WallCrossingError("too many tilts in one step; use more steps", step=step)
