"""
Reachable hearts, simple tilts and exchange graphs.

A heart is coordinatized as (Φ, k) and stands for Φ(⟨S1[k], S2⟩). At finite
n the chain ⟨S1⟩ → ⟨S1[1]⟩ → … ends at ⟨S1[n−2], S2⟩ = Υ(A), which gives the
identification

    (Φ, k) ≡ (Φ∘Υ[k+2−n], n−2−k)      with the two simples swapped.

Canonical hearts keep k in {0, …, n−3}; on the middle of a chain the
representative with the smaller braid sort key wins. At n = 2 the same
identification (Φ, 0) ≡ (Φ∘Υ, 0) holds because Υ fixes the canonical heart.
At n = ∞, Φ = Σ^p, [1] = Σ³ and chains never close.

Objects in the orbit of {S1, S2, E, F} are written as B(S1)[t] with
S2 = Σ(S1)[−1], E = Σ²(S1)[−1] and F = Σ*(S1), then normalized modulo the
stabilizer of S1 (σ1 shifts S1 by n−1, τ acts as [3n−4]).
"""

from __future__ import annotations

import dataclasses
import logging
from collections import deque
from typing import Literal

import networkx as nx

from a2stab.core import braidgroup as bg
from a2stab.core.lattice import KClass, class_of
from a2stab.errors import LevelMismatchError
from a2stab.utils.metrics import metrics
from a2stab.utils.validation import Level, _validate_level, _validate_simple_index, is_infinite

logger = logging.getLogger(__name__)

Base = Literal["S1", "S2", "E", "F"]
TiltDirection = Literal["forward", "backward"]
BallNode = tuple[bg.PSL2Element, int]


@dataclasses.dataclass(frozen=True)
class ObjectDesc:
    """The object transporter(base)[shift]."""

    transporter: bg.AnyAutEq
    base: Base
    shift: int = 0

    @property
    def n(self) -> Level:
        return self.transporter.n

    def shifted(self, k: int) -> ObjectDesc:
        return ObjectDesc(self.transporter, self.base, self.shift + k)

    def kclass(self) -> KClass:
        return class_of(self)

    def normal_form(self) -> tuple:
        """Hashable key identifying the object; objects are isomorphic iff keys agree."""
        if isinstance(self.transporter, bg.AutEqInfty):
            power, extra = {"S1": (0, 0), "S2": (1, -1), "E": (2, -1)}[self.base]
            p = self.transporter.sigma_power + power
            return ("inf", p % 3, self.shift + extra + p // 3)
        move, extra = _base_transport(self.n, self.base)
        composite = self.transporter.compose(move)
        return _normalize_s1_image(composite.braid, composite.shift + extra + self.shift, self.n)

    def object_type(self) -> tuple:
        """Normal form with the shift dropped."""
        return self.normal_form()[:-1]

    def shift_offset(self, reference: ObjectDesc) -> int | None:
        """Return s with self ≅ reference[s], or None if they are not shifts of each other."""
        mine, theirs = self.normal_form(), reference.normal_form()
        if mine[:-1] != theirs[:-1]:
            return None
        return int(mine[-1] - theirs[-1])

    def describe(self) -> str:
        inner = self.base if self.transporter.is_identity else f"{_name(self.transporter)}({self.base})"
        return inner if self.shift == 0 else f"{inner}[{self.shift}]"


def _name(x: bg.AnyAutEq) -> str:
    if isinstance(x, bg.AutEqInfty):
        return f"Σ^{x.sigma_power}"
    return f"⟨{bg.recover_word(x.braid) or 'e'};{x.shift}⟩"


def _base_transport(n: int, base: Base) -> tuple[bg.AutEq, int]:
    if base == "S1":
        return bg.identity(n), 0  # type: ignore[return-value]
    if base == "S2":
        return bg.sigma(n), -1  # type: ignore[return-value]
    if base == "E":
        s = bg.sigma(n)
        return s.compose(s), -1  # type: ignore[arg-type,return-value]
    if base == "F":
        return bg.sigma_star(n), 0
    raise ValueError(f"unknown base object {base!r}")


def _normalize_s1_image(braid: bg.BraidElement, t: int, n: int) -> tuple:
    (a, b), (c, d) = braid.sl2
    e = braid.expsum
    j0 = 0 if (c > 0 or (c == 0 and a > 0)) else 1
    sign = -1 if j0 else 1
    a, b, c, d = sign * a, sign * b, sign * c, sign * d
    m = -(d // c) if c != 0 else -b
    b, d = a * m + b, c * m + d
    e2 = e + m + 6 * j0
    lift = -(e2 // 12)
    j = j0 + 2 * lift
    return (n, (a, b, c, d), e2 + 12 * lift, t - m * (n - 1) - j * (3 * n - 4))


def canonical_object(n: Level, base: Base) -> ObjectDesc:
    return ObjectDesc(bg.identity(n), base, 0)


@dataclasses.dataclass(frozen=True)
class Heart:
    """The heart phi(⟨S1[k], S2⟩)."""

    phi: bg.AnyAutEq
    k: int = 0

    @property
    def n(self) -> Level:
        return self.phi.n

    @property
    def is_full(self) -> bool:
        return self.k == 0

    def projective(self) -> Heart:
        return Heart(self.phi.projective(), self.k)

    def sort_key(self) -> tuple:
        return (self.k, self.phi.shift, self.phi.sort_key())

    def to_dict(self) -> dict:
        return {**self.phi.to_dict(), "k": self.k}

    def label(self) -> str:
        return f"({_name(self.phi)}, {self.k})"


@dataclasses.dataclass(frozen=True)
class ExchangeGraph:
    """BFS ball of hearts with tilt edges stored in a networkx MultiDiGraph."""

    n: Level
    radius: int
    projective: bool
    graph: nx.MultiDiGraph

    @property
    def nodes(self) -> list[Heart]:
        return sorted(self.graph.nodes, key=lambda h: self.graph.nodes[h]["order"])

    def forward_edges(self) -> list[tuple[Heart, Heart, int]]:
        return [(u, v, data["simple"]) for u, v, data in self.graph.edges(data=True) if data["direction"] == "forward"]

    def full_hearts(self) -> list[Heart]:
        return [h for h in self.nodes if h.is_full]


def canonical_heart(n: Level) -> Heart:
    return Heart(bg.identity(_validate_level(n)), 0)


def simples(h: Heart) -> tuple[ObjectDesc, ObjectDesc]:
    """The two simples (Φ(S1[k]), Φ(S2))."""
    return ObjectDesc(h.phi, "S1", h.k), ObjectDesc(h.phi, "S2", 0)


def _alternate(h: Heart) -> Heart:
    n = int(h.n)
    return Heart(h.phi.compose(bg.upsilon(n)).shifted(h.k + 2 - n), n - 2 - h.k)  # type: ignore[arg-type]


def canonicalize(h: Heart) -> tuple[Heart, bool]:
    """
    Return the canonical coordinates of ``h`` and whether its simples were swapped.

    Raises
    ------
    ValueError
        If the chain index is outside its range.

    """
    if is_infinite(h.n):
        if h.k < 0:
            raise ValueError(f"chain index must be >= 0, got {h.k}")
        return h, False
    n = int(h.n)
    if not 0 <= h.k <= n - 2:
        raise ValueError(f"chain index must be in [0, {n - 2}], got {h.k}")
    if n == 2:
        other = _alternate(h)
        if other.phi.sort_key() < h.phi.sort_key():
            return other, True
        return h, False
    if h.k == 0:
        return h, False
    other = _alternate(h)
    if other.k == 0 or (h.k != n - 2 and other.phi.sort_key() < h.phi.sort_key()):
        return other, True
    return h, False


def heart_representations(h: Heart) -> list[tuple[Heart, bool]]:
    """All coordinate forms (Φ, k) with k in the canonical range, flagged by simple swap."""
    reps = [(h, False)]
    if is_infinite(h.n):
        return reps
    n = int(h.n)
    if n == 2 or 1 <= h.k <= n - 3:
        other = _alternate(h)
        if other != h:
            reps.append((other, True))
    return reps


def _swap(h: Heart, j: int) -> tuple[Heart, int]:
    canon, swapped = canonicalize(h)
    return canon, (3 - j if swapped else j)


def forward_tilt_indexed(h: Heart, i: int) -> tuple[Heart, int]:
    """
    Forward (right) tilt at simple ``i``.

    Returns the canonical target heart and the index of the tilted simple
    S_i[1] among the target's simples.
    """
    _validate_simple_index(i)
    metrics.record_tilt()
    phi, k = h.phi, h.k
    if is_infinite(h.n):
        p = phi.sigma_power  # type: ignore[union-attr]
        if k == 0 and i == 2:
            return Heart(bg.AutEqInfty(p + 1), 0), 1
        if i == 1:
            return Heart(phi, k + 1), 1
        return Heart(bg.AutEqInfty(p + 3), k - 1), 2
    n = int(h.n)
    if k == 0 and i == 2:
        return _swap(Heart(phi.compose(bg.sigma(n)), 0), 1)  # type: ignore[arg-type]
    if k == 0 and n == 2:
        return _swap(Heart(phi.compose(bg.sigma_star(n)), 0), 2)  # type: ignore[arg-type]
    if i == 1:
        return _swap(Heart(phi, k + 1), 1)
    return _swap(Heart(phi.shifted(1), k - 1), 2)


def backward_tilt_indexed(h: Heart, i: int) -> tuple[Heart, int]:
    """Backward (left) tilt at simple ``i``; inverse of :func:`forward_tilt_indexed`."""
    _validate_simple_index(i)
    metrics.record_tilt()
    phi, k = h.phi, h.k
    if is_infinite(h.n):
        p = phi.sigma_power  # type: ignore[union-attr]
        if i == 1 and k == 0:
            return Heart(bg.AutEqInfty(p - 1), 0), 2
        if i == 1:
            return Heart(phi, k - 1), 1
        return Heart(bg.AutEqInfty(p - 3), k + 1), 2
    n = int(h.n)
    if i == 1 and k == 0:
        return _swap(Heart(phi.compose(bg.sigma(n).inverse()), 0), 2)  # type: ignore[arg-type]
    if i == 1:
        return _swap(Heart(phi, k - 1), 1)
    if k == 0 and n == 2:
        return _swap(Heart(phi.compose(bg.sigma_star(n).inverse()), 0), 1)  # type: ignore[arg-type]
    return _swap(Heart(phi.shifted(-1), k + 1), 2)


def forward_tilt(h: Heart, i: int) -> Heart:
    return forward_tilt_indexed(h, i)[0]


def backward_tilt(h: Heart, i: int) -> Heart:
    return backward_tilt_indexed(h, i)[0]


def tilt(h: Heart, i: int, direction: TiltDirection) -> tuple[Heart, int]:
    if direction == "forward":
        return forward_tilt_indexed(h, i)
    return backward_tilt_indexed(h, i)


def apply_auteq_tracked(psi: bg.AnyAutEq, h: Heart) -> tuple[Heart, bool]:
    """Apply ``psi`` and report whether the canonical simples come out swapped."""
    if psi.n != h.n:
        raise LevelMismatchError(f"level mismatch: {psi.n} vs {h.n}", left=str(psi.n), right=str(h.n))
    return canonicalize(Heart(psi.compose(h.phi), h.k))  # type: ignore[arg-type]


def apply_auteq(psi: bg.AnyAutEq, h: Heart) -> Heart:
    return apply_auteq_tracked(psi, h)[0]


def _graph_node(h: Heart, projective: bool) -> Heart:
    return h.projective() if projective else h


def _bfs(n: Level, radius: int, projective: bool) -> ExchangeGraph:
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    n = _validate_level(n)
    start = canonical_heart(n)
    graph = nx.MultiDiGraph()
    graph.add_node(start, order=0, depth=0)
    queue = deque([start])
    while queue:
        node = queue.popleft()
        depth = graph.nodes[node]["depth"]
        for direction in ("forward", "backward"):
            for i in (1, 2):
                target, j = tilt(node, i, direction)  # type: ignore[arg-type]
                target = _graph_node(target, projective)
                if target not in graph:
                    # Boundary nodes only get edges back into the ball.
                    if depth == radius:
                        continue
                    graph.add_node(target, order=graph.number_of_nodes(), depth=depth + 1)
                    queue.append(target)
                graph.add_edge(node, target, key=f"{direction}{i}", simple=i, direction=direction, target_index=j)
    logger.debug("Exchange graph n=%s radius=%d: %d nodes", n, radius, graph.number_of_nodes())
    return ExchangeGraph(n, radius, projective, graph)


def exchange_graph(n: Level, radius: int) -> ExchangeGraph:
    """BFS ball of radius ``radius`` around the canonical heart under forward and backward tilts."""
    return _bfs(n, radius, projective=False)


def projective_exchange_graph(n: Level, radius: int) -> ExchangeGraph:
    """As :func:`exchange_graph`, with hearts identified up to the shift functor."""
    return _bfs(n, radius, projective=True)


def psl2_ball(n: int, radius: int) -> tuple[int, int]:
    """
    Node and forward-edge counts of the projective exchange graph, enumerated
    in PSL(2,ℤ) without any tilting rule.

    At n = 2 the nodes are classes g ~ gῩ and the moves are right
    multiplication by the images of Σ and Σ*. For n >= 3 a node is a pair
    (g, k) with k in {0, …, n−3}, taken modulo (g, k) ~ (gῩ, n−2−k) for
    interior k; the moves are g ↦ gΣ̄ at k = 0 and k ↦ k ± 1 along the chain,
    whose far end (g, n−2) is (gῩ, 0). Forward edges are counted between
    nodes of the ball.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    n = int(_validate_level(n, finite=True))
    s = bg.psl2_quotient(bg.sigma(n))
    ups = bg.psl2_quotient(bg.upsilon(n))

    if n == 2:
        star = bg.psl2_quotient(bg.sigma_star(n))

        def node(g: bg.PSL2Element, k: int = 0) -> BallNode:
            return min((g, 0), (g @ ups, 0), key=lambda x: x[0].matrix)

        def forward(g: bg.PSL2Element, k: int) -> list[BallNode]:
            return [node(g @ s), node(g @ star)]

        def neighbours(g: bg.PSL2Element, k: int) -> list[BallNode]:
            moves = (s, s.inverse(), star, star.inverse())
            return [node(rep @ m) for m in moves for rep in (g, g @ ups)]

    else:
        top = n - 2

        def node(g: bg.PSL2Element, k: int = 0) -> BallNode:
            if k == top:
                return g @ ups, 0
            if k == 0:
                return g, 0
            return min((g, k), (g @ ups, top - k), key=lambda x: (x[0].matrix, x[1]))

        def forward(g: bg.PSL2Element, k: int) -> list[BallNode]:
            return [node(g, k + 1), node(g @ s) if k == 0 else node(g, k - 1)]

        def neighbours(g: bg.PSL2Element, k: int) -> list[BallNode]:
            below = node(g @ s.inverse()) if k == 0 else node(g, k - 1)
            return forward(g, k) + [below, node(g, k + 1)]

    start = node(bg.psl2_normalize(((1, 0), (0, 1))))
    depth = {start: 0}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if depth[current] == radius:
            continue
        for target in neighbours(*current):
            if target not in depth:
                depth[target] = depth[current] + 1
                queue.append(target)
    edges = sum(1 for current in depth for target in forward(*current) if target in depth)
    return len(depth), edges
