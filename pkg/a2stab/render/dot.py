"""
DOT serialization of exchange graphs.

Nodes are numbered in BFS discovery order and only forward tilts are
written, each as one directed edge labelled by the tilted simple, so the
edge count equals ``len(graph.forward_edges())``.
"""

import logging

from a2stab.core.tilting import ExchangeGraph, Heart
from a2stab.utils.validation import is_infinite

logger = logging.getLogger(__name__)

_FULL_COLOR = "#1f4e79"
_CHAIN_COLOR = "#9c6500"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_line(index: int, heart: Heart, depth: int) -> str:
    shape, color = ("circle", _FULL_COLOR) if heart.is_full else ("box", _CHAIN_COLOR)
    attrs = {
        "label": heart.label(),
        "shape": shape,
        "color": color,
        "depth": str(depth),
    }
    body = ", ".join(f"{key}={_quote(value)}" for key, value in attrs.items())
    return f"  h{index} [{body}];"


def to_dot(eg: ExchangeGraph, name: str = "exchange") -> str:
    """
    Render ``eg`` as a DOT digraph.

    Example
    -------
    >>> from a2stab.core.tilting import projective_exchange_graph
    >>> to_dot(projective_exchange_graph(3, 1)).splitlines()[0]
    'digraph "exchange" {'

    """
    index = {heart: i for i, heart in enumerate(eg.nodes)}
    level = "inf" if is_infinite(eg.n) else str(int(eg.n))
    lines = [
        f"digraph {_quote(name)} {{",
        f"  graph [n={_quote(level)}, radius={_quote(str(eg.radius))}, projective={_quote(str(eg.projective).lower())}];",
        "  node [fontname=\"Helvetica\", fontsize=9];",
    ]
    for heart in eg.nodes:
        lines.append(_node_line(index[heart], heart, eg.graph.nodes[heart]["depth"]))
    edges = sorted((index[u], index[v], i) for u, v, i in eg.forward_edges())
    for u, v, i in edges:
        lines.append(f"  h{u} -> h{v} [label={_quote(f'S{i}')}];")
    lines.append("}")
    logger.debug("DOT for n=%s radius=%d: %d nodes, %d edges", level, eg.radius, len(index), len(edges))
    return "\n".join(lines) + "\n"
