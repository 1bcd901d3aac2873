"""
Pydantic models for the JSON written by every CLI subcommand.

Complex numbers travel as ``[re, im]`` pairs and levels as an integer or
``"inf"``. Non-finite reals are written as the strings ``"inf"``/``"-inf"``
so the output stays valid JSON.
"""

import math
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field

Complex = Annotated[list[float], Field(min_length=2, max_length=2)]
LevelLabel = int | Literal["inf"]
Real = float | Literal["inf", "-inf"]
IntMatrixOut = Annotated[list[list[int]], Field(min_length=2, max_length=2)]


def cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def real(x: float) -> float | str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


class ErrorOutput(BaseModel):
    """Error object written on stdout for domain failures (exit code 3)."""

    code: str = Field(..., description="Stable error code")
    message: str = Field(..., description="Human-readable message")
    context: dict[str, Any] = Field(default_factory=dict, description="Offending values")


# Braid group


class BraidWordOutput(BaseModel):
    """One evaluated braid word."""

    word: str = Field(..., description="Word as given")
    expanded: str = Field(..., description="Word with groups and powers expanded")
    canonical_word: str = Field(..., description="Word recovered from the canonical pair")
    sl2: IntMatrixOut
    expsum: int


class BraidEvalOutput(BaseModel):
    """Output of ``braid eval``."""

    words: list[BraidWordOutput]
    equal: bool | None = Field(None, description="Whether all words give the same braid (two or more words)")


class AutEqOutput(BaseModel):
    """Canonical form of an autoequivalence (``braid auteq`` and ``braid compose``)."""

    n: LevelLabel
    word: str | None = Field(None, description="Braid word of the canonical pair (finite n)")
    shift: int | None = None
    sl2: IntMatrixOut | None = None
    expsum: int | None = None
    sigma_power: int | None = Field(None, description="p with Φ = Σ^p (n = inf)")
    kmatrix: IntMatrixOut
    psl2: IntMatrixOut
    projective_order: int | None = Field(None, description="Order in PSL(2,Z), None when infinite")


# Exchange graphs


class GraphNode(BaseModel):
    id: str
    label: str
    k: int
    depth: int
    full: bool
    x: float
    y: float


class GraphEdge(BaseModel):
    source: str
    target: str
    simple: int = Field(..., ge=1, le=2)


class GraphOutput(BaseModel):
    """Output of ``graph --format json``."""

    n: LevelLabel
    radius: int
    projective: bool
    layout: Literal["disc", "linear"]
    nodes: list[GraphNode]
    edges: list[GraphEdge]


# Periods and ODE checks


class PeriodValueOutput(BaseModel):
    """Output of ``periods eval``."""

    n: LevelLabel
    a: Complex
    b: Complex
    cycle: int = Field(..., ge=1, le=2)
    value: Complex


class PeriodPairOutput(BaseModel):
    """Output of ``periods pair``."""

    n: LevelLabel
    a: Complex
    b: Complex
    phi1: Complex
    phi2: Complex
    ratio: Complex


class ResidualOutput(BaseModel):
    """Output of ``ode check`` and ``ode airy``."""

    kind: Literal["hypergeometric", "airy"]
    n: LevelLabel
    point: Complex
    residual: float
    threshold: float
    ok: bool


class MonodromyOutput(BaseModel):
    """Output of ``monodromy``."""

    n: int
    center: Complex
    radius: float
    samples: int
    matrix: list[list[Complex]]
    integer_matrix: IntMatrixOut | None = Field(None, description="Rounded matrix when all entries are integral")
    trace: Complex
    determinant: Complex


# Conformal maps and regions


class MapOutput(BaseModel):
    """Output of ``map eval``."""

    n: LevelLabel
    t_re: float
    t_im: float
    z_re: float
    z_im: float
    branch_tag: int


class InverseMapOutput(BaseModel):
    """Output of ``map invert``: the parameter t (finite n) or a (n = inf) with f(·) = z."""

    n: LevelLabel
    z: Complex
    parameter: Literal["t", "a"]
    value: Complex


class ExponentsOutput(BaseModel):
    """Output of ``map exponents``."""

    n: int
    exact: list[float]
    numeric: dict[str, float] | None = None


class RegionOutput(BaseModel):
    """Output of ``region classify``."""

    n: LevelLabel
    z: Complex
    verdict: str
    distance_estimate: Real


# Stability conditions


class HeartOutput(BaseModel):
    n: LevelLabel
    k: int
    shift: int | None = None
    sl2: IntMatrixOut | None = None
    expsum: int | None = None
    sigma_power: int | None = None


class StabilityOutput(BaseModel):
    n: LevelLabel
    heart: HeartOutput
    z1: Complex
    z2: Complex
    lift1: float
    lift2: float


class SemistableEntry(BaseModel):
    object: str
    phase: float
    charge: Complex


class ClassifyOutput(BaseModel):
    """Output of ``stab classify``."""

    n: LevelLabel
    stability: StabilityOutput
    verdict: str
    semistable: list[SemistableEntry]
    canonical: list[str] = Field(..., description="Which of S1, S2, E, F are semistable up to shift")
    g: Complex | None = Field(None, description="Modulus coordinate when S1 and S2 are semistable")


class ReduceOutput(BaseModel):
    """Output of ``stab reduce``: σ = Φ·σ₀ with σ₀ in the closure of U_n."""

    n: LevelLabel
    auteq: AutEqOutput
    reduced: StabilityOutput
    verdict: str
    g: Complex


class RoundTripOutput(BaseModel):
    """Output of ``stab roundtrip``."""

    n: LevelLabel
    samples: int
    seed: int
    tol: float
    max_relative_error: float
    failures: int
    ok: bool


class WalkOutput(BaseModel):
    """Output of ``stab walk``."""

    n: LevelLabel
    steps: int
    start: StabilityOutput
    end: StabilityOutput
    heart_changed: bool
