"""Pydantic models for CLI inputs and outputs."""

from .outputs import (
    AutEqOutput,
    BraidEvalOutput,
    BraidWordOutput,
    ClassifyOutput,
    ErrorOutput,
    ExponentsOutput,
    GraphEdge,
    GraphNode,
    GraphOutput,
    InverseMapOutput,
    MapOutput,
    MonodromyOutput,
    PeriodPairOutput,
    PeriodValueOutput,
    ReduceOutput,
    RegionOutput,
    ResidualOutput,
    RoundTripOutput,
    StabilityOutput,
    WalkOutput,
    cplx,
    real,
)
from .render import NodeStyle, RenderSpec

__all__ = [
    # Output models
    "AutEqOutput",
    "BraidEvalOutput",
    "BraidWordOutput",
    "ClassifyOutput",
    "ErrorOutput",
    "ExponentsOutput",
    "GraphEdge",
    "GraphNode",
    "GraphOutput",
    "InverseMapOutput",
    "MapOutput",
    "MonodromyOutput",
    "PeriodPairOutput",
    "PeriodValueOutput",
    "ReduceOutput",
    "RegionOutput",
    "ResidualOutput",
    "RoundTripOutput",
    "StabilityOutput",
    "WalkOutput",
    # Input models
    "NodeStyle",
    "RenderSpec",
    # Helpers
    "cplx",
    "real",
]
