"""
Pydantic input model for exchange-graph rendering.

The model enforces the radius cap from settings and normalizes the level,
so the renderers can trust what they receive.
"""

from typing import Literal

from pydantic import BaseModel, Field, field_validator

from a2stab.utils.settings import settings
from a2stab.utils.validation import Level, _validate_level, parse_level


class NodeStyle(BaseModel):
    """Sizes and colors used by the SVG renderers."""

    node_size: float = Field(4.0, gt=0, description="Radius of a full-heart node in pixels")
    full_color: str = Field("#1f4e79", description="Fill color of full hearts")
    chain_color: str = Field("#9c6500", description="Fill color of chain hearts")
    edge_color: str = Field("#5f5f5f", description="Stroke color of tilt edges")
    tessellation_color: str = Field("#d0d0d0", description="Stroke color of the background tessellation")


class RenderSpec(BaseModel):
    """Input model for the ``graph`` command renderers."""

    n: int | float = Field(..., description="Level: an integer >= 2 or inf")
    radius: int = Field(3, ge=0, description="Exchange-graph radius around the canonical heart")
    style: NodeStyle = Field(default_factory=NodeStyle)
    layout: Literal["disc", "linear"] = Field("disc", description="Node placement")
    projective: bool = Field(True, description="Identify hearts up to shift")
    size: int = Field(640, ge=64, le=8192, description="Width and height of the SVG canvas")

    @field_validator("n", mode="before")
    @classmethod
    def validate_level(cls, v: object) -> Level:
        """Accept ``"inf"`` and integer literals as well as numbers."""
        if isinstance(v, str):
            return parse_level(v)
        return _validate_level(v)  # type: ignore[arg-type]

    @field_validator("radius")
    @classmethod
    def validate_radius(cls, v: int) -> int:
        """Keep the radius within the configured cap."""
        if v > settings.radius_cap:
            raise ValueError(f"radius must be <= {settings.radius_cap}, got {v}")
        return v
