"""DOT and SVG renderers."""
