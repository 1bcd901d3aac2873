"""
Pytest configuration file.

Defines fixtures shared by the a2stab test suite.
"""

import cmath
import math
from pathlib import Path

import numpy as np
import pytest

from a2stab.core import braidgroup as bg
from a2stab.core import tilting
from a2stab.core.stability import make_stability


@pytest.fixture
def project_root():
    """Return the project root directory."""
    return Path(__file__).parent.parent.parent


@pytest.fixture
def schema_dir(project_root):
    """Return the directory holding the shipped JSON schemas."""
    return project_root / "a2stab" / "schemas"


@pytest.fixture
def rng():
    """Return a seeded random generator."""
    return np.random.default_rng(20240607)


@pytest.fixture
def random_word(rng):
    """Return a factory for random braid words over {a, A, b, B}."""

    def make(length: int) -> str:
        return "".join(rng.choice(list("aAbB"), size=length))

    return make


@pytest.fixture
def random_auteq(rng, random_word):
    """Return a factory for random autoequivalences at a finite level."""

    def make(n: int, length: int = 6) -> bg.AutEq:
        return bg.auteq_make(n, bg.braid_eval(random_word(length)), int(rng.integers(-3, 4)))

    return make


@pytest.fixture
def polar():
    """Return a helper building r·exp(iπ·phase)."""

    def make(r: float, phase: float) -> complex:
        return r * cmath.exp(1j * math.pi * phase)

    return make


@pytest.fixture
def case_b_point(polar):
    """Return a stability condition at the canonical heart inside the case-(b) region."""

    def make(n):
        return make_stability(tilting.canonical_heart(n), polar(1.0, 0.6), polar(1.1, 0.45))

    return make


@pytest.fixture
def case_a_point(polar):
    """Return a stability condition at the canonical heart inside the case-(a) region."""

    def make(n):
        return make_stability(tilting.canonical_heart(n), polar(1.2, 0.3), polar(0.9, 0.55))

    return make
