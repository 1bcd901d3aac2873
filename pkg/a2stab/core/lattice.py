"""
Exact K-theory of the CY_n A2 category.

K₀ is ℤ² in the basis ([S1], [S2]); every matrix acts on column vectors.
The Euler form is χ(x, y) = xᵀ·M·y with the first argument contravariant,
and a shift acts on classes by the sign rule [X[k]] = (−1)ᵏ[X].
"""

from __future__ import annotations

import dataclasses
import logging
from typing import TYPE_CHECKING, Literal

import numpy as np

from a2stab.utils.validation import Level, _validate_level, _validate_simple_index, is_infinite

if TYPE_CHECKING:
    from a2stab.core.tilting import ObjectDesc

logger = logging.getLogger(__name__)

Direction = Literal["forward", "inverse"]
IntMatrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: IntMatrix = ((1, 0), (0, 1))


def as_array(m: IntMatrix) -> np.ndarray:
    return np.array(m, dtype=np.int64)


def as_tuple(m: np.ndarray) -> IntMatrix:
    return ((int(m[0, 0]), int(m[0, 1])), (int(m[1, 0]), int(m[1, 1])))


def int_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix via the adjugate."""
    (a, b), (c, d) = m
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={det})")
    return ((d * det, -b * det), (-c * det, a * det))


@dataclasses.dataclass(frozen=True)
class KClass:
    """An element of K₀ ≅ ℤ² in the basis ([S1], [S2])."""

    coeff_s1: int
    coeff_s2: int

    def __add__(self, other: KClass) -> KClass:
        return KClass(self.coeff_s1 + other.coeff_s1, self.coeff_s2 + other.coeff_s2)

    def __neg__(self) -> KClass:
        return KClass(-self.coeff_s1, -self.coeff_s2)

    def as_vector(self) -> np.ndarray:
        return np.array([self.coeff_s1, self.coeff_s2], dtype=np.int64)

    @classmethod
    def from_vector(cls, v: np.ndarray | tuple[int, int]) -> KClass:
        return cls(int(v[0]), int(v[1]))

    def transform(self, m: IntMatrix) -> KClass:
        return KClass.from_vector(as_array(m) @ self.as_vector())

    def to_list(self) -> list[int]:
        return [self.coeff_s1, self.coeff_s2]


@dataclasses.dataclass(frozen=True)
class EulerMatrix:
    """Matrix of the Euler pairing χ(S_i, S_j) at level ``n``."""

    entries: IntMatrix
    n: Level

    def pair(self, x: KClass, y: KClass) -> int:
        """Return χ(x, y) = xᵀ·M·y."""
        return int(x.as_vector() @ as_array(self.entries) @ y.as_vector())


@dataclasses.dataclass(frozen=True)
class TwistMatrix:
    """Action of Tw_{S_i} (or its inverse) on K₀."""

    entries: IntMatrix
    generator: int
    direction: Direction
    n: int

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def as_array(self) -> np.ndarray:
        return as_array(self.entries)


def euler_form(n: Level) -> EulerMatrix:
    """
    Return the Euler pairing matrix at level ``n``.

    For finite n the diagonal is 1+(−1)ⁿ, χ(S1,S2) = −1 and χ(S2,S1) = (−1)ⁿ⁻¹;
    at n = ∞ there is no Serre-dual contribution and the matrix is [[1,−1],[0,1]].

    Example
    -------
    >>> euler_form(4).entries
    ((2, -1), (-1, 2))

    """
    n = _validate_level(n)
    if is_infinite(n):
        return EulerMatrix(((1, -1), (0, 1)), n)
    diag = 1 + (-1) ** n
    return EulerMatrix(((diag, -1), ((-1) ** (n - 1), diag)), n)


def twist_kmatrix(n: int, i: int, direction: Direction = "forward") -> TwistMatrix:
    """
    Matrix of [X] ↦ [X] − χ(S_i, X)[S_i] on K₀, or of its inverse.

    Raises
    ------
    InvalidLevelError
        For n = ∞, where there are no spherical twists.

    """
    n = int(_validate_level(n, finite=True))
    _validate_simple_index(i)
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    chi = euler_form(n).entries
    row = i - 1
    m = np.eye(2, dtype=np.int64)
    for j in range(2):
        m[row, j] -= chi[row][j]
    entries = as_tuple(m)
    if direction == "inverse":
        entries = int_inverse(entries)
    return TwistMatrix(entries, i, direction, n)


def shift_kclass(k: int, v: KClass) -> KClass:
    """Class of X[k] given the class of X."""
    return v if k % 2 == 0 else -v


_BASE_CLASSES = {
    "S1": KClass(1, 0),
    "S2": KClass(0, 1),
    "E": KClass(1, 1),
    "F": KClass(1, 1),
}


def base_class(base: str, n: Level) -> KClass:
    if base not in _BASE_CLASSES:
        raise ValueError(f"unknown base object {base!r}")
    if base == "F" and n != 2:
        raise ValueError("F only exists at level n = 2")
    return _BASE_CLASSES[base]


def class_of(obj: ObjectDesc) -> KClass:
    """
    K-class of an object in the orbit of {S1, S2, E, F}.

    The transporter's K-action is applied to the base class, then the object's
    own shift sign.
    """
    v = base_class(obj.base, obj.n)
    v = v.transform(obj.transporter.kmatrix())
    return shift_kclass(obj.shift, v)
