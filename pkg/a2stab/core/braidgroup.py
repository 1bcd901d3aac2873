"""
Br₃ and the autoequivalence groups of the CY_n A2 category.

A braid is stored as the pair (SL(2,ℤ) image, exponent sum). The kernel of
Br₃ → SL(2,ℤ) is ⟨τ²⟩ with τ = (σ1σ2)³, and the exponent sum (12 on τ²) is
injective on it, so the pair decides the word problem.

Letters: ``a`` = σ1, ``A`` = σ1⁻¹, ``b`` = σ2, ``B`` = σ2⁻¹, with
σ1 ↦ [[1,1],[0,1]] and σ2 ↦ [[1,0],[−1,1]]. On the category, σ_i acts as the
inverse spherical twist Tw_{S_i}⁻¹, so Σ = (Tw₁Tw₂)[n−1] is the word ``AB``
with shift n−1.

Autoequivalences at finite n are (braid, shift) pairs modulo (τ, −(3n−4)).
The canonical representative has exponent sum in [0, 6).
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from typing import Union

import numpy as np

from a2stab.core.lattice import IDENTITY, IntMatrix, as_array, as_tuple, twist_kmatrix
from a2stab.errors import LevelMismatchError
from a2stab.utils.validation import Level, _validate_level, is_infinite, parse_word

logger = logging.getLogger(__name__)

_U: IntMatrix = ((1, 1), (0, 1))
_U_INV: IntMatrix = ((1, -1), (0, 1))
_L: IntMatrix = ((1, 0), (-1, 1))
_L_INV: IntMatrix = ((1, 0), (1, 1))

_LETTER_MATRIX = {"a": _U, "A": _U_INV, "b": _L, "B": _L_INV}
_LETTER_EXP = {"a": 1, "A": -1, "b": 1, "B": -1}
_INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}

TAU_WORD = "ababab"
_TAU_INV_WORD = "BABABA"
# S⁻¹ = σ1σ2σ1 maps [[a,b],[c,d]] to [[c,d],[−a,−b]] on the left.
_S_INV_WORD = "aba"
_S: IntMatrix = ((0, -1), (1, 0))

# Matrix of [[0,1],[−1,1]]: the K-action of Σ at every level.
SIGMA_KMATRIX: IntMatrix = ((0, 1), (-1, 1))


def _mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _neg(x: IntMatrix) -> IntMatrix:
    (a, b), (c, d) = x
    return ((-a, -b), (-c, -d))


@dataclasses.dataclass(frozen=True)
class BraidElement:
    """An element of Br₃ as (SL(2,ℤ) image, exponent sum)."""

    sl2: IntMatrix = IDENTITY
    expsum: int = 0

    def __matmul__(self, other: BraidElement) -> BraidElement:
        return BraidElement(_mul(self.sl2, other.sl2), self.expsum + other.expsum)

    def inverse(self) -> BraidElement:
        (a, b), (c, d) = self.sl2
        return BraidElement(((d, -b), (-c, a)), -self.expsum)

    @property
    def is_identity(self) -> bool:
        return self.sl2 == IDENTITY and self.expsum == 0

    def sort_key(self) -> tuple[int, ...]:
        (a, b), (c, d) = self.sl2
        return (self.expsum, a, b, c, d)

    def to_dict(self) -> dict:
        return {"sl2": [list(r) for r in self.sl2], "expsum": self.expsum}


def braid_eval(word: str) -> BraidElement:
    """
    Evaluate a braid word over ``{a, A, b, B}``.

    Letter matrices are multiplied left to right; the exponent sum is the
    signed letter count. Parenthesised powers such as ``"(ab)^3"`` are
    expanded first.

    Example
    -------
    >>> braid_eval("aba") == braid_eval("bab")
    True

    """
    letters = parse_word(word)
    m = IDENTITY
    for ch in letters:
        m = _mul(m, _LETTER_MATRIX[ch])
    return BraidElement(m, sum(_LETTER_EXP[ch] for ch in letters))


def invert_word(word: str) -> str:
    return "".join(_INVERSE_LETTER[ch] for ch in reversed(parse_word(word)))


def _runs(word: str) -> list[tuple[str, int]]:
    return [(ch, len(list(group))) for ch, group in itertools.groupby(word)]


def recover_word(element: BraidElement) -> str:
    """
    Return a word evaluating to ``element``.

    Euclid on the bottom row of the matrix, peeling off powers of σ1 and the
    order-4 element S⁻¹ = σ1σ2σ1, then correcting the exponent sum by powers
    of τ² (which act trivially on SL(2,ℤ)).

    Raises
    ------
    ValueError
        If the pair is not the image of any braid (exponent sum off by a
        non-multiple of 12).

    """
    word = _sl2_word(element.sl2)
    diff = element.expsum - sum(_LETTER_EXP[ch] for ch in word)
    if diff % 12:
        raise ValueError(f"no braid has image {element.sl2} with exponent sum {element.expsum}")
    k = diff // 12
    return word + ((TAU_WORD * 2) * k if k > 0 else (_TAU_INV_WORD * 2) * -k)


def _sl2_word(m: IntMatrix) -> str:
    pieces: list[str] = []
    while m[1][0] != 0:
        q = m[0][0] // m[1][0]
        if q:
            m = _mul(((1, -q), (0, 1)), m)
            pieces.append("a" * q if q > 0 else "A" * -q)
        m = _mul(_S, m)
        pieces.append(_S_INV_WORD)
    if m[0][0] == 1:
        x = m[0][1]
        pieces.append("a" * x if x > 0 else "A" * -x)
    else:
        # m = −U^x
        x = -m[0][1]
        pieces.append(TAU_WORD)
        pieces.append("a" * x if x > 0 else "A" * -x)
    return "".join(pieces)


@dataclasses.dataclass(frozen=True)
class AutEq:
    """
    A canonical autoequivalence at finite level: (braid, shift) with the
    braid's exponent sum in [0, 6).

    Build instances through :func:`auteq_make` rather than the constructor.
    """

    braid: BraidElement
    shift: int
    n: int

    def compose(self, other: AutEq) -> AutEq:
        """Return self ∘ other."""
        _check_same_level(self, other)
        return auteq_make(self.n, self.braid @ other.braid, self.shift + other.shift)

    def __mul__(self, other: AutEq) -> AutEq:
        return self.compose(other)

    def inverse(self) -> AutEq:
        return auteq_make(self.n, self.braid.inverse(), -self.shift)

    def shifted(self, k: int) -> AutEq:
        return AutEq(self.braid, self.shift + k, self.n)

    def projective(self) -> AutEq:
        """Representative with the shift component dropped."""
        return AutEq(self.braid, 0, self.n)

    def power(self, p: int) -> AutEq:
        base = self if p >= 0 else self.inverse()
        result = identity(self.n)
        for _ in range(abs(p)):
            result = result.compose(base)
        return result

    @property
    def is_identity(self) -> bool:
        return self.braid.is_identity and self.shift == 0

    def sort_key(self) -> tuple[int, ...]:
        return self.braid.sort_key()

    def kmatrix(self) -> IntMatrix:
        return kaction(self)

    def to_dict(self) -> dict:
        return {**self.braid.to_dict(), "shift": self.shift, "n": self.n}


@dataclasses.dataclass(frozen=True)
class AutEqInfty:
    """An element Σ^p of Aut(D_∞) ≅ ℤ; Σ³ is the shift [1]."""

    sigma_power: int

    n = math.inf

    def compose(self, other: AutEqInfty) -> AutEqInfty:
        _check_same_level(self, other)
        return AutEqInfty(self.sigma_power + other.sigma_power)

    def __mul__(self, other: AutEqInfty) -> AutEqInfty:
        return self.compose(other)

    def inverse(self) -> AutEqInfty:
        return AutEqInfty(-self.sigma_power)

    def shifted(self, k: int) -> AutEqInfty:
        return AutEqInfty(self.sigma_power + 3 * k)

    @property
    def shift(self) -> int:
        return self.sigma_power // 3

    def projective(self) -> AutEqInfty:
        return AutEqInfty(self.sigma_power % 3)

    def power(self, p: int) -> AutEqInfty:
        return AutEqInfty(self.sigma_power * p)

    @property
    def is_identity(self) -> bool:
        return self.sigma_power == 0

    def sort_key(self) -> tuple[int, ...]:
        return (self.sigma_power,)

    def kmatrix(self) -> IntMatrix:
        return as_tuple(np.linalg.matrix_power(as_array(SIGMA_KMATRIX), self.sigma_power % 6))

    def to_dict(self) -> dict:
        return {"sigma_power": self.sigma_power, "n": "inf"}


AnyAutEq = Union[AutEq, AutEqInfty]


def _check_same_level(x: AnyAutEq, y: AnyAutEq) -> None:
    if x.n != y.n:
        raise LevelMismatchError(f"level mismatch: {x.n} vs {y.n}", left=str(x.n), right=str(y.n))


def auteq_make(n: int, braid: BraidElement, shift: int) -> AutEq:
    """
    Canonical form of (braid, shift) at level ``n``.

    Each absorbed τ^j negates j times the SL(2,ℤ) image, lowers the exponent
    sum by 6j and adds j·(3n−4) to the shift.

    Example
    -------
    >>> auteq_make(3, braid_eval("ababab"), 0).shift
    5

    """
    n = int(_validate_level(n, finite=True))
    j = braid.expsum // 6
    sl2 = braid.sl2 if j % 2 == 0 else _neg(braid.sl2)
    return AutEq(BraidElement(sl2, braid.expsum - 6 * j), shift + j * (3 * n - 4), n)


def identity(n: Level) -> AnyAutEq:
    if is_infinite(_validate_level(n)):
        return AutEqInfty(0)
    return auteq_make(int(n), BraidElement(), 0)


def shift_functor(n: Level, k: int = 1) -> AnyAutEq:
    if is_infinite(_validate_level(n)):
        return AutEqInfty(3 * k)
    return auteq_make(int(n), BraidElement(), k)


def sigma(n: Level) -> AnyAutEq:
    """Σ = (Tw_{S1}Tw_{S2})[n−1]; at n = ∞ the generator Σ."""
    if is_infinite(_validate_level(n)):
        return AutEqInfty(1)
    return auteq_make(int(n), braid_eval("AB"), int(n) - 1)


def upsilon(n: int) -> AutEq:
    """Υ = (Tw_{S2}Tw_{S1}Tw_{S2})[2n−3]."""
    n = int(_validate_level(n, finite=True))
    return auteq_make(n, braid_eval("BAB"), 2 * n - 3)


def sigma_star(n: int) -> AutEq:
    """Σ* = (Tw_{S2}Tw_{S1})[1], the extra tilt generator at n = 2."""
    n = int(_validate_level(n, finite=True))
    if n != 2:
        raise ValueError("Σ* is only used at level n = 2")
    return auteq_make(n, braid_eval("BA"), 1)


def tau(n: int) -> AutEq:
    return auteq_make(int(_validate_level(n, finite=True)), braid_eval(TAU_WORD), 0)


def auteq_from_word(n: Level, word: str, shift: int = 0) -> AnyAutEq:
    """Autoequivalence given by a braid word and a shift."""
    if is_infinite(_validate_level(n)):
        raise ValueError("braid words do not act at n = inf; use AutEqInfty")
    return auteq_make(int(n), braid_eval(word), shift)


def auteq_compose(x: AnyAutEq, y: AnyAutEq) -> AnyAutEq:
    return x.compose(y)  # type: ignore[arg-type]


def auteq_inverse(x: AnyAutEq) -> AnyAutEq:
    return x.inverse()


@dataclasses.dataclass(frozen=True)
class PSL2Element:
    """An SL(2,ℤ) matrix up to sign, normalized so the first nonzero entry is positive."""

    matrix: IntMatrix

    def __matmul__(self, other: PSL2Element) -> PSL2Element:
        return psl2_normalize(_mul(self.matrix, other.matrix))

    def inverse(self) -> PSL2Element:
        (a, b), (c, d) = self.matrix
        return psl2_normalize(((d, -b), (-c, a)))

    @property
    def is_identity(self) -> bool:
        return self.matrix == IDENTITY

    def order(self, limit: int = 12) -> int | None:
        """Projective order, or None when it exceeds ``limit`` (infinite order)."""
        acc = self
        for k in range(1, limit + 1):
            if acc.is_identity:
                return k
            acc = acc @ self
        return None


def psl2_normalize(m: IntMatrix) -> PSL2Element:
    flat = [m[0][0], m[0][1], m[1][0], m[1][1]]
    first = next(v for v in flat if v != 0)
    return PSL2Element(m if first > 0 else _neg(m))


def psl2_quotient(x: AnyAutEq) -> PSL2Element:
    """
    Image in PAuts ≅ PSL(2,ℤ): the shift is discarded and the matrix taken up to sign.

    At n = ∞ the image of Σ^p is the class of [[0,−1],[1,1]]^p.
    """
    if isinstance(x, AutEqInfty):
        return psl2_normalize(as_tuple(np.linalg.matrix_power(as_array(braid_eval("AB").sl2), x.sigma_power % 3)))
    return psl2_normalize(x.braid.sl2)


def kaction(x: AnyAutEq) -> IntMatrix:
    """
    Matrix of the autoequivalence on K₀.

    A word for the braid is recovered from the canonical pair, each letter is
    replaced by a twist matrix (``a`` ↦ T1⁻¹, ``A`` ↦ T1, ``b`` ↦ T2⁻¹,
    ``B`` ↦ T2) and the product is multiplied by (−1)^shift. τ² acts as the
    identity on K₀, so the correction powers are skipped.

    Example
    -------
    >>> kaction(sigma(3))
    ((0, 1), (-1, 1))

    """
    if isinstance(x, AutEqInfty):
        return x.kmatrix()
    t1, t1_inv = twist_kmatrix(x.n, 1).as_array(), twist_kmatrix(x.n, 1, "inverse").as_array()
    t2, t2_inv = twist_kmatrix(x.n, 2).as_array(), twist_kmatrix(x.n, 2, "inverse").as_array()
    letter_k = {"a": t1_inv, "A": t1, "b": t2_inv, "B": t2}
    word = _sl2_word(x.braid.sl2)
    m = np.eye(2, dtype=np.int64)
    for ch, count in _runs(word):
        m = m @ np.linalg.matrix_power(letter_k[ch], count)
    if x.shift % 2:
        m = -m
    return as_tuple(m)
