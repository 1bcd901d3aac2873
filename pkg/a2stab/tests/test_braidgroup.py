"""
Tests for the braid group and autoequivalence groups.
"""

import math

import numpy as np
import pytest

from a2stab.core import braidgroup as bg
from a2stab.core.lattice import IDENTITY, as_array, twist_kmatrix
from a2stab.errors import LevelMismatchError, WordParseError

LEVELS = [2, 3, 4, 5, 7, 10]


class TestBraidEval:
    """Word evaluation and the word problem."""

    def test_braid_relation(self):
        assert bg.braid_eval("aba") == bg.braid_eval("bab")

    def test_tau(self):
        assert bg.braid_eval("ababab") == bg.BraidElement(((-1, 0), (0, -1)), 6)

    def test_empty_word(self):
        assert bg.braid_eval("") == bg.BraidElement(IDENTITY, 0)

    def test_power_syntax(self):
        assert bg.braid_eval("(ab)^3") == bg.braid_eval("ababab")

    def test_invalid_letter(self):
        with pytest.raises(WordParseError):
            bg.braid_eval("abc")

    def test_free_cancellation(self):
        assert bg.braid_eval("aAbBBb").is_identity

    @pytest.mark.parametrize("count", [300, pytest.param(10_000, marks=pytest.mark.slow)])
    def test_random_rewrites(self, count, rng, random_word):
        rewrites = [("aba", "bab"), ("bab", "aba"), ("ABA", "BAB"), ("aA", ""), ("", "Bb")]
        for _ in range(count):
            word = random_word(int(rng.integers(0, 20)))
            old, new = rewrites[int(rng.integers(len(rewrites)))]
            pos = int(rng.integers(0, len(word) + 1))
            left, right = word[:pos], word[pos:]
            assert bg.braid_eval(left + old + right) == bg.braid_eval(left + new + right)

    def test_kernel_word_is_identity(self):
        for n in LEVELS:
            assert bg.auteq_from_word(n, "abAB" + "baBA").is_identity

    def test_determinant_one(self, rng, random_word):
        for _ in range(50):
            (a, b), (c, d) = bg.braid_eval(random_word(12)).sl2
            assert a * d - b * c == 1


class TestRecoverWord:
    def test_round_trip(self, rng, random_word):
        for _ in range(200):
            element = bg.braid_eval(random_word(int(rng.integers(0, 25))))
            assert bg.braid_eval(bg.recover_word(element)) == element

    def test_identity(self):
        assert bg.recover_word(bg.BraidElement()) == ""

    def test_tau_squared(self):
        element = bg.braid_eval("(ababab)^2")
        assert bg.braid_eval(bg.recover_word(element)) == element

    def test_invalid_pair(self):
        with pytest.raises(ValueError):
            bg.recover_word(bg.BraidElement(IDENTITY, 3))

    def test_invert_word(self):
        assert bg.invert_word("abB") == "bBA"
        assert (bg.braid_eval("aab") @ bg.braid_eval(bg.invert_word("aab"))).is_identity


class TestAutEq:
    """Canonical forms at finite level."""

    def test_tau_absorbed(self):
        x = bg.auteq_make(3, bg.braid_eval("ababab"), 0)
        assert x == bg.shift_functor(3, 5)

    @pytest.mark.parametrize("n", LEVELS)
    def test_sigma_cubed(self, n):
        s = bg.sigma(n)
        assert s.compose(s).compose(s) == bg.shift_functor(n, 1)

    @pytest.mark.parametrize("n", LEVELS)
    def test_upsilon_squared(self, n):
        assert bg.upsilon(n).power(2) == bg.shift_functor(n, n - 2)

    @pytest.mark.parametrize("n", LEVELS)
    def test_compose_sigma_sigma_squared(self, n):
        assert bg.auteq_compose(bg.sigma(n), bg.sigma(n).power(2)) == bg.shift_functor(n, 1)

    @pytest.mark.parametrize("n", LEVELS)
    def test_tau_inverse(self, n):
        assert bg.auteq_inverse(bg.tau(n)) == bg.shift_functor(n, -(3 * n - 4))

    @pytest.mark.parametrize("n", LEVELS)
    def test_canonical_window(self, n, random_auteq):
        for _ in range(40):
            assert 0 <= random_auteq(n, 15).braid.expsum < 6

    @pytest.mark.parametrize("n", LEVELS)
    def test_group_laws(self, n, random_auteq):
        e = bg.identity(n)
        for _ in range(40):
            x, y, z = random_auteq(n), random_auteq(n), random_auteq(n)
            assert x.compose(e) == x
            assert x.compose(x.inverse()).is_identity
            assert x.compose(y).compose(z) == x.compose(y.compose(z))

    @pytest.mark.parametrize("n", LEVELS)
    def test_canonicalization_congruence(self, n, rng, random_word):
        for _ in range(40):
            u, v = bg.braid_eval(random_word(8)), bg.braid_eval(random_word(8))
            s, t = int(rng.integers(-4, 5)), int(rng.integers(-4, 5))
            x, y = bg.auteq_make(n, u, s), bg.auteq_make(n, v, t)
            assert x.compose(y) == bg.auteq_make(n, u @ v, s + t)
            assert bg.auteq_make(n, x.braid, x.shift) == x

    def test_level_mismatch(self):
        with pytest.raises(LevelMismatchError):
            bg.sigma(3).compose(bg.sigma(4))

    def test_sigma_star_only_at_two(self):
        with pytest.raises(ValueError):
            bg.sigma_star(3)

    def test_to_dict(self):
        assert bg.shift_functor(4, 2).to_dict() == {"sl2": [[1, 0], [0, 1]], "expsum": 0, "shift": 2, "n": 4}


class TestAutEqInfty:
    def test_sigma_cubed_is_shift(self):
        assert bg.sigma(math.inf).power(3) == bg.shift_functor(math.inf, 1)

    def test_shift_extraction(self):
        assert bg.AutEqInfty(7).shift == 2
        assert bg.AutEqInfty(-1).shift == -1
        assert bg.AutEqInfty(7).projective() == bg.AutEqInfty(1)

    def test_inverse(self):
        assert bg.AutEqInfty(4).compose(bg.AutEqInfty(4).inverse()).is_identity

    def test_kmatrix_of_shift(self):
        assert bg.kaction(bg.shift_functor(math.inf, 1)) == ((-1, 0), (0, -1))

    def test_no_words(self):
        with pytest.raises(ValueError):
            bg.auteq_from_word(math.inf, "ab")


class TestPSL2Quotient:
    @pytest.mark.parametrize("n", LEVELS)
    def test_orders(self, n):
        assert bg.psl2_quotient(bg.sigma(n)).order() == 3
        assert bg.psl2_quotient(bg.upsilon(n)).order() == 2
        assert bg.psl2_quotient(bg.identity(n)).order() == 1

    def test_infinite_order(self):
        assert bg.psl2_quotient(bg.auteq_from_word(3, "a")).order() is None

    def test_sigma_star_order(self):
        assert bg.psl2_quotient(bg.sigma_star(2)).order() == 3

    def test_sign_normalization(self):
        assert bg.psl2_normalize(((0, -1), (1, 0))).matrix == ((0, 1), (-1, 0))

    def test_shift_discarded(self):
        assert bg.psl2_quotient(bg.shift_functor(5, 3)).is_identity

    def test_infinite_level(self):
        assert bg.psl2_quotient(bg.sigma(math.inf)).order() == 3


class TestKAction:
    def test_sigma_level_three(self):
        assert bg.kaction(bg.sigma(3)) == ((0, 1), (-1, 1))

    @pytest.mark.parametrize("n", LEVELS)
    def test_shift(self, n):
        assert bg.kaction(bg.shift_functor(n, 1)) == ((-1, 0), (0, -1))

    @pytest.mark.parametrize("n", LEVELS)
    def test_tau_matches_twist_product(self, n):
        t1_inv = twist_kmatrix(n, 1, "inverse").as_array()
        t2_inv = twist_kmatrix(n, 2, "inverse").as_array()
        expected = np.linalg.matrix_power(t1_inv @ t2_inv, 3)
        assert np.array_equal(as_array(bg.kaction(bg.tau(n))), expected)
        assert bg.kaction(bg.tau(n)) == bg.kaction(bg.shift_functor(n, 3 * n - 4))

    @pytest.mark.parametrize("n", LEVELS)
    def test_homomorphism(self, n, random_auteq):
        for _ in range(30):
            x, y = random_auteq(n), random_auteq(n)
            assert np.array_equal(
                as_array(bg.kaction(x.compose(y))),
                as_array(bg.kaction(x)) @ as_array(bg.kaction(y)),
            )

    @pytest.mark.parametrize("n", LEVELS)
    def test_unimodular(self, n, random_auteq):
        for _ in range(20):
            assert abs(round(np.linalg.det(as_array(bg.kaction(random_auteq(n)))))) == 1
