"""
Tests for hearts, simple tilts and exchange graphs.
"""

import math

import pytest

from a2stab.core import braidgroup as bg
from a2stab.core import tilting as tl
from a2stab.core.lattice import KClass
from a2stab.core.tilting import Heart, ObjectDesc
from a2stab.errors import InvalidLevelError

FINITE_LEVELS = [2, 3, 4, 5, 7]


def _random_heart(n, rng, random_auteq):
    if math.isinf(n):
        return Heart(bg.AutEqInfty(int(rng.integers(-9, 10))), int(rng.integers(0, 5)))
    k = int(rng.integers(0, n - 1)) if n > 3 else 0
    return tl.canonicalize(Heart(random_auteq(n), k))[0]


class TestCanonicalHeart:
    def test_coordinates(self):
        h = tl.canonical_heart(5)
        assert h == Heart(bg.identity(5), 0)
        assert h.is_full

    def test_simples(self):
        s1, s2 = tl.simples(tl.canonical_heart(5))
        assert (s1.base, s1.shift, s2.base, s2.shift) == ("S1", 0, "S2", 0)

    def test_infinite_level(self):
        assert tl.canonical_heart(math.inf).phi == bg.AutEqInfty(0)


class TestSimples:
    def test_chain_heart(self):
        s1, s2 = tl.simples(Heart(bg.identity(6), 2))
        assert s1.normal_form() == ObjectDesc(bg.identity(6), "S1", 2).normal_form()
        assert s2.normal_form() == tl.canonical_object(6, "S2").normal_form()

    @pytest.mark.parametrize("n", [3, 4, 6, math.inf])
    def test_sigma_heart(self, n):
        s1, s2 = tl.simples(Heart(bg.sigma(n), 0))
        assert s1.normal_form() == ObjectDesc(bg.identity(n), "S2", 1).normal_form()
        assert s2.normal_form() == tl.canonical_object(n, "E").normal_form()

    def test_kclasses_of_chain_heart(self):
        s1, s2 = tl.simples(Heart(bg.identity(5), 1))
        assert (s1.kclass(), s2.kclass()) == (KClass(-1, 0), KClass(0, 1))


class TestObjectDesc:
    """Normal forms decide isomorphism up to the S1 stabilizer."""

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_sigma_cycles_objects(self, n):
        s = bg.sigma(n)
        assert ObjectDesc(s, "E").normal_form() == tl.canonical_object(n, "S1").normal_form()
        assert ObjectDesc(s, "S2").normal_form() == tl.canonical_object(n, "E").normal_form()

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_twist_shifts_s1(self, n):
        obj = ObjectDesc(bg.auteq_from_word(n, "a"), "S1")
        assert obj.shift_offset(tl.canonical_object(n, "S1")) == n - 1

    def test_shift_offset_distinct_types(self):
        assert tl.canonical_object(4, "S1").shift_offset(tl.canonical_object(4, "S2")) is None

    def test_f_at_level_two(self):
        f = tl.canonical_object(2, "F")
        assert f.object_type() != tl.canonical_object(2, "E").object_type()
        assert f.kclass() == KClass(1, 1)

    def test_infinite_level(self):
        s2 = tl.canonical_object(math.inf, "S2")
        assert ObjectDesc(bg.AutEqInfty(1), "S1").shift_offset(s2) == 1

    def test_describe(self):
        assert tl.canonical_object(4, "S2").shifted(2).describe() == "S2[2]"


class TestForwardTilt:
    @pytest.mark.parametrize("n", FINITE_LEVELS + [math.inf])
    def test_tilt_at_two_is_sigma(self, n):
        assert tl.forward_tilt(tl.canonical_heart(n), 2) == tl.canonicalize(Heart(bg.sigma(n), 0))[0]

    def test_chain_at_level_five(self):
        h0 = tl.canonical_heart(5)
        h1 = tl.forward_tilt(h0, 1)
        h2 = tl.forward_tilt(h1, 1)
        h3, index = tl.forward_tilt_indexed(h2, 1)
        assert h1 == Heart(bg.identity(5), 1)
        assert h2 == Heart(bg.identity(5), 2)
        assert h3 == Heart(bg.upsilon(5), 0)
        assert index == 2

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_chain_heart_tilt_at_two(self, n):
        assert tl.forward_tilt(Heart(bg.identity(n), 1), 2) == Heart(bg.shift_functor(n, 1), 0)

    def test_level_three_upsilon(self):
        assert tl.forward_tilt(tl.canonical_heart(3), 1) == Heart(bg.upsilon(3), 0)

    def test_level_two_sigma_star(self):
        target = tl.forward_tilt(tl.canonical_heart(2), 1)
        assert target in {Heart(bg.sigma_star(2), 0), tl._alternate(Heart(bg.sigma_star(2), 0))}

    def test_face_closure_level_three(self):
        h = tl.canonical_heart(3)
        shift = Heart(bg.shift_functor(3, 1), 0)
        assert tl.forward_tilt(tl.forward_tilt(tl.forward_tilt(h, 2), 2), 2) == shift
        assert tl.forward_tilt(tl.forward_tilt(h, 1), 1) == shift

    def test_infinite_chain_never_closes(self):
        h = tl.canonical_heart(math.inf)
        for k in range(1, 8):
            h = tl.forward_tilt(h, 1)
            assert h == Heart(bg.AutEqInfty(0), k)

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            tl.forward_tilt(tl.canonical_heart(4), 3)


class TestTiltInvolution:
    @pytest.mark.parametrize("n", FINITE_LEVELS + [math.inf])
    def test_backward_undoes_forward(self, n, rng, random_auteq):
        for _ in range(150):
            h = _random_heart(n, rng, random_auteq)
            for i in (1, 2):
                target, j = tl.forward_tilt_indexed(h, i)
                back, k = tl.backward_tilt_indexed(target, j)
                assert back == h
                assert k == i

    @pytest.mark.parametrize("n", FINITE_LEVELS + [math.inf])
    def test_forward_undoes_backward(self, n, rng, random_auteq):
        for _ in range(150):
            h = _random_heart(n, rng, random_auteq)
            for i in (1, 2):
                target, j = tl.backward_tilt_indexed(h, i)
                assert tl.forward_tilt_indexed(target, j) == (h, i)

    @pytest.mark.slow
    def test_involution_on_many_hearts(self, rng, random_auteq):
        levels = FINITE_LEVELS + [math.inf]
        for _ in range(10_000):
            n = levels[int(rng.integers(len(levels)))]
            h = _random_heart(n, rng, random_auteq)
            for i in (1, 2):
                target, j = tl.forward_tilt_indexed(h, i)
                assert tl.backward_tilt_indexed(target, j) == (h, i)

    @pytest.mark.parametrize("n", [2, 4, 5, math.inf])
    def test_tilted_simple_is_shift(self, n, rng, random_auteq):
        for _ in range(60):
            h = _random_heart(n, rng, random_auteq)
            for i in (1, 2):
                target, j = tl.forward_tilt_indexed(h, i)
                before = tl.simples(h)[i - 1]
                after = tl.simples(target)[j - 1]
                assert after.shift_offset(before) == 1


class TestCanonicalize:
    def test_idempotent(self, rng, random_auteq):
        for _ in range(100):
            h = Heart(random_auteq(6), int(rng.integers(0, 5)))
            canon, _ = tl.canonicalize(h)
            assert tl.canonicalize(canon) == (canon, False)
            assert 0 <= canon.k <= 3

    def test_same_simples(self, rng, random_auteq):
        for _ in range(50):
            h = Heart(random_auteq(5), int(rng.integers(0, 4)))
            canon, swapped = tl.canonicalize(h)
            before = [s.normal_form() for s in tl.simples(h)]
            after = [s.normal_form() for s in tl.simples(canon)]
            assert after == (before[::-1] if swapped else before)

    def test_end_of_chain(self):
        assert tl.canonicalize(Heart(bg.identity(4), 2)) == (Heart(bg.upsilon(4), 0), True)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            tl.canonicalize(Heart(bg.identity(4), 3))


class TestHeartRepresentations:
    def test_interior_chain_heart_has_two_forms(self):
        h = Heart(bg.identity(5), 1)
        reps = tl.heart_representations(h)
        assert len(reps) == 2
        assert reps[0] == (h, False)
        other, swapped = reps[1]
        assert swapped
        before = [s.normal_form() for s in tl.simples(h)]
        assert [s.normal_form() for s in tl.simples(other)] == before[::-1]

    @pytest.mark.parametrize("heart", [Heart(bg.identity(5), 0), Heart(bg.identity(5), 3)])
    def test_chain_ends_have_one_form(self, heart):
        assert tl.heart_representations(heart) == [(heart, False)]

    def test_infinite_level(self):
        h = Heart(bg.AutEqInfty(1), 2)
        assert tl.heart_representations(h) == [(h, False)]


class TestApplyAutEq:
    @pytest.mark.parametrize("n", FINITE_LEVELS)
    def test_sigma_is_tilt(self, n):
        h = tl.canonical_heart(n)
        assert tl.apply_auteq(bg.sigma(n), h) == tl.forward_tilt(h, 2)

    def test_identity(self, rng, random_auteq):
        for _ in range(20):
            h = _random_heart(5, rng, random_auteq)
            assert tl.apply_auteq(bg.identity(5), h) == h

    def test_shift_acts_freely(self, rng, random_auteq):
        for _ in range(20):
            h = _random_heart(6, rng, random_auteq)
            assert tl.apply_auteq(bg.shift_functor(6, 1), h) != h

    @pytest.mark.parametrize("n", [3, 5])
    def test_commutes_with_tilts(self, n, rng, random_auteq):
        for _ in range(30):
            psi, h = random_auteq(n), _random_heart(n, rng, random_auteq)
            moved, swapped = tl.apply_auteq_tracked(psi, h)
            for i in (1, 2):
                j = 3 - i if swapped else i
                assert tl.apply_auteq(psi, tl.forward_tilt(h, i)) == tl.forward_tilt(moved, j)

    def test_level_mismatch(self):
        with pytest.raises(ValueError):
            tl.apply_auteq(bg.sigma(3), tl.canonical_heart(4))


class TestExchangeGraph:
    """BFS balls and their counts."""

    def test_radius_zero(self):
        graph = tl.exchange_graph(4, 0)
        assert graph.nodes == [tl.canonical_heart(4)]
        assert graph.graph.number_of_edges() == 0

    def test_radius_one(self):
        graph = tl.exchange_graph(6, 1)
        assert len(graph.nodes) == 5
        assert graph.graph.number_of_edges() == 8
        assert graph.graph.nodes[graph.nodes[0]]["depth"] == 0

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            tl.exchange_graph(3, -1)

    @pytest.mark.parametrize("n", [3, 4, 6, math.inf])
    def test_interior_out_degree(self, n):
        graph = tl.exchange_graph(n, 3)
        for node in graph.nodes:
            if graph.graph.nodes[node]["depth"] < 3:
                forward = [k for _, _, k in graph.graph.out_edges(node, keys=True) if k.startswith("forward")]
                assert sorted(forward) == ["forward1", "forward2"]

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_torsor_property(self, n):
        graph = tl.exchange_graph(n, 5)
        full = graph.full_hearts()
        keys = {frozenset(s.normal_form() for s in tl.simples(h)) for h in full}
        assert len(keys) == len(full)
        assert len({h.phi for h in full}) == len(full)

    @pytest.mark.parametrize(
        "n, radius", [(3, 6), (3, 4), (2, 6), (2, 3), (4, 1), (4, 5), (5, 4), (6, 2), (6, 5)]
    )
    def test_projective_matches_group_ball(self, n, radius):
        graph = tl.projective_exchange_graph(n, radius)
        nodes, edges = tl.psl2_ball(n, radius)
        assert len(graph.nodes) == nodes
        assert len(graph.forward_edges()) == edges

    def test_projective_nodes_have_no_shift(self):
        graph = tl.projective_exchange_graph(5, 3)
        assert all(h.phi.shift == 0 for h in graph.nodes)

    def test_chain_hearts_at_level_six(self):
        graph = tl.exchange_graph(6, 4)
        chain = [h for h in graph.nodes if h.phi == bg.identity(6)]
        assert sorted(h.k for h in chain) == [0, 1, 2, 3]

    def test_kclasses_form_basis(self):
        graph = tl.exchange_graph(5, 4)
        for h in graph.nodes:
            x, y = (s.kclass() for s in tl.simples(h))
            assert abs(x.coeff_s1 * y.coeff_s2 - x.coeff_s2 * y.coeff_s1) == 1

    def test_group_ball_small_chain_level(self):
        # (e,0), (e,1), (Σ,0), (Σ⁻¹,0); Σ² = Σ⁻¹ closes a forward edge inside the ball.
        assert tl.psl2_ball(4, 1) == (4, 5)

    def test_group_ball_needs_finite_level(self):
        with pytest.raises(InvalidLevelError):
            tl.psl2_ball(math.inf, 2)

    def test_group_ball_negative_radius(self):
        with pytest.raises(ValueError):
            tl.psl2_ball(4, -1)
