import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakqsym.combinat import Subset, subsets
from peakqsym.poset import (
    GradedPoset,
    PosetValidationError,
    adjoin_hat_below,
    boolean,
    build_family,
    chain,
    cube_faces,
    dual,
    from_covers,
    polygon,
    product,
    qsym_of_poset,
    simplex_faces,
)
from peakqsym.qsym import QSym
from peakqsym.selftest import chain_count_brute


class TestValidation:
    def test_cycle_rejected(self):
        with pytest.raises(PosetValidationError, match="cycle"):
            GradedPoset(4, [(0, 1), (1, 2), (2, 1), (2, 3)])

    def test_two_sources_rejected(self):
        with pytest.raises(PosetValidationError):
            GradedPoset(4, [(0, 2), (1, 2), (2, 3)])

    def test_two_sinks_rejected(self):
        with pytest.raises(PosetValidationError):
            GradedPoset(4, [(0, 1), (1, 2), (1, 3)])

    def test_rank_conflict_names_a_cover(self):
        # chain 0-1-2-3 with a shortcut 0-3: no consistent rank exists
        with pytest.raises(PosetValidationError, match=r"cover \(\d+, \d+\).*not graded"):
            GradedPoset(4, [(0, 1), (1, 2), (2, 3), (0, 3)])

    def test_self_loop_rejected(self):
        with pytest.raises(PosetValidationError):
            GradedPoset(2, [(0, 0), (0, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(PosetValidationError):
            GradedPoset(2, [(0, 5)])

    def test_from_covers_unknown_label(self):
        with pytest.raises(PosetValidationError, match="unknown"):
            from_covers(["a", "b"], [("a", "z")])

    def test_from_covers_duplicate_labels(self):
        with pytest.raises(PosetValidationError, match="distinct"):
            from_covers(["a", "a"], [])


class TestFamilies:
    def test_chain(self):
        p = chain(3)
        assert p.size == 4
        assert p.top_rank == 3
        assert p.flag_f(Subset.from_members(2, [1, 2])) == 1

    def test_boolean_counts(self):
        p = boolean(4)
        assert p.size == 16
        assert p.top_rank == 4
        assert [len(p.elements_of_rank(r)) for r in range(5)] == [1, 4, 6, 4, 1]

    def test_polygon_counts(self):
        p = polygon(5)
        assert p.size == 12
        assert p.top_rank == 3
        assert [len(p.elements_of_rank(r)) for r in range(4)] == [1, 5, 5, 1]

    def test_simplex_is_boolean(self):
        assert qsym_of_poset(simplex_faces(3)) == qsym_of_poset(boolean(4))

    def test_cube_counts(self):
        p = cube_faces(3)
        # empty face + 8 vertices + 12 edges + 6 squares + solid cube
        assert p.size == 28
        assert [len(p.elements_of_rank(r)) for r in range(5)] == [1, 8, 12, 6, 1]

    def test_square_is_a_polygon(self):
        assert qsym_of_poset(cube_faces(2)) == qsym_of_poset(polygon(4))

    def test_build_family(self):
        assert build_family("boolean:3").size == 8
        with pytest.raises(ValueError):
            build_family("boolean")
        with pytest.raises(ValueError):
            build_family("boolean:x")
        with pytest.raises(ValueError):
            build_family("frobnicate:3")


class TestFlagCounting:
    @pytest.mark.parametrize(
        "p",
        [boolean(4), polygon(6), cube_faces(2), product(boolean(2), polygon(4))],
        ids=["boolean4", "polygon6", "square", "product"],
    )
    def test_matches_direct_chain_enumeration(self, p):
        n = p.top_rank
        for s in subsets(n - 1):
            assert p.flag_f(s) == chain_count_brute(p, s.members)

    def test_boolean4_flag_values(self):
        p = boolean(4)
        assert p.flag_f(Subset(3, 0)) == 1
        assert p.flag_f(Subset.from_members(3, [2])) == 6
        assert p.flag_f(Subset.from_members(3, [1, 2, 3])) == 24

    def test_flag_vector_consistency(self):
        p = polygon(7)
        vec = p.flag_vector()
        assert len(vec) == 4
        for s, count in vec.items():
            assert count == p.flag_f(s)

    def test_rank_zero_poset(self):
        p = GradedPoset(1, [])
        assert p.top_rank == 0
        assert p.flag_vector() == {}
        assert qsym_of_poset(p) == QSym.one()


class TestMobiusAndEulerian:
    def test_boolean_mobius_alternates(self):
        for k in range(1, 6):
            p = boolean(k)
            assert p.mobius(p.bottom, p.top) == (-1) ** k

    def test_chain_mobius(self):
        p = chain(4)
        order = sorted(range(p.size), key=lambda x: p.rank[x])
        assert p.mobius(order[0], order[0]) == 1
        assert p.mobius(order[0], order[1]) == -1
        assert p.mobius(order[0], order[2]) == 0

    @pytest.mark.parametrize(
        "p, expected",
        [
            (boolean(4), True),
            (polygon(9), True),
            (chain(1), True),
            (chain(2), False),
            (chain(3), False),
            (product(polygon(4), boolean(2)), True),
            (adjoin_hat_below(boolean(2)), False),
        ],
        ids=["boolean4", "polygon9", "chain1", "chain2", "chain3", "product", "augmented"],
    )
    def test_is_eulerian(self, p, expected):
        assert p.is_eulerian() is expected

    def test_witness_is_a_real_failure(self):
        p = chain(2)
        x, y, mu = p.eulerian_witness()
        assert p.leq(x, y)
        assert mu != (-1) ** (p.rank[y] - p.rank[x])


class TestConstructions:
    def test_dual_flags_reflect(self):
        p = product(boolean(2), polygon(4))
        d = dual(p)
        n = p.top_rank
        for s in subsets(n - 1):
            assert d.flag_f(s) == p.flag_f(s.reflect())

    def test_product_rank_and_size(self):
        p = product(boolean(2), polygon(4))
        assert p.top_rank == 5
        assert p.size == boolean(2).size * polygon(4).size

    def test_product_flag_element_multiplies(self):
        a, b = polygon(4), chain(1)
        assert qsym_of_poset(product(a, b)) == qsym_of_poset(a) * qsym_of_poset(b)

    def test_adjoin_hat_below(self):
        p = adjoin_hat_below(boolean(2))
        assert p.top_rank == 3
        assert p.size == 5
        assert len(p.elements_of_rank(1)) == 1

    def test_from_covers_labels(self):
        p = from_covers(["bot", "x", "y", "top"], [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")])
        assert p.top_rank == 2
        assert p.label_of(p.bottom) == "bot"
        assert p.is_eulerian()


def test_qsym_of_boolean3():
    el = qsym_of_poset(boolean(3))
    assert el.coeff((3,)) == 1
    assert el.coeff((1, 2)) == 3
    assert el.coeff((2, 1)) == 3
    assert el.coeff((1, 1, 1)) == 6
