"""Unit tests for permutations and permutation groups."""

from itertools import permutations
import unittest

from hypothesis import (given, settings, strategies as st)
import pytest

from pperf_cli.errors import (
    DegreeMismatchError,
    GroupTooLargeError,
    InvalidInputError,
    InvalidPermutation,
)
from pperf_cli.perm import (
    CycleType,
    Permutation,
    alternating_group,
    are_conjugate,
    block_diagonal_embed,
    cycle_decomposition,
    cyclic_group,
    derived_series,
    direct_sum,
    generate_group,
    grid_transpose,
    has_pth_root,
    is_hypoabelian,
    is_perfect,
    parse_cycles,
    perfect_core,
    permutation_matrix_determinant,
    pn_cycle,
    render_cycles,
    sign,
    symmetric_group,
)
from tests.mock_data import (
    MOCK_DOUBLE_TRANSPOSITION,
    MOCK_GRID_CYCLES,
    MOCK_GRID_IMAGES,
    MOCK_PERMUTATION_INVALID,
    MOCK_TRANSPOSITION,
)


def pairs_of_degree(max_degree):
    return st.integers(min_value=1, max_value=max_degree).flatmap(
        lambda n: st.tuples(
            st.permutations(list(range(n))).map(Permutation),
            st.permutations(list(range(n))).map(Permutation),
        )
    )


class TestPermutation(unittest.TestCase):

    def test_invalid(self):
        """Image arrays must be bijections"""
        with pytest.raises(InvalidPermutation):
            Permutation(MOCK_PERMUTATION_INVALID)
        with pytest.raises(InvalidPermutation):
            Permutation([0, 2])

    def test_composition(self):
        """Right factor acts first"""
        p = Permutation([1, 0, 2])
        r = Permutation([0, 2, 1])
        self.assertEqual((p * r).to_list(), [1, 2, 0])
        with pytest.raises(DegreeMismatchError):
            p * Permutation(MOCK_TRANSPOSITION)

    def test_inverse_and_power(self):
        p = Permutation(MOCK_GRID_IMAGES)
        self.assertTrue((p * p.inverse()).is_identity())
        self.assertEqual(p.order(), 3)
        self.assertTrue((p ** 3).is_identity())
        self.assertEqual(p ** -1, p.inverse())

    def test_from_cycles(self):
        p = Permutation.from_cycles([(1, 4, 2), (3, 5, 6)], 8)
        self.assertEqual(p.to_list(), MOCK_GRID_IMAGES)
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles([(0, 1), (1, 2)], 3)
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles([(0, 5)], 3)


class TestCycles(unittest.TestCase):

    def test_cycle_decomposition(self):
        cycle_type, cycles = cycle_decomposition(
            Permutation(MOCK_GRID_IMAGES)
        )
        self.assertEqual(cycle_type, CycleType((3, 3), 2))
        self.assertEqual(cycles, [(1, 4, 2), (3, 5, 6)])
        self.assertEqual(cycle_type.degree, 8)

    def test_identity(self):
        cycle_type, cycles = cycle_decomposition(Permutation.identity(5))
        self.assertEqual(cycle_type, CycleType((), 5))
        self.assertEqual(cycles, [])
        self.assertEqual(render_cycles(Permutation.identity(5)), "()")

    def test_transposition(self):
        cycles = cycle_decomposition(Permutation(MOCK_TRANSPOSITION))[1]
        self.assertEqual(cycles, [(0, 1)])

    def test_render_and_parse(self):
        p = Permutation(MOCK_GRID_IMAGES)
        self.assertEqual(render_cycles(p), MOCK_GRID_CYCLES)
        self.assertEqual(parse_cycles(MOCK_GRID_CYCLES, 8), p)
        self.assertEqual(parse_cycles("()", 3), Permutation.identity(3))
        with pytest.raises(InvalidPermutation):
            parse_cycles("(0 1", 3)
        with pytest.raises(InvalidPermutation):
            parse_cycles("(0 a)", 3)


class TestSign(unittest.TestCase):

    def test_sign(self):
        self.assertEqual(sign(Permutation.identity(4)), 1)
        self.assertEqual(sign(Permutation(MOCK_TRANSPOSITION)), -1)
        self.assertEqual(sign(Permutation(MOCK_GRID_IMAGES)), 1)

    def test_determinant(self):
        for images in (MOCK_TRANSPOSITION, MOCK_GRID_IMAGES, [2, 0, 1]):
            p = Permutation(images)
            self.assertEqual(permutation_matrix_determinant(p), sign(p))
        self.assertEqual(
            permutation_matrix_determinant(Permutation.identity(0)), 1,
        )

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(pairs_of_degree(6))
    def test_sign_is_multiplicative(self, pair):
        p, r = pair
        self.assertEqual(sign(p * r), sign(p) * sign(r))


class TestEmbeddings(unittest.TestCase):

    def test_block_diagonal_embed(self):
        p = Permutation(MOCK_TRANSPOSITION)
        self.assertEqual(
            block_diagonal_embed(p, 2),
            Permutation.from_cycles([(0, 1), (2, 3)], 4),
        )
        self.assertTrue(
            block_diagonal_embed(Permutation.identity(3), 5).is_identity()
        )
        self.assertEqual(
            block_diagonal_embed(Permutation([1, 2, 0]), 2),
            Permutation.from_cycles([(0, 1, 2), (3, 4, 5)], 6),
        )
        with pytest.raises(InvalidInputError):
            block_diagonal_embed(p, 0)

    def test_direct_sum(self):
        p = Permutation(MOCK_TRANSPOSITION)
        self.assertEqual(direct_sum(p, p), block_diagonal_embed(p, 2))
        self.assertEqual(
            direct_sum(p, Permutation.identity(1)).to_list(), [1, 0, 2],
        )

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(pairs_of_degree(5), st.integers(min_value=1, max_value=4))
    def test_embed_is_homomorphism(self, pair, copies):
        p, r = pair
        self.assertEqual(
            block_diagonal_embed(p * r, copies),
            block_diagonal_embed(p, copies) * block_diagonal_embed(r, copies),
        )
        self.assertEqual(
            sign(block_diagonal_embed(p, copies)), sign(p) ** copies,
        )


class TestGridTranspose(unittest.TestCase):

    def test_grid(self):
        self.assertEqual(grid_transpose(2, 4).to_list(), MOCK_GRID_IMAGES)
        self.assertTrue(grid_transpose(1, 5).is_identity())
        with pytest.raises(InvalidInputError):
            grid_transpose(0, 1)

    def test_duality(self):
        for a in range(1, 5):
            for b in range(1, 5):
                self.assertTrue(
                    (grid_transpose(b, a) * grid_transpose(a, b)).is_identity()
                )

    def test_three_cycles(self):
        """Transpose of the 3 x 9 grid"""
        p = grid_transpose(3, 9)
        cycle_type, _ = cycle_decomposition(p)
        self.assertEqual(cycle_type, CycleType((3,) * 8, 3))
        self.assertEqual(sign(p), 1)

    def test_pn_cycle(self):
        self.assertEqual(pn_cycle(2, 3), grid_transpose(2, 4))
        cycle_type, _ = cycle_decomposition(pn_cycle(3, 4))
        self.assertTrue(all(4 % m == 0 for m in cycle_type.lengths))
        with pytest.raises(InvalidInputError):
            pn_cycle(2, 0)


class TestRoots(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(
            has_pth_root(Permutation(MOCK_TRANSPOSITION), 2), (False, None),
        )
        exists, root = has_pth_root(
            Permutation(MOCK_DOUBLE_TRANSPOSITION), 2,
        )
        self.assertTrue(exists)
        self.assertEqual(render_cycles(root), "(0 2 1 3)")
        exists, root = has_pth_root(Permutation.identity(4), 3)
        self.assertTrue(exists)
        self.assertTrue(root.is_identity())

    def test_witness_bound(self):
        self.assertEqual(
            has_pth_root(
                Permutation(MOCK_DOUBLE_TRANSPOSITION), 2, witness_bound=3,
            ),
            (True, None),
        )

    def test_not_prime(self):
        with pytest.raises(InvalidInputError):
            has_pth_root(Permutation.identity(2), 4)

    def test_against_brute_force(self):
        for n in range(1, 8):
            elements = [Permutation(x) for x in permutations(range(n))]
            for q in (2, 3):
                powers = {r ** q for r in elements}
                for p in elements:
                    exists, root = has_pth_root(p, q)
                    self.assertEqual(exists, p in powers)
                    if exists:
                        self.assertEqual(root ** q, p)


class TestConjugacy(unittest.TestCase):

    def test_examples(self):
        p = Permutation.from_cycles([(0, 1)], 4)
        r = Permutation.from_cycles([(2, 3)], 4)
        exists, g = are_conjugate(p, r)
        self.assertTrue(exists)
        self.assertEqual(g * p * g.inverse(), r)
        self.assertEqual(
            are_conjugate(Permutation([1, 0, 2]), Permutation([1, 2, 0])),
            (False, None),
        )

    def test_self(self):
        p = Permutation(MOCK_GRID_IMAGES)
        exists, g = are_conjugate(p, p)
        self.assertTrue(exists)
        self.assertTrue(g.is_identity())

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            are_conjugate(Permutation.identity(2), Permutation.identity(3))

    def test_against_brute_force(self):
        for n in range(1, 6):
            elements = [Permutation(x) for x in permutations(range(n))]
            for p in elements:
                conjugates = {g * p * g.inverse() for g in elements}
                for r in elements:
                    self.assertEqual(are_conjugate(p, r)[0], r in conjugates)


class TestGroups(unittest.TestCase):

    def test_generate(self):
        self.assertEqual(
            generate_group([Permutation(MOCK_TRANSPOSITION)]).order, 2,
        )
        self.assertEqual(symmetric_group(3).order, 6)
        self.assertEqual(alternating_group(4).order, 12)
        self.assertEqual(generate_group([], degree=3).order, 1)
        self.assertEqual(cyclic_group(Permutation(MOCK_GRID_IMAGES)).order, 3)

    def test_contains(self):
        G = alternating_group(4)
        self.assertIn(Permutation([1, 2, 0, 3]), G)
        self.assertNotIn(Permutation([1, 0, 2, 3]), G)

    def test_errors(self):
        gens = [
            Permutation.from_cycles([(0, 1, 2)], 5),
            Permutation.from_cycles([(0, 1), (3, 4)], 5),
        ]
        with pytest.raises(GroupTooLargeError):
            generate_group(gens, order_bound=5)
        with pytest.raises(GroupTooLargeError):
            symmetric_group(5, order_bound=100)
        with pytest.raises(DegreeMismatchError):
            generate_group([Permutation.identity(2), Permutation.identity(3)])
        with pytest.raises(InvalidInputError):
            generate_group([])

    def test_derived_series(self):
        series = derived_series(symmetric_group(4))
        self.assertEqual([H.order for H in series], [24, 12, 4, 1])
        for H, K in zip(series, series[1:]):
            self.assertTrue(K.is_normal_in(H))
        self.assertEqual(
            [H.order for H in derived_series(
                cyclic_group(Permutation([1, 2, 0]))
            )],
            [3, 1],
        )

    def test_hypoabelian(self):
        self.assertTrue(is_hypoabelian(symmetric_group(4)))
        self.assertTrue(perfect_core(symmetric_group(4)).is_trivial())
        A5 = alternating_group(5)
        self.assertEqual(
            [H.order for H in derived_series(A5)], [60, 60],
        )
        self.assertFalse(is_hypoabelian(A5))
        self.assertTrue(is_perfect(A5))
        self.assertFalse(is_perfect(symmetric_group(3)))

    def test_abelian(self):
        G = cyclic_group(Permutation(MOCK_GRID_IMAGES))
        self.assertTrue(G.is_abelian())
        self.assertFalse(symmetric_group(3).is_abelian())

    @pytest.mark.slow
    def test_grid_transpose_in_perfect_group(self):
        A8 = alternating_group(8, order_bound=30_000)
        self.assertIn(grid_transpose(2, 4), A8)
        self.assertTrue(is_perfect(A8, order_bound=30_000))
