"""Unit tests for bar complex homology and the assembled bialgebra."""

import unittest

import pytest

from pperf_cli.errors import (
    BudgetExceededError,
    InvalidInputError,
    TruncationMismatchError,
)
from pperf_cli.fpbialg import (check_axioms, grouplikes)
from pperf_cli.homology import (
    BarComplex,
    ChainMap,
    assemble_fin_bialgebra,
    aw_coproduct,
    bar_homology,
    check_budget,
    class_name,
    homology_table,
    induced_map,
    kunneth_product,
    periodic_resolution_homology,
    table_to_csv,
    tuple_count,
)
from pperf_cli.perm import (Permutation, direct_sum)
from pperf_cli.structure import (FiniteGroup, GroupHom, symmetric)


class TestBarComplex(unittest.TestCase):

    def test_tuple_count(self):
        self.assertEqual(tuple_count(3, 2), 7)
        self.assertEqual(tuple_count(2, 4), 5)
        self.assertEqual(tuple_count(1, 3), 1)

    def test_budget(self):
        check_budget(24, 4)
        with pytest.raises(BudgetExceededError) as e:
            check_budget(24, 5)
        assert e.value.largest_feasible == 4

    def test_indexing(self):
        cx = BarComplex(FiniteGroup.cyclic(3), 3, 2)
        for index in range(cx.size(2)):
            self.assertEqual(cx.index_of(cx.tuple_at(2, index)), index)
        self.assertEqual(cx.tuple_at(2, 1), (2, 1))

    def test_square_zero(self):
        for G in (FiniteGroup.cyclic(3), symmetric(3)):
            cx = BarComplex(G, 2, 3)
            for n in range(4):
                self.assertTrue(cx.square_zero(n))

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            BarComplex(FiniteGroup.cyclic(2), 1, 2)
        with pytest.raises(InvalidInputError):
            BarComplex(FiniteGroup.cyclic(2), 2, -1)


class TestBarHomology(unittest.TestCase):

    def test_cyclic(self):
        self.assertEqual(
            bar_homology(FiniteGroup.cyclic(2), 2, 4).dims, [1] * 5,
        )
        self.assertEqual(
            bar_homology(FiniteGroup.cyclic(3), 3, 3).dims, [1] * 4,
        )
        self.assertEqual(
            bar_homology(FiniteGroup.cyclic(3), 2, 3).dims, [1, 0, 0, 0],
        )

    def test_symmetric_three(self):
        h = bar_homology(symmetric(3), 2, 3)
        self.assertEqual(h.dims, [1, 1, 1, 1])
        self.assertTrue(h.consistent())

    def test_consistent(self):
        h = bar_homology(FiniteGroup.cyclic(4), 2, 3)
        self.assertTrue(h.consistent())
        for n, reps in enumerate(h.representatives):
            for i, z in enumerate(reps):
                expected = tuple(int(i == j) for j in range(h.dims[n]))
                self.assertEqual(h.projection(n, z), expected)

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as e:
            bar_homology(symmetric(4), 2, 5)
        assert e.value.largest_feasible == 4
        with pytest.raises(BudgetExceededError):
            bar_homology(FiniteGroup.cyclic(3), 2, 3, tuple_budget=10)

    def test_periodic_oracle(self):
        self.assertEqual(periodic_resolution_homology(3, 2, 3), [1, 0, 0, 0])
        self.assertEqual(periodic_resolution_homology(2, 2, 3), [1] * 4)
        for q, p in ((2, 2), (3, 3), (3, 2), (4, 2), (5, 5)):
            self.assertEqual(
                bar_homology(FiniteGroup.cyclic(q), p, 3).dims,
                periodic_resolution_homology(q, p, 3),
            )
        with pytest.raises(InvalidInputError):
            periodic_resolution_homology(0, 2, 3)


class TestInducedMap(unittest.TestCase):

    def test_identity(self):
        G = FiniteGroup.cyclic(2)
        h = bar_homology(G, 2, 3)
        self.assertEqual(
            induced_map(GroupHom.identity(G), h, h), [[[1]]] * 4,
        )

    def test_inclusion(self):
        """S2 into S3 is an isomorphism on H1 mod 2"""
        S2, S3 = symmetric(2), symmetric(3)
        f = GroupHom.from_function(
            S2, S3, lambda g: direct_sum(g, Permutation.identity(1)),
        )
        matrices = induced_map(
            f, bar_homology(S2, 2, 2), bar_homology(S3, 2, 2),
        )
        self.assertEqual(matrices[0], [[1]])
        self.assertEqual(matrices[1], [[1]])

    def test_trivial(self):
        G = FiniteGroup.cyclic(2)
        h = bar_homology(G, 2, 2)
        matrices = induced_map(GroupHom.trivial(G, G), h, h)
        self.assertEqual(matrices, [[[1]], [[0]], [[0]]])

    def test_chain_map(self):
        G = FiniteGroup.cyclic(4)
        cx = BarComplex(G, 2, 3)
        f = ChainMap(GroupHom(G, G, [0, 3, 2, 1]), cx, cx)
        for n in range(4):
            self.assertTrue(f.commutes(n))

    def test_mismatch(self):
        G = FiniteGroup.cyclic(2)
        with pytest.raises(TruncationMismatchError):
            induced_map(
                GroupHom.identity(G),
                bar_homology(G, 2, 2),
                bar_homology(G, 2, 3),
            )


class TestProducts(unittest.TestCase):

    def test_kunneth(self):
        Z2 = FiniteGroup.cyclic(2)
        h = bar_homology(Z2, 2, 2)
        result = kunneth_product(h, h)
        self.assertEqual(result.basis.dims, [1, 2, 3])
        self.assertTrue(result.dims_match)
        self.assertTrue(result.aw_after_ez)
        self.assertTrue(result.ez_after_aw)
        self.assertEqual(len(result.pairs[2]), 3)

    def test_kunneth_mismatch(self):
        Z2 = FiniteGroup.cyclic(2)
        with pytest.raises(TruncationMismatchError):
            kunneth_product(bar_homology(Z2, 2, 1), bar_homology(Z2, 2, 2))

    def test_aw_coproduct(self):
        h = bar_homology(FiniteGroup.cyclic(2), 2, 1)
        coproduct = aw_coproduct(h)
        self.assertEqual(coproduct[0][0], {((0, 0), (0, 0)): 1})
        self.assertEqual(
            coproduct[1][0], {((0, 0), (1, 0)): 1, ((1, 0), (0, 0)): 1},
        )


class TestTable(unittest.TestCase):

    def test_rows(self):
        h = bar_homology(FiniteGroup.cyclic(3), 2, 1)
        rows = homology_table([h])
        self.assertEqual(rows, [
            {'group': 'Z3', 'p': 2, 'degree': 0, 'dim': 1},
            {'group': 'Z3', 'p': 2, 'degree': 1, 'dim': 0},
        ])
        self.assertEqual(
            table_to_csv(rows), "group,p,degree,dim\nZ3,2,0,1\nZ3,2,1,0\n",
        )

    def test_class_name(self):
        self.assertEqual(class_name(0, 0, 3), "[3]")
        self.assertEqual(class_name(2, 1, 4), "h2.1[4]")


class TestAssemble(unittest.TestCase):

    def test_degree_one(self):
        H = assemble_fin_bialgebra(4, 1, 2)
        self.assertEqual(H.W, 4)
        self.assertEqual(
            [len(H.slice(1, w)) for w in range(5)], [0, 0, 1, 1, 1],
        )
        self.assertEqual(
            [H.describe(g.vector) for g in grouplikes(H)],
            [{f"[{n}]": 1} for n in range(5)],
        )

    def test_axioms(self):
        report = check_axioms(assemble_fin_bialgebra(3, 2, 2))
        self.assertTrue(report['passed'])

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            assemble_fin_bialgebra(-1, 1, 2)
        with pytest.raises(BudgetExceededError):
            assemble_fin_bialgebra(4, 2, 2, tuple_budget=100)

    @pytest.mark.slow
    def test_symmetric_four(self):
        H = assemble_fin_bialgebra(4, 3, 2)
        self.assertEqual(
            [len(H.slice(d, 4)) for d in range(4)], [1, 1, 2, 3],
        )
