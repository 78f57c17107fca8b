"""Unit tests for sparse linear algebra over F_p."""

import unittest

import pytest

from pperf_cli.linalg import (
    BitReducer,
    SparseReducer,
    axpy,
    dot,
    express,
    from_bits,
    inverse_matrix,
    parity,
    rank,
    scaled,
    to_bits,
)


class TestVectors(unittest.TestCase):

    def test_axpy(self):
        target = {0: 1, 1: 2}
        axpy(target, 1, {1: 1, 2: 1}, 3)
        self.assertEqual(target, {0: 1, 2: 1})
        axpy(target, 3, {5: 1}, 3)
        self.assertEqual(target, {0: 1, 2: 1})

    def test_scaled_and_dot(self):
        self.assertEqual(scaled({0: 1, 1: 2}, 2, 3), {0: 2, 1: 1})
        self.assertEqual(scaled({0: 1}, 3, 3), {})
        self.assertEqual(dot({0: 1, 1: 1}, {1: 1, 2: 1}, 2), 1)

    def test_bits(self):
        self.assertEqual(to_bits({0: 1, 3: 1, 4: 2}), 0b1001)
        self.assertEqual(from_bits(0b1001), {0: 1, 3: 1})
        self.assertEqual(parity(0b1011), 1)
        self.assertEqual(parity(0), 0)


class TestReducers(unittest.TestCase):

    def test_sparse_relation(self):
        reducer = SparseReducer(2)
        self.assertIsNone(reducer.add({0: 1}, {0: 1}))
        self.assertIsNone(reducer.add({1: 1}, {1: 1}))
        self.assertEqual(
            reducer.add({0: 1, 1: 1}, {2: 1}), {0: 1, 1: 1, 2: 1},
        )
        self.assertEqual(reducer.rank, 2)

    def test_bit_relation(self):
        reducer = BitReducer()
        self.assertIsNone(reducer.add(0b01, 0b001))
        self.assertIsNone(reducer.add(0b10, 0b010))
        self.assertEqual(reducer.add(0b11, 0b100), 0b111)
        self.assertEqual(reducer.rank, 2)

    def test_rank(self):
        self.assertEqual(rank([{0: 1, 1: 2}, {0: 2, 1: 1}], 3), 1)
        self.assertEqual(rank([{0: 1}, {1: 1}, {0: 1, 1: 1}], 2), 2)
        self.assertEqual(rank([], 5), 0)

    def test_express(self):
        self.assertEqual(
            express([{0: 1}, {1: 1}], {0: 2, 1: 1}, 3), {0: 2, 1: 1},
        )
        self.assertEqual(express([{0: 1}], {}, 3), {})
        self.assertIsNone(express([{0: 1}], {1: 1}, 3))


class TestInverse(unittest.TestCase):

    def test_inverse(self):
        self.assertEqual(
            inverse_matrix([[1, 1], [0, 1]], 2), [[1, 1], [0, 1]],
        )
        self.assertEqual(
            inverse_matrix([[2, 0], [0, 1]], 3), [[2, 0], [0, 1]],
        )

    def test_singular(self):
        with pytest.raises(ArithmeticError):
            inverse_matrix([[1, 1], [1, 1]], 2)
