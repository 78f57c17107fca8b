"""Unit tests for direct systems of permutation groups."""

import unittest

import pytest

from pperf_cli.errors import (InvalidInputError, InvalidPermutation)
from pperf_cli.perm import (
    Permutation,
    cycle_decomposition,
    parse_cycles,
)
from pperf_cli.telescope import (
    TelescopeElement,
    abelianness_probe,
    block_factors,
    check_transitions,
    colimit_equal,
    constant_system,
    default_max_level,
    divisibility_probe,
    stabilize,
    symmetric_system,
)
from tests.mock_data import MOCK_TRANSPOSITION


class TestStabilize(unittest.TestCase):

    sys = symmetric_system(2)
    e = TelescopeElement(1, Permutation(MOCK_TRANSPOSITION))

    def test_stabilize(self):
        """Diagonal images of (0 1)"""
        self.assertEqual(
            stabilize(self.sys, self.e, 2).value,
            parse_cycles("(0 1)(2 3)", 4),
        )
        self.assertEqual(
            stabilize(self.sys, self.e, 3).value,
            parse_cycles("(0 1)(2 3)(4 5)(6 7)", 8),
        )
        self.assertEqual(stabilize(self.sys, self.e, 1), self.e)

    def test_stabilize_down(self):
        e = TelescopeElement(2, Permutation.identity(4))
        with pytest.raises(InvalidInputError):
            stabilize(self.sys, e, 1)

    def test_transposition_images(self):
        for k in range(2, 5):
            value = stabilize(self.sys, self.e, k).value
            cycle_type, _ = cycle_decomposition(value)
            self.assertEqual(cycle_type.lengths, (2,) * 2 ** (k - 1))

    def test_colimit_equal(self):
        self.assertTrue(colimit_equal(
            self.sys, self.e, stabilize(self.sys, self.e, 3),
        ))
        self.assertFalse(colimit_equal(
            self.sys,
            self.e,
            TelescopeElement(2, parse_cycles("(0 1)", 4)),
        ))
        self.assertTrue(colimit_equal(
            self.sys,
            TelescopeElement(1, Permutation.identity(2)),
            TelescopeElement(3, Permutation.identity(8)),
        ))

    def test_element(self):
        self.assertEqual(
            self.sys.element(1, Permutation(MOCK_TRANSPOSITION)), self.e,
        )
        with pytest.raises(InvalidPermutation):
            self.sys.element(2, Permutation(MOCK_TRANSPOSITION))
        with pytest.raises(InvalidInputError):
            self.sys.element(-1, Permutation.identity(1))

    def test_system_base(self):
        with pytest.raises(InvalidInputError):
            symmetric_system(1)
        with pytest.raises(InvalidInputError):
            constant_system([])

    def test_default_max_level(self):
        self.assertEqual(default_max_level(2), 6)
        self.assertEqual(default_max_level(3), 4)
        self.assertEqual(default_max_level(5), 3)


class TestTransitions(unittest.TestCase):

    def test_symmetric(self):
        report = check_transitions(symmetric_system(2), 3)
        self.assertTrue(report['valid'])
        self.assertEqual([r['level'] for r in report['levels']], [0, 1, 2])

    def test_constant(self):
        sys = constant_system([Permutation(MOCK_TRANSPOSITION)])
        self.assertTrue(check_transitions(sys, 2)['valid'])


class TestAbelianness(unittest.TestCase):

    def test_base_two(self):
        probe = abelianness_probe(symmetric_system(2), 4)
        a, b = probe.witness
        self.assertEqual(a.level, 2)
        self.assertEqual(a.value, parse_cycles("(0 1)", 4))
        self.assertEqual(b.value, parse_cycles("(1 2)", 4))
        self.assertEqual(probe.verified_up_to, 4)
        self.assertEqual(probe.to_dict()['witness']['left'], "(0 1)")
        self.assertIsNone(probe.to_dict()['abelian_up_to'])

    def test_base_three(self):
        probe = abelianness_probe(symmetric_system(3), 1)
        self.assertEqual(probe.witness[0].level, 1)
        self.assertEqual(probe.verified_up_to, 1)

    def test_constant_abelian(self):
        sys = constant_system([Permutation(MOCK_TRANSPOSITION)])
        probe = abelianness_probe(sys, 3)
        self.assertIsNone(probe.witness)
        self.assertEqual(
            probe.to_dict(), {'abelian_up_to': 3, 'witness': None},
        )

    def test_max_level(self):
        with pytest.raises(InvalidInputError):
            abelianness_probe(symmetric_system(2), 0)


class TestDivisibility(unittest.TestCase):

    sys = symmetric_system(2)

    def test_transposition(self):
        """(0 1) has no square root until it is stabilized"""
        e = TelescopeElement(1, Permutation(MOCK_TRANSPOSITION))
        records = divisibility_probe(self.sys, e, 2, 3)
        self.assertEqual([r['level'] for r in records], [1, 2, 3])
        self.assertEqual(
            [r['has_root'] for r in records], [False, True, True],
        )
        self.assertIsNone(records[0]['witness'])
        self.assertEqual(records[1]['witness'], "(0 2 1 3)")
        self.assertNotIn('blocks', records[0])
        blocks = records[1]['blocks']
        self.assertEqual(blocks['factors'], ["(0 1)", "(2 3)"])
        self.assertTrue(blocks['pairwise_conjugate'])
        self.assertTrue(blocks['product_matches'])
        self.assertTrue(records[2]['blocks']['product_matches'])

    def test_identity(self):
        e = TelescopeElement(0, Permutation.identity(1))
        records = divisibility_probe(self.sys, e, 2, 2)
        self.assertTrue(all(r['has_root'] for r in records))

    def test_three_cycle(self):
        e = TelescopeElement(1, Permutation([1, 2, 0]))
        records = divisibility_probe(symmetric_system(3), e, 3, 2)
        self.assertEqual([r['has_root'] for r in records], [False, True])
        self.assertEqual(records[1]['cycle_type']['lengths'], [3, 3, 3])

    def test_errors(self):
        e = TelescopeElement(2, Permutation.identity(4))
        with pytest.raises(InvalidInputError):
            divisibility_probe(self.sys, e, 2, 1)
        with pytest.raises(InvalidInputError):
            divisibility_probe(self.sys, e, 4, 3)

    def test_block_factors(self):
        e = TelescopeElement(1, Permutation(MOCK_TRANSPOSITION))
        self.assertEqual(
            block_factors(self.sys, e),
            [parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4)],
        )
        sys = constant_system([Permutation(MOCK_TRANSPOSITION)])
        with pytest.raises(InvalidInputError):
            block_factors(sys, e)
