"""Unit tests for graded bialgebras and the bialgebra Frobenius."""

from copy import deepcopy
import unittest

import pytest

from pperf_cli.errors import (
    InvalidBialgebraData,
    InvalidInputError,
    PreconditionError,
    TruncationError,
)
from pperf_cli.fpbialg import (
    BasisElement,
    GradedBialgebra,
    check_axioms,
    colimit_along_frobenius,
    frobenius,
    frobenius_iterate,
    frobenius_nilpotence,
    grouplikes,
    is_weakly_primitive,
    load_bialgebra,
    monoid_algebra,
    polynomial_bialgebra,
    verify_phi_formula,
)
from pperf_cli.homology import assemble_fin_bialgebra
from pperf_cli.monoid import (
    FiniteCommMonoid,
    cyclic_monoid,
    invert_p,
)
from tests.mock_data import (
    MOCK_IDEMPOTENT,
    MOCK_SKEW_BIALGEBRA,
    MOCK_TRIVIAL_BIALGEBRA,
)


def idempotent():
    return FiniteCommMonoid(
        MOCK_IDEMPOTENT['table'], zero=MOCK_IDEMPOTENT['zero'],
    )


class TestGradedBialgebra(unittest.TestCase):

    def test_load(self):
        H = load_bialgebra(MOCK_TRIVIAL_BIALGEBRA)
        self.assertEqual(len(H.basis), 1)
        self.assertEqual(H.to_dict(), MOCK_TRIVIAL_BIALGEBRA)
        P = polynomial_bialgebra(3, 4, 2)
        self.assertEqual(load_bialgebra(P.to_dict()).to_dict(), P.to_dict())

    def test_load_invalid(self):
        with pytest.raises(InvalidBialgebraData):
            load_bialgebra({'p': 2})
        data = deepcopy(MOCK_TRIVIAL_BIALGEBRA)
        data['unit'] = 3
        with pytest.raises(InvalidBialgebraData):
            load_bialgebra(data)

    def test_invalid_parameters(self):
        with pytest.raises(InvalidBialgebraData):
            GradedBialgebra(1, 0, 0, [BasisElement('1', 0)], {}, {}, 0, {})
        with pytest.raises(InvalidBialgebraData):
            GradedBialgebra(
                2, 0, 0, [BasisElement('1', 0)], {(0, 1): {0: 1}}, {}, 0, {},
            )

    def test_elements(self):
        H = polynomial_bialgebra(2, 4, 2)
        self.assertEqual([b.name for b in H.basis], ['1', 'y', 'y^2'])
        y = H.element_from_names({'y': 3})
        self.assertEqual(y.terms, ((1, 1),))
        self.assertEqual((y.degree, y.weight), (2, 0))
        self.assertTrue(H.element({1: 2}).is_zero)
        with pytest.raises(PreconditionError):
            H.element({0: 1, 1: 1})
        with pytest.raises(InvalidInputError):
            H.element_from_names({'z': 1})

    def test_truncation(self):
        H = polynomial_bialgebra(2, 4, 2)
        with pytest.raises(TruncationError) as e:
            H.multiply({1: 1}, {2: 1})
        assert e.value.degree == 6

    def test_odd_generator(self):
        """Odd generators square to zero for odd p"""
        H = polynomial_bialgebra(3, 5, 1)
        self.assertEqual([b.name for b in H.basis], ['1', 'y'])
        self.assertTrue(check_axioms(H)['passed'])


class TestAxioms(unittest.TestCase):

    def test_pass(self):
        for H in (
            load_bialgebra(MOCK_TRIVIAL_BIALGEBRA),
            polynomial_bialgebra(2, 4, 2),
            polynomial_bialgebra(3, 6, 2),
            monoid_algebra(idempotent(), 2),
        ):
            report = check_axioms(H)
            self.assertTrue(report['passed'])
            self.assertEqual(report['failed'], {})

    def test_corrupt_unit(self):
        H = polynomial_bialgebra(2, 4, 2)
        H.mult[(0, 1)] = {2: 1}
        report = check_axioms(H)
        self.assertFalse(report['passed'])
        self.assertIn('unit', report['failed'])
        self.assertIn(
            ['y'],
            [f['witness'] for f in report['failures']
             if f['axiom'] == 'unit'],
        )

    def test_max_failures(self):
        H = polynomial_bialgebra(2, 4, 2)
        H.counit = {}
        report = check_axioms(H, max_failures=1)
        self.assertGreater(report['failed']['counit'], 1)
        self.assertEqual(
            len([f for f in report['failures'] if f['axiom'] == 'counit']),
            1,
        )


class TestPrimitivity(unittest.TestCase):

    def test_square(self):
        H = polynomial_bialgebra(3, 4, 2)
        alpha = is_weakly_primitive(H, H.element_from_names({'y^2': 1}))
        self.assertEqual(H.describe(alpha.vector), {'1': 1})

    def test_not_primitive(self):
        H = polynomial_bialgebra(2, 4, 2)
        H.comult[1] = {(1, 1): 1}
        self.assertIsNone(
            is_weakly_primitive(H, H.element_from_names({'y': 1})),
        )

    def test_degree_zero(self):
        H = polynomial_bialgebra(2, 4, 2)
        with pytest.raises(PreconditionError):
            is_weakly_primitive(H, H.element_from_names({'1': 1}))
        with pytest.raises(PreconditionError):
            is_weakly_primitive(H, H.element({}))


class TestFrobenius(unittest.TestCase):

    def test_primitive(self):
        H = polynomial_bialgebra(2, 4, 2)
        self.assertTrue(
            frobenius(H, H.element_from_names({'y': 1}), 2).is_zero,
        )
        H = polynomial_bialgebra(3, 4, 2)
        phi = frobenius(H, H.element_from_names({'y': 1}), 2)
        self.assertEqual(H.describe(phi.vector), {'y': 2})
        self.assertTrue(
            frobenius(H, H.element_from_names({'y': 1}), 3).is_zero,
        )

    def test_iterate(self):
        H = polynomial_bialgebra(3, 4, 2)
        y = H.element_from_names({'y': 1})
        self.assertEqual(frobenius_iterate(H, y, 0), y)
        self.assertTrue(frobenius_iterate(H, y, 2).is_zero)

    def test_components(self):
        H = assemble_fin_bialgebra(2, 1, 2)
        phi = frobenius(H, H.element_from_names({'[1]': 1}), 2)
        self.assertEqual(H.describe(phi.vector), {'[2]': 1})
        with pytest.raises(TruncationError) as e:
            frobenius(H, H.element_from_names({'[2]': 1}), 2)
        assert e.value.weight == 4
        with pytest.raises(InvalidInputError):
            frobenius(H, H.element_from_names({'[1]': 1}), 0)

    def test_phi_formula(self):
        H = polynomial_bialgebra(3, 4, 2)
        report = verify_phi_formula(H, H.element_from_names({'y^2': 1}), 2)
        self.assertEqual(report['alpha'], {'1': 1})
        self.assertEqual(report['phi'], {'y^2': 1})
        self.assertEqual(report['leading'], {'y^2': 2})
        self.assertEqual(report['difference'], {'y^2': 2})
        self.assertEqual(report['ideal_dimension'], 1)
        self.assertTrue(report['in_ideal'])
        self.assertEqual(
            report['decomposition'],
            [{'left': 'y', 'right': 'y', 'coeff': 2}],
        )

    def test_phi_formula_primitive(self):
        H = polynomial_bialgebra(3, 4, 2)
        report = verify_phi_formula(H, H.element_from_names({'y': 1}), 2)
        self.assertEqual(report['difference'], {})
        self.assertEqual(report['ideal_dimension'], 0)
        self.assertTrue(report['in_ideal'])

    def test_phi_formula_precondition(self):
        H = polynomial_bialgebra(2, 4, 2)
        H.comult[1] = {(1, 1): 1}
        with pytest.raises(PreconditionError):
            verify_phi_formula(H, H.element_from_names({'y': 1}), 2)

    def test_nilpotence(self):
        for p in (2, 3):
            report = frobenius_nilpotence(polynomial_bialgebra(p, 4, 2))
            self.assertTrue(report['consistent'])
            self.assertEqual(
                [d['verified'] for d in report['degrees']], [0, 1, 0, 1],
            )

    def test_nilpotence_overflow(self):
        report = frobenius_nilpotence(assemble_fin_bialgebra(2, 1, 2))
        self.assertTrue(report['consistent'])
        (record,) = report['records']
        self.assertEqual(record['overflow'], {'stage': 1, 'weight': 4})
        self.assertIsNone(record['direct_vanishes'])


class TestGrouplikes(unittest.TestCase):

    def test_monoid_algebra(self):
        H = monoid_algebra(idempotent(), 2)
        self.assertEqual(
            [H.describe(g.vector) for g in grouplikes(H)],
            [{'[0]': 1}, {'[1]': 1}],
        )

    def test_polynomial(self):
        H = polynomial_bialgebra(2, 4, 2)
        self.assertEqual(len(grouplikes(H)), 1)


class TestColimit(unittest.TestCase):

    def test_degree_zero(self):
        """Degree-0 classes match the localization of the monoid"""
        for M in (idempotent(), cyclic_monoid(2), cyclic_monoid(3)):
            report = colimit_along_frobenius(monoid_algebra(M, 2))
            self.assertEqual(
                report['degree0']['dimension'],
                invert_p(M, 2).to_finite().size,
            )

    def test_positive_degrees(self):
        report = colimit_along_frobenius(polynomial_bialgebra(2, 4, 2))
        self.assertTrue(report['vanishes_in_positive_degrees'])
        self.assertEqual(
            report['degrees'][1]['rank_sequences'], {'0': [1, 0]},
        )
        self.assertTrue(report['vanishes_within_window'])

    def test_surviving_class(self):
        """Phi_2 fixes x when e kills it and x is skew over e"""
        H = load_bialgebra(MOCK_SKEW_BIALGEBRA)
        x = H.element_from_names({'x': 1})
        self.assertEqual(frobenius(H, x, 2), x)
        report = colimit_along_frobenius(H)
        (degree,) = report['degrees']
        self.assertEqual(degree['rank_sequences'], {'0': [1, 1]})
        self.assertEqual(degree['resolved_weights'], [0])
        self.assertEqual(degree['dimension'], 1)
        self.assertFalse(report['vanishes_within_window'])
        self.assertFalse(report['vanishes_in_positive_degrees'])

    def test_unresolved_weights(self):
        report = colimit_along_frobenius(assemble_fin_bialgebra(2, 1, 2))
        (degree,) = report['degrees']
        self.assertEqual(degree['unresolved_weights'], [2])
        self.assertEqual(degree['dimension'], 0)
        self.assertTrue(report['vanishes_within_window'])
        self.assertIsNone(report['vanishes_in_positive_degrees'])
