"""Unit tests for the acceptance manifest and the end-to-end pipeline."""

import unittest
from unittest.mock import patch

import pytest

from pperf_cli.acceptance import (
    fin_frobenius,
    localization_oracle,
    manifest,
    phi_formula_counts,
    phi_formulas,
    pipeline_criterion,
    run_criterion,
    weak_primitivity,
)
from pperf_cli.errors import (InvalidInputError, TruncationError)
from pperf_cli.homology import assemble_fin_bialgebra


class TestManifest(unittest.TestCase):

    def test_manifest(self):
        entries = manifest()
        self.assertEqual([e['number'] for e in entries], list(range(1, 10)))
        self.assertEqual(
            entries[7]['command'],
            'pperf pipeline fin-frobenius --N 4 --D 3 --p 2',
        )

    def test_unknown(self):
        with pytest.raises(InvalidInputError):
            run_criterion(99)

    def test_light_criteria(self):
        for number in (2, 3, 4, 7):
            report = run_criterion(number)
            self.assertTrue(report['passed'])
            self.assertEqual(report['criterion'], number)

    def test_hypoabelian(self):
        report = run_criterion(3)
        self.assertEqual(report['derived_series_S4'], [24, 12, 4, 1])
        self.assertEqual(report['perfect_core_A5'], 60)

    def test_localization_sample(self):
        report = localization_oracle(count=10)
        self.assertEqual(report['failures'], [])
        self.assertTrue(report['passed'])

    @pytest.mark.slow
    def test_heavy_criteria(self):
        for number in (1, 5, 6, 8, 9):
            self.assertTrue(run_criterion(number)['passed'])


class TestPipeline(unittest.TestCase):

    def test_small(self):
        report = fin_frobenius(2, 2, 2)
        self.assertTrue(report['axioms']['passed'])
        self.assertTrue(report['nilpotence']['consistent'])
        self.assertTrue(report['passed'])
        self.assertEqual(report['parameters'], {'N': 2, 'D': 2, 'p': 2})
        self.assertEqual(report['phi_formula_counts'], {
            'verified': 0, 'failed': 0, 'skipped': 0, 'out_of_window': 2,
        })

    def test_window_too_small(self):
        """Phi_2 of the weight-2 classes leaves the window W = 2"""
        report = pipeline_criterion(2, 1, 2)
        self.assertEqual(report['phi_formula_counts']['verified'], 0)
        self.assertEqual(
            report['phi_formula_counts']['out_of_window'], 1,
        )
        self.assertFalse(report['passed'])

    def test_skipped_elements_fail(self):
        H = assemble_fin_bialgebra(4, 1, 2)
        with patch(
            'pperf_cli.acceptance.verify_phi_formula',
            side_effect=TruncationError('left the window', weight=5),
        ):
            records = phi_formulas(H, 2)
        self.assertEqual(
            [r['element'] for r in records if 'skipped' in r],
            ['h1.0[2]'],
        )
        self.assertEqual(phi_formula_counts(records), {
            'verified': 0, 'failed': 0, 'skipped': 1, 'out_of_window': 2,
        })

    def test_weak_primitivity(self):
        H = assemble_fin_bialgebra(3, 1, 2)
        records = weak_primitivity(H)
        self.assertEqual(
            [r['element'] for r in records], ['h1.0[2]', 'h1.0[3]'],
        )
        self.assertEqual(records[0]['alpha'], {'[2]': 1})
        self.assertTrue(all(r['component'] for r in records))
