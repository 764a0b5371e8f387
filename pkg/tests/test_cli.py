import io
import json
import os
import unittest
from contextlib import redirect_stderr, redirect_stdout

import yaml

from divisible_fwe.algebra.packer import HomogPolyPacker
from divisible_fwe.catalog import CatalogFile
from divisible_fwe.cli.__main__ import INDETERMINATE, OK, run_command, setup_parser
from tests import EmptyCatalogMixin, PHI3, PHI4, W22


class TestcaseCommandLine(EmptyCatalogMixin, unittest.TestCase):

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = run_command(list(argv))
        return code, out.getvalue(), err.getvalue()

    def run_json(self, *argv):
        code, out, err = self.run_cli(*argv, '--json')
        self.assertEqual(OK, code, err)
        return json.loads(out)

    def write_poly(self, W, name):
        filename = os.path.join(self.tempfolder, name)
        with open(filename, 'wb') as f:
            f.write(HomogPolyPacker().pack(W))
        return filename

    def testParser(self):
        parser = setup_parser()
        args = parser.parse_args(['rh', '--entry', 'phi4', '--method', 'exact'])
        self.assertEqual('exact', args.method)
        self.assertEqual(256, args.precision_bits)

    def testSearch(self):
        report = self.run_json('search', '--degree', '6')
        self.assertEqual(3, report['n'])
        self.assertEqual(['4/3', '2'], [c['q'] for c in report['candidates']])
        self.assertEqual([True, False], [c['new'] for c in report['candidates']])
        self.assertEqual(['1', '0', '-5', '0', '5/3', '0', '-1/27'],
                         report['candidates'][0]['enumerators'][0]['coeffs'])

        reports = self.run_json('search', '--degree', '3', '4', '--jobs', '2')
        self.assertEqual([3, 4], [r['degree'] for r in reports])
        self.assertEqual('2', reports[0]['candidates'][0]['t'])

    def testSearchRecordsNewEnumerators(self):
        self.run_json('search', '--degree', '8', '--catalog', self.catalog_filename)
        catalog = CatalogFile(self.catalog_filename)
        self.assertEqual(2, len(catalog))
        self.assertEqual({'4-2*sqrt(2)', '4+2*sqrt(2)'}, {entry.q for entry in catalog.values()})

    def testSearchYaml(self):
        code, out, err = self.run_cli('search', '--degree', '4')
        self.assertEqual(OK, code)
        report = yaml.safe_load(out)
        self.assertEqual(['1', '0', '-6', '0', '1'], report['candidates'][0]['enumerators'][0]['coeffs'])

    def testConstruct(self):
        report = self.run_json('construct', '--n', '2', '--parity', 'odd', '--q', '6-2*sqrt(5)')
        self.assertEqual(['1', '0', '-50+20*sqrt(5)', '0', '225-100*sqrt(5)', '0'],
                         report['enumerators'][0]['coeffs'])

        code, out, err = self.run_cli('construct', '--n', '2', '--parity', 'even', '--q', '3')
        self.assertEqual(1, code)
        self.assertIn('regular', err)

    def testZeta(self):
        report = self.run_json('zeta', '--entry', 'phi4')
        self.assertEqual(['-1', '0', '2'], report['polynomial']['coeffs'])
        self.assertEqual(2, report['two_g'])
        self.assertEqual(-1, report['sign'])
        self.assertTrue(report['functional_equation'])

        filename = self.write_poly(PHI3, 'phi3.json')
        report = self.run_json('zeta', '--file', filename, '--q', '4')
        self.assertEqual('2*T - 1', report['P'])

        code, out, err = self.run_cli('zeta', '--file', filename)
        self.assertEqual(1, code)

    def testRH(self):
        report = self.run_json('rh', '--entry', 'phi4')
        self.assertEqual('holds', report['status'])
        self.assertEqual('exact-sturm', report['method'])
        self.assertEqual(0, report['precision_bits'])

        report = self.run_json('rh', '--entry', 'phi8plus')
        self.assertEqual('fails', report['status'])
        self.assertTrue(report['witnesses'])

        report = self.run_json('rh', '--entry', 'phi8minus', '--method', 'real-form')
        self.assertEqual('holds', report['status'])

    def testRHIndeterminate(self):
        code, out, err = self.run_cli('rh', '--entry', 'phi8minus', '--tolerance', '0', '--json')
        self.assertEqual(INDETERMINATE, code)
        self.assertEqual('indeterminate', json.loads(out)['status'])

    def testRHAll(self):
        code, out, err = self.run_cli('rh', '--all', '--json', '--jobs', '4')
        self.assertEqual(OK, code, err)
        reports = {r['name']: r for r in json.loads(out)}
        self.assertEqual('holds', reports['W2_2']['status'])
        self.assertEqual('holds', reports['W12']['status'])
        self.assertEqual('fails', reports['extremal24']['status'])

    def testRHErrors(self):
        code, out, err = self.run_cli('rh', '--entry', 'nonexistent')
        self.assertEqual(1, code)
        self.assertIn('nonexistent', err)

        code, out, err = self.run_cli('rh', '--entry', 'phi8plus', '--method', 'exact')
        self.assertEqual(1, code)

        code, out, err = self.run_cli('rh', '--entry', 'phi4', '--q', '2+')
        self.assertEqual(1, code)

    def testExtremal(self):
        report = self.run_json('extremal', '--ring', 'RI_minus', '--degree', '12', '--rh')
        self.assertEqual(4, report['d'])
        self.assertEqual(7, report['genus_bound'])
        self.assertEqual('holds', report['rh']['status'])
        self.assertEqual([{'l': 4, 'm': 0, 'scalar': '9/8'}, {'l': 0, 'm': 1, 'scalar': '-1/8'}],
                         report['combination'])

        rows = self.run_json('extremal', '--ring', 'RIV_minus', '--scan', '3', '11')
        self.assertEqual([3, 5, 7, 9, 11], [row['degree'] for row in rows])

        inv = self.write_poly(W22, 'inv.json')
        anti = self.write_poly(PHI4, 'anti.json')
        report = self.run_json('extremal', '--gen-inv', inv, '--gen-anti', anti, '--q', '2', '--degree', '8')
        self.assertEqual(2, report['d'])

        code, out, err = self.run_cli('extremal', '--ring', 'RI_minus', '--degree', '5')
        self.assertEqual(1, code)

    def testConjecture(self):
        report = self.run_json('conjecture', '--max-n', '6')
        self.assertTrue(report['all_hold'])
        self.assertEqual(5, len(report['results']))

    def testCatalog(self):
        rows = self.run_json('catalog', 'list')
        self.assertIn('phi4', [row['name'] for row in rows])

        entry = self.run_json('catalog', 'show', 'phi5')
        self.assertEqual('6-2*sqrt(5)', entry['q'])

        entry = self.run_json('catalog', 'add', '--name', 'mine', '--q', '2', '--coeffs', '1,0,-5,0,-5,0,1',
                              '--catalog', self.catalog_filename)
        self.assertEqual('anti-invariant', entry['kind'])
        self.assertEqual('holds', entry['rh_status'])
        self.assertEqual(4, entry['two_g'])
        self.assertIn('mine', CatalogFile(self.catalog_filename))

        shown = self.run_json('catalog', 'show', 'mine', '--catalog', self.catalog_filename)
        self.assertEqual(entry, shown)

        code, out, err = self.run_cli('catalog', 'add', '--name', 'mine', '--q', '2', '--coeffs', '1,0,-5,0,-5,0,1',
                                      '--catalog', self.catalog_filename)
        self.assertEqual(1, code)
        self.assertIn('already exists', err)

        code, out, err = self.run_cli('catalog', 'add', '--name', 'x', '--q', '2', '--coeffs', '1,0,-5,0,-5,0,1')
        self.assertEqual(1, code)

    def testSettingsFile(self):
        settings = os.path.join(self.tempfolder, 'rh.txt')
        with open(settings, 'w') as f:
            f.write('these lines are comments\n')
            f.write('--entry phi3\n')
            f.write('--json\n')
        code, out, err = self.run_cli('rh', f'@{settings}')
        self.assertEqual(OK, code, err)
        self.assertEqual('holds', json.loads(out)['status'])

    def testUsage(self):
        code, out, err = self.run_cli()
        self.assertEqual(1, code)
        code, out, err = self.run_cli('rh')
        self.assertEqual(1, code)
        code, out, err = self.run_cli('search', '--degree', 'four')
        self.assertEqual(1, code)


if __name__ == "__main__":
    unittest.main()
