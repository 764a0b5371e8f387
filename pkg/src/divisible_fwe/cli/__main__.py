#!/bin/env python3
import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, replace
from typing import Any, Dict, List, Sequence

from divisible_fwe._errors import PreconditionError, VerificationError
from divisible_fwe._parser import SettingsArgumentParser, USAGE_ERROR, add_logging, as_exact, as_exact_list, \
    as_rational, setup_logging
from divisible_fwe.algebra.exactnum import qx_sqrt_in_field
from divisible_fwe.algebra.packer import HomogPolyPacker, JSONPacker, RHVerdictPacker, UniPolyPacker, YamlPacker
from divisible_fwe.algebra.poly import HomogPoly
from divisible_fwe.catalog import CatalogEntry, CatalogFile, load_catalog
from divisible_fwe.conjecture import verify_conjecture
from divisible_fwe.moments import CandidateQ, construct_enumerator, search_degree
from divisible_fwe.rings import RingSpec, distance_bound, extremal_search, get_ring, ring_names, scan_extremal
from divisible_fwe.zeta import DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE, ZetaResult, functional_eq_check, \
    rh_check, zeta_poly

logger = logging.getLogger('divisible_fwe')

OK = 0
INDETERMINATE = 2
FAILURE = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=False,
                        help='Print canonical JSON instead of a YAML report')
    common.add_argument('--catalog', type=str, default=None,
                        help='JSON catalog file used in addition to the built-in catalog')
    common.add_argument('--jobs', type=int, default=None,
                        help='Number of worker threads for batch work')
    add_logging(common)
    return common


def setup_parser() -> argparse.ArgumentParser:
    parser = SettingsArgumentParser(prog='divisible_fwe',
                                    description='Divisible formal weight enumerators, their zeta polynomials and '
                                                'the Riemann hypothesis for them. Options can be read from a file '
                                                'given as @FILE.')
    common = _common_options()
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('search', parents=[common], help='Find q values and enumerators of given degrees')
    p.add_argument('--degree', type=int, nargs='+', required=True)
    p.add_argument('--parity', choices=['even', 'odd'], default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser('construct', parents=[common], help='Enumerators for one n, parity and q')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--parity', choices=['even', 'odd'], required=True)
    p.add_argument('--q', type=as_exact, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser('zeta', parents=[common], help='Zeta polynomial of an enumerator')
    _add_source(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser('rh', parents=[common], help='Riemann hypothesis for an enumerator')
    _add_source(p, allow_all=True)
    p.add_argument('--precision-bits', type=int, default=DEFAULT_PRECISION_BITS)
    p.add_argument('--tolerance', type=as_rational, default=DEFAULT_TOLERANCE)
    p.add_argument('--method', choices=['auto', 'exact', 'numeric', 'real-form'], default='auto')
    p.set_defaults(func=cmd_rh)

    p = sub.add_parser('extremal', parents=[common], help='Extremal enumerators in a two-generator ring')
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument('--ring', choices=ring_names())
    g.add_argument('--gen-inv', type=str, help='JSON file with the invariant generator')
    p.add_argument('--gen-anti', type=str, help='JSON file with the anti-invariant generator')
    p.add_argument('--q', type=as_exact, default=None)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument('--degree', type=int)
    g.add_argument('--scan', type=int, nargs=2, metavar=('MIN', 'MAX'))
    p.add_argument('--rh', action='store_true', default=False, help='Also decide RH for every result')
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser('conjecture', parents=[common], help='Check the Chebyshev determinant ratio')
    p.add_argument('--max-n', type=int, default=12)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser('catalog', help='List, show or add catalog entries')
    catalog_sub = p.add_subparsers(dest='catalog_command', required=True)
    c = catalog_sub.add_parser('list', parents=[common])
    c.set_defaults(func=cmd_catalog_list)
    c = catalog_sub.add_parser('show', parents=[common])
    c.add_argument('name')
    c.set_defaults(func=cmd_catalog_show)
    c = catalog_sub.add_parser('add', parents=[common])
    c.add_argument('--name', type=str, required=True)
    c.add_argument('--q', type=as_exact, required=True)
    c.add_argument('--coeffs', type=as_exact_list, required=True,
                   help='Comma separated coefficients of x^n, x^(n-1) y, ..., y^n')
    c.add_argument('--source', type=str, default='discovered')
    c.set_defaults(func=cmd_catalog_add)

    return parser


def _add_source(p: argparse.ArgumentParser, allow_all: bool = False):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument('--entry', type=str, help='Name of a catalog entry')
    g.add_argument('--file', type=str, help='JSON file {"n": ..., "coeffs": [...]}, needs --q')
    if allow_all:
        g.add_argument('--all', action='store_true', help='Every catalog entry')
    p.add_argument('--q', type=as_exact, default=None, help='q for --file')


def _emit(report: Any, as_json: bool):
    if as_json:
        sys.stdout.write(JSONPacker.dumps(report))
    else:
        sys.stdout.write(YamlPacker().pack(report).decode())


def _read_poly(path: str) -> HomogPoly:
    with open(path, 'rb') as f:
        return HomogPolyPacker().unpack(f.read())


def _sources(args) -> List[tuple]:
    """(name, W, q) triples selected by --entry, --file or --all."""
    if getattr(args, 'all', False):
        return [(name, e.W, e.q_value) for name, e in sorted(load_catalog(args.catalog).items())]
    if args.entry is not None:
        entry = _entry(args, args.entry)
        return [(entry.name, entry.W, entry.q_value)]
    if args.q is None:
        raise ValueError('--file needs --q')
    return [(args.file, _read_poly(args.file), args.q)]


def _entry(args, name: str) -> CatalogEntry:
    catalog = load_catalog(args.catalog)
    if name not in catalog:
        raise KeyError(f'{name} is not in the catalog')
    return catalog[name]


def _poly(W: HomogPoly) -> Dict[str, Any]:
    return {'n': W.n, 'coeffs': [str(c) for c in W.coeffs], 'text': str(W)}


def _zeta_report(Z: ZetaResult, q) -> Dict[str, Any]:
    sqrt_q = qx_sqrt_in_field(q)
    fe = None if Z.two_g % 2 and sqrt_q is None else functional_eq_check(Z, q, sqrt_q)
    return {'P': str(Z.P), 'polynomial': UniPolyPacker().encode(Z.P), 'two_g': Z.two_g, 'sign': Z.sign,
            'functional_equation': fe}


def cmd_search(args) -> int:
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(lambda d: search_degree(d, args.parity), args.degree))

    out = []
    for report in reports:
        out.append({'degree': report.degree,
                    'n': report.n,
                    'parity': report.parity,
                    'determinant': str(report.determinant),
                    'factors': [[str(f), k] for f, k in report.factors],
                    'unresolved': [str(f) for f in report.unresolved],
                    'candidates': [{'q': str(r.candidate.q),
                                    't': str(r.candidate.t) if r.candidate.t is not None else None,
                                    'minimal_polynomial': str(r.candidate.minimal_polynomial),
                                    'new': r.new,
                                    'enumerators': [_poly(W) for W in r.enumerators]}
                                   for r in report.found]})
        if args.catalog is not None:
            catalog = CatalogFile(args.catalog)
            for k, r in enumerate(report.found):
                if r.new:
                    for j, W in enumerate(r.enumerators):
                        name = f'search_{report.degree}_{k}_{j}'
                        if name not in catalog:
                            catalog[name] = CatalogEntry.from_enumerator(name, W, r.candidate.q,
                                                                         kind='anti-invariant')
    _emit(out if len(out) > 1 else out[0], args.json)
    return OK


def cmd_construct(args) -> int:
    enumerators = construct_enumerator(args.n, args.parity, CandidateQ.from_value(args.q))
    _emit({'q': str(args.q), 'enumerators': [_poly(W) for W in enumerators]}, args.json)
    return OK


def cmd_zeta(args) -> int:
    out = []
    for name, W, q in _sources(args):
        report = {'name': name, 'q': str(q)}
        report.update(_zeta_report(zeta_poly(W, q), q))
        out.append(report)
    _emit(out[0], args.json)
    return OK


def cmd_rh(args) -> int:
    sources = _sources(args)

    def run(source):
        name, W, q = source
        try:
            Z = zeta_poly(W, q)
        except PreconditionError as e:
            if not args.all:
                raise
            logger.info('%s skipped: %s', name, e)
            return None
        verdict = rh_check(Z, q, args.precision_bits, args.tolerance, method=args.method)
        report = {'name': name, 'q': str(q), 'P': str(Z.P)}
        report.update(RHVerdictPacker().encode(verdict))
        return report

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        out = [r for r in pool.map(run, sources) if r is not None]
    _emit(out if args.all else out[0], args.json)
    return INDETERMINATE if any(r['status'] == 'indeterminate' for r in out) else OK


def _ring(args) -> RingSpec:
    if args.ring is not None:
        return get_ring(args.ring)
    if args.gen_anti is None or args.q is None:
        raise ValueError('--gen-inv needs --gen-anti and --q')
    return RingSpec(args.q, _read_poly(args.gen_inv), _read_poly(args.gen_anti))


def _extremal_report(result, verdict=None) -> Dict[str, Any]:
    report = {'degree': result.W.n,
              'd': result.d,
              'genus_bound': distance_bound('genus-nonneg', result.W.n),
              'combination': [{'l': l, 'm': m, 'scalar': str(s)} for (l, m), s in result.combination],
              'W': _poly(result.W)}
    if verdict is not None:
        report['rh'] = RHVerdictPacker().encode(verdict)
    return report


def cmd_extremal(args) -> int:
    R = _ring(args)
    if args.degree is not None:
        result = extremal_search(R, args.degree)
        verdict = rh_check(zeta_poly(result.W, R.q), R.q, sqrt_q=R.sqrt_q) if args.rh else None
        _emit(_extremal_report(result, verdict), args.json)
    else:
        low, high = args.scan
        rows = scan_extremal(R, range(low, high + 1), rh=args.rh, jobs=args.jobs)
        _emit([_extremal_report(row.result, row.verdict) for row in rows], args.json)
    return OK


def cmd_conjecture(args) -> int:
    report = verify_conjecture(args.max_n, jobs=args.jobs)
    rows = []
    for row in report.results:
        item = {'n': row.n, 'holds': row.holds}
        if not row.holds or args.json:
            item.update({'lhs': str(row.lhs), 'rhs': str(row.rhs)})
        rows.append(item)
    _emit({'n_max': report.n_max, 'all_hold': report.all_hold, 'results': rows}, args.json)
    return OK if report.all_hold else FAILURE


def cmd_catalog_list(args) -> int:
    rows = [{'name': e.name, 'n': e.n, 'q': e.q, 'kind': e.kind, 'rh_status': e.rh_status, 'source': e.source}
            for _, e in sorted(load_catalog(args.catalog).items())]
    _emit(rows, args.json)
    return OK


def cmd_catalog_show(args) -> int:
    _emit(asdict(_entry(args, args.name)), args.json)
    return OK


def cmd_catalog_add(args) -> int:
    if args.catalog is None:
        raise ValueError('catalog add needs --catalog FILE')
    W = HomogPoly(args.coeffs)
    entry = CatalogEntry.from_enumerator(args.name, W, args.q, source=args.source)
    try:
        Z = zeta_poly(W, args.q)
    except PreconditionError as e:
        logger.warning('no zeta polynomial for %s: %s', args.name, e)
    else:
        entry = replace(entry, zeta_coeffs=[str(c) for c in Z.P.coeffs], two_g=Z.two_g,
                        rh_status=rh_check(Z, args.q).status)
    CatalogFile(args.catalog).append(entry)
    _emit(asdict(entry), args.json)
    return OK


def run_command(argv: Sequence[str]) -> int:
    """
    Parse `argv` and run the selected subcommand.

    Returns
    -------
    int
        0 on success, 1 for usage and input errors, 2 for an indeterminate RH
        verdict, 3 for failed verifications.
    """
    parser = setup_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR

    setup_logging(logger, syslog=args.syslog, loglevel=args.loglevel)

    try:
        return args.func(args)
    except VerificationError as e:
        logger.error('verification failed: %s', e)
        sys.stderr.write(f'{parser.prog}: verification failed: {e}\n')
        return FAILURE
    except (ValueError, KeyError, OSError) as e:
        logger.debug('input error', exc_info=True)
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f'{parser.prog}: error: {message}\n')
        return USAGE_ERROR


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
