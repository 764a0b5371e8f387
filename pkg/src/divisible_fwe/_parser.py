import argparse
import logging
import logging.handlers
import shlex
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Union

import regex

from divisible_fwe._errors import LiteralParseError
from divisible_fwe.algebra.exactnum import ExactNumber, as_scalar

USAGE_ERROR = 1

_SIGN = regex.compile(r'[+-]')
_RATIONAL = regex.compile(r'([0-9]+)(?:/([0-9]+))?')
_RADICAL = regex.compile(r'sqrt\(([0-9]+)\)')

_installed_handlers: Dict[str, logging.Handler] = {}


def add_logging(g):
    """
    Adds verbose, debug, and syslog arguments to a ArgumentParser.

    Parameters
    ----------
    g : argparse.ArgumentParser or argparse._ArgumentGroup

    """
    g.add_argument('-d', '--debug', action="store_const", dest="loglevel", const=logging.DEBUG,
                   help="Print lots of debugging statements",
                   default=logging.WARNING)
    g.add_argument('-v', '--verbose', action="store_const", dest="loglevel", const=logging.INFO,
                   help="Be verbose")
    g.add_argument('--syslog', action='store_true', default=False,
                   help='If given, logging goes to local syslog facility instead of stderr')


def setup_logging(logger, syslog=False, loglevel=logging.WARNING):
    """
    Set a logger to log to syslog or stderr with a given `loglevel`.

    stdout is reserved for command output. Calling this again replaces the
    handler installed by the previous call.

    Parameters
    ----------
    logger : logging.Logger
    syslog : bool
    loglevel : int
    """
    if syslog:
        handler = logging.handlers.SysLogHandler(address='/dev/log')
        formatter = logging.Formatter('%(message)s')
    else:
        handler = logging.StreamHandler(sys.stderr)
        # noinspection SpellCheckingInspection
        formatter = logging.Formatter('%(asctime)s %(name)s %(levelname)s - %(message)s')
    handler.setFormatter(formatter)
    logger.setLevel(loglevel)

    previous = _installed_handlers.pop(logger.name, None)
    if previous is not None:
        logger.removeHandler(previous)
    logger.addHandler(handler)
    _installed_handlers[logger.name] = handler


class SettingsArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser that reads settings files given as ``@FILE``.

    Only lines starting with a '-' as first non-whitespace character are processed,
    everything else in the file is a comment. Since the file content is spliced
    into the command line before parsing, required and mutually exclusive
    arguments work as if typed.

    Usage errors exit with code 1 instead of argparse's 2, which is reserved for
    indeterminate verdicts.
    """

    def __init__(self, *args, **kwargs):
        kwargs.setdefault('fromfile_prefix_chars', '@')
        super().__init__(*args, **kwargs)

    def convert_arg_line_to_args(self, arg_line):
        line = arg_line.strip()  # remove leading and trailing whitespaces
        if line.startswith('-'):
            # use shlex.split instead of line.split to preserve quoting of arguments containing spaces
            return shlex.split(line)
        return []

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f'{self.prog}: error: {message}\n')


def parse_exact_literal(s: str) -> ExactNumber:
    """
    Parses an exact literal.

    Accepted forms are ``INT``, ``INT/POSINT`` and ``RAT (+|-) RAT*sqrt(POSINT)``
    with optional coefficient and optional ``*``, e.g. ``4+2*sqrt(2)``,
    ``-1/27``, ``sqrt(8)`` or ``2-2/5*sqrt(5)``. Radicands are reduced, so
    ``sqrt(8)`` yields ``2*sqrt(2)``.

    Parameters
    ----------
    s : str

    Returns
    -------
    ExactNumber

    Raises
    ------
    LiteralParseError
        With the offending position.
    """
    if not isinstance(s, str):
        raise TypeError(f'expected str, got {type(s)}')
    text = s.strip()

    def fail(message, position):
        raise LiteralParseError(message, text, position)

    def sign(pos):
        m = _SIGN.match(text, pos)
        if m:
            return (-1 if m.group() == '-' else 1), m.end()
        return 1, pos

    def rational(pos):
        m = _RATIONAL.match(text, pos)
        if not m:
            return None, pos
        den = 1
        if m.group(2) is not None:
            den = int(m.group(2))
            if den == 0:
                fail('zero denominator', m.start(2))
        return Fraction(int(m.group(1)), den), m.end()

    def radical(pos):
        m = _RADICAL.match(text, pos)
        if not m:
            fail("expected 'sqrt(' followed by a positive integer and ')'", pos)
        d = int(m.group(1))
        if d == 0:
            fail('radicand must be positive', m.start(1))
        return d, m.end()

    first_sign, pos = sign(0)
    first, pos = rational(pos)
    if first is None:
        d, pos = radical(pos)
        a, b = Fraction(0), Fraction(first_sign)
    elif pos == len(text):
        return ExactNumber(first_sign * first)
    elif text.startswith('*', pos) or _RADICAL.match(text, pos):
        if text.startswith('*', pos):
            pos += 1
        d, pos = radical(pos)
        a, b = Fraction(0), first_sign * first
    else:
        a = first_sign * first
        m = _SIGN.match(text, pos)
        if not m:
            fail("expected '+', '-', '*' or end of input", pos)
        second_sign, pos = sign(pos)
        second, pos = rational(pos)
        if second is None:
            second = Fraction(1)
        elif text.startswith('*', pos):
            pos += 1
        d, pos = radical(pos)
        b = second_sign * second

    if pos != len(text):
        fail('unexpected trailing input', pos)
    return ExactNumber(a, b, d)


def as_exact(x, none_ok=False) -> Optional[ExactNumber]:
    """
    Converts 'x' to an ExactNumber and returns it.

    Parameters
    ----------
    x : str or int or fractions.Fraction or ExactNumber or None
        Strings are parsed as exact literals.
    none_ok : bool
        If True, None is valid for 'x', otherwise a ValueError is raised.

    Returns
    -------
    ExactNumber
    """
    if x is None and none_ok:
        return None
    elif isinstance(x, str):
        return parse_exact_literal(x)
    elif isinstance(x, (int, Fraction, ExactNumber)):
        return as_scalar(x)
    else:
        raise ValueError(f'{x} of type {type(x)} cannot be processed as exact number')


def as_exact_list(s: Union[str, List]) -> List[ExactNumber]:
    """Comma separated exact literals, or a list of anything `as_exact` accepts."""
    if isinstance(s, str):
        items = [item for item in s.split(',') if item.strip()]
    else:
        items = list(s)
    return [as_exact(item) for item in items]


def as_rational(x) -> Fraction:
    """
    Converts 'x' to a Fraction. Decimal and scientific notation such as '1e-30' is
    read exactly.
    """
    if isinstance(x, ExactNumber):
        if not x.is_rational:
            raise ValueError(f'{x} is not rational')
        return x.a
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f'{x!r} cannot be processed as rational number')
