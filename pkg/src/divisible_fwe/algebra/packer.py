import json
import warnings
from fractions import Fraction
from typing import Any, Iterable, Mapping, Union

import yaml

from divisible_fwe._errors import LiteralParseError
from divisible_fwe._parser import as_exact
from divisible_fwe.algebra.exactnum import ExactNumber, Interval
from divisible_fwe.algebra.poly import HomogPoly, UniPoly


class Packer:
    def __init__(self):
        pass

    def pack(self, x) -> bytes:
        raise NotImplementedError

    def unpack(self, x: bytes):
        raise NotImplementedError


class JSONPacker(Packer):
    """
    Canonical JSON: sorted keys, two-space indent and a trailing newline, so that
    equal objects always give identical bytes.

    Subclasses convert their objects with `encode` and `decode`.
    """

    def encode(self, x) -> Any:
        return x

    def decode(self, data: Any):
        return data

    def pack(self, x) -> bytes:

        if isinstance(x, bytes):
            x = x.decode()
        if isinstance(x, str):
            try:
                data = json.loads(x)
            except json.JSONDecodeError:
                raise ValueError(f'Data {x} is no valid json')
            else:
                return self.dumps(data).encode()

        data = self.encode(x)
        if isinstance(data, Mapping):
            non_string = [key for key in data.keys() if not isinstance(key, str)]
            if non_string:
                warnings.warn(f'keys {non_string} will be converted to string keys', RuntimeWarning)
        return self.dumps(data).encode()

    @staticmethod
    def dumps(data: Any) -> str:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'

    def unpack(self, x: bytes) -> Any:
        try:
            data = json.loads(x.decode())
        except json.JSONDecodeError as e:
            raise ValueError(f'Data is no valid json: {e}')
        return self.decode(data)


class YamlPacker(Packer):
    """Human-readable reports. Exact values are written as literal strings."""

    def pack(self, x: Any) -> bytes:
        return yaml.safe_dump(x, sort_keys=False, default_flow_style=False, allow_unicode=True).encode()

    def unpack(self, x: bytes) -> Any:
        return yaml.safe_load(x.decode())


class HomogPolyPacker(JSONPacker):
    """``{"n": int, "coeffs": [exact literals]}``."""

    def encode(self, x: HomogPoly) -> dict:
        return {'n': x.n, 'coeffs': [str(c) for c in x.coeffs]}

    def decode(self, data: Mapping) -> HomogPoly:
        try:
            return HomogPoly([as_exact(c) for c in data['coeffs']], n=data.get('n'))
        except (KeyError, TypeError) as e:
            raise ValueError(f'malformed polynomial {data!r}: {e}')


class UniPolyPacker(JSONPacker):
    """``{"var": str, "coeffs": [exact literals]}`` with ascending exponents."""

    def encode(self, x: UniPoly) -> dict:
        return {'var': x.var, 'coeffs': [str(c) for c in x.coeffs]}

    def decode(self, data: Mapping) -> UniPoly:
        try:
            return UniPoly([as_exact(c) for c in data['coeffs']], data.get('var', 'T'))
        except (KeyError, TypeError) as e:
            raise ValueError(f'malformed polynomial {data!r}: {e}')


def encode_witness_value(value: Union[int, ExactNumber, Interval, Iterable]) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (ExactNumber, Fraction)):
        return str(value)
    if isinstance(value, Interval):
        return [str(value.lo), str(value.hi)]
    return [encode_witness_value(v) for v in value]


class RHVerdictPacker(JSONPacker):
    """``{"status", "method", "witnesses": [{"description", "value"}], "precision_bits"}``."""

    def encode(self, x) -> dict:
        return {'status': x.status,
                'method': x.method,
                'witnesses': [{'description': description, 'value': encode_witness_value(value)}
                              for description, value in x.witnesses],
                'precision_bits': x.precision_used}

    def decode(self, data: Mapping):
        # zeta sits above the algebra package
        from divisible_fwe.zeta import RHVerdict

        def value(v):
            if isinstance(v, list) and len(v) == 2 and all(isinstance(e, str) for e in v):
                lo, hi = as_exact(v[0]), as_exact(v[1])
                return Interval(lo.a, hi.a)
            if isinstance(v, str):
                try:
                    return as_exact(v)
                except LiteralParseError:
                    return v
            return v

        try:
            return RHVerdict(status=data['status'],
                             method=data['method'],
                             witnesses=[(w['description'], value(w['value'])) for w in data['witnesses']],
                             precision_used=data['precision_bits'])
        except (KeyError, TypeError) as e:
            raise ValueError(f'malformed verdict {data!r}: {e}')
