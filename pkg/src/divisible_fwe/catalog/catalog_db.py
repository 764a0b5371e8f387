import functools
import logging
import os
import tempfile
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Mapping, MutableMapping, Optional, Sequence, Tuple, Union

from typing_extensions import Literal

from divisible_fwe._errors import CatalogError, LiteralParseError
from divisible_fwe._parser import as_exact
from divisible_fwe.algebra.exactnum import ExactNumber, qx_sqrt_in_field
from divisible_fwe.algebra.packer import JSONPacker
from divisible_fwe.algebra.poly import HomogPoly, UniPoly, fwe_classify
from divisible_fwe.catalog._builtin import BUILTIN_ENTRIES, BUILTIN_SOURCE

logger = logging.getLogger('divisible_fwe.catalog')

Kind = Literal['anti-invariant', 'invariant']


@dataclass
class CatalogEntry:
    """
    A named enumerator with its q, class and, once computed, zeta polynomial and RH status.

    All scalars are exact literal strings.
    """
    name: str
    n: int
    parity: Literal['even', 'odd']
    q: str
    q_minimal_polynomial: List[str]
    coeffs: List[str]
    kind: Kind
    zeta_coeffs: Optional[List[str]] = None
    two_g: Optional[int] = None
    rh_status: Optional[str] = None
    source: str = 'discovered'

    @classmethod
    def from_enumerator(cls, name: str, W: HomogPoly, q, kind: Optional[Kind] = None,
                        source: str = 'discovered', zeta: Optional[UniPoly] = None, two_g: Optional[int] = None,
                        rh_status: Optional[str] = None) -> 'CatalogEntry':
        q = as_exact(q)
        if kind is None:
            kind = fwe_classify(W, q, qx_sqrt_in_field(q) if W.n % 2 else None)
            if kind == 'neither':
                raise CatalogError(f'entry {name!r}: {W} is neither invariant nor anti-invariant at q={q}')
        return cls(name=name, n=W.n, parity='odd' if W.n % 2 else 'even', q=str(q),
                   q_minimal_polynomial=[str(c) for c in q.minimal_polynomial()],
                   coeffs=[str(c) for c in W.coeffs], kind=kind,
                   zeta_coeffs=[str(c) for c in zeta.coeffs] if zeta is not None else None,
                   two_g=two_g, rh_status=rh_status, source=source)

    @property
    def q_value(self) -> ExactNumber:
        return as_exact(self.q)

    @property
    def W(self) -> HomogPoly:
        return HomogPoly([as_exact(c) for c in self.coeffs])

    @property
    def zeta(self) -> Optional[UniPoly]:
        if self.zeta_coeffs is None:
            return None
        return UniPoly([as_exact(c) for c in self.zeta_coeffs], 'T')

    def validate(self, classify: bool = False):
        """
        Raises
        ------
        CatalogError
            Naming this entry, if a field is malformed or, with `classify`, the recorded class is wrong.
        """
        try:
            q = self.q_value
            W = self.W
            for c in self.zeta_coeffs or ():
                as_exact(c)
        except (LiteralParseError, ValueError, TypeError) as e:
            raise CatalogError(f'entry {self.name!r}: {e}')
        if len(self.coeffs) != self.n + 1:
            raise CatalogError(f'entry {self.name!r}: {len(self.coeffs)} coefficients for degree {self.n}')
        if self.parity != ('odd' if self.n % 2 else 'even'):
            raise CatalogError(f'entry {self.name!r}: parity {self.parity!r} does not match degree {self.n}')
        if [str(c) for c in q.minimal_polynomial()] != list(self.q_minimal_polynomial):
            raise CatalogError(f'entry {self.name!r}: minimal polynomial does not belong to q={q}')
        if classify:
            kind = fwe_classify(W, q, qx_sqrt_in_field(q) if self.n % 2 else None)
            if kind != self.kind:
                raise CatalogError(f'entry {self.name!r} is {kind}, recorded as {self.kind}')


_FIELDS = set(CatalogEntry.__dataclass_fields__)


class CatalogEntryPacker(JSONPacker):

    def encode(self, x: CatalogEntry) -> dict:
        return asdict(x)

    def decode(self, data: Mapping) -> CatalogEntry:
        name = data.get('name', '?') if isinstance(data, Mapping) else '?'
        if not isinstance(data, Mapping):
            raise CatalogError(f'entry {name!r}: expected an object, got {type(data).__name__}')
        unknown = set(data) - _FIELDS
        if unknown:
            raise CatalogError(f'entry {name!r}: unknown fields {sorted(unknown)}')
        try:
            entry = CatalogEntry(**data)
        except TypeError as e:
            raise CatalogError(f'entry {name!r}: {e}')
        entry.validate()
        return entry


class CatalogFile(MutableMapping):
    """
    Catalog persisted as one canonical JSON document ``{"entries": [...]}``.

    Entries can be accessed similar to a dictionary by name. Every write
    replaces the file atomically (temporary file in the same directory, then
    rename), so readers never see a partial file.
    """

    def __init__(self, filename: str):
        self._filename = os.path.realpath(filename)
        self._packer = CatalogEntryPacker()

    def __repr__(self):
        return f'{self._filename} with {len(self)} entries'

    @property
    def filename(self):
        return self._filename

    def _load(self) -> Dict[str, CatalogEntry]:
        if not os.path.exists(self._filename):
            return {}
        with open(self._filename, 'rb') as f:
            raw = f.read()
        try:
            document = JSONPacker().unpack(raw)
        except ValueError as e:
            raise CatalogError(f'{self._filename}: {e}')
        if not isinstance(document, Mapping) or not isinstance(document.get('entries'), list):
            raise CatalogError(f'{self._filename}: expected {{"entries": [...]}}')
        entries = {}
        for data in document['entries']:
            entry = self._packer.decode(data)
            if entry.name in entries:
                raise CatalogError(f'entry {entry.name!r} appears twice in {self._filename}')
            entries[entry.name] = entry
        return entries

    def write_all(self, entries: Mapping[str, CatalogEntry]):
        """Replace the whole file by `entries`."""
        document = {'entries': [asdict(entries[name]) for name in sorted(entries)]}
        data = JSONPacker.dumps(document).encode()
        directory = os.path.dirname(self._filename)
        fd, tmp = tempfile.mkstemp(prefix='.catalog-', suffix='.json', dir=directory)
        try:
            with os.fdopen(fd, 'wb') as f:
                f.write(data)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, self._filename)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug(f'Wrote {len(entries)} entries to "{self._filename}"')

    def __getitem__(self, name: str) -> CatalogEntry:
        entries = self._load()
        if name in entries:
            return entries[name]
        raise KeyError(f'{name} is not in catalog {self._filename}')

    def __setitem__(self, name: str, entry: CatalogEntry):
        if entry.name != name:
            raise CatalogError(f'entry {entry.name!r} stored under name {name!r}')
        entry.validate()
        entries = self._load()
        if entries.get(name) == entry:
            # don't rewrite the file when nothing changed
            logger.debug(f'Write of "{name}" to "{self._filename}" skipped, entry is already there')
            return
        entries[name] = entry
        self.write_all(entries)

    def __delitem__(self, name: str):
        entries = self._load()
        if name not in entries:
            raise KeyError(name)
        del entries[name]
        self.write_all(entries)

    def __iter__(self):
        return iter(sorted(self._load()))

    def __len__(self):
        return len(self._load())

    def __contains__(self, name):
        return name in self._load()

    def update(self, other: Union[Mapping, Iterable[Tuple[str, CatalogEntry]]] = (), **kwargs) -> None:
        # single read-modify-write
        items = other.items() if isinstance(other, Mapping) else other
        entries = self._load()
        for name, entry in list(items) + list(kwargs.items()):
            if entry.name != name:
                raise CatalogError(f'entry {entry.name!r} stored under name {name!r}')
            entry.validate()
            entries[name] = entry
        self.write_all(entries)

    def append(self, entry: CatalogEntry):
        """Add a new entry. Existing names are not overwritten."""
        if entry.name in self:
            raise CatalogError(f'entry {entry.name!r} already exists in {self._filename}')
        self[entry.name] = entry

    def as_dict(self) -> Dict[str, CatalogEntry]:
        return self._load()


@functools.lru_cache(maxsize=None)
def _builtin_entries() -> Tuple[Tuple[str, CatalogEntry], ...]:
    out = []
    for name, (q, coeffs, kind, rh_status) in BUILTIN_ENTRIES.items():
        q_value = as_exact(q)
        out.append((name, CatalogEntry(name=name, n=len(coeffs) - 1,
                                       parity='odd' if (len(coeffs) - 1) % 2 else 'even',
                                       q=str(q_value),
                                       q_minimal_polynomial=[str(c) for c in q_value.minimal_polynomial()],
                                       coeffs=[str(as_exact(c)) for c in coeffs],
                                       kind=kind, rh_status=rh_status, source=BUILTIN_SOURCE)))
    return tuple(out)


def builtin_catalog() -> Dict[str, CatalogEntry]:
    """The read-only catalog compiled into the package, as a fresh dict."""
    return {name: CatalogEntry(**asdict(entry)) for name, entry in _builtin_entries()}


def load_catalog(path: Optional[str] = None) -> Dict[str, CatalogEntry]:
    """
    Built-in entries, overlaid with the entries of the catalog file at `path` if given.

    Raises
    ------
    CatalogError
        For a malformed file, naming the offending entry.
    OSError
        If the file cannot be read.
    """
    entries = builtin_catalog()
    if path is not None:
        if not os.path.exists(path):
            raise FileNotFoundError(f'catalog file {path} does not exist')
        entries.update(CatalogFile(path).as_dict())
    return entries


def save_catalog(path: str, entries: Union[Mapping[str, CatalogEntry], Sequence[CatalogEntry]]) -> CatalogFile:
    """Replace the catalog file at `path` by `entries`."""
    if not isinstance(entries, Mapping):
        entries = {entry.name: entry for entry in entries}
    catalog = CatalogFile(path)
    for entry in entries.values():
        entry.validate()
    catalog.write_all(dict(entries))
    return catalog


def append_entry(path: str, entry: CatalogEntry) -> CatalogFile:
    catalog = CatalogFile(path)
    catalog.append(entry)
    return catalog


def catalog_io(path: str, op: Literal['load', 'save', 'append'], payload: Any = None):
    """
    Dispatch for the three catalog file operations.

    'load' returns the merged catalog dictionary, 'save' and 'append' the written CatalogFile.
    """
    if op == 'load':
        return load_catalog(path)
    if op == 'save':
        return save_catalog(path, payload)
    if op == 'append':
        return append_entry(path, payload)
    raise ValueError(f'unknown catalog operation {op!r}')
