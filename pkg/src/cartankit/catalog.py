"""Printed Cartan matrices with their inverses, loaded from JSON lines and re-verified.

Each record stores the matrix, a scale factor and an integer-looking matrix
whose product is the claimed inverse.  Verification recomputes everything
exactly over the entry's field.
"""
from __future__ import annotations

import io
import json
import os
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .cartan import CartanSpec, parse_parities
from .field import ScalarParseError, field_from_spec
from .matrix import Matrix, SingularMatrix, determinant, inverse

FAMILIES = ("finite_char0", "finite_modular", "almost_affine_super", "hyperbolic",
            "parametric_ns3")
FLAGS = ("all_negative_marker", "positive_det_marker")
FILES = ("sec6.jsonl", "sec7.jsonl", "sec8_1.jsonl", "sec8_2.jsonl", "sec8_3.jsonl")
EXCEPTIONS_FILE = "exceptions.jsonl"
_REQUIRED = ("name", "family", "characteristic", "matrix", "parities", "expected_scale",
             "expected_inverse")
_OPTIONAL = ("variable", "expected_det", "flags", "comment", "source", "printed")


class SchemaError(ValueError):
    def __init__(self, name, fld, msg):
        super().__init__(f"entry {name!r}, field {fld!r}: {msg}")
        self.name = name
        self.field_name = fld


@dataclass
class CatalogEntry:
    name: str
    family: str
    characteristic: int
    variable: str | None
    matrix: Matrix | None
    parities: tuple
    expected_scale: object
    expected_inverse: Matrix | None
    expected_det: object = None
    flags: frozenset = frozenset()
    comment: str | None = None
    source: str | None = None
    printed: dict | None = None
    error: str | None = None
    raw: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return field_from_spec(self.characteristic, self.variable)

    @property
    def spec(self) -> CartanSpec:
        return CartanSpec(self.matrix, self.parities, self.name)

    def claimed_inverse(self) -> Matrix:
        return self.expected_inverse.scale(self.expected_scale)


def _check_square(name, fld, rows):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(name, fld, "must be a non-empty array of arrays")
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise SchemaError(name, fld, f"row of length {len(r)} in a {n}-row matrix")
        if not all(isinstance(x, str) for x in r):
            raise SchemaError(name, fld, "entries must be scalar strings")
    return n


def entry_from_record(rec: dict, strict: bool = True) -> CatalogEntry:
    """Validate one decoded JSON object and parse its scalars.

    With ``strict`` false a scalar parse failure is kept on the entry (as
    ``error``) instead of raised, so that verification can report it.
    """
    if not isinstance(rec, dict):
        raise SchemaError(None, None, "record is not an object")
    name = rec.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError(name, "name", "missing or not a string")
    for key in _REQUIRED:
        if key not in rec:
            raise SchemaError(name, key, "missing")
    unknown = set(rec) - set(_REQUIRED) - set(_OPTIONAL)
    if unknown:
        raise SchemaError(name, sorted(unknown)[0], "unknown field")
    if rec["family"] not in FAMILIES:
        raise SchemaError(name, "family", f"unknown family {rec['family']!r}")
    char = rec["characteristic"]
    if not isinstance(char, int) or char < 0:
        raise SchemaError(name, "characteristic", "must be 0 or a prime")
    var = rec.get("variable")
    n = _check_square(name, "matrix", rec["matrix"])
    if _check_square(name, "expected_inverse", rec["expected_inverse"]) != n:
        raise SchemaError(name, "expected_inverse", f"dimension differs from the {n}x{n} matrix")
    flags = rec.get("flags") or []
    if not isinstance(flags, list) or any(f not in FLAGS for f in flags):
        raise SchemaError(name, "flags", f"flags must be a subset of {FLAGS}")
    try:
        parities = parse_parities(rec["parities"])
    except ValueError as exc:
        raise SchemaError(name, "parities", str(exc)) from None
    if len(parities) != n:
        raise SchemaError(name, "parities", f"{len(parities)} parities for an {n}x{n} matrix")
    try:
        F = field_from_spec(char, var)
    except ValueError as exc:
        raise SchemaError(name, "characteristic", str(exc)) from None

    entry = CatalogEntry(name, rec["family"], char, var, None, parities, None, None,
                         flags=frozenset(flags), comment=rec.get("comment"),
                         source=rec.get("source"), printed=rec.get("printed"), raw=rec)
    try:
        entry.matrix = Matrix.parse(rec["matrix"], F)
        entry.expected_inverse = Matrix.parse(rec["expected_inverse"], F)
        entry.expected_scale = F.parse(rec["expected_scale"])
        det = rec.get("expected_det")
        entry.expected_det = None if det is None else F.parse(det)
    except (ScalarParseError, ZeroDivisionError) as exc:
        if strict:
            raise
        entry.error = str(exc)
    return entry


def load_catalog(source, strict: bool = True) -> list[CatalogEntry]:
    """Entries from a UTF-8 JSON-lines byte stream (or text stream), in order."""
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    out = []
    for lineno, line in enumerate(io.StringIO(data), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(None, None, f"line {lineno}: {exc.msg}") from None
        out.append(entry_from_record(rec, strict))
    return out


# ---------------------------------------------------------------------------
# verification

@dataclass
class EntryStatus:
    name: str
    status: str  # ok, inverse_mismatch, det_mismatch, singular, parse_error
    positions: list = dc_field(default_factory=list)
    expected: object = None
    computed: object = None
    message: str = ""

    @property
    def ok(self):
        return self.status == "ok"

    def __str__(self):
        if self.status == "ok":
            return f"{self.name}: ok"
        if self.status == "inverse_mismatch":
            pos = " ".join(f"({i + 1},{j + 1})" for i, j in self.positions)
            return f"{self.name}: inverse_mismatch at {pos}"
        if self.status == "det_mismatch":
            return f"{self.name}: det_mismatch expected {self.expected} computed {self.computed}"
        return f"{self.name}: {self.status} {self.message}".rstrip()


def verify_entry(entry: CatalogEntry) -> EntryStatus:
    """Recompute inverse and determinant and compare with the printed data."""
    if entry.error is not None:
        return EntryStatus(entry.name, "parse_error", message=entry.error)
    F = entry.field
    try:
        inv = inverse(entry.matrix)
    except SingularMatrix as exc:
        return EntryStatus(entry.name, "singular", message=str(exc))
    claimed = entry.claimed_inverse()
    if claimed != inv:
        n = inv.n
        pos = [(i, j) for i in range(n) for j in range(n) if claimed[i, j] != inv[i, j]]
        return EntryStatus(entry.name, "inverse_mismatch", pos,
                           expected=claimed, computed=inv)
    det = determinant(entry.matrix)
    if entry.expected_det is not None and det != entry.expected_det:
        return EntryStatus(entry.name, "det_mismatch", expected=F.render(entry.expected_det),
                           computed=F.render(det))
    return EntryStatus(entry.name, "ok")


@dataclass
class VerificationReport:
    statuses: list
    excepted: set = dc_field(default_factory=set)

    @property
    def counts(self):
        out = {}
        for s in self.statuses:
            out[s.status] = out.get(s.status, 0) + 1
        return out

    @property
    def ok_count(self):
        return sum(1 for s in self.statuses if s.ok)

    @property
    def unexplained(self):
        """Failures not covered by the exceptions list."""
        return [s for s in self.statuses if not s.ok and s.name not in self.excepted]

    @property
    def passed(self):
        return not self.unexplained

    def summary(self):
        line = f"{self.ok_count}/{len(self.statuses)} ok"
        known = sum(1 for s in self.statuses if not s.ok and s.name in self.excepted)
        if known:
            line += f" ({known} on the exceptions list)"
        return line

    def lines(self):
        """One machine-readable line per entry, then the summary."""
        out = []
        for s in self.statuses:
            tag = " [excepted]" if not s.ok and s.name in self.excepted else ""
            out.append(f"{s}{tag}")
        out.append(self.summary())
        return out


def verify_all(entries, exceptions=None) -> VerificationReport:
    names = {e.name for e in exceptions} if exceptions else set()
    return VerificationReport([verify_entry(e) for e in entries], names)


# ---------------------------------------------------------------------------
# files and lookup

def catalog_dir() -> Path:
    env = os.environ.get("CARTANKIT_CATALOG_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data" / "catalog"


def resolve_path(path) -> Path:
    """A catalog path as given, else relative to the catalog directory.

    ``catalog/sec6.jsonl`` therefore works from any working directory.
    """
    p = Path(path)
    if p.exists():
        return p
    root = catalog_dir()
    for cand in (root / p, root / p.name):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"catalog file not found: {path}")


def load_file(path, strict: bool = True) -> list[CatalogEntry]:
    with open(resolve_path(path), "rb") as fh:
        return load_catalog(fh, strict)


def load_exceptions() -> list[CatalogEntry]:
    p = catalog_dir() / EXCEPTIONS_FILE
    if not p.exists():
        return []
    return load_file(p)


def load_all(strict: bool = True) -> list[CatalogEntry]:
    out = []
    for name in FILES:
        p = catalog_dir() / name
        if p.exists():
            out.extend(load_file(p, strict))
    return out


def normalize_label(label: str) -> str:
    """Case-insensitive key ignoring spaces, brackets, commas and semicolons."""
    return re.sub(r"[\s(),;{}]", "", label).lower()


def find_entry(label: str, entries=None) -> CatalogEntry:
    entries = load_all() if entries is None else entries
    key = normalize_label(label)
    hits = [e for e in entries if normalize_label(e.name) == key]
    if not hits:
        raise KeyError(f"no catalog entry named {label!r}")
    if len(hits) > 1:
        raise KeyError(f"label {label!r} is ambiguous: {[e.name for e in hits]}")
    return hits[0]


def family_cases(prefix: str, entries=None) -> list[CatalogEntry]:
    """All numbered cases ``prefix-1``, ``prefix-2``, ... in file order."""
    entries = load_all() if entries is None else entries
    key = normalize_label(prefix)
    return [e for e in entries if normalize_label(e.name.rsplit("-", 1)[0]) == key]
