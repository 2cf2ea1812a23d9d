"""Readers for the solver's versioned CSV and snapshot formats.

The solver is never imported: this package consumes its file formats only.
Every reader checks the schema-version header line and refuses files it
does not understand; column lookups report the columns actually present.
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass

import numpy as np

DIAGNOSTICS_PREFIX = "# hydroelastic diagnostics v"
DISPERSION_PREFIX = "# hydroelastic dispersion v"
HIERARCHY_PREFIX = "# hydroelastic hierarchy v"
SUPPORTED_VERSION = 1

SNAPSHOT_MAGIC = b"HESNAP1\x00"
SNAPSHOT_ENDIAN_TAG = 0x01020304


class SchemaError(ValueError):
    """Input file missing, malformed, or of an unsupported schema version."""


@dataclass(frozen=True)
class Table:
    columns: tuple
    data: np.ndarray  # shape (rows, len(columns))

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            have = ", ".join(self.columns)
            raise SchemaError(f"missing column '{name}' (have: {have})")
        return self.data[:, self.columns.index(name)]


def _read_text(path) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _check_version(header: str, prefix: str, kind: str, path) -> str:
    """Return the text after the version number; reject other versions."""
    m = re.match(re.escape(prefix) + r"(\d+)(.*)$", header)
    if m is None:
        raise SchemaError(f"{path}: not a {kind} file (missing versioned header)")
    version = int(m.group(1))
    if version != SUPPORTED_VERSION:
        raise SchemaError(
            f"{path}: unsupported {kind} schema v{version} (supported: v{SUPPORTED_VERSION})"
        )
    return m.group(2)


def _parse_table(lines, path) -> Table:
    columns = tuple(lines[0].split(","))
    rows = [line.split(",") for line in lines[1:] if line]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    width = len(columns)
    if any(len(r) != width for r in rows):
        raise SchemaError(f"{path}: ragged rows (expected {width} columns)")
    try:
        data = np.array([[float(x) for x in r] for r in rows])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric cell: {exc}") from exc
    return Table(columns, data)


def read_diagnostics(path):
    """Return (model name, Table) from a diagnostics CSV."""
    lines = _read_text(path).splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file")
    tail = _check_version(lines[0], DIAGNOSTICS_PREFIX, "diagnostics", path)
    m = re.match(r" model=(\S+)$", tail)
    if m is None:
        raise SchemaError(f"{path}: diagnostics header lacks the model tag")
    return m.group(1), _parse_table(lines[1:], path)


def read_dispersion(path) -> Table:
    lines = _read_text(path).splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file")
    if _check_version(lines[0], DISPERSION_PREFIX, "dispersion", path):
        raise SchemaError(f"{path}: trailing text in dispersion header")
    return _parse_table(lines[1:], path)


def read_hierarchy(path) -> Table:
    lines = _read_text(path).splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file")
    if _check_version(lines[0], HIERARCHY_PREFIX, "hierarchy", path):
        raise SchemaError(f"{path}: trailing text in hierarchy header")
    return _parse_table(lines[1:], path)


def read_snapshot(path):
    """Return (dim, n, complex coefficient array) from a binary snapshot."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    if raw[: len(SNAPSHOT_MAGIC)] != SNAPSHOT_MAGIC:
        raise SchemaError(f"{path}: not a snapshot file (bad magic)")
    if len(raw) < len(SNAPSHOT_MAGIC) + 12:
        raise SchemaError(f"{path}: truncated snapshot header")
    tag, dim, n = struct.unpack_from("<III", raw, len(SNAPSHOT_MAGIC))
    if tag != SNAPSHOT_ENDIAN_TAG:
        raise SchemaError(f"{path}: endianness tag mismatch")
    if dim not in (1, 2) or n < 1:
        raise SchemaError(f"{path}: bad snapshot geometry dim={dim} n={n}")
    size = n**dim
    expected = len(SNAPSHOT_MAGIC) + 12 + 16 * size
    if len(raw) != expected:
        raise SchemaError(f"{path}: payload is {len(raw)} bytes, expected {expected}")
    coeffs = np.frombuffer(raw, dtype="<c16", offset=len(SNAPSHOT_MAGIC) + 12, count=size)
    return dim, n, coeffs.reshape((n,) * dim).astype(np.complex128)
