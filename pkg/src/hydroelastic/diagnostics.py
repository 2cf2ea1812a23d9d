"""Diagnostics records, CSV/snapshot serialization, convergence studies.

File formats are versioned: text outputs start with a '# hydroelastic ... v1'
line, binary snapshots with an 8-byte magic plus an endianness tag, so a
reader can fail loudly instead of misparsing.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .spectral import SpectralField, TorusGrid

DIAGNOSTICS_HEADER = "# hydroelastic diagnostics v1 model="
DISPERSION_HEADER = "# hydroelastic dispersion v1"
FIELD_HEADER = "# hydroelastic field v1"
SNAPSHOT_MAGIC = b"HESNAP1\x00"
SNAPSHOT_ENDIAN_TAG = 0x01020304

_BASE_COLUMNS = ("tau", "mean", "E", "calE", "h1", "h2", "h3", "linf")


@dataclass
class EnergyReport:
    time: float
    mean: float
    E: float
    calE: float
    h0: float
    h_half: float
    h1: float
    h3_half: float
    h2: float
    h3: float
    linf: float
    extra: dict = field(default_factory=dict)


def _fmt(x) -> str:
    return "%.17g" % float(x)


def write_diagnostics_csv(reports: Sequence[EnergyReport], path, model: str) -> None:
    if not reports:
        raise ValueError("no reports to write")
    extra_keys = sorted(reports[0].extra)
    for r in reports:
        if sorted(r.extra) != extra_keys:
            raise ValueError("reports carry inconsistent extra columns")
    columns = list(_BASE_COLUMNS) + extra_keys
    lines = [DIAGNOSTICS_HEADER + model, ",".join(columns)]
    for r in reports:
        row = [r.time, r.mean, r.E, r.calE, r.h1, r.h2, r.h3, r.linf]
        row += [r.extra[k] for k in extra_keys]
        lines.append(",".join(_fmt(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_diagnostics_csv(path):
    """Return (model, column names, data array). Rejects unversioned files."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(DIAGNOSTICS_HEADER):
            raise ValueError(f"{path}: missing diagnostics header line")
        model = header[len(DIAGNOSTICS_HEADER):]
        columns = fh.readline().rstrip("\n").split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return model, columns, data


def write_dispersion_csv(rows: Sequence[tuple], path) -> None:
    lines = [
        DISPERSION_HEADER,
        "k,re_r_plus,im_r_plus,re_r_minus,im_r_minus,a,b,alpha,gamma",
    ]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_physical_csv(f: SpectralField, path) -> None:
    """Physical-space samples, one grid point per row."""
    vals = f.to_physical()
    head = f"{FIELD_HEADER} dim={f.grid.dim} n={f.grid.n}"
    if f.grid.dim == 1:
        lines = [head, "x1,value"]
        for xi, vi in zip(f.grid.x[0], vals):
            lines.append(f"{_fmt(xi)},{_fmt(vi)}")
    else:
        lines = [head, "x1,x2,value"]
        x1, x2 = f.grid.x
        for i in range(f.grid.n):
            for j in range(f.grid.n):
                lines.append(f"{_fmt(x1[i, j])},{_fmt(x2[i, j])},{_fmt(vals[i, j])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_snapshot(f: SpectralField, path) -> None:
    """Binary state dump: magic, endian tag, dim, n, then complex128 coefficients."""
    head = SNAPSHOT_MAGIC + struct.pack("<III", SNAPSHOT_ENDIAN_TAG, f.grid.dim, f.grid.n)
    payload = np.ascontiguousarray(f.coeffs, dtype=np.complex128).astype("<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(head + payload)


def read_snapshot(path) -> SpectralField:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[: len(SNAPSHOT_MAGIC)] != SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: not a snapshot file (bad magic)")
    tag, dim, n = struct.unpack_from("<III", raw, len(SNAPSHOT_MAGIC))
    if tag != SNAPSHOT_ENDIAN_TAG:
        raise ValueError(f"{path}: endianness tag mismatch")
    grid = TorusGrid(n, dim=dim)
    start = len(SNAPSHOT_MAGIC) + 12
    coeffs = np.frombuffer(raw, dtype="<c16", offset=start, count=grid.size)
    return SpectralField(grid, coeffs.reshape(grid.shape).astype(np.complex128))


def _coeff_l2(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def refinement_study(run_factory: Callable[[int], SpectralField], grid_sizes: Sequence[int]):
    """Spatial self-convergence against the finest grid.

    run_factory(n) must return the final state on an n-point (or n x n) grid.
    Returns ([(n, error)], fitted order).
    """
    sizes = sorted(set(int(n) for n in grid_sizes))
    if len(sizes) < 3:
        raise ValueError("need at least 3 grid sizes")
    fields = {}
    for n in sizes:
        f = run_factory(n)
        if f.grid.n != n:
            raise ValueError(f"factory returned n={f.grid.n} for requested n={n}")
        fields[n] = f
    ref = fields[sizes[-1]]
    errors = []
    for n in sizes[:-1]:
        f = fields[n]
        if f.grid.dim != ref.grid.dim:
            raise ValueError("factory mixed dimensions")
        # compare on the coarse mode set, matched by wavenumber
        k_int = (np.fft.fftfreq(n, 1.0 / n)).astype(int)
        idx = k_int % ref.grid.n
        if f.grid.dim == 1:
            err = _coeff_l2(f.coeffs, ref.coeffs[idx])
        else:
            err = _coeff_l2(f.coeffs, ref.coeffs[np.ix_(idx, idx)])
        errors.append((n, err))
    errs = np.array([e for _, e in errors])
    if np.any(errs <= 0):
        raise ValueError("degenerate (zero) errors; nothing to fit")
    slope, _ = np.polyfit(np.log([n for n, _ in errors]), np.log(errs), 1)
    return errors, -float(slope)


def temporal_order_study(run_factory: Callable[[float], SpectralField], dt_list: Sequence[float]):
    """Temporal self-convergence against the smallest step.

    run_factory(dt) must return the final state at a fixed end time.
    Returns ([(dt, error)], fitted order).
    """
    dts = sorted(set(float(dt) for dt in dt_list), reverse=True)
    if len(dts) < 3:
        raise ValueError("need at least 3 step sizes")
    fields = {dt: run_factory(dt) for dt in dts}
    ref = fields[dts[-1]]
    errors = []
    for dt in dts[:-1]:
        f = fields[dt]
        if f.grid != ref.grid:
            raise ValueError("factory changed grids between step sizes")
        errors.append((dt, _coeff_l2(f.coeffs, ref.coeffs)))
    errs = np.array([e for _, e in errors])
    if np.any(errs <= 0):
        raise ValueError("degenerate (zero) errors; nothing to fit")
    slope, _ = np.polyfit(np.log([dt for dt, _ in errors]), np.log(errs), 1)
    return errors, float(slope)
