"""The four figure kinds, rendered deterministically.

Fixed inputs give byte-identical image files: the Agg backend is forced,
PNG writer metadata is stripped, and the SVG id hash salt is pinned.  All
numbers shown come from the input files; nothing is re-simulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "hydroplots"

import matplotlib.pyplot as plt
import numpy as np

from .io import (
    SchemaError,
    read_diagnostics,
    read_dispersion,
    read_hierarchy,
    read_snapshot,
)

KINDS = ("decay", "dispersion", "snapshot", "slope")

_METADATA = {".png": {"Software": None}, ".svg": {"Date": None}}


def _save(fig, output, dpi: int) -> None:
    ext = Path(output).suffix.lower()
    if ext not in _METADATA:
        raise SchemaError(f"unsupported image format '{ext}' (use .png or .svg)")
    fig.savefig(output, dpi=dpi, metadata=_METADATA[ext])
    plt.close(fig)


def fit_exponent(tau, E):
    """Least-squares (c, C) for E ~ C exp(-c tau) over the positive samples."""
    tau = np.asarray(tau, dtype=float)
    E = np.asarray(E, dtype=float)
    keep = E > 0
    if keep.sum() < 2:
        raise SchemaError("fewer than 2 positive energy samples; cannot fit a rate")
    coeffs = np.polyfit(tau[keep], np.log(E[keep]), 1)
    return -float(coeffs[0]), float(np.exp(coeffs[1]))


def fit_slope(x, y):
    """Log-log slope of y vs x; both must be positive throughout."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        raise SchemaError("fewer than 2 rows; cannot fit a slope")
    if np.any(x <= 0) or np.any(y <= 0):
        raise SchemaError("slope fit needs positive epsilon and error values")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def decay_figure(inputs, output, title: str = "", dpi: int = 150):
    """Semilog-y energy curves with a fitted exponential per input.

    Returns [(model, fitted c)] in input order.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    fitted = []
    for path in inputs:
        model, table = read_diagnostics(path)
        tau = table.column("tau")
        E = table.column("E")
        c, C = fit_exponent(tau, E)
        label = f"{model} {Path(path).stem}: c = {c:.4g}"
        (line,) = ax.semilogy(tau, E, lw=1.4, label=label)
        ax.semilogy(tau, C * np.exp(-c * tau), lw=0.9, ls="--", color=line.get_color())
        fitted.append((model, c))
    ax.set_xlabel("tau")
    ax.set_ylabel("E")
    ax.set_title(title or "energy decay")
    ax.legend(loc="upper right", fontsize=8)
    _save(fig, output, dpi)
    return fitted


def dispersion_figure(path, output, title: str = "", dpi: int = 150):
    """Re/Im root curves vs k.  Returns the number of tabulated modes."""
    table = read_dispersion(path)
    k = table.column("k")
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.6))
    for name, ls in (("re_r_plus", "-"), ("re_r_minus", "--")):
        ax_re.plot(k, table.column(name), ls, lw=1.2, label=name)
    for name, ls in (("im_r_plus", "-"), ("im_r_minus", "--")):
        ax_im.plot(k, table.column(name), ls, lw=1.2, label=name)
    ax_re.set_ylabel("Re r")
    ax_im.set_ylabel("Im r")
    ax_im.set_xlabel("k")
    ax_re.set_title(title or "dispersion roots")
    ax_re.legend(fontsize=8)
    ax_im.legend(fontsize=8)
    _save(fig, output, dpi)
    return len(k)


def snapshot_figure(path, output, title: str = "", dpi: int = 150):
    """Physical-space rendering of a stored state.  Returns (dim, n)."""
    dim, n, coeffs = read_snapshot(path)
    values = (np.fft.ifftn(coeffs) * coeffs.size).real
    x = 2.0 * np.pi * np.arange(n) / n
    if dim == 1:
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        ax.plot(x, values, lw=1.4)
        ax.set_xlabel("x")
        ax.set_ylabel("value")
    else:
        fig, ax = plt.subplots(figsize=(5.8, 4.8))
        im = ax.imshow(
            values.T,
            origin="lower",
            extent=(0.0, 2.0 * np.pi, 0.0, 2.0 * np.pi),
            aspect="equal",
        )
        fig.colorbar(im, ax=ax, shrink=0.85)
        ax.set_xlabel("x1")
        ax.set_ylabel("x2")
    ax.set_title(title or f"snapshot ({dim}d, n={n})")
    _save(fig, output, dpi)
    return dim, n


def slope_figure(path, output, title: str = "", dpi: int = 150):
    """Log-log error vs epsilon with the fitted slope annotated.

    Returns the fitted slope.
    """
    table = read_hierarchy(path)
    eps = table.column("epsilon")
    err = table.column("error")
    slope = fit_slope(eps, err)
    fig, ax = plt.subplots(figsize=(5.8, 4.2))
    ax.loglog(eps, err, "o-", lw=1.2)
    ax.loglog(eps, err[0] * (eps / eps[0]) ** slope, "--", lw=0.9,
              label=f"slope = {slope:.3g}")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("error")
    ax.set_title(title or "model hierarchy")
    ax.legend(fontsize=8)
    _save(fig, output, dpi)
    return slope


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    inputs: tuple
    output: str
    title: str = ""
    dpi: int = 150


def plot(spec: PlotSpec):
    """Render one figure; returns the kind-specific summary value."""
    if spec.kind not in KINDS:
        raise SchemaError(f"unknown plot kind '{spec.kind}' (have: {', '.join(KINDS)})")
    if spec.dpi <= 0:
        raise SchemaError("dpi must be positive")
    inputs = tuple(spec.inputs)
    if spec.kind != "decay" and len(inputs) != 1:
        raise SchemaError(f"{spec.kind} takes exactly one input file")
    if not inputs:
        raise SchemaError("no input files")
    for p in inputs:
        if not Path(p).is_file():
            raise SchemaError(f"{p}: no such file")
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    if spec.kind == "decay":
        return decay_figure(inputs, spec.output, spec.title, spec.dpi)
    if spec.kind == "dispersion":
        return dispersion_figure(inputs[0], spec.output, spec.title, spec.dpi)
    if spec.kind == "snapshot":
        return snapshot_figure(inputs[0], spec.output, spec.title, spec.dpi)
    return slope_figure(inputs[0], spec.output, spec.title, spec.dpi)
