"""Fourier-side primitives on the 2*pi-periodic torus (1D and 2D).

Conventions used everywhere in this package:

* coefficients are Fourier series coefficients, ``coeffs[k]`` multiplying
  ``e^{i k.x}``, i.e. numpy's fft output divided by the number of points;
* Sobolev norms are plain coefficient sums, no 2*pi volume factor;
* homogeneous multipliers (|k|^s, Hilbert, Riesz, T) send k=0 to zero,
  the resolvent and the mollifier keep it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEALIAS_NUM = 1  # kept modes satisfy |k_j| <= n // 3
PAD_NUM, PAD_DEN = 3, 2  # products evaluated on the 3/2 oversampled grid


class TorusGrid:
    """Uniform n^dim grid on [0, 2*pi)^dim with integer wavenumbers."""

    def __init__(self, n: int, dim: int = 1):
        if dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        n = int(n)
        if n < 8 or n & (n - 1):
            raise ValueError("n must be a power of two with n >= 8")
        self.n = n
        self.dim = int(dim)
        self.shape = (n,) * self.dim
        self.size = n**self.dim
        axis = np.fft.fftfreq(n, d=1.0 / n)
        self.k = (axis,) if dim == 1 else tuple(np.meshgrid(axis, axis, indexing="ij"))
        self.kmag = np.sqrt(sum(kj**2 for kj in self.k))
        nodes = np.arange(n) * (2.0 * np.pi / n)
        self.x = (nodes,) if dim == 1 else tuple(np.meshgrid(nodes, nodes, indexing="ij"))

    @property
    def origin(self):
        return (0,) * self.dim

    def __eq__(self, other):
        return isinstance(other, TorusGrid) and (self.n, self.dim) == (other.n, other.dim)

    def __hash__(self):
        return hash((self.n, self.dim))

    def __repr__(self):
        return f"TorusGrid(n={self.n}, dim={self.dim})"


@dataclass
class SpectralField:
    """Real periodic field stored as complex coefficients on a TorusGrid."""

    grid: TorusGrid
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != self.grid.shape:
            raise ValueError("coefficient array does not match the grid")

    @classmethod
    def from_physical(cls, grid: TorusGrid, values) -> "SpectralField":
        values = np.asarray(values, dtype=float)
        if values.shape != grid.shape:
            raise ValueError("sample array does not match the grid")
        return cls(grid, np.fft.fftn(values) / grid.size)

    @classmethod
    def zero(cls, grid: TorusGrid) -> "SpectralField":
        return cls(grid, np.zeros(grid.shape, dtype=complex))

    def to_physical(self) -> np.ndarray:
        return (np.fft.ifftn(self.coeffs) * self.grid.size).real

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())

    @property
    def mean(self) -> float:
        return float(self.coeffs[self.grid.origin].real)

    def project_mean_zero(self) -> "SpectralField":
        c = self.coeffs.copy()
        c[self.grid.origin] = 0.0
        return SpectralField(self.grid, c)

    def conj_symmetry_defect(self) -> float:
        """max |coeffs(-k) - conj(coeffs(k))|, zero for a real field."""
        idx = (-np.arange(self.grid.n)) % self.grid.n
        rev = self.coeffs[np.ix_(*(idx,) * self.grid.dim)] if self.grid.dim == 2 else self.coeffs[idx]
        return float(np.abs(np.conj(rev) - self.coeffs).max())

    # scalar algebra only; field*field must go through product()
    def __add__(self, other: "SpectralField") -> "SpectralField":
        if self.grid != other.grid:
            raise ValueError("grid mismatch")
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        if self.grid != other.grid:
            raise ValueError("grid mismatch")
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, a) -> "SpectralField":
        if not np.isscalar(a):
            raise TypeError("only scalar multiples; use product() for fields")
        return SpectralField(self.grid, a * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)


@dataclass
class MultiplierSymbol:
    """Diagonal Fourier multiplier: per-mode values plus the k=0 convention."""

    grid: TorusGrid
    values: np.ndarray
    zero_mode: complex

    @classmethod
    def from_values(cls, grid: TorusGrid, values, zero_mode) -> "MultiplierSymbol":
        table = np.array(values, dtype=complex)
        table[grid.origin] = zero_mode
        return cls(grid, table, complex(zero_mode))


def apply_symbol(field: SpectralField, sym: MultiplierSymbol) -> SpectralField:
    if field.grid != sym.grid:
        raise ValueError("grid mismatch")
    return SpectralField(field.grid, sym.values * field.coeffs)


@lru_cache(maxsize=None)
def identity_symbol(grid: TorusGrid) -> MultiplierSymbol:
    return MultiplierSymbol.from_values(grid, np.ones(grid.shape), 1.0)


@lru_cache(maxsize=None)
def lambda_symbol(grid: TorusGrid, s: float) -> MultiplierSymbol:
    if s == 0:
        return identity_symbol(grid)
    with np.errstate(divide="ignore"):
        vals = grid.kmag**s
    return MultiplierSymbol.from_values(grid, vals, 0.0)


@lru_cache(maxsize=None)
def hilbert_symbol(grid: TorusGrid) -> MultiplierSymbol:
    if grid.dim != 1:
        raise ValueError("Hilbert transform is one-dimensional")
    return MultiplierSymbol.from_values(grid, -1j * np.sign(grid.k[0]), 0.0)


@lru_cache(maxsize=None)
def riesz_symbol(grid: TorusGrid, j: int) -> MultiplierSymbol:
    if grid.dim != 2:
        raise ValueError("Riesz transforms are two-dimensional")
    if j not in (0, 1):
        raise ValueError("component must be 0 or 1")
    with np.errstate(invalid="ignore"):
        vals = -1j * grid.k[j] / grid.kmag
    return MultiplierSymbol.from_values(grid, np.where(grid.kmag > 0, vals, 0.0), 0.0)


@lru_cache(maxsize=None)
def resolvent_symbol(grid: TorusGrid, upsilon: float) -> MultiplierSymbol:
    if upsilon <= 0:
        raise ValueError("upsilon must be positive")
    return MultiplierSymbol.from_values(grid, 1.0 / (1.0 + upsilon * grid.kmag), 1.0)


@lru_cache(maxsize=None)
def t_symbol(grid: TorusGrid, upsilon: float) -> MultiplierSymbol:
    if upsilon <= 0:
        raise ValueError("upsilon must be positive")
    return MultiplierSymbol.from_values(grid, grid.kmag / (1.0 + upsilon * grid.kmag), 0.0)


@lru_cache(maxsize=None)
def mollifier_symbol(grid: TorusGrid, nu: float) -> MultiplierSymbol:
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    return MultiplierSymbol.from_values(grid, np.exp(-nu * grid.kmag**2), 1.0)


@lru_cache(maxsize=None)
def derivative_symbol(grid: TorusGrid, axis: int) -> MultiplierSymbol:
    if axis not in range(grid.dim):
        raise ValueError("axis out of range")
    return MultiplierSymbol.from_values(grid, 1j * grid.k[axis], 0.0)


def _require_mean_zero(f: SpectralField, what: str):
    if abs(f.mean) > 1e-13 * (1.0 + np.abs(f.coeffs).max()):
        raise ValueError(f"{what} requires a mean-zero field")


def lambda_pow(field: SpectralField, s: float) -> SpectralField:
    if s < 0:
        _require_mean_zero(field, "a negative power of Lambda")
    return apply_symbol(field, lambda_symbol(field.grid, float(s)))


def hilbert(field: SpectralField) -> SpectralField:
    return apply_symbol(field, hilbert_symbol(field.grid))


def riesz(field: SpectralField, j: int) -> SpectralField:
    return apply_symbol(field, riesz_symbol(field.grid, j))


def resolvent(field: SpectralField, upsilon: float) -> SpectralField:
    return apply_symbol(field, resolvent_symbol(field.grid, float(upsilon)))


def t_op(field: SpectralField, upsilon: float) -> SpectralField:
    return apply_symbol(field, t_symbol(field.grid, float(upsilon)))


def mollify(field: SpectralField, nu: float) -> SpectralField:
    return apply_symbol(field, mollifier_symbol(field.grid, float(nu)))


def derivative(field: SpectralField, axis: int = 0) -> SpectralField:
    return apply_symbol(field, derivative_symbol(field.grid, axis))


def sobolev_norm(field: SpectralField, s: float, homogeneous: bool = False) -> float:
    c2 = np.abs(field.coeffs) ** 2
    if homogeneous:
        _require_mean_zero(field, "the homogeneous seminorm")
        with np.errstate(divide="ignore", invalid="ignore"):
            w = field.grid.kmag ** (2.0 * s)
        w = np.where(field.grid.kmag > 0, w, 0.0)
    else:
        w = (1.0 + field.grid.kmag**2) ** s
    return float(np.sqrt(np.sum(w * c2)))


def inner(f: SpectralField, g: SpectralField) -> float:
    """Coefficient-sum pairing; equals the torus average of f*g."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    return float(np.real(np.sum(f.coeffs * np.conj(g.coeffs))))


def linf_norm(field: SpectralField) -> float:
    return float(np.abs(field.to_physical()).max())


@lru_cache(maxsize=None)
def dealias_keep_mask(grid: TorusGrid) -> np.ndarray:
    cut = grid.n // 3
    keep = np.ones(grid.shape, dtype=bool)
    for kj in grid.k:
        keep &= np.abs(kj) <= cut
    keep.setflags(write=False)
    return keep


def dealias(field: SpectralField) -> SpectralField:
    return SpectralField(field.grid, np.where(dealias_keep_mask(field.grid), field.coeffs, 0.0))


@lru_cache(maxsize=None)
def _pad_positions(n: int, n_pad: int) -> np.ndarray:
    freqs = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    return freqs % n_pad


def padded_size(grid: TorusGrid) -> int:
    return (grid.n * PAD_NUM) // PAD_DEN


def to_padded(field: SpectralField) -> np.ndarray:
    """Physical samples on the 3/2 oversampled grid (exact band embedding)."""
    n_pad = padded_size(field.grid)
    pos = _pad_positions(field.grid.n, n_pad)
    big = np.zeros((n_pad,) * field.grid.dim, dtype=complex)
    if field.grid.dim == 1:
        big[pos] = field.coeffs
    else:
        big[np.ix_(pos, pos)] = field.coeffs
    return (np.fft.ifftn(big) * big.size).real


def from_padded(values: np.ndarray, grid: TorusGrid, full_band: bool = False) -> SpectralField:
    """Transform padded-grid samples back, truncate, and dealias.

    With full_band=True the 2/3 mask is skipped and all representable modes
    of the coarse grid are kept (exact for products of sufficiently
    band-limited factors).
    """
    n_pad = padded_size(grid)
    values = np.asarray(values, dtype=float)
    big = np.fft.fftn(values) / values.size
    pos = _pad_positions(grid.n, n_pad)
    coeffs = big[pos] if grid.dim == 1 else big[np.ix_(pos, pos)]
    out = SpectralField(grid, coeffs)
    return out if full_band else dealias(out)


def product(f: SpectralField, g: SpectralField, full_band: bool = False) -> SpectralField:
    """Alias-free pointwise product via 3/2 padding, then 2/3 truncation."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    return from_padded(to_padded(f) * to_padded(g), f.grid, full_band=full_band)


def dn_map_with_source(g: SpectralField, source_profile) -> SpectralField:
    """Boundary derivative of the half-space Poisson problem.

    The boundary datum g lives on the grid; the body source is given
    mode-wise as a sum of decaying exponentials in depth,
    coeffs(k, y) = sum_j amp_j(k) e^{m_j y} with m_j > 0 and y <= 0, so the
    vertical integral is exact: output(k) = |k| g^(k) + sum_j amp_j(k)/(|k|+m_j)
    on k != 0; the zero mode is dropped.
    """
    _require_mean_zero(g, "the half-space boundary map")
    grid = g.grid
    out = grid.kmag * g.coeffs
    for m, amp in source_profile:
        m = float(m)
        if m <= 0:
            raise ValueError("source decay rate must be positive")
        amp = np.asarray(amp, dtype=complex)
        if amp.shape != grid.shape:
            raise ValueError("source amplitude array does not match the grid")
        out = out + amp / (grid.kmag + m)
    out[grid.origin] = 0.0
    return SpectralField(grid, out)


def random_field(
    grid: TorusGrid,
    seed: int,
    band: int,
    s: float = 0.0,
    norm: float = 1.0,
    homogeneous: bool = False,
) -> SpectralField:
    """Reproducible real mean-zero field on 1 <= |k_j| <= band with ||.||_{H^s} = norm."""
    if band < 1 or band > grid.n // 2 - 1:
        raise ValueError("band must satisfy 1 <= band <= n/2 - 1")
    rng = np.random.default_rng(seed)
    f = SpectralField.from_physical(grid, rng.standard_normal(grid.shape))
    keep = np.ones(grid.shape, dtype=bool)
    for kj in grid.k:
        keep &= np.abs(kj) <= band
    coeffs = np.where(keep, f.coeffs, 0.0)
    coeffs[grid.origin] = 0.0
    out = SpectralField(grid, coeffs)
    current = sobolev_norm(out, s, homogeneous=homogeneous)
    if current == 0.0:
        raise ValueError("degenerate draw; change the seed")
    return out * (norm / current)
