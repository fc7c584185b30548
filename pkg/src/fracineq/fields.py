"""Periodic grid fields: domains, generators, DFT service and Lp norms.

Everything lives on the torus [-L/2, L/2)^n sampled on a uniform grid of N
points per axis (N a power of two).  Fields are complex arrays; real-valued
fields simply carry zero imaginary parts.  Integrals are Riemann sums with
weight h^n, which is consistent with the spectral discretization: for smooth
well-resolved fields the quadrature error is spectrally small.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

__all__ = [
    "DomainSpec",
    "SampledField",
    "FourierMode",
    "Gaussian",
    "SmoothBump",
    "RandomBandLimited",
    "SumOf",
    "GeneratorSpec",
    "coords",
    "xi_axes",
    "xi_magnitude",
    "sample",
    "dft",
    "idft",
    "dilate",
    "lp_norm",
]

MEAN_ZERO_TOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class DomainSpec:
    """Uniform periodic grid on the cube [-L/2, L/2)^n."""

    n: int
    L: float
    N: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.n}")
        if self.L <= 0:
            raise ValueError(f"period L must be positive, got {self.L}")
        if self.N < 8 or not _is_power_of_two(self.N):
            raise ValueError(f"N must be a power of two >= 8, got {self.N}")

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def num_points(self) -> int:
        return self.N**self.n

    @property
    def cell_volume(self) -> float:
        return self.h**self.n

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.n

    def refined(self, factor: int = 2) -> "DomainSpec":
        return DomainSpec(self.n, self.L, self.N * factor)


@lru_cache(maxsize=128)
def coords(domain: DomainSpec) -> tuple:
    """Coordinate arrays x_m = -L/2 + m h, one (broadcast) array per axis."""
    axis = -domain.L / 2 + domain.h * np.arange(domain.N)
    if domain.n == 1:
        return (axis,)
    xs = np.meshgrid(*([axis] * domain.n), indexing="ij")
    return tuple(x.copy() for x in xs)


@lru_cache(maxsize=128)
def xi_axes(domain: DomainSpec) -> tuple:
    """Frequency arrays xi_k = 2 pi k / L in FFT layout, one per axis."""
    k = np.fft.fftfreq(domain.N, d=1.0 / domain.N)
    axis = 2 * np.pi * k / domain.L
    if domain.n == 1:
        return (axis,)
    xs = np.meshgrid(*([axis] * domain.n), indexing="ij")
    return tuple(x.copy() for x in xs)


@lru_cache(maxsize=128)
def xi_magnitude(domain: DomainSpec) -> np.ndarray:
    """|xi| on the FFT-layout frequency grid; zero exactly at k = 0 only."""
    axes = xi_axes(domain)
    mag = np.sqrt(sum(a**2 for a in axes))
    mag.setflags(write=False)
    return mag


class SampledField:
    """Values of a function on the grid of a DomainSpec.

    Immutable after construction; all operators return fresh fields.
    """

    __slots__ = ("domain", "values")

    def __init__(self, domain: DomainSpec, values: np.ndarray):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != domain.shape:
            raise ValueError(
                f"values shape {values.shape} does not match domain shape {domain.shape}"
            )
        values = values.copy()
        values.setflags(write=False)
        self.domain = domain
        self.values = values

    def mean(self) -> complex:
        return complex(self.values.mean())

    @property
    def mean_zero(self) -> bool:
        peak = np.max(np.abs(self.values))
        if peak == 0:
            return True
        return abs(self.mean()) <= MEAN_ZERO_TOL * peak

    def project_mean_zero(self) -> "SampledField":
        return SampledField(self.domain, self.values - self.values.mean())

    def __add__(self, other: "SampledField") -> "SampledField":
        self._check_same_grid(other)
        return SampledField(self.domain, self.values + other.values)

    def __sub__(self, other: "SampledField") -> "SampledField":
        self._check_same_grid(other)
        return SampledField(self.domain, self.values - other.values)

    def __mul__(self, scalar) -> "SampledField":
        return SampledField(self.domain, self.values * scalar)

    __rmul__ = __mul__

    def _check_same_grid(self, other: "SampledField"):
        if self.domain != other.domain:
            raise ValueError("fields live on different grids")


# ---------------------------------------------------------------------------
# generators


def _as_center(center, n: int) -> np.ndarray:
    if center is None:
        return np.zeros(n)
    c = np.atleast_1d(np.asarray(center, dtype=float))
    if c.size != n:
        raise ValueError(f"center must have {n} components")
    return c


def _as_mode(k, n: int) -> np.ndarray:
    k = np.atleast_1d(np.asarray(k, dtype=int))
    if k.size == 1 and n > 1:
        k = np.repeat(k, n)
    if k.size != n:
        raise ValueError(f"mode index must have {n} components")
    return k


@dataclass(frozen=True)
class FourierMode:
    """exp(i xi_k . x) for an integer (multi-)index k."""

    k: Union[int, tuple]


@dataclass(frozen=True)
class Gaussian:
    """Heat-kernel shaped profile (4 pi sigma^2)^{-n/2} exp(-|x-c|^2 / 4 sigma^2)."""

    sigma: float
    center: Union[float, tuple, None] = None


@dataclass(frozen=True)
class SmoothBump:
    """Compactly supported C^inf bump of unit height and given radius."""

    radius: float
    center: Union[float, tuple, None] = None


@dataclass(frozen=True)
class RandomBandLimited:
    """Deterministic random real field with modes |k|_inf in [1, max_band].

    The coefficient draw depends only on (seed, max_band), never on the grid,
    so refining N resamples the *same* function.
    """

    seed: int
    max_band: int
    min_band: int = 1


@dataclass(frozen=True)
class SumOf:
    parts: tuple


GeneratorSpec = Union[FourierMode, Gaussian, SmoothBump, RandomBandLimited, SumOf]


def _wrapped_displacement(x: np.ndarray, c: float, L: float) -> np.ndarray:
    return (x - c + L / 2) % L - L / 2


def _sample_fourier_mode(domain: DomainSpec, gen: FourierMode) -> np.ndarray:
    k = _as_mode(gen.k, domain.n)
    if np.any(np.abs(k) >= domain.N // 2):
        raise ValueError(f"mode {tuple(k)} out of Nyquist range for N={domain.N}")
    xs = coords(domain)
    phase = sum((2 * np.pi * ki / domain.L) * x for ki, x in zip(k, xs))
    return np.exp(1j * phase)


def _sample_gaussian(domain: DomainSpec, gen: Gaussian) -> np.ndarray:
    if gen.sigma <= 0:
        raise ValueError("gaussian sigma must be positive")
    if gen.sigma < 2 * domain.h:
        raise ValueError(
            f"gaussian sigma={gen.sigma} under-resolved on grid with h={domain.h}"
        )
    c = _as_center(gen.center, domain.n)
    xs = coords(domain)
    r2 = sum(_wrapped_displacement(x, ci, domain.L) ** 2 for x, ci in zip(xs, c))
    amp = (4 * np.pi * gen.sigma**2) ** (-domain.n / 2)
    return amp * np.exp(-r2 / (4 * gen.sigma**2))


def _sample_bump(domain: DomainSpec, gen: SmoothBump) -> np.ndarray:
    if not 0 < gen.radius <= domain.L / 2:
        raise ValueError("bump radius must lie in (0, L/2]")
    c = _as_center(gen.center, domain.n)
    xs = coords(domain)
    r2 = sum(_wrapped_displacement(x, ci, domain.L) ** 2 for x, ci in zip(xs, c))
    u = r2 / gen.radius**2
    out = np.zeros(domain.shape)
    inside = u < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside]))
    return out


def _band_modes(n: int, min_band: int, max_band: int):
    """Fixed enumeration of one representative per conjugate mode pair."""
    if n == 1:
        for k in range(max(1, min_band), max_band + 1):
            yield (k,)
        return
    for k1 in range(-max_band, max_band + 1):
        for k2 in range(-max_band, max_band + 1):
            if (k1, k2) <= (0, 0):
                continue
            if max(abs(k1), abs(k2)) < min_band:
                continue
            yield (k1, k2)


def _sample_random_band_limited(domain: DomainSpec, gen: RandomBandLimited) -> np.ndarray:
    if not 1 <= gen.max_band < domain.N // 2:
        raise ValueError(
            f"max_band={gen.max_band} must satisfy 1 <= band < N/2 = {domain.N // 2}"
        )
    rng = np.random.default_rng(gen.seed)
    xs = coords(domain)
    out = np.zeros(domain.shape, dtype=np.complex128)
    for k in _band_modes(domain.n, gen.min_band, gen.max_band):
        re, im = rng.standard_normal(2)
        c = (re + 1j * im) / (1.0 + np.linalg.norm(k))
        phase = sum((2 * np.pi * ki / domain.L) * x for ki, x in zip(k, xs))
        out += c * np.exp(1j * phase)
    # add the conjugate half so the field is real
    return 2.0 * out.real


def sample(domain: DomainSpec, generator: GeneratorSpec) -> SampledField:
    """Evaluate a generator at every grid point of the domain."""
    if isinstance(generator, FourierMode):
        values = _sample_fourier_mode(domain, generator)
    elif isinstance(generator, Gaussian):
        values = _sample_gaussian(domain, generator)
    elif isinstance(generator, SmoothBump):
        values = _sample_bump(domain, generator)
    elif isinstance(generator, RandomBandLimited):
        values = _sample_random_band_limited(domain, generator)
    elif isinstance(generator, SumOf):
        values = sum(sample(domain, part).values for part in generator.parts)
    else:
        raise TypeError(f"unknown generator spec: {generator!r}")
    return SampledField(domain, values)


# ---------------------------------------------------------------------------
# DFT service


def dft(field: SampledField) -> np.ndarray:
    """Unnormalized forward DFT of the field values (FFT layout)."""
    return np.fft.fftn(field.values)


def idft(coeffs: np.ndarray, domain: DomainSpec) -> SampledField:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != domain.shape:
        raise ValueError("coefficient shape does not match domain")
    return SampledField(domain, np.fft.ifftn(coeffs))


# ---------------------------------------------------------------------------
# dilation and norms


def dilate(field: SampledField, lam: int) -> SampledField:
    """f_lam(x) = f(lam x) with lam an integer power of two (grid-exact).

    f(lam x) is periodic with period L/lam, so the result lives on the
    shrunken domain: its grid points x'_m satisfy lam x'_m = x_m exactly,
    the sample values are unchanged, every frequency is multiplied by lam,
    and the Riemann-sum norm obeys the exact homogeneity
    lp_norm(f_lam, q) = lam^(-n/q) * lp_norm(f, q).  A plain substitution
    on the *same* torus would instead be measure preserving.
    """
    if lam < 1 or not _is_power_of_two(lam):
        raise ValueError(f"dilation factor must be a power of two >= 1, got {lam}")
    if lam == 1:
        return field
    small = DomainSpec(field.domain.n, field.domain.L / lam, field.domain.N)
    return SampledField(small, field.values)


def lp_norm(field: SampledField, p: float) -> float:
    """Riemann-sum L^p norm (h^n sum |f|^p)^(1/p); p = inf gives max |f|."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    absv = np.abs(field.values)
    if math.isinf(p):
        return float(absv.max())
    return float((field.domain.cell_volume * np.sum(absv**p)) ** (1.0 / p))
