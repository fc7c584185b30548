"""Littlewood-Paley decomposition and negative-order Besov norms.

The dyadic profile is 1 inside |xi| <= 1/2, 0 outside |xi| >= 1, with a
fixed quintic smoothstep transition so results are bit-reproducible.  On a
finite grid the dyadic index range is finite and the truncation is exact
for grid functions: frequencies outside the covered band simply do not
exist (the zero mode plays the role of the polynomials, and is always
removed first).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import DomainSpec, SampledField, xi_magnitude
from .norms import VariableExponent, luxemburg_norm

__all__ = [
    "phi_hat_profile",
    "LittlewoodPaleyBasis",
    "TGrid",
    "besov_norm_thermic",
    "dyadic_block",
    "besov_norm_lp",
    "lp_square_function_norm",
    "sequence_interpolation_check",
    "weighted_sequence_norm",
]


def phi_hat_profile(r: np.ndarray) -> np.ndarray:
    """Radial profile: 1 for r <= 1/2, 0 for r >= 1, quintic smoothstep between."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    out[r <= 0.5] = 1.0
    mid = (r > 0.5) & (r < 1.0)
    u = (r[mid] - 0.5) * 2.0
    out[mid] = 1.0 - u**3 * (10.0 - 15.0 * u + 6.0 * u**2)
    return out


@dataclass(frozen=True)
class LittlewoodPaleyBasis:
    """Dyadic annulus profiles psi_j covering the grid's frequency band."""

    domain: DomainSpec
    j_min: int
    j_max: int

    @classmethod
    def for_domain(cls, domain: DomainSpec) -> "LittlewoodPaleyBasis":
        xi = xi_magnitude(domain)
        nz = xi[xi > 0]
        xi_min = float(nz.min())
        xi_max = float(nz.max())
        j_min = math.floor(math.log2(xi_min))
        j_max = math.ceil(math.log2(xi_max))
        return cls(domain, j_min, j_max)

    @property
    def j_range(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def psi_hat(self, j: int) -> np.ndarray:
        if j not in self.j_range:
            raise ValueError(f"block index {j} outside range {self.j_range}")
        return _psi_hat(self.domain, j)

    def partition_residual(self) -> float:
        """Max deviation of sum_j psi_j from 1 over nonzero grid frequencies."""
        xi = xi_magnitude(self.domain)
        total = np.zeros_like(xi)
        for j in self.j_range:
            total += self.psi_hat(j)
        return float(np.max(np.abs(total[xi > 0] - 1.0)))


@lru_cache(maxsize=1024)
def _psi_hat(domain: DomainSpec, j: int) -> np.ndarray:
    xi = xi_magnitude(domain)
    out = phi_hat_profile(xi / 2.0 ** (j + 1)) - phi_hat_profile(xi / 2.0**j)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TGrid:
    """Log-uniform times discretizing the sup over t > 0."""

    t_min: float
    t_max: float
    count: int = 200

    def __post_init__(self):
        if not 0 < self.t_min < self.t_max:
            raise ValueError("need 0 < t_min < t_max")
        if self.count < 2:
            raise ValueError("need at least two time nodes")

    @classmethod
    def for_domain(cls, domain: DomainSpec, count: int = 200) -> "TGrid":
        return cls((domain.h / np.pi) ** 2, (domain.L / 2) ** 2, count)

    def nodes(self) -> np.ndarray:
        return np.geomspace(self.t_min, self.t_max, self.count)


def besov_norm_thermic(field: SampledField, beta: float, tg: TGrid | None = None) -> float:
    """max over the t-grid of t^(beta/2) * sup |h_t * f|, mean removed."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if tg is None:
        tg = TGrid.for_domain(field.domain)
    f = field.project_mean_zero()
    xi = xi_magnitude(f.domain)
    fhat = np.fft.fftn(f.values)
    best = 0.0
    for t in tg.nodes():
        conv = np.fft.ifftn(fhat * np.exp(-t * xi**2))
        best = max(best, t ** (beta / 2) * float(np.max(np.abs(conv))))
    return best


def dyadic_block(field: SampledField, j: int, basis: LittlewoodPaleyBasis) -> SampledField:
    """Spectral restriction of f to the dyadic annulus |xi| ~ 2^j."""
    if basis.domain != field.domain:
        raise ValueError("basis and field live on different grids")
    coeffs = np.fft.fftn(field.values) * basis.psi_hat(j)
    return SampledField(field.domain, np.fft.ifftn(coeffs))


def besov_norm_lp(field: SampledField, beta: float, basis: LittlewoodPaleyBasis | None = None) -> float:
    """max over j of 2^(-beta j) * sup |Delta_j f|."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if basis is None:
        basis = LittlewoodPaleyBasis.for_domain(field.domain)
    best = 0.0
    for j in basis.j_range:
        blk = dyadic_block(field, j, basis)
        best = max(best, 2.0 ** (-beta * j) * float(np.max(np.abs(blk.values))))
    return best


def lp_square_function_norm(
    field: SampledField,
    s: float,
    p: VariableExponent,
    basis: LittlewoodPaleyBasis | None = None,
) -> float:
    """Luxemburg norm of (sum_j 4^(s j) |Delta_j f|^2)^(1/2)."""
    if s < 0:
        raise ValueError("smoothness must be nonnegative")
    if basis is None:
        basis = LittlewoodPaleyBasis.for_domain(field.domain)
    acc = np.zeros(field.domain.shape)
    for j in basis.j_range:
        blk = dyadic_block(field, j, basis)
        acc += 4.0 ** (s * j) * np.abs(blk.values) ** 2
    g = SampledField(field.domain, np.sqrt(acc))
    return luxemburg_norm(g, p)


def weighted_sequence_norm(a: np.ndarray, weights: np.ndarray, r: float) -> float:
    """ell^r norm of (weights * a); r = inf gives the sup."""
    if r < 1:
        raise ValueError("sequence exponent must be >= 1")
    w = np.abs(weights * a)
    if math.isinf(r):
        return float(w.max()) if w.size else 0.0
    return float(np.sum(w**r) ** (1.0 / r))


def sequence_interpolation_check(a, s0, s1, theta, r, r1, r2, j_start: int = 0):
    """Both sides of the dyadic-weight interpolation estimate.

    lhs = ||2^(j s) a_j||_{l^r} with s = (1-theta) s0 + theta s1,
    rhs = ||2^(j s0) a_j||_{l^r1}^(1-theta) * ||2^(j s1) a_j||_{l^r2}^theta.
    Returns (lhs, rhs, ratio) with ratio None when both sides vanish.
    """
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    if s0 == s1:
        raise ValueError("need s0 != s1")
    for rr in (r, r1, r2):
        if rr < 1:
            raise ValueError("sequence exponents must be >= 1")
    a = np.asarray(a, dtype=float)
    j = j_start + np.arange(len(a))
    s = (1 - theta) * s0 + theta * s1
    lhs = weighted_sequence_norm(a, 2.0 ** (j * s), r)
    rhs = (
        weighted_sequence_norm(a, 2.0 ** (j * s0), r1) ** (1 - theta)
        * weighted_sequence_norm(a, 2.0 ** (j * s1), r2) ** theta
    )
    ratio = None if rhs == 0.0 else lhs / rhs
    return lhs, rhs, ratio
