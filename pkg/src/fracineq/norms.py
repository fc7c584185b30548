"""Variable-exponent and Orlicz norms on sampled fields.

The Luxemburg norm inf{lambda > 0 : modular(f/lambda) <= 1} is computed by
bisection in log lambda on the strictly decreasing modular map.  Exponent
fields must share the field's grid; there is no resampling, which keeps the
power identity ||f|^a|_{p} = |f|^a_{a p} exact at the discrete level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .fields import DomainSpec, SampledField, coords, lp_norm
from .spectral import fractional_laplacian

__all__ = [
    "VariableExponent",
    "YoungFunction",
    "MixedSpaceSpec",
    "modular",
    "luxemburg_norm",
    "log_holder_constants",
    "orlicz_modular",
    "orlicz_luxemburg_norm",
    "nabla2_constant",
    "rescaled_orlicz_norm",
    "sobolev_norm",
    "mixed_lebesgue_norm",
    "mixed_sobolev_norm",
]

_REL_TOL = 1e-10
_MAX_ITER = 200


@dataclass(frozen=True)
class VariableExponent:
    """Sampled exponent function p(.) with cached bounds."""

    domain: DomainSpec
    values: np.ndarray
    p_infty: Optional[float] = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.domain.shape:
            raise ValueError("exponent field shape does not match domain")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if not (1.0 < vals.min() and vals.max() < math.inf):
            raise ValueError("need 1 < p(x) everywhere with finite supremum")

    @property
    def p_minus(self) -> float:
        return float(self.values.min())

    @property
    def p_plus(self) -> float:
        return float(self.values.max())

    @classmethod
    def constant(cls, domain: DomainSpec, p: float) -> "VariableExponent":
        return cls(domain, np.full(domain.shape, float(p)), p_infty=float(p))

    def scaled(self, factor: float) -> "VariableExponent":
        p_inf = None if self.p_infty is None else self.p_infty * factor
        return VariableExponent(self.domain, self.values * factor, p_infty=p_inf)


def _check_grids(field: SampledField, p: VariableExponent):
    if field.domain != p.domain:
        raise ValueError("field and exponent live on different grids")


def modular(field: SampledField, p: VariableExponent) -> float:
    """Riemann sum of |f(x)|^p(x)."""
    _check_grids(field, p)
    return float(field.domain.cell_volume * np.sum(np.abs(field.values) ** p.values))


def _log_bisect(modular_fn: Callable[[float], float], lo: float, hi: float) -> float:
    """Shrink [lo, hi] with modular(lo) > 1 >= modular(hi); returns hi end."""
    for _ in range(_MAX_ITER):
        if hi / lo - 1.0 <= _REL_TOL:
            break
        mid = math.sqrt(lo * hi)
        if modular_fn(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return hi


def luxemburg_norm(field: SampledField, p: VariableExponent) -> float:
    """inf{lambda > 0 : modular(f/lambda) <= 1} to relative 1e-10."""
    _check_grids(field, p)
    absv = np.abs(field.values)
    peak = float(absv.max())
    if peak == 0.0:
        return 0.0
    measure = field.domain.cell_volume * field.domain.num_points
    lo = peak * 1e-6
    hi = peak * max(measure, 1.0) ** (1.0 / p.p_minus) * 1e6
    cell = field.domain.cell_volume

    def mod(lam: float) -> float:
        return float(cell * np.sum((absv / lam) ** p.values))

    if mod(hi) > 1.0:  # pragma: no cover - unreachable for the mandated bracket
        raise ArithmeticError("Luxemburg bracket failed on the high side")
    while mod(lo) <= 1.0:
        lo /= 2
        if lo < peak * 1e-300:
            return 0.0
    return _log_bisect(mod, lo, hi)


def log_holder_constants(p: VariableExponent, chunk: int = 512):
    """Largest local and at-infinity log-Hoelder quotients on the grid.

    Returns (C_local, C_infty); C_infty is None when p_infty is undeclared.
    Distances are torus distances; |x| is measured from the cube center.
    """
    dom = p.domain
    xs = [c.reshape(-1) for c in coords(dom)]
    inv_p = (1.0 / p.values).reshape(-1)
    M = len(inv_p)
    pts = np.stack(xs, axis=1)
    c_local = 0.0
    for start in range(0, M, chunk):
        blk = slice(start, min(start + chunk, M))
        diff = np.abs(pts[blk, None, :] - pts[None, :, :])
        diff = np.minimum(diff, dom.L - diff)
        dist = np.sqrt((diff**2).sum(axis=2))
        dp = np.abs(inv_p[blk, None] - inv_p[None, :])
        mask = dist > 0
        quot = dp[mask] * np.log(np.e + 1.0 / dist[mask])
        if quot.size:
            c_local = max(c_local, float(quot.max()))
    if p.p_infty is None:
        return c_local, None
    radius = np.sqrt((pts**2).sum(axis=1))
    c_inf = float(np.max(np.abs(inv_p - 1.0 / p.p_infty) * np.log(np.e + radius)))
    return c_local, c_inf


# ---------------------------------------------------------------------------
# Orlicz spaces


@dataclass(frozen=True)
class YoungFunction:
    """Convex integral A(t) of a nondecreasing density with A(0) = 0."""

    name: str
    A: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        self._validate()

    def __call__(self, t):
        return self.A(t)

    def _validate(self):
        ts = np.geomspace(1e-6, 1e6, 241)
        with np.errstate(over="ignore"):
            vals = np.asarray(self.A(ts), dtype=float)
        if np.any(vals < 0):
            raise ValueError(f"Young function {self.name!r} is not nonnegative")
        # check monotonicity and midpoint convexity on the sample grid,
        # ignoring the overflowed tail of fast-growing functions
        fin = np.isfinite(vals)
        t, v = ts[fin], vals[fin]
        if np.any(np.diff(v) < -1e-12 * np.abs(v[1:])):
            raise ValueError(f"Young function {self.name!r} is not nondecreasing")
        with np.errstate(over="ignore"):
            mid = self.A((t[:-2] + t[2:]) / 2)
        if np.any(mid > (v[:-2] + v[2:]) / 2 + 1e-9 * (1 + np.abs(v[2:]))):
            raise ValueError(f"Young function {self.name!r} is not convex")
        if abs(float(np.asarray(self.A(np.array([0.0]))).reshape(-1)[0])) > 0:
            raise ValueError("Young function must vanish at 0")

    @classmethod
    def power(cls, p: float) -> "YoungFunction":
        if p < 1:
            raise ValueError("power Young function needs p >= 1")
        return cls(f"power({p})", lambda t: np.asarray(t, dtype=float) ** p)

    @classmethod
    def two_power(cls, p_low: float, p_high: float) -> "YoungFunction":
        """t^p_low below 1 and t^p_high above (the capped-power family)."""
        if not 1 <= p_low <= p_high:
            raise ValueError("need 1 <= p_low <= p_high")

        def A(t):
            t = np.asarray(t, dtype=float)
            return np.where(t <= 1.0, t**p_low, t**p_high)

        return cls(f"two_power({p_low},{p_high})", A)

    @classmethod
    def exp_type(cls) -> "YoungFunction":
        def A(t):
            t = np.asarray(t, dtype=float)
            with np.errstate(over="ignore"):
                return np.expm1(t) - t

        return cls("exp_type", A)

    @classmethod
    def from_table(cls, ts, density) -> "YoungFunction":
        """Tabled nondecreasing density a(t); A by cumulative trapezoid."""
        ts = np.asarray(ts, dtype=float)
        density = np.asarray(density, dtype=float)
        if ts.ndim != 1 or ts.shape != density.shape or len(ts) < 2:
            raise ValueError("density table needs matching 1-D arrays")
        if ts[0] < 0 or np.any(np.diff(ts) <= 0):
            raise ValueError("table abscissae must be increasing and nonnegative")
        if np.any(density < 0) or np.any(np.diff(density) < 0):
            raise ValueError("density table must be nonnegative and nondecreasing")
        # refine on a log-spread grid so the cumulative integral is smooth
        grid = np.unique(np.concatenate([[0.0], ts, np.geomspace(max(ts[0], 1e-9), ts[-1], 2049)]))
        a = np.interp(grid, ts, density, left=0.0)
        acc = np.concatenate([[0.0], np.cumsum((a[1:] + a[:-1]) / 2 * np.diff(grid))])
        slope_end = density[-1]
        top, a_top = grid[-1], acc[-1]

        def A(t):
            t = np.asarray(t, dtype=float)
            inside = np.interp(t, grid, acc)
            return np.where(t <= top, inside, a_top + slope_end * (t - top))

        return cls("table", A)


def orlicz_modular(field: SampledField, A: YoungFunction) -> float:
    with np.errstate(over="ignore"):
        return float(field.domain.cell_volume * np.sum(A(np.abs(field.values))))


def orlicz_luxemburg_norm(field: SampledField, A: YoungFunction) -> float:
    """inf{lambda > 0 : int A(|f|/lambda) <= 1} by bracketed log-bisection."""
    absv = np.abs(field.values)
    peak = float(absv.max())
    if peak == 0.0:
        return 0.0
    cell = field.domain.cell_volume

    def mod(lam: float) -> float:
        with np.errstate(over="ignore"):
            return float(cell * np.sum(A(absv / lam)))

    lo = hi = peak
    for _ in range(200):
        if mod(hi) <= 1.0:
            break
        hi *= 2
    else:  # pragma: no cover
        raise ArithmeticError("Orlicz bracket failed on the high side")
    for _ in range(2000):
        if mod(lo) > 1.0:
            break
        lo /= 2
        if lo < peak * 1e-300:
            return 0.0
    return _log_bisect(mod, lo, hi)


def nabla2_constant(
    A: YoungFunction,
    r_scan: Optional[np.ndarray] = None,
    c_max: float = 2.0**10,
    c_count: int = 4000,
) -> Optional[float]:
    """Smallest scanned C > 1 with A(r) <= A(C r) / (2C) on the scan grid.

    Returns None when no such C exists up to c_max.
    """
    if r_scan is None:
        r_scan = np.geomspace(1e-6, 1e6, 1200)
    if len(r_scan) < 1000 or r_scan[0] > 1e-6 or r_scan[-1] < 1e6:
        raise ValueError("scan grid must cover [1e-6, 1e6] with >= 1000 nodes")
    with np.errstate(over="ignore"):
        a_r = np.asarray(A(r_scan), dtype=float)
        for c in np.geomspace(1.0005, c_max, c_count):
            rhs = np.asarray(A(c * r_scan), dtype=float) / (2 * c)
            if np.all(a_r <= rhs * (1 + 1e-12)):
                return float(c)
    return None


def rescaled_orlicz_norm(field: SampledField, A: YoungFunction, sigma: float) -> float:
    """Luxemburg norm for the rescaled Young function A_sigma(t) = A(t^sigma)."""
    if sigma <= 0:
        raise ValueError("rescaling exponent must be positive")
    A_sigma = YoungFunction.__new__(YoungFunction)
    object.__setattr__(A_sigma, "name", f"{A.name}^({sigma})")
    object.__setattr__(A_sigma, "A", lambda t: A(np.asarray(t, dtype=float) ** sigma))
    return orlicz_luxemburg_norm(field, A_sigma)


# ---------------------------------------------------------------------------
# Sobolev and mixed norms


@dataclass(frozen=True)
class MixedSpaceSpec:
    """Variable exponent paired with a constant one (intersection space)."""

    p_var: VariableExponent
    p_const: float
    s: float = 0.0

    def __post_init__(self):
        if not 1.0 < self.p_const < math.inf:
            raise ValueError("constant exponent must lie in (1, inf)")
        if self.s < 0:
            raise ValueError("smoothness must be nonnegative")


def sobolev_norm(field: SampledField, s: float, p: VariableExponent) -> float:
    """Luxemburg norm of the order-s spectral derivative (a semi-norm)."""
    if s < 0:
        raise ValueError("order must be nonnegative")
    return luxemburg_norm(fractional_laplacian(field, s), p)


def mixed_lebesgue_norm(field: SampledField, spec: MixedSpaceSpec) -> float:
    return max(luxemburg_norm(field, spec.p_var), lp_norm(field, spec.p_const))


def mixed_sobolev_norm(field: SampledField, spec: MixedSpaceSpec) -> float:
    df = fractional_laplacian(field, spec.s)
    return max(luxemburg_norm(df, spec.p_var), lp_norm(df, spec.p_const))
