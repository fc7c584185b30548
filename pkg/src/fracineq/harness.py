"""Inequality verification engine.

Each verifier evaluates both sides of one inequality over a function
family, fits the constant C as the maximum of LHS/RHS (over members, and
over grid points for pointwise inequalities), then repeats the measurement
on the refined grid.  A case passes when the fitted constant is finite and
stable under refinement: C(2N)/C(N) in [1/2, 2].  Constants are always
fitted, never assumed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import exponents
from .besov import (
    LittlewoodPaleyBasis,
    TGrid,
    besov_norm_lp,
    besov_norm_thermic,
    lp_square_function_norm,
)
from .fields import (
    DomainSpec,
    FourierMode,
    Gaussian,
    GeneratorSpec,
    RandomBandLimited,
    SampledField,
    SmoothBump,
    coords,
    lp_norm,
    sample,
)
from .maximal import SmoothProfile, heat_profile, hl_maximal, phi_maximal, weak_lorentz_norm
from .norms import (
    MixedSpaceSpec,
    VariableExponent,
    YoungFunction,
    luxemburg_norm,
    mixed_lebesgue_norm,
    mixed_sobolev_norm,
    nabla2_constant,
    orlicz_luxemburg_norm,
    rescaled_orlicz_norm,
)
from .spectral import LogGridSpec, fractional_laplacian, riesz_potential

__all__ = [
    "ExponentSpec",
    "FunctionFamily",
    "InequalityReport",
    "standard_family",
    "verify_modified_hedberg",
    "verify_classical_hedberg",
    "verify_hls",
    "verify_theorem2",
    "verify_theorem3",
    "verify_theorem4",
    "verify_theorem5",
    "verify_phi_maximal_domination",
    "verify_maximal_boundedness",
    "verify_young_oneil",
    "verify_besov_equivalence",
    "exponent_consistency_scan",
]

SKIP_FACTOR = 1e-14


@dataclass(frozen=True)
class ExponentSpec:
    """Grid-independent description of an exponent function p(.).

    p(x) = base + amplitude * sin(2 pi mode (x_1 + ... + x_n) / L); the
    limit exponent at infinity is declared to be the base value.
    """

    base: float
    amplitude: float = 0.0
    mode: int = 1

    def __post_init__(self):
        if self.base - abs(self.amplitude) <= 1.0:
            raise ValueError("exponent spec must keep p > 1 everywhere")

    @property
    def p_minus(self) -> float:
        return self.base - abs(self.amplitude)

    @property
    def p_plus(self) -> float:
        return self.base + abs(self.amplitude)

    @property
    def is_constant(self) -> bool:
        return self.amplitude == 0.0

    def build(self, domain: DomainSpec) -> VariableExponent:
        if self.is_constant:
            return VariableExponent.constant(domain, self.base)
        xs = coords(domain)
        phase = sum(xs) * (2 * np.pi * self.mode / domain.L)
        return VariableExponent(
            domain, self.base + self.amplitude * np.sin(phase), p_infty=self.base
        )

    def describe(self) -> str:
        if self.is_constant:
            return f"{self.base:g}"
        return f"{self.base:g}+{self.amplitude:g}sin(k={self.mode})"


@dataclass(frozen=True)
class FunctionFamily:
    """Generators sharing one domain; members are mean-zero after projection."""

    domain: DomainSpec
    generators: tuple

    def __post_init__(self):
        if len(self.generators) == 0:
            raise ValueError("family must be nonempty")

    def fields(self) -> list:
        return [sample(self.domain, g).project_mean_zero() for g in self.generators]

    def refined(self) -> "FunctionFamily":
        return FunctionFamily(self.domain.refined(), self.generators)


def standard_family(domain: DomainSpec, seed: int = 1202) -> FunctionFamily:
    """Fixed 20-member mix: 5 Gaussians, 5 bumps, 5 modes, 5 random fields."""
    L = domain.L
    gens: list[GeneratorSpec] = []
    for i, c in enumerate([0.50, 0.60, 0.70, 0.80, 0.90]):
        center = (i - 2) * L / 20.0
        ctr = center if domain.n == 1 else (center, -center / 2)
        gens.append(Gaussian(sigma=c * L / 16.0, center=ctr))
    for i, c in enumerate([0.20, 0.24, 0.28, 0.32, 0.36]):
        center = (2 - i) * L / 16.0
        ctr = center if domain.n == 1 else (center / 2, center)
        gens.append(SmoothBump(radius=c * L / 2.0, center=ctr))
    if domain.n == 1:
        modes = [1, 2, 3, 4, 5]
    else:
        modes = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]
    gens.extend(FourierMode(k) for k in modes)
    gens.extend(RandomBandLimited(seed=seed + i, max_band=8) for i in range(5))
    return FunctionFamily(domain, tuple(gens))


@dataclass
class InequalityReport:
    case_id: str
    theorem: str
    params: dict
    lhs_max: float
    rhs_at_max: float
    c_fit: float
    refinement_ratio: Optional[float]
    skipped: int
    passed: bool
    inconclusive: bool = False
    extras: dict = dc_field(default_factory=dict)

    def to_row(self) -> dict:
        p = self.params
        return {
            "case_id": self.case_id,
            "theorem": self.theorem,
            "n": p.get("n", ""),
            "s": p.get("s", ""),
            "s1": p.get("s1", ""),
            "beta": p.get("beta", ""),
            "theta": p.get("theta", ""),
            "p_desc": p.get("p_desc", ""),
            "frak_p": p.get("frak_p", ""),
            "lhs_max": self.lhs_max,
            "rhs_at_max": self.rhs_at_max,
            "c_fit": self.c_fit,
            "refinement_ratio": self.refinement_ratio,
            "skipped": self.skipped,
            "pass": self.passed,
        }


@dataclass
class _Fit:
    c_fit: float
    lhs_max: float
    rhs_at_max: float
    skipped: int
    extras: dict = dc_field(default_factory=dict)


def _pointwise_fit(pairs) -> _Fit:
    """Fit over (lhs array, rhs array) pairs, skipping near-zero RHS points."""
    c_fit = 0.0
    lhs_at, rhs_at = 0.0, 0.0
    skipped = 0
    any_used = False
    for lhs, rhs in pairs:
        lhs = np.asarray(lhs, dtype=float).reshape(-1)
        rhs = np.asarray(rhs, dtype=float).reshape(-1)
        scale = float(rhs.max(initial=0.0))
        mask = rhs > SKIP_FACTOR * scale if scale > 0 else np.zeros_like(rhs, dtype=bool)
        skipped += int((~mask).sum())
        if not mask.any():
            continue
        any_used = True
        ratio = lhs[mask] / rhs[mask]
        k = int(np.argmax(ratio))
        if ratio[k] > c_fit:
            c_fit = float(ratio[k])
            lhs_at = float(lhs[mask][k])
            rhs_at = float(rhs[mask][k])
    if not any_used:
        return _Fit(math.nan, 0.0, 0.0, skipped)
    return _Fit(c_fit, lhs_at, rhs_at, skipped)


def _norm_fit(pairs) -> _Fit:
    c_fit = 0.0
    lhs_at, rhs_at = 0.0, 0.0
    skipped = 0
    any_used = False
    vals = list(pairs)
    scale = max((rhs for _, rhs in vals), default=0.0)
    for lhs, rhs in vals:
        if rhs <= SKIP_FACTOR * scale:
            skipped += 1
            continue
        any_used = True
        if lhs / rhs > c_fit:
            c_fit = lhs / rhs
            lhs_at, rhs_at = lhs, rhs
    if not any_used:
        return _Fit(math.nan, 0.0, 0.0, skipped)
    return _Fit(c_fit, lhs_at, rhs_at, skipped)


def _build_report(
    case_id: str,
    theorem: str,
    params: dict,
    family: FunctionFamily,
    measure: Callable[[FunctionFamily], _Fit],
    refine: bool = True,
) -> InequalityReport:
    base = measure(family)
    ratio: Optional[float] = None
    extras = dict(base.extras)
    if refine and math.isfinite(base.c_fit) and base.c_fit > 0:
        fine = measure(family.refined())
        if math.isfinite(fine.c_fit):
            ratio = float(fine.c_fit / base.c_fit)
        extras.update({f"refined_{k}": v for k, v in fine.extras.items()})
    inconclusive = not math.isfinite(base.c_fit)
    passed = bool(
        not inconclusive
        and (not refine or (ratio is not None and 0.5 <= ratio <= 2.0))
    )
    return InequalityReport(
        case_id=case_id,
        theorem=theorem,
        params=params,
        lhs_max=base.lhs_max,
        rhs_at_max=base.rhs_at_max,
        c_fit=base.c_fit,
        refinement_ratio=ratio,
        skipped=base.skipped,
        passed=passed,
        inconclusive=inconclusive,
        extras=extras,
    )


# ---------------------------------------------------------------------------
# pointwise verifiers


def verify_modified_hedberg(
    family: FunctionFamily, s: float, s1: float, beta: float, refine: bool = True
) -> InequalityReport:
    """Pointwise bound of the fractional derivative of order s1 by the
    maximal function of the order-s derivative times a Besov norm power."""
    n = family.domain.n
    if not 0 < s1 < s <= n:
        raise exponents.GateError("pointwise_orders", f"need 0 < s1 < s <= n, got {s1}, {s}, n={n}")
    theta = exponents.hedberg_theta(s, s1, beta)

    def measure(fam: FunctionFamily) -> _Fit:
        pairs = []
        for f in fam.fields():
            besov = besov_norm_thermic(f, beta)
            if besov == 0.0:
                continue
            lhs = np.abs(fractional_laplacian(f, s1).values) ** (1.0 / (1.0 - theta))
            mx = hl_maximal(fractional_laplacian(f, s)).values.real
            rhs = mx * besov ** (theta / (1.0 - theta))
            pairs.append((lhs, rhs))
        return _pointwise_fit(pairs)

    params = {"n": n, "s": s, "s1": s1, "beta": beta, "theta": float(theta)}
    return _build_report(
        f"modified_hedberg_n{n}_s{s}_s1{s1}_b{beta}", "modified_hedberg", params, family, measure, refine
    )


def verify_classical_hedberg(
    family: FunctionFamily, s: float, p: float, refine: bool = True
) -> InequalityReport:
    """|I_s f| <= C M(f)^(1 - sp/n) ||f||_p^(sp/n) pointwise."""
    n = family.domain.n
    exponents.sobolev_conjugate(n, s, p)  # gate: 0 < s < n/p
    alpha = s * p / n

    def measure(fam: FunctionFamily) -> _Fit:
        pairs = []
        for f in fam.fields():
            norm_p = lp_norm(f, p)
            if norm_p == 0.0:
                continue
            lhs = np.abs(riesz_potential(f, s).values)
            rhs = hl_maximal(f).values.real ** (1.0 - alpha) * norm_p**alpha
            pairs.append((lhs, rhs))
        return _pointwise_fit(pairs)

    params = {"n": n, "s": s, "p_desc": f"{p:g}"}
    return _build_report(
        f"classical_hedberg_n{n}_s{s}_p{p}", "classical_hedberg", params, family, measure, refine
    )


def verify_phi_maximal_domination(
    family: FunctionFamily, profile: SmoothProfile | None = None, refine: bool = True
) -> InequalityReport:
    """M_phi(f) <= C M(f) pointwise for a smooth approximate identity."""
    if profile is None:
        profile = heat_profile()

    def measure(fam: FunctionFamily) -> _Fit:
        dom = fam.domain
        tg = LogGridSpec((dom.h / np.pi) ** 2, (dom.L / 2) ** 2, 120)
        pairs = []
        for f in fam.fields():
            lhs = phi_maximal(f, profile, tg).values.real
            rhs = hl_maximal(f).values.real
            pairs.append((lhs, rhs))
        return _pointwise_fit(pairs)

    params = {"n": family.domain.n, "p_desc": profile.name}
    return _build_report(
        f"phi_maximal_{profile.name}_n{family.domain.n}", "phi_maximal_domination", params, family, measure, refine
    )


# ---------------------------------------------------------------------------
# norm-level verifiers


def verify_hls(
    family: FunctionFamily, s: float, p_spec: ExponentSpec, refine: bool = True
) -> InequalityReport:
    """Riesz-potential boundedness L^p(.) -> L^q(.) with the pointwise
    conjugate exponent; constant p reduces to the classical statement."""
    n = family.domain.n
    exponents.q_pointwise(np.array([p_spec.p_plus]), s, n)  # gate

    def measure(fam: FunctionFamily) -> _Fit:
        p_var = p_spec.build(fam.domain)
        q_var = VariableExponent(fam.domain, exponents.q_pointwise(p_var.values, s, n))
        pairs = []
        for f in fam.fields():
            lhs = luxemburg_norm(riesz_potential(f, s), q_var)
            rhs = luxemburg_norm(f, p_var)
            pairs.append((lhs, rhs))
        return _norm_fit(pairs)

    params = {"n": n, "s": s, "p_desc": p_spec.describe()}
    return _build_report(f"hls_n{n}_s{s}_p{p_spec.describe()}", "hls", params, family, measure, refine)


def verify_maximal_boundedness(
    family: FunctionFamily, p: float, refine: bool = True
) -> InequalityReport:
    """||M f||_p <= C ||f||_p for p > 1."""
    if p <= 1:
        raise exponents.GateError("p_range", f"maximal boundedness needs p > 1, got {p}")

    def measure(fam: FunctionFamily) -> _Fit:
        pairs = []
        for f in fam.fields():
            pairs.append((lp_norm(hl_maximal(f), p), lp_norm(f, p)))
        return _norm_fit(pairs)

    params = {"n": family.domain.n, "p_desc": f"{p:g}"}
    return _build_report(
        f"maximal_boundedness_n{family.domain.n}_p{p}", "maximal_boundedness", params, family, measure, refine
    )


def _riesz_kernel_field(domain: DomainSpec, s: float) -> SampledField:
    xs = coords(domain)
    r2 = sum(x**2 for x in xs)
    vals = np.zeros(domain.shape)
    nz = r2 > 0
    vals[nz] = r2[nz] ** ((s - domain.n) / 2.0)
    return SampledField(domain, vals)


def verify_young_oneil(
    family: FunctionFamily, s: float, p: float, refine: bool = True
) -> InequalityReport:
    """Convolution bound with the measured weak-Lorentz quasi-norm of the
    Riesz kernel; the unspecified kernel normalization is absorbed by C."""
    n = family.domain.n
    r = float(exponents.lorentz_exponent(n, s))
    q = float(exponents.young_oneil_q(r, p))

    def measure(fam: FunctionFamily) -> _Fit:
        kernel_quasi = weak_lorentz_norm(_riesz_kernel_field(fam.domain, s), r)
        pairs = []
        for f in fam.fields():
            lhs = lp_norm(riesz_potential(f, s), q)
            rhs = kernel_quasi * lp_norm(f, p)
            pairs.append((lhs, rhs))
        fit = _norm_fit(pairs)
        fit.extras["kernel_weak_lorentz"] = kernel_quasi
        fit.extras["q"] = q
        return fit

    params = {"n": n, "s": s, "p_desc": f"{p:g}"}
    return _build_report(f"young_oneil_n{n}_s{s}_p{p}", "young_oneil", params, family, measure, refine)


def verify_besov_equivalence(
    family: FunctionFamily, beta: float, s: float, refine: bool = True
) -> InequalityReport:
    """Besov norm of the order-s derivative at depth beta+s stays comparable
    to the Besov norm of f at depth beta."""
    if beta <= 0 or s <= 0:
        raise exponents.GateError("positive_orders", f"need beta, s > 0, got {beta}, {s}")

    def measure(fam: FunctionFamily) -> _Fit:
        pairs = []
        ratios = []
        for f in fam.fields():
            lhs = besov_norm_thermic(fractional_laplacian(f, s), beta + s)
            rhs = besov_norm_thermic(f, beta)
            pairs.append((lhs, rhs))
            if rhs > 0:
                ratios.append(lhs / rhs)
        fit = _norm_fit(pairs)
        if ratios:
            fit.extras["ratio_min"] = min(ratios)
            fit.extras["ratio_max"] = max(ratios)
        return fit

    params = {"n": family.domain.n, "s": s, "beta": beta}
    return _build_report(
        f"besov_equivalence_n{family.domain.n}_b{beta}_s{s}", "besov_equivalence", params, family, measure, refine
    )


# ---------------------------------------------------------------------------
# theorem verifiers


def verify_theorem2(
    family: FunctionFamily,
    s: float,
    s1: float,
    beta: float,
    p_spec: ExponentSpec,
    refine: bool = True,
) -> InequalityReport:
    """Interpolation-type Sobolev bound between the variable-exponent
    Sobolev norm and the negative-order Besov norm; runs both the
    pointwise-maximal route and the dyadic square-function route."""
    n = family.domain.n
    if s1 < 0:
        raise exponents.GateError("s1_nonnegative", f"got s1={s1}")
    if not s * p_spec.p_plus < n:
        raise exponents.GateError("subcritical_plus", f"need s < n/p_plus = {n}/{p_spec.p_plus}")
    theta = float(exponents.hedberg_theta(s, s1, beta))
    scale_q = 1.0 / (1.0 - theta)

    def measure(fam: FunctionFamily) -> _Fit:
        p_var = p_spec.build(fam.domain)
        q_var = p_var.scaled(scale_q)
        basis = LittlewoodPaleyBasis.for_domain(fam.domain)
        pairs, lp_pairs = [], []
        for f in fam.fields():
            besov = besov_norm_thermic(f, beta)
            sob = luxemburg_norm(fractional_laplacian(f, s), p_var)
            if besov == 0.0 or sob == 0.0:
                pairs.append((0.0, 0.0))
                continue
            lhs = luxemburg_norm(fractional_laplacian(f, s1), q_var)
            pairs.append((lhs, sob ** (1 - theta) * besov**theta))
            lp_lhs = lp_square_function_norm(f, s1, q_var, basis)
            lp_rhs = (
                lp_square_function_norm(f, s, p_var, basis) ** (1 - theta)
                * besov_norm_lp(f, beta, basis) ** theta
            )
            lp_pairs.append((lp_lhs, lp_rhs))
        fit = _norm_fit(pairs)
        lp_fit = _norm_fit(lp_pairs)
        fit.extras["c_fit_lp_route"] = lp_fit.c_fit
        return fit

    params = {
        "n": n,
        "s": s,
        "s1": s1,
        "beta": beta,
        "theta": theta,
        "p_desc": p_spec.describe(),
    }
    return _build_report(
        f"theorem2_n{n}_s{s}_s1{s1}_b{beta}_p{p_spec.describe()}", "theorem2", params, family, measure, refine
    )


def verify_theorem3(
    family: FunctionFamily,
    s: float,
    p_spec: ExponentSpec,
    frak_p: float,
    refine: bool = True,
) -> InequalityReport:
    """Mixed Sobolev bound plus its two embedding links (constant-exponent
    Sobolev embedding and the Lebesgue-to-Besov inclusion)."""
    n = family.domain.n
    theta = float(exponents.mixed_theta(n, s, frak_p))
    if not s * p_spec.p_plus < n:
        raise exponents.GateError("subcritical_plus", f"need s < n/p_plus = {n}/{p_spec.p_plus}")
    sigma_factor = n / (n - s * frak_p)
    r = float(exponents.sobolev_conjugate(n, s, frak_p))

    def measure(fam: FunctionFamily) -> _Fit:
        p_var = p_spec.build(fam.domain)
        sigma_var = p_var.scaled(sigma_factor)
        pairs, link1, link2 = [], [], []
        for f in fam.fields():
            lhs = luxemburg_norm(f, sigma_var)
            rhs = mixed_sobolev_norm(f, MixedSpaceSpec(p_var, frak_p, s))
            pairs.append((lhs, rhs))
            sob_const = lp_norm(fractional_laplacian(f, s), frak_p)
            norm_r = lp_norm(f, r)
            link1.append((norm_r, sob_const))
            link2.append((besov_norm_thermic(f, n / r), norm_r))
        fit = _norm_fit(pairs)
        fit.extras["c_fit_sobolev_link"] = _norm_fit(link1).c_fit
        fit.extras["c_fit_besov_link"] = _norm_fit(link2).c_fit
        return fit

    params = {"n": n, "s": s, "theta": theta, "p_desc": p_spec.describe(), "frak_p": frak_p}
    return _build_report(
        f"theorem3_n{n}_s{s}_p{p_spec.describe()}_fp{frak_p}", "theorem3", params, family, measure, refine
    )


def verify_theorem4(
    family: FunctionFamily,
    s: float,
    p_spec: ExponentSpec,
    frak_p: float,
    refine: bool = True,
) -> InequalityReport:
    """Mixed Riesz-potential bound into the pointwise-scaled Lebesgue space."""
    n = family.domain.n
    theta = float(exponents.mixed_theta(n, s, frak_p))
    if not s * p_spec.p_plus < n:
        raise exponents.GateError("subcritical_plus", f"need s < n/p_plus = {n}/{p_spec.p_plus}")
    sigma_factor = n / (n - s * frak_p)

    def measure(fam: FunctionFamily) -> _Fit:
        p_var = p_spec.build(fam.domain)
        sigma_var = p_var.scaled(sigma_factor)
        pairs = []
        for f in fam.fields():
            lhs = luxemburg_norm(riesz_potential(f, s), sigma_var)
            rhs = mixed_lebesgue_norm(f, MixedSpaceSpec(p_var, frak_p))
            pairs.append((lhs, rhs))
        return _norm_fit(pairs)

    params = {"n": n, "s": s, "theta": theta, "p_desc": p_spec.describe(), "frak_p": frak_p}
    return _build_report(
        f"theorem4_n{n}_s{s}_p{p_spec.describe()}_fp{frak_p}", "theorem4", params, family, measure, refine
    )


def verify_theorem5(
    family: FunctionFamily,
    s: float,
    s1: float,
    beta: float,
    A: YoungFunction,
    refine: bool = True,
) -> InequalityReport:
    """Orlicz-space version of the interpolation-type Sobolev bound.

    The left side lives in the power-rescaled Orlicz space whose rescaling
    exponent 1/(1-theta) matches the power identity used in the proof (for
    A(t) = t^p this reduces exactly to the exponent p/(1-theta)).
    """
    n = family.domain.n
    if s1 < 0:
        raise exponents.GateError("s1_nonnegative", f"got s1={s1}")
    theta = float(exponents.hedberg_theta(s, s1, beta))
    if nabla2_constant(A) is None:
        raise exponents.GateError(
            "nabla2", f"Young function {A.name} fails the doubling-gap condition"
        )

    def measure(fam: FunctionFamily) -> _Fit:
        pairs = []
        for f in fam.fields():
            besov = besov_norm_thermic(f, beta)
            sob = orlicz_luxemburg_norm(fractional_laplacian(f, s), A)
            if besov == 0.0 or sob == 0.0:
                pairs.append((0.0, 0.0))
                continue
            lhs = rescaled_orlicz_norm(
                fractional_laplacian(f, s1), A, 1.0 / (1.0 - theta)
            )
            pairs.append((lhs, sob ** (1 - theta) * besov**theta))
        return _norm_fit(pairs)

    params = {"n": n, "s": s, "s1": s1, "beta": beta, "theta": theta, "p_desc": A.name}
    return _build_report(
        f"theorem5_n{n}_s{s}_s1{s1}_b{beta}_{A.name}", "theorem5", params, family, measure, refine
    )


# ---------------------------------------------------------------------------
# exponent consistency scan


def exponent_consistency_scan() -> list:
    """Exact rational cross-checks between all exponent relations.

    Returns a list of (params, ok) entries; every entry must be ok.
    """
    results = []
    for n in (1, 2, 3, 4):
        for p in (Fraction(3, 2), Fraction(2), Fraction(3)):
            for num in (1, 2, 3):
                s = Fraction(num, 4) * n / p  # s in (0, n/p)
                q = exponents.sobolev_conjugate(n, s, p)
                ok = 1 / q == 1 / p - s / n
                if 0 < s < n:
                    r = exponents.lorentz_exponent(n, s)
                    ok = ok and exponents.young_oneil_q(r, p) == q
                ok = ok and exponents.q_pointwise(p, s, n) == q
                ok = ok and exponents.sigma_exponent(n, s, p, p) == q
                beta = Fraction(n, p) - s
                if beta > 0:
                    theta = exponents.hedberg_theta(s, Fraction(0), beta)
                    ok = ok and theta == exponents.mixed_theta(n, s, p)
                results.append(({"n": n, "p": p, "s": s}, bool(ok)))
    return results
