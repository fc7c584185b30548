import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracineq import (
    DomainSpec,
    FourierMode,
    MixedSpaceSpec,
    SampledField,
    VariableExponent,
    YoungFunction,
    coords,
    log_holder_constants,
    lp_norm,
    luxemburg_norm,
    mixed_lebesgue_norm,
    mixed_sobolev_norm,
    modular,
    nabla2_constant,
    orlicz_luxemburg_norm,
    rescaled_orlicz_norm,
    sample,
    sobolev_norm,
)

from conftest import random_fields


def sin_exponent(domain, base=3.0, amp=1.0, p_infty=None):
    (x,) = coords(domain)
    return VariableExponent(domain, base + amp * np.sin(2 * np.pi * x / domain.L), p_infty=p_infty)


class TestVariableExponent:
    def test_validation(self, dom1):
        with pytest.raises(ValueError):
            VariableExponent(dom1, np.full(64, 1.0))
        with pytest.raises(ValueError):
            VariableExponent(dom1, np.full(32, 2.0))

    def test_bounds_and_scaling(self, dom1):
        p = sin_exponent(dom1, p_infty=3.0)
        assert p.p_minus == pytest.approx(2.0, abs=1e-2)
        assert p.p_plus == pytest.approx(4.0, abs=1e-2)
        q = p.scaled(2.0)
        assert np.allclose(q.values, 2.0 * p.values)
        assert q.p_infty == 6.0

    def test_constant(self, dom1):
        p = VariableExponent.constant(dom1, 2.5)
        assert p.p_minus == p.p_plus == 2.5


class TestModular:
    def test_unit_integrand(self):
        dom = DomainSpec(1, 1.0, 64)
        f = SampledField(dom, np.ones(64))
        assert modular(f, sin_exponent(dom)) == pytest.approx(1.0, rel=1e-12)

    def test_zero_field(self, dom1):
        f = SampledField(dom1, np.zeros(64))
        assert modular(f, VariableExponent.constant(dom1, 2.0)) == 0.0

    def test_constant_power(self):
        dom = DomainSpec(1, 1.0, 64)
        f = SampledField(dom, np.full(64, 2.0))
        assert modular(f, VariableExponent.constant(dom, 3.0)) == pytest.approx(8.0, rel=1e-12)

    def test_grid_mismatch(self, dom1):
        f = SampledField(dom1.refined(), np.zeros(128))
        with pytest.raises(ValueError):
            modular(f, VariableExponent.constant(dom1, 2.0))


class TestLuxemburg:
    def test_constant_exponent_reduces_to_lp(self, dom1):
        for f in random_fields(dom1, 5):
            for p0 in (1.5, 2.0, 4.0):
                p = VariableExponent.constant(dom1, p0)
                assert luxemburg_norm(f, p) == pytest.approx(lp_norm(f, p0), rel=1e-10)

    def test_two_phase_analytic(self):
        """f = 2 on [0,1) with p = 2 on one half, 4 on the other: the modular
        equation (1/2)(2/l)^2 + (1/2)(2/l)^4 = 1 is solved by l = 2."""
        dom = DomainSpec(1, 1.0, 64)
        f = SampledField(dom, np.full(64, 2.0))
        pv = np.where(np.arange(64) < 32, 2.0, 4.0)
        assert luxemburg_norm(f, VariableExponent(dom, pv)) == pytest.approx(2.0, rel=1e-9)

    def test_zero_field(self, dom1):
        f = SampledField(dom1, np.zeros(64))
        assert luxemburg_norm(f, VariableExponent.constant(dom1, 2.0)) == 0.0

    @given(lam=st.floats(min_value=-8, max_value=8, allow_nan=False).filter(lambda v: abs(v) > 1e-6))
    @settings(max_examples=20, deadline=None)
    def test_homogeneity(self, lam):
        dom = DomainSpec(1, 16.0, 32)
        f = random_fields(dom, 1, seed0=41, max_band=4)[0]
        p = sin_exponent(dom)
        assert luxemburg_norm(lam * f, p) == pytest.approx(abs(lam) * luxemburg_norm(f, p), rel=1e-9)

    def test_order_preserving(self, dom1, rng):
        p = sin_exponent(dom1)
        for _ in range(5):
            a = rng.standard_normal(64)
            f = SampledField(dom1, a)
            g = SampledField(dom1, np.abs(a) * (1 + rng.random(64)))
            assert luxemburg_norm(f, p) <= luxemburg_norm(g, p) * (1 + 1e-9)

    def test_power_identity(self, dom1):
        p = sin_exponent(dom1)  # p_minus ~ 2, so alpha = 2 >= 1/p_minus
        for f in random_fields(dom1, 5):
            sq = SampledField(dom1, np.abs(f.values) ** 2)
            lhs = luxemburg_norm(sq, p)
            rhs = luxemburg_norm(f, p.scaled(2.0)) ** 2
            assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_unit_ball_property(self, dom1):
        p = sin_exponent(dom1)
        for f in random_fields(dom1, 5):
            nrm = luxemburg_norm(f, p)
            scaled = SampledField(dom1, f.values / nrm)
            m = modular(scaled, p)
            assert m <= 1.0 + 1e-8
            assert m == pytest.approx(1.0, abs=1e-8)


class TestLogHolder:
    def test_constant_exponent(self, dom1):
        c_local, c_inf = log_holder_constants(VariableExponent.constant(dom1, 2.0))
        assert c_local == 0.0
        assert c_inf == 0.0

    def test_missing_p_infty(self, dom1):
        _, c_inf = log_holder_constants(sin_exponent(dom1))
        assert c_inf is None

    def test_against_brute_force(self):
        dom = DomainSpec(1, 16.0, 32)
        p = sin_exponent(dom, p_infty=3.0)
        c_local, c_inf = log_holder_constants(p)
        (x,) = coords(dom)
        inv = 1.0 / p.values
        best_local = 0.0
        for i in range(32):
            for j in range(32):
                if i == j:
                    continue
                d = abs(x[i] - x[j])
                d = min(d, dom.L - d)
                best_local = max(best_local, abs(inv[i] - inv[j]) * np.log(np.e + 1.0 / d))
        assert c_local == pytest.approx(best_local, rel=1e-12)
        best_inf = max(abs(inv[i] - 1 / 3.0) * np.log(np.e + abs(x[i])) for i in range(32))
        assert c_inf == pytest.approx(best_inf, rel=1e-12)

    def test_scaled_exponent_relation(self, dom1):
        p = sin_exponent(dom1)
        theta = 0.25
        q = p.scaled(1.0 / (1.0 - theta))
        cp, _ = log_holder_constants(p)
        cq, _ = log_holder_constants(q)
        assert cq == pytest.approx((1 - theta) * cp, rel=1e-12)


class TestYoungFunction:
    def test_power_and_linear_valid(self):
        YoungFunction.power(1.0)
        YoungFunction.power(2.5)
        with pytest.raises(ValueError):
            YoungFunction.power(0.5)

    def test_non_convex_rejected(self):
        with pytest.raises(ValueError):
            YoungFunction("sqrt", lambda t: np.sqrt(np.asarray(t, dtype=float)))

    def test_nonzero_at_origin_rejected(self):
        with pytest.raises(ValueError):
            YoungFunction("shifted", lambda t: np.asarray(t, dtype=float) + 1.0)

    def test_two_power_continuous(self):
        A = YoungFunction.two_power(2.0, 3.0)
        assert A(np.array([1.0]))[0] == 1.0
        assert A(np.array([0.5]))[0] == 0.25
        assert A(np.array([2.0]))[0] == 8.0
        with pytest.raises(ValueError):
            YoungFunction.two_power(3.0, 2.0)

    def test_from_table_matches_power(self):
        # density a(t) = 2t integrates to A(t) = t^2
        ts = np.linspace(0.0, 2e6, 4097)
        A = YoungFunction.from_table(ts, 2 * ts)
        probe = np.array([0.5, 1.0, 3.0, 100.0])
        assert np.allclose(A(probe), probe**2, rtol=1e-4)

    def test_from_table_rejects_decreasing_density(self):
        ts = np.linspace(0.0, 10.0, 11)
        with pytest.raises(ValueError):
            YoungFunction.from_table(ts, ts[::-1])


class TestOrliczNorm:
    def test_power_two_reduces_to_l2(self, dom1):
        A = YoungFunction.power(2.0)
        for f in random_fields(dom1, 5):
            assert orlicz_luxemburg_norm(f, A) == pytest.approx(lp_norm(f, 2.0), rel=1e-10)

    def test_homogeneity(self, rand_field):
        A = YoungFunction.two_power(2.0, 3.0)
        a = orlicz_luxemburg_norm(-3.0 * rand_field, A)
        b = 3.0 * orlicz_luxemburg_norm(rand_field, A)
        assert a == pytest.approx(b, rel=1e-10)

    def test_zero_field(self, dom1):
        A = YoungFunction.power(2.0)
        assert orlicz_luxemburg_norm(SampledField(dom1, np.zeros(64)), A) == 0.0

    def test_exp_type_finite(self, rand_field):
        A = YoungFunction.exp_type()
        assert np.isfinite(orlicz_luxemburg_norm(rand_field, A))


class TestNabla2:
    def test_power_two(self):
        c = nabla2_constant(YoungFunction.power(2.0))
        assert c == pytest.approx(2.0, rel=5e-3)

    def test_linear_absent(self):
        assert nabla2_constant(YoungFunction.power(1.0)) is None

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
    def test_power_family_analytic(self, p):
        # A(r) <= A(Cr)/(2C) for A = t^p iff C^{p-1} >= 2
        c = nabla2_constant(YoungFunction.power(p))
        assert c == pytest.approx(2.0 ** (1.0 / (p - 1.0)), rel=5e-3)

    def test_scan_grid_validated(self):
        with pytest.raises(ValueError):
            nabla2_constant(YoungFunction.power(2.0), r_scan=np.geomspace(1e-3, 1e3, 1200))


class TestRescaledOrlicz:
    def test_sigma_one(self, rand_field):
        A = YoungFunction.two_power(2.0, 3.0)
        assert rescaled_orlicz_norm(rand_field, A, 1.0) == pytest.approx(
            orlicz_luxemburg_norm(rand_field, A), rel=1e-12
        )

    def test_power_composition(self, rand_field):
        A = YoungFunction.power(2.0)
        assert rescaled_orlicz_norm(rand_field, A, 2.0) == pytest.approx(
            lp_norm(rand_field, 4.0), rel=1e-9
        )

    def test_rescaling_identity(self, dom1):
        """|| |f|^sigma ||_{L^A} = (rescaled norm)^sigma."""
        A = YoungFunction.two_power(2.0, 3.0)
        sigma = 0.5  # sigma = 1 - theta with theta = 1/2
        worst = 0.0
        for f in random_fields(dom1, 20):
            powed = SampledField(dom1, np.abs(f.values) ** sigma)
            lhs = orlicz_luxemburg_norm(powed, A)
            rhs = rescaled_orlicz_norm(f, A, sigma) ** sigma
            worst = max(worst, abs(lhs - rhs) / rhs)
        assert worst < 1e-9

    def test_rejects_bad_sigma(self, rand_field):
        with pytest.raises(ValueError):
            rescaled_orlicz_norm(rand_field, YoungFunction.power(2.0), 0.0)


class TestSobolevAndMixed:
    def test_sobolev_constant_field_zero(self, dom1):
        f = SampledField(dom1, np.full(64, 4.0))
        assert sobolev_norm(f, 0.5, VariableExponent.constant(dom1, 2.0)) == 0.0

    def test_sobolev_single_mode(self):
        dom = DomainSpec(1, 2 * np.pi, 64)
        f = sample(dom, FourierMode(2))
        p = VariableExponent.constant(dom, 2.0)
        expected = 2.0**0.5 * np.sqrt(2 * np.pi)
        assert sobolev_norm(f, 0.5, p) == pytest.approx(expected, rel=1e-10)

    def test_mixed_reduces_when_equal(self, dom1, rand_field):
        spec = MixedSpaceSpec(VariableExponent.constant(dom1, 2.0), 2.0)
        assert mixed_lebesgue_norm(rand_field, spec) == pytest.approx(
            lp_norm(rand_field, 2.0), rel=1e-10
        )

    def test_mixed_zero_field(self, dom1):
        spec = MixedSpaceSpec(VariableExponent.constant(dom1, 2.0), 3.0)
        f = SampledField(dom1, np.zeros(64))
        assert mixed_lebesgue_norm(f, spec) == 0.0
        assert mixed_sobolev_norm(f, MixedSpaceSpec(spec.p_var, 3.0, 0.5)) == 0.0

    def test_mixed_dominates_components(self, dom1):
        p_var = sin_exponent(dom1)
        spec = MixedSpaceSpec(p_var, 3.0)
        for f in random_fields(dom1, 5):
            m = mixed_lebesgue_norm(f, spec)
            assert m >= luxemburg_norm(f, p_var) - 1e-12
            assert m >= lp_norm(f, 3.0) - 1e-12

    def test_mixed_spec_validation(self, dom1):
        with pytest.raises(ValueError):
            MixedSpaceSpec(VariableExponent.constant(dom1, 2.0), 1.0)
        with pytest.raises(ValueError):
            MixedSpaceSpec(VariableExponent.constant(dom1, 2.0), 2.0, -1.0)
