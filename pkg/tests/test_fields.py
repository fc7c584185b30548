import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracineq import (
    DomainSpec,
    FourierMode,
    Gaussian,
    RandomBandLimited,
    SampledField,
    SmoothBump,
    SumOf,
    coords,
    lp_norm,
    sample,
)
from fracineq.fields import dft, dilate, idft

from conftest import random_fields


class TestDomainSpec:
    def test_basic_properties(self):
        dom = DomainSpec(1, 16.0, 64)
        assert dom.h == 0.25
        assert dom.num_points == 64
        assert dom.cell_volume == 0.25
        assert dom.shape == (64,)
        assert dom.refined() == DomainSpec(1, 16.0, 128)

    def test_2d_cell_volume(self):
        dom = DomainSpec(2, 16.0, 32)
        assert dom.num_points == 1024
        assert dom.cell_volume == 0.25

    @pytest.mark.parametrize("bad", [(3, 16.0, 64), (1, -1.0, 64), (1, 16.0, 60), (1, 16.0, 4)])
    def test_rejects_bad_parameters(self, bad):
        with pytest.raises(ValueError):
            DomainSpec(*bad)

    def test_grid_points(self):
        dom = DomainSpec(1, 16.0, 64)
        (x,) = coords(dom)
        assert x[0] == -8.0
        assert np.allclose(np.diff(x), dom.h)
        assert x[-1] == 8.0 - dom.h


class TestSampledField:
    def test_values_read_only(self, dom1):
        f = sample(dom1, FourierMode(1))
        with pytest.raises(ValueError):
            f.values[0] = 0.0

    def test_shape_mismatch_rejected(self, dom1):
        with pytest.raises(ValueError):
            SampledField(dom1, np.zeros(32))

    def test_mean_zero_projection(self, dom1):
        f = SampledField(dom1, np.ones(64) + np.arange(64))
        g = f.project_mean_zero()
        assert abs(g.mean()) < 1e-12 * np.max(np.abs(g.values))
        assert g.mean_zero

    def test_arithmetic(self, dom1):
        f = sample(dom1, FourierMode(1))
        g = sample(dom1, FourierMode(2))
        assert np.allclose((f + g - g).values, f.values)
        assert np.allclose((2.0 * f).values, 2.0 * f.values)

    def test_grid_mismatch_rejected(self, dom1):
        f = sample(dom1, FourierMode(1))
        g = sample(dom1.refined(), FourierMode(1))
        with pytest.raises(ValueError):
            f + g


class TestGenerators:
    def test_fourier_mode_single_coefficient(self, dom1):
        # orthogonality: the DFT concentrates on index k (the grid origin at
        # -L/2 contributes a (-1)^k phase)
        coeffs = dft(sample(dom1, FourierMode(3)))
        expected = np.zeros(64)
        expected[3] = 64.0
        assert np.allclose(np.abs(coeffs), expected, atol=1e-10)
        assert coeffs[3] == pytest.approx(-64.0, rel=1e-12)

    def test_dft_of_zero_field(self, dom1):
        f = SampledField(dom1, np.zeros(64))
        assert np.all(dft(f) == 0)

    def test_mode_out_of_nyquist_rejected(self, dom1):
        with pytest.raises(ValueError):
            sample(dom1, FourierMode(40))

    def test_gaussian_peak_and_symmetry(self):
        dom = DomainSpec(1, 16.0, 256)
        f = sample(dom, Gaussian(sigma=0.5)).values.real
        amp = (4 * np.pi * 0.25) ** -0.5
        assert f.max() == pytest.approx(amp, rel=1e-12)
        (x,) = coords(dom)
        assert np.argmax(f) == np.argmin(np.abs(x))

    def test_gaussian_under_resolved_rejected(self, dom1):
        with pytest.raises(ValueError):
            sample(dom1, Gaussian(sigma=0.1))

    def test_bump_support(self, dom1):
        f = sample(dom1, SmoothBump(radius=2.0)).values.real
        (x,) = coords(dom1)
        assert np.all(f[np.abs(x) >= 2.0] == 0.0)
        assert f.max() == pytest.approx(1.0, rel=1e-12)
        with pytest.raises(ValueError):
            sample(dom1, SmoothBump(radius=10.0))

    def test_random_band_limited_grid_independent(self):
        """The same (seed, band) draw resamples the same function on any grid."""
        gen = RandomBandLimited(seed=11, max_band=6)
        coarse = sample(DomainSpec(1, 16.0, 64), gen).values
        fine = sample(DomainSpec(1, 16.0, 128), gen).values
        assert np.allclose(coarse, fine[::2], atol=1e-12)

    def test_random_band_limited_is_real(self, dom1):
        f = sample(dom1, RandomBandLimited(seed=5, max_band=8))
        assert np.max(np.abs(f.values.imag)) == 0.0

    def test_sum_generator(self, dom1):
        s = sample(dom1, SumOf((FourierMode(1), FourierMode(2))))
        direct = sample(dom1, FourierMode(1)) + sample(dom1, FourierMode(2))
        assert np.allclose(s.values, direct.values)


class TestDft:
    def test_roundtrip_random_band_limited(self, dom1):
        f = sample(dom1, RandomBandLimited(seed=3, max_band=8))
        back = idft(dft(f), dom1)
        assert np.max(np.abs(back.values - f.values)) < 1e-12

    def test_roundtrip_suite(self):
        dom = DomainSpec(1, 16.0, 128)
        for f in random_fields(dom, 100):
            back = idft(dft(f), dom)
            scale = np.max(np.abs(f.values))
            assert np.max(np.abs(back.values - f.values)) <= 1e-12 * scale

    def test_parseval(self, dom1, rand_field):
        lhs = lp_norm(rand_field, 2.0) ** 2
        rhs = dom1.cell_volume * np.sum(np.abs(dft(rand_field)) ** 2) / dom1.num_points
        assert abs(lhs - rhs) <= 1e-10 * lhs


class TestLpNorm:
    def test_constant_field_unit_cube(self):
        dom = DomainSpec(1, 1.0, 64)
        f = SampledField(dom, np.full(64, -3.0))
        for p in (1.0, 2.0, 4.5, np.inf):
            assert lp_norm(f, p) == pytest.approx(3.0, rel=1e-12)

    def test_fourier_mode_l2(self):
        dom = DomainSpec(1, 2 * np.pi, 64)
        assert lp_norm(sample(dom, FourierMode(3)), 2.0) == pytest.approx(
            np.sqrt(2 * np.pi), rel=1e-12
        )
        dom2 = DomainSpec(2, 2 * np.pi, 32)
        assert lp_norm(sample(dom2, FourierMode((1, 2))), 2.0) == pytest.approx(
            2 * np.pi, rel=1e-12
        )

    def test_gaussian_against_quadrature_oracle(self):
        from scipy.integrate import quad

        dom = DomainSpec(1, 16.0, 256)
        sigma = 0.5
        measured = lp_norm(sample(dom, Gaussian(sigma=sigma)), 2.0)
        amp = (4 * np.pi * sigma**2) ** -0.5
        oracle = np.sqrt(
            quad(lambda x: (amp * np.exp(-x * x / (4 * sigma**2))) ** 2, -8.0, 8.0)[0]
        )
        assert measured == pytest.approx(oracle, rel=1e-6)

    def test_rejects_p_below_one(self, rand_field):
        with pytest.raises(ValueError):
            lp_norm(rand_field, 0.5)

    def test_triangle_inequality(self, dom1):
        fields = random_fields(dom1, 10)
        for f, g in zip(fields[:-1], fields[1:]):
            for p in (1.0, 2.0, 3.0):
                assert lp_norm(f + g, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-10

    @given(c=st.floats(min_value=-10, max_value=10, allow_nan=False))
    @settings(max_examples=25, deadline=None)
    def test_homogeneity(self, c):
        dom = DomainSpec(1, 16.0, 32)
        f = sample(dom, RandomBandLimited(seed=1, max_band=4))
        assert lp_norm(c * f, 2.0) == pytest.approx(abs(c) * lp_norm(f, 2.0), abs=1e-12)

    def test_monotone_in_field(self, dom1, rng):
        a = rng.standard_normal(64)
        f = SampledField(dom1, a)
        g = SampledField(dom1, np.abs(a) + rng.random(64))
        for p in (1.5, 2.0, 4.0):
            assert lp_norm(f, p) <= lp_norm(g, p)


class TestDilate:
    def test_identity(self, rand_field):
        assert dilate(rand_field, 1) is rand_field

    def test_rejects_non_power_of_two(self, rand_field):
        with pytest.raises(ValueError):
            dilate(rand_field, 3)

    def test_composition_exact(self, rand_field):
        twice = dilate(dilate(rand_field, 2), 2)
        once = dilate(rand_field, 4)
        assert twice.domain == once.domain
        assert np.array_equal(twice.values, once.values)

    def test_l2_homogeneity(self):
        for dom in (DomainSpec(1, 16.0, 64), DomainSpec(2, 16.0, 32)):
            g = sample(dom, RandomBandLimited(seed=4, max_band=dom.N // 8))
            ratio = lp_norm(dilate(g, 2), 2.0) / lp_norm(g, 2.0)
            assert ratio == pytest.approx(2.0 ** (-dom.n / 2), rel=1e-10)

    def test_mode_frequency_doubles(self):
        dom = DomainSpec(1, 16.0, 64)
        d = dilate(sample(dom, FourierMode(3)), 2)
        # f(2x) oscillates at the original domain's mode-6 frequency
        (x,) = coords(d.domain)
        assert np.allclose(d.values, np.exp(1j * (2 * np.pi * 6 / dom.L) * x), atol=1e-12)
