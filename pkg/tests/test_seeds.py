import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdcquant.errors import InvalidConfigError
from pdcquant.seeds import (MomentSet, PdcParams, Seed, SeedFamily,
                            SeededPdcConfig, coherent_seed, input_variance,
                            output_means, output_moments, squeezed_seed,
                            thermal_seed, vacuum_seed)

intensities = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)
phases = st.floats(min_value=-7.0, max_value=7.0, allow_nan=False)
gains = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)


def _cfg(family, s_a, s_b, n, phase_a=0.0, phase_b=0.0, phi=0.0):
    make = {SeedFamily.THERMAL: thermal_seed, SeedFamily.COHERENT: coherent_seed,
            SeedFamily.SQUEEZED: squeezed_seed}[family]
    if family is SeedFamily.THERMAL:
        return SeededPdcConfig(make(s_a), make(s_b), PdcParams(n, phi))
    return SeededPdcConfig(make(s_a, phase=phase_a), make(s_b, phase=phase_b),
                           PdcParams(n, phi))


class TestSeedValidation:
    def test_negative_intensity_rejected(self):
        with pytest.raises(InvalidConfigError):
            thermal_seed(-0.1)

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidConfigError):
            coherent_seed(float("inf"))
        with pytest.raises(InvalidConfigError):
            squeezed_seed(float("nan"))

    def test_vacuum_cannot_carry_intensity(self):
        with pytest.raises(InvalidConfigError):
            Seed(SeedFamily.VACUUM, 0.5)

    def test_constructors(self):
        s = coherent_seed(0.7, phase=1.2)
        assert s.family is SeedFamily.COHERENT
        assert s.intensity == 0.7 and s.phase == 1.2
        assert vacuum_seed().intensity == 0.0

    def test_negative_gain_rejected(self):
        with pytest.raises(InvalidConfigError):
            PdcParams(-0.5)

    def test_coupling_magnitude_roundtrip(self):
        for n in (0.0, 0.3, 1.0, 4.0):
            k = PdcParams(n).coupling_magnitude
            assert math.sinh(k) ** 2 == pytest.approx(n, abs=1e-13)


class TestConfigValidation:
    def test_mixed_families_rejected(self):
        with pytest.raises(InvalidConfigError):
            SeededPdcConfig(thermal_seed(1.0), coherent_seed(1.0),
                            PdcParams(0.1))

    def test_vacuum_mixes_with_anything(self):
        for make in (thermal_seed, coherent_seed, squeezed_seed):
            cfg = SeededPdcConfig(vacuum_seed(), make(0.5), PdcParams(0.1))
            assert cfg.family is make(0.5).family

    def test_family_of_pure_vacuum(self):
        cfg = SeededPdcConfig(vacuum_seed(), vacuum_seed(), PdcParams(0.1))
        assert cfg.family is SeedFamily.VACUUM

    def test_relative_phase(self):
        cfg = _cfg(SeedFamily.SQUEEZED, 0.4, 0.2, 0.1,
                   phase_a=1.0, phase_b=0.5, phi=0.3)
        assert cfg.relative_phase == pytest.approx(0.75 - 0.3)


class TestInputVariance:
    """Photon-number variance of each seed family."""

    def test_values(self):
        assert input_variance(vacuum_seed()) == 0.0
        assert input_variance(thermal_seed(0.8)) == pytest.approx(0.8 * 1.8)
        assert input_variance(coherent_seed(1.3)) == pytest.approx(1.3)
        assert input_variance(squeezed_seed(0.5)) == pytest.approx(1.5)


class TestOutputMeans:
    def test_twin_beam(self):
        cfg = SeededPdcConfig(vacuum_seed(), vacuum_seed(), PdcParams(0.7))
        assert output_means(cfg) == pytest.approx((0.7, 0.7))

    def test_thermal(self):
        # mu_j + N(1 + mu_A + mu_B)
        cfg = _cfg(SeedFamily.THERMAL, 1.0, 1.0, 1.0)
        assert output_means(cfg) == pytest.approx((4.0, 4.0))
        cfg = _cfg(SeedFamily.THERMAL, 1.0, 0.5, 0.5)
        assert output_means(cfg) == pytest.approx((2.25, 1.75))

    def test_coherent_interference_peak_at_zero_phase(self):
        vals = {}
        for r in (0.0, 1.0, math.pi):
            cfg = _cfg(SeedFamily.COHERENT, 0.8, 0.4, 0.3, phase_a=r)
            vals[r] = output_means(cfg)[0]
        assert vals[0.0] > vals[1.0] > vals[math.pi]
        base = 0.8 + 0.3 * 2.2
        lobe = 2.0 * math.sqrt(0.3 * 1.3 * 0.8 * 0.4)
        assert vals[0.0] == pytest.approx(base + lobe)
        assert vals[math.pi] == pytest.approx(base - lobe)

    @given(s_a=intensities, s_b=intensities, n=gains, za=phases, zb=phases,
           phi=phases)
    def test_squeezed_means_phase_free(self, s_a, s_b, n, za, zb, phi):
        ref = output_means(_cfg(SeedFamily.SQUEEZED, s_a, s_b, n))
        got = output_means(_cfg(SeedFamily.SQUEEZED, s_a, s_b, n,
                                phase_a=za, phase_b=zb, phi=phi))
        assert got[0] == pytest.approx(ref[0], abs=1e-12)
        assert got[1] == pytest.approx(ref[1], abs=1e-12)

    @given(s_a=intensities, s_b=intensities, n=gains)
    def test_mean_difference_preserved(self, s_a, s_b, n):
        # the gain term is common mode: mean_a - mean_b = s_a - s_b
        m_a, m_b = output_means(_cfg(SeedFamily.THERMAL, s_a, s_b, n))
        assert m_a - m_b == pytest.approx(s_a - s_b, abs=1e-12)


class TestOutputMoments:
    def test_twin_beam_difference_variance_vanishes(self):
        for n in (0.1, 0.5, 2.0):
            cfg = SeededPdcConfig(vacuum_seed(), vacuum_seed(), PdcParams(n))
            assert output_moments(cfg).var_diff == 0.0

    @given(s_a=intensities, s_b=intensities, n=gains, pa=phases, pb=phases,
           phi=phases,
           family=st.sampled_from([SeedFamily.THERMAL, SeedFamily.COHERENT,
                                   SeedFamily.SQUEEZED]))
    @settings(max_examples=150)
    def test_difference_variance_is_sum_of_input_variances(
            self, family, s_a, s_b, n, pa, pb, phi):
        """The photon-number difference commutes with the pair coupling,
        so its variance is frozen at the input value."""
        cfg = _cfg(family, s_a, s_b, n, pa, pb, phi)
        want = input_variance(cfg.seed_a) + input_variance(cfg.seed_b)
        assert output_moments(cfg).var_diff == pytest.approx(want, abs=1e-12)

    @given(s_a=intensities, s_b=intensities, n=gains, pa=phases, pb=phases,
           phi=phases,
           family=st.sampled_from([SeedFamily.THERMAL, SeedFamily.COHERENT,
                                   SeedFamily.SQUEEZED]))
    @settings(max_examples=150)
    def test_internal_consistency(self, family, s_a, s_b, n, pa, pb, phi):
        # var_diff, cross and the factorial moments are linked by an
        # operator identity; both sides are computed independently here
        m = output_moments(_cfg(family, s_a, s_b, n, pa, pb, phi))
        scale = 1.0 + m.mean_sum ** 2
        assert abs(m.consistency_residual()) <= 1e-10 * scale

    def test_thermal_example_values(self):
        m = output_moments(_cfg(SeedFamily.THERMAL, 1.0, 1.0, 0.5))
        assert m.mean_a == pytest.approx(2.5)
        assert m.var_diff == pytest.approx(4.0)
        assert m.mean_sum == pytest.approx(5.0)

    def test_moment_set_mean_sum(self):
        m = MomentSet(1.0, 2.0, 0.0, 0.0, 0.0, 0.0)
        assert m.mean_sum == 3.0
