import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdcquant.errors import (QuantifierNotApplicableError,
                             UndefinedQuantifierError)
from pdcquant.quantifiers import (classify, ent_threshold, lee_threshold,
                                  lee_threshold_bisection, p_ent, p_lee,
                                  p_ssn, ssn_threshold, thresholds)
from pdcquant.seeds import (MomentSet, PdcParams, SeedFamily, SeededPdcConfig,
                            coherent_seed, output_moments, squeezed_seed,
                            thermal_seed, vacuum_seed)

intensities = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)
gains = st.floats(min_value=1e-6, max_value=2.0, allow_nan=False)
phases = st.floats(min_value=-7.0, max_value=7.0, allow_nan=False)


def _thermal(mu_a, mu_b, n):
    return SeededPdcConfig(thermal_seed(mu_a), thermal_seed(mu_b),
                           PdcParams(n))


class TestQuantifierValues:
    def test_hand_built_moment_set(self):
        # S = 5, var = 4, |mean gap| = 0 -> p_ssn = p_lee = p_ent = 0.2
        m = MomentSet(2.5, 2.5, 4.0, 0.0, 0.0, 0.0)
        assert p_ssn(m) == pytest.approx(0.2)
        assert p_lee(m) == pytest.approx(0.2)
        assert p_ent(m, SeedFamily.THERMAL) == pytest.approx(0.2)

    def test_mean_gap_splits_lee_and_ent(self):
        m = MomentSet(3.0, 1.0, 2.0, 0.0, 0.0, 0.0)
        assert p_ssn(m) == pytest.approx(0.5)
        assert p_lee(m) == pytest.approx(1.0 - 6.0 / 4.0)
        assert p_ent(m, SeedFamily.THERMAL) == pytest.approx(1.0 + 2.0 / 4.0)

    def test_undefined_at_zero_mean_sum(self):
        m = MomentSet(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        for fn in (p_ssn, p_lee):
            with pytest.raises(UndefinedQuantifierError):
                fn(m)
        with pytest.raises(UndefinedQuantifierError):
            p_ent(m, SeedFamily.VACUUM)

    def test_ent_only_for_thermal_like_states(self):
        m = MomentSet(1.0, 1.0, 0.5, 0.0, 0.0, 0.0)
        for family in (SeedFamily.COHERENT, SeedFamily.SQUEEZED):
            with pytest.raises(QuantifierNotApplicableError):
                p_ent(m, family)
        assert p_ent(m, SeedFamily.VACUUM) is not None

    def test_twin_beam_maximal(self):
        cfg = SeededPdcConfig(vacuum_seed(), vacuum_seed(), PdcParams(0.8))
        m = output_moments(cfg)
        assert p_ssn(m) == 1.0
        assert p_lee(m) == 1.0
        assert p_ent(m, SeedFamily.VACUUM) == 1.0

    @given(mu_a=intensities, mu_b=intensities, n=gains)
    @settings(max_examples=120)
    def test_thermal_identity(self, mu_a, mu_b, n):
        # 2 p_ssn = p_lee + p_ent for thermal seeding
        m = output_moments(_thermal(mu_a, mu_b, n))
        if m.mean_sum == 0.0:
            return
        lhs = 2.0 * p_ssn(m)
        rhs = p_lee(m) + p_ent(m, SeedFamily.THERMAL)
        assert lhs == pytest.approx(rhs, abs=1e-10 * (1.0 + abs(lhs)))

    @given(s_a=intensities, s_b=intensities, n=gains, pa=phases, phi=phases,
           family=st.sampled_from([SeedFamily.THERMAL, SeedFamily.COHERENT,
                                   SeedFamily.SQUEEZED]))
    @settings(max_examples=150)
    def test_lee_never_exceeds_ssn(self, family, s_a, s_b, n, pa, phi):
        make = {SeedFamily.THERMAL: thermal_seed,
                SeedFamily.COHERENT: coherent_seed,
                SeedFamily.SQUEEZED: squeezed_seed}[family]
        seed_a = make(s_a) if family is SeedFamily.THERMAL else make(s_a, phase=pa)
        cfg = SeededPdcConfig(seed_a, make(s_b), PdcParams(n, phi))
        m = output_moments(cfg)
        if m.mean_sum == 0.0:
            return
        assert p_lee(m) <= p_ssn(m) + 1e-12


class TestThresholds:
    def test_thermal_ssn(self):
        # (mu_a^2 + mu_b^2) / (2 (1 + mu_a + mu_b))
        t = ssn_threshold(thermal_seed(1.0), thermal_seed(0.5))
        assert t.value == pytest.approx(1.25 / 5.0)
        assert not t.always

    def test_thermal_lee_and_ent(self):
        mu_a, mu_b = 1.0, 0.5
        t_lee = lee_threshold(thermal_seed(mu_a), thermal_seed(mu_b))
        want = (mu_a ** 2 + mu_b ** 2 - mu_a * mu_b) / 2.5
        assert t_lee.value == pytest.approx(want)
        t_ent = ent_threshold(thermal_seed(mu_a), thermal_seed(mu_b))
        assert t_ent.value == pytest.approx(0.5 / 2.5)

    def test_vacuum_thresholds_always(self):
        rep = thresholds(vacuum_seed(), vacuum_seed())
        assert rep.n_ssn.always and rep.n_lee.always and rep.n_ent.always
        assert rep.n_ssn.value == 0.0

    def test_squeezed_ssn(self):
        n_a, n_b = 0.8, 0.2
        t = ssn_threshold(squeezed_seed(n_a), squeezed_seed(n_b))
        want = (n_a * (1 + 2 * n_a) + n_b * (1 + 2 * n_b)) / (2 * 2.0)
        assert t.value == pytest.approx(want, abs=1e-14)

    def test_squeezed_lee(self):
        n_a, n_b = 0.8, 0.2
        t = lee_threshold(squeezed_seed(n_a), squeezed_seed(n_b))
        want = (n_a + n_b + 3 * n_a ** 2 + 3 * n_b ** 2 - 2 * n_a * n_b) / 4.0
        assert t.value == pytest.approx(want, abs=1e-14)

    def test_coherent_ssn_aligned_always(self):
        # cos r >= 0: sub-shot-noise for every positive gain
        t = ssn_threshold(coherent_seed(0.8), coherent_seed(0.4))
        assert t.always and t.value == 0.0

    def test_coherent_ssn_opposed(self):
        g, b = 0.8 * 0.4, 1.0 + 0.8 + 0.4
        t = ssn_threshold(coherent_seed(0.8, phase=math.pi),
                          coherent_seed(0.4))
        assert t.value == pytest.approx(4 * g / (b * b - 4 * g))
        assert not t.always

    def test_ent_threshold_non_thermal_always(self):
        for make in (coherent_seed, squeezed_seed):
            t = ent_threshold(make(0.7), make(0.2))
            assert t.always and t.value == 0.0

    @pytest.mark.parametrize("seeds", [
        (thermal_seed(1.0), thermal_seed(0.5)),
        (thermal_seed(0.3), thermal_seed(0.0)),
        (squeezed_seed(0.8), squeezed_seed(0.2)),
        (coherent_seed(0.8, phase=math.pi), coherent_seed(0.4)),
        (coherent_seed(0.6, phase=2.0), coherent_seed(0.6)),
    ])
    def test_quantifier_changes_sign_at_threshold(self, seeds):
        seed_a, seed_b = seeds
        for kind, fn in (("ssn", ssn_threshold), ("lee", lee_threshold)):
            t = fn(seed_a, seed_b)
            if t.always:
                continue
            quant = p_ssn if kind == "ssn" else p_lee
            eps = 1e-6 * (1.0 + t.value)
            below = quant(output_moments(SeededPdcConfig(
                seed_a, seed_b, PdcParams(t.value - eps,
                                          phi=0.0))))
            above = quant(output_moments(SeededPdcConfig(
                seed_a, seed_b, PdcParams(t.value + eps, phi=0.0))))
            assert below < 0.0 < above

    @given(m_a=st.floats(min_value=0.05, max_value=2.0),
           m_b=st.floats(min_value=0.05, max_value=2.0),
           r=st.floats(min_value=0.0, max_value=2.0 * math.pi))
    @settings(max_examples=60, deadline=None)
    def test_coherent_lee_matches_bisection(self, m_a, m_b, r):
        seed_a = coherent_seed(m_a, phase=r)
        seed_b = coherent_seed(m_b)
        closed = lee_threshold(seed_a, seed_b)
        ref = lee_threshold_bisection(seed_a, seed_b)
        assert closed.value == pytest.approx(ref, abs=1e-8)

    def test_threshold_report_thermal(self):
        rep = thresholds(thermal_seed(1.0), thermal_seed(1.0))
        assert rep.n_ssn.value == pytest.approx(1.0 / 3.0)
        assert rep.n_lee.value == pytest.approx(1.0 / 3.0)
        assert rep.n_ent.value == pytest.approx(1.0 / 3.0)


class TestClassify:
    def test_known_lee_point(self):
        rep = classify(_thermal(1.0, 1.0, 0.5))
        assert rep.p_ssn == pytest.approx(0.2)
        assert rep.p_lee == pytest.approx(0.2)
        assert rep.p_ent == pytest.approx(0.2)
        assert rep.is_ssn and rep.is_lee_nonclassical and rep.is_entangled

    def test_known_classical_point(self):
        rep = classify(_thermal(1.0, 1.0, 0.2))
        assert rep.p_ssn == pytest.approx(-0.25)
        assert not rep.is_ssn and not rep.is_lee_nonclassical
        assert not rep.is_entangled and rep.d_minus > 0.5

    def test_classify_squeezed_has_no_p_ent(self):
        cfg = SeededPdcConfig(squeezed_seed(0.5), squeezed_seed(0.5),
                              PdcParams(0.3))
        rep = classify(cfg)
        assert rep.p_ent is None
        assert rep.is_entangled  # any positive gain entangles pure seeds

    def test_classify_raises_on_dark_output(self):
        cfg = SeededPdcConfig(vacuum_seed(), vacuum_seed(), PdcParams(0.0))
        with pytest.raises(UndefinedQuantifierError):
            classify(cfg)

    @given(n=gains)
    def test_flags_are_strict(self, n):
        rep = classify(_thermal(0.0, 0.0, n))  # twin beam limit
        assert rep.is_ssn and rep.is_lee_nonclassical and rep.is_entangled
