"""Seed states, process parameters and exact output photon statistics.

A nondegenerate parametric pair source couples two modes through
``exp(i(kappa a_A a_B + kappa* a_A^dag a_B^dag))`` with
``kappa = |kappa| e^{i phi}``.  In the interaction picture the output mode
operators are

    A_j = sqrt(N+1) a_j + e^{i phi} sqrt(N) a_{j'}^dag,      N = sinh^2|kappa|

where N is the gain expressed as the mean pair number generated from
vacuum.  Each input arm may be seeded by a thermal, coherent or
squeezed-vacuum state (or left in vacuum).  All seeds are Gaussian, so
every photon-counting moment of the output follows exactly from the
complex second moments of the inputs; no truncation is involved anywhere
in this module.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import InvalidConfigError


class SeedFamily(enum.Enum):
    VACUUM = "vacuum"
    THERMAL = "thermal"
    COHERENT = "coherent"
    SQUEEZED = "squeezed"


@dataclass(frozen=True)
class Seed:
    """A single-mode Gaussian seed.

    ``intensity`` is the mean photon number of the seed (mu for thermal,
    M = |alpha|^2 for coherent, N_s = sinh^2 of the squeeze parameter for
    squeezed vacuum).  ``phase`` is the coherent amplitude phase gamma for
    coherent seeds and the squeezing orientation zeta for squeezed seeds;
    it is ignored for thermal and vacuum seeds.
    """

    family: SeedFamily
    intensity: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.intensity) and self.intensity >= 0.0):
            raise InvalidConfigError(
                f"seed intensity must be finite and >= 0, got {self.intensity!r}")
        if not math.isfinite(self.phase):
            raise InvalidConfigError(f"seed phase must be finite, got {self.phase!r}")
        if self.family is SeedFamily.VACUUM and self.intensity != 0.0:
            raise InvalidConfigError("vacuum seed cannot carry intensity")


def vacuum_seed() -> Seed:
    return Seed(SeedFamily.VACUUM)


def thermal_seed(mean_photons: float) -> Seed:
    return Seed(SeedFamily.THERMAL, mean_photons)


def coherent_seed(mean_photons: float, phase: float = 0.0) -> Seed:
    return Seed(SeedFamily.COHERENT, mean_photons, phase)


def squeezed_seed(mean_photons: float, phase: float = 0.0) -> Seed:
    return Seed(SeedFamily.SQUEEZED, mean_photons, phase)


@dataclass(frozen=True)
class PdcParams:
    """Pair-source parameters: gain ``n_gain`` (= sinh^2 of the coupling
    magnitude, i.e. mean pairs from vacuum) and coupling phase ``phi``."""

    n_gain: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.n_gain) and self.n_gain >= 0.0):
            raise InvalidConfigError(
                f"n_gain must be finite and >= 0, got {self.n_gain!r}")
        if not math.isfinite(self.phi):
            raise InvalidConfigError(f"phi must be finite, got {self.phi!r}")

    @property
    def coupling_magnitude(self) -> float:
        """|kappa| such that sinh^2|kappa| = n_gain."""
        return math.asinh(math.sqrt(self.n_gain))


# Vacuum is operationally Thermal(0)/Coherent(0)/Squeezed(0); it pairs with
# any family.  Non-vacuum families must match between the two arms.
_MIXABLE = SeedFamily.VACUUM


@dataclass(frozen=True)
class SeededPdcConfig:
    seed_a: Seed
    seed_b: Seed
    pdc: PdcParams

    def __post_init__(self):
        fa, fb = self.seed_a.family, self.seed_b.family
        if fa is not _MIXABLE and fb is not _MIXABLE and fa is not fb:
            raise InvalidConfigError(
                f"seed families must match, got {fa.value} and {fb.value}")

    @property
    def family(self) -> SeedFamily:
        """The non-vacuum family of the pair (VACUUM if both arms are vacuum)."""
        if self.seed_a.family is not _MIXABLE:
            return self.seed_a.family
        return self.seed_b.family

    @property
    def relative_phase(self) -> float:
        """Pump-referenced seed phase (zeta_A + zeta_B)/2 - phi.

        For squeezed seeding this is the only phase combination the
        output state depends on (up to local frame choices)."""
        return (self.seed_a.phase + self.seed_b.phase) / 2.0 - self.pdc.phi


@dataclass(frozen=True)
class MomentSet:
    """Photon-counting moments of the two output beams.

    mean_a, mean_b : first moments <n_A>, <n_B>
    var_diff       : variance of the photon-number difference n_A - n_B
    cross          : <n_A n_B>
    fac2_a, fac2_b : second factorial moments <n(n-1)>

    The six entries are algebraically linked:
    var_diff = fac2_a + fac2_b - 2*cross + mean_a + mean_b
               - (mean_a - mean_b)^2.
    """

    mean_a: float
    mean_b: float
    var_diff: float
    cross: float
    fac2_a: float
    fac2_b: float

    @property
    def mean_sum(self) -> float:
        return self.mean_a + self.mean_b

    def consistency_residual(self) -> float:
        """Residual of the linking identity (zero up to rounding)."""
        recon = (self.fac2_a + self.fac2_b - 2.0 * self.cross
                 + self.mean_a + self.mean_b
                 - (self.mean_a - self.mean_b) ** 2)
        return self.var_diff - recon


def input_variance(seed: Seed) -> float:
    """Photon-number variance of a seed state.

    Thermal mu(1+mu); coherent M (Poisson); squeezed vacuum 2 N_s (N_s + 1);
    vacuum 0.  The output difference variance is exactly the sum of the two
    input variances because n_A - n_B commutes with the pair interaction.
    """
    s = seed.intensity
    if seed.family is SeedFamily.THERMAL:
        return s * (1.0 + s)
    if seed.family is SeedFamily.COHERENT:
        return s
    if seed.family is SeedFamily.SQUEEZED:
        return 2.0 * s * (1.0 + s)
    return 0.0


# --- complex-Gaussian mode description -----------------------------------
#
# Each Gaussian single-mode state is summarized by (alpha, nbar, m):
#   alpha = <a>, nbar = <da^dag da>, m = <da^2>   (da = a - alpha).
# The pair transform maps these exactly; photon moments then follow from
# Wick pairings of the centered operators.

def _seed_complex_moments(seed: Seed) -> tuple[complex, float, complex]:
    s = seed.intensity
    if seed.family is SeedFamily.THERMAL:
        return 0.0 + 0.0j, s, 0.0 + 0.0j
    if seed.family is SeedFamily.COHERENT:
        return math.sqrt(s) * cmath.exp(1j * seed.phase), 0.0, 0.0 + 0.0j
    if seed.family is SeedFamily.SQUEEZED:
        q = math.sqrt(s * (1.0 + s))
        return 0.0 + 0.0j, s, q * cmath.exp(1j * seed.phase)
    return 0.0 + 0.0j, 0.0, 0.0 + 0.0j


def _output_complex_moments(cfg: SeededPdcConfig):
    """Exact complex moments of the two output modes.

    Returns (alpha_a, alpha_b, nbar_a, nbar_b, m_a, m_b, n_c, m_c) where
    n_c = <dA^dag dB> and m_c = <dA dB>.
    """
    al_a, nb_a, m_a = _seed_complex_moments(cfg.seed_a)
    al_b, nb_b, m_b = _seed_complex_moments(cfg.seed_b)
    n = cfg.pdc.n_gain
    c = math.sqrt(n + 1.0)
    s = math.sqrt(n)
    u = cmath.exp(1j * cfg.pdc.phi)

    alpha_a = c * al_a + s * u * al_b.conjugate()
    alpha_b = c * al_b + s * u * al_a.conjugate()
    nbar_a = c * c * nb_a + s * s * (nb_b + 1.0)
    nbar_b = c * c * nb_b + s * s * (nb_a + 1.0)
    mm_a = c * c * m_a + s * s * u * u * m_b.conjugate()
    mm_b = c * c * m_b + s * s * u * u * m_a.conjugate()
    n_c = c * s * (u * m_a.conjugate() + u.conjugate() * m_b)
    m_c = c * s * u * (nb_a + nb_b + 1.0)
    return alpha_a, alpha_b, nbar_a, nbar_b, mm_a, mm_b, n_c, m_c


def output_means(cfg: SeededPdcConfig) -> tuple[float, float]:
    """Mean output photon numbers <n_A>, <n_B>.

    Thermal seeds:   mu_j + N (1 + mu_A + mu_B)
    Coherent seeds:  M_j + N (1 + M_A + M_B)
                       + 2 sqrt(N(N+1) M_A M_B) cos(gamma_A + gamma_B - phi)
                     (the interference term is common to both beams)
    Squeezed seeds:  N_j + N (1 + N_A + N_B), independent of the phases.
    """
    alpha_a, alpha_b, nbar_a, nbar_b, *_ = _output_complex_moments(cfg)
    return (abs(alpha_a) ** 2 + nbar_a, abs(alpha_b) ** 2 + nbar_b)


def _fac2(alpha: complex, nbar: float, m: complex) -> float:
    a2 = abs(alpha) ** 2
    return (a2 * a2 + 4.0 * a2 * nbar
            + 2.0 * (alpha.conjugate() ** 2 * m).real
            + 2.0 * nbar * nbar + abs(m) ** 2)


def output_moments(cfg: SeededPdcConfig) -> MomentSet:
    """Exact output moment set for a seeded pair source.

    var_diff is taken from the conservation law (sum of the input
    photon-number variances); cross and the factorial moments come from
    Wick pairings of the output Gaussian moments, and the two routes agree
    identically.
    """
    (alpha_a, alpha_b, nbar_a, nbar_b,
     m_a, m_b, n_c, m_c) = _output_complex_moments(cfg)

    ia, ib = abs(alpha_a) ** 2, abs(alpha_b) ** 2
    mean_a = ia + nbar_a
    mean_b = ib + nbar_b
    cross = (ia * ib + ia * nbar_b + ib * nbar_a
             + 2.0 * (alpha_a * alpha_b * m_c.conjugate()).real
             + 2.0 * (alpha_a * alpha_b.conjugate() * n_c).real
             + nbar_a * nbar_b + abs(m_c) ** 2 + abs(n_c) ** 2)
    var_diff = input_variance(cfg.seed_a) + input_variance(cfg.seed_b)
    return MomentSet(
        mean_a=mean_a,
        mean_b=mean_b,
        var_diff=var_diff,
        cross=cross,
        fac2_a=_fac2(alpha_a, nbar_a, m_a),
        fac2_b=_fac2(alpha_b, nbar_b, m_b),
    )
