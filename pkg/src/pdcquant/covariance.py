"""Quadrature covariance matrices of the output state and the Gaussian
partial-transposition entanglement test.

Ordering is (X_A, Y_A, X_B, Y_B) with X = (a + a^dag)/sqrt(2),
Y = (a - a^dag)/(i sqrt(2)), so the vacuum covariance is I/2 and the
commutation matrix is Omega below.  A physical covariance matrix satisfies
V + (i/2) Omega >= 0, equivalently all symplectic eigenvalues >= 1/2.

Entanglement of the two output beams is decided by partially transposing
mode B (Y_B sign flip), recomputing symplectic eigenvalues and comparing
the smallest one against 1/2.

Covariance matrices returned by :func:`build_covariance` are expressed in
a canonical local-phase gauge: each seed's squeezing axis is rotated onto
its X quadrature and the residual, physically meaningful phase
combination Dphi = zeta_A/2 + zeta_B/2 - phi appears in the pair
coupling.  Local rotations leave every entanglement quantity unchanged.
"""

from __future__ import annotations

import math

import numpy as np

from .seeds import Seed, SeedFamily, SeededPdcConfig

OMEGA = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])

# partial transposition of mode B flips the sign of Y_B
_PT = np.diag([1.0, 1.0, 1.0, -1.0])


def pair_symplectic(n_gain: float, phase: float) -> np.ndarray:
    """Symplectic matrix of the two-mode pair transform
    A_j = sqrt(N+1) a_j + e^{i phase} sqrt(N) a_{j'}^dag."""
    c = math.sqrt(n_gain + 1.0)
    s = math.sqrt(n_gain)
    cp, sp = math.cos(phase), math.sin(phase)
    r = np.array([[cp, sp], [sp, -cp]])
    out = np.zeros((4, 4))
    out[:2, :2] = c * np.eye(2)
    out[2:, 2:] = c * np.eye(2)
    out[:2, 2:] = s * r
    out[2:, :2] = s * r
    return out


def _seed_block(seed: Seed) -> np.ndarray:
    """Single-mode covariance of a seed in the canonical gauge (squeezing
    axis along X)."""
    s = seed.intensity
    if seed.family is SeedFamily.THERMAL:
        return (s + 0.5) * np.eye(2)
    if seed.family is SeedFamily.SQUEEZED:
        q = math.sqrt(s * (1.0 + s))
        return np.diag([0.5 + s + q, 0.5 + s - q])
    # coherent displacement does not touch the covariance
    return 0.5 * np.eye(2)


def build_covariance(cfg: SeededPdcConfig) -> np.ndarray:
    """4x4 output covariance matrix in the canonical gauge.

    For thermal (and coherent, and vacuum) seeds the phases drop out and
    the matrix takes the block form diag-blocks A*I, B*I with coupling
    block diag(C, -C):

        A = 1/2 + mu_A + N(1 + mu_A + mu_B)
        B = 1/2 + mu_B + N(1 + mu_A + mu_B)
        C = sqrt(N(N+1)) (1 + mu_A + mu_B)      (coherent: mu = 0)

    For squeezed seeds the coupling carries
    Dphi = zeta_A/2 + zeta_B/2 - phi and both XY sectors mix.
    """
    if cfg.family is SeedFamily.SQUEEZED:
        dphi = cfg.relative_phase
    else:
        dphi = 0.0
    s_mat = pair_symplectic(cfg.pdc.n_gain, dphi)
    v_in = np.zeros((4, 4))
    v_in[:2, :2] = _seed_block(cfg.seed_a)
    v_in[2:, 2:] = _seed_block(cfg.seed_b)
    return s_mat @ v_in @ s_mat.T


def partial_transpose_cov(v: np.ndarray) -> np.ndarray:
    """Covariance of the partially transposed state (Y_B sign flip)."""
    return _PT @ v @ _PT


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """The two symplectic eigenvalues of a 4x4 covariance matrix, ascending.

    They are the absolute values of the eigenvalues of i Omega V, each of
    which occurs twice.
    """
    ev = np.linalg.eigvals(OMEGA @ np.asarray(v, dtype=float))
    mags = np.sort(np.abs(ev))
    # eigenvalues come in +-i d pairs; collapse the duplicates
    return np.array([0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])])


def smallest_symplectic_eigenvalue(v: np.ndarray) -> float:
    return float(symplectic_eigenvalues(v)[0])


def thermal_form_d_minus(a: float, b: float, c: float) -> float:
    """Closed-form smallest symplectic eigenvalue after partial
    transposition for matrices of the thermal block form
    (diag blocks a*I, b*I; coupling diag(c, c))."""
    delta = a * a + b * b + 2.0 * c * c
    root = math.sqrt((a + b) ** 2 * ((a - b) ** 2 + 4.0 * c * c))
    return math.sqrt(max(delta - root, 0.0) / 2.0)


def min_physicality_eigenvalue(v: np.ndarray) -> float:
    """Smallest eigenvalue of V + (i/2) Omega; >= 0 (up to rounding) for a
    physical covariance matrix."""
    h = np.asarray(v, dtype=complex) + 0.5j * OMEGA
    return float(np.linalg.eigvalsh(h)[0])


def is_entangled_gaussian(cfg: SeededPdcConfig) -> tuple[bool, float]:
    """Partial-transposition test on the output covariance.

    Returns (entangled, d_minus) where d_minus is the smallest symplectic
    eigenvalue of the partially transposed covariance; d_minus < 1/2
    certifies entanglement, and for these Gaussian states the test is
    exhaustive.
    """
    v = build_covariance(cfg)
    d_minus = smallest_symplectic_eigenvalue(partial_transpose_cov(v))
    return d_minus < 0.5, d_minus


def separability_margin_thermal(cfg: SeededPdcConfig) -> float:
    """Sign-definite closed-form margin for thermal seeds:
    mu_A mu_B - N(1 + mu_A + mu_B), >= 0 exactly on the separable side."""
    if cfg.family not in (SeedFamily.THERMAL, SeedFamily.VACUUM):
        raise ValueError("separability margin closed form is thermal-only")
    mu_a, mu_b = cfg.seed_a.intensity, cfg.seed_b.intensity
    return mu_a * mu_b - cfg.pdc.n_gain * (1.0 + mu_a + mu_b)
