"""Truncated Fock-space oracle.

Everything in this module is built directly from ladder matrices and
operator exponentials, with no input from the closed-form expressions in
:mod:`pdcquant.seeds` — it exists to check them.  States are represented
as weighted ensembles of pure two-mode vectors (thermal seeds decompose
over the Fock basis, coherent/squeezed seeds are a single vector).  The
pair generator conserves the photon-number difference n_A - n_B, so the
evolution is applied sector by sector with small dense exponentials even
at large truncation dimension.  The dense density matrix is materialized
only when partial transposition requires it.

Operator conventions are taken literally:

  displacement   D(alpha) = exp(i(alpha a + alpha* a^dag))
  squeezing      S(xi)    = exp(i(xi a^2 + xi* a^dag^2))
  pair coupling  U        = exp(i(kappa a_A a_B + kappa* a_A^dag a_B^dag))

The squeezing exponent lacks the conventional 1/2, so the magnitude |xi|
is chosen such that the built state carries the requested mean photon
number (sinh^2(2|xi|) = N_s).  The phase conventions these exponentials
imply differ from the ones the closed forms use by constant offsets; the
mapping is handled in :mod:`pdcquant.verify`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import TruncationInadequateError
from .seeds import MomentSet, PdcParams, Seed, SeedFamily

_DEFAULT_DIM = 25


@dataclass(frozen=True)
class OracleConfig:
    """Truncation and accuracy knobs.

    dim        : Fock levels kept per mode
    tail_bound : maximum tolerated population in the top two levels of
                 either mode; beyond it results are refused
    exp_tol    : unitarity/norm residual bound for operator exponentials
    weight_cutoff : ensemble components below this weight are dropped
    """

    dim: int = _DEFAULT_DIM
    tail_bound: float = 1e-8
    exp_tol: float = 1e-10
    weight_cutoff: float = 1e-18

    def __post_init__(self):
        if self.dim < 3:
            raise ValueError("need at least 3 Fock levels")


def build_mode_operators(dim: int):
    """Single-mode ladder matrices (a, a_dag, n) at truncation ``dim``.

    a has sqrt(n) on the first superdiagonal; [a, a^dag] equals the
    identity except for the last diagonal entry, which is 1 - dim.
    """
    root = np.sqrt(np.arange(1, dim))
    a = np.diag(root, 1).astype(complex)
    return a, a.conj().T, np.diag(np.arange(dim, dtype=float)).astype(complex)


def _unitary_from_hermitian(h: np.ndarray) -> np.ndarray:
    """exp(iH) for Hermitian H via eigendecomposition (exactly unitary up
    to rounding)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _seed_components(seed: Seed, dim: int, config: OracleConfig):
    """Pure-state decomposition (weights, column vectors, number_diagonal)
    of a single-mode seed at truncation ``dim``."""
    s = seed.intensity
    if seed.family in (SeedFamily.VACUUM, SeedFamily.THERMAL):
        if s == 0.0:
            w = np.zeros(dim)
            w[0] = 1.0
        else:
            n = np.arange(dim)
            w = np.exp(n * math.log(s) - (n + 1) * math.log(1.0 + s))
            w = w / w.sum()  # renormalized over the truncation
        keep = np.flatnonzero(w > config.weight_cutoff)
        vecs = np.zeros((dim, keep.size), dtype=complex)
        vecs[keep, np.arange(keep.size)] = 1.0
        return w[keep], vecs, True

    a, adag, _ = build_mode_operators(dim)
    if seed.family is SeedFamily.COHERENT:
        alpha = math.sqrt(s) * cmath.exp(1j * seed.phase)
        h = alpha * a + alpha.conjugate() * adag
    else:  # squeezed vacuum; exponent has no 1/2, so halve the magnitude
        mag = math.asinh(math.sqrt(s)) / 2.0
        xi = mag * cmath.exp(1j * seed.phase)
        h = xi * (a @ a) + xi.conjugate() * (adag @ adag)
    u = _unitary_from_hermitian(h)
    residual = np.abs(u.conj().T @ u - np.eye(dim)).max()
    if residual > config.exp_tol:
        raise ArithmeticError(f"seed exponential residual {residual:.2e}")
    psi = u[:, 0].copy()  # U |0>
    return np.array([1.0]), psi.reshape(dim, 1), False


def _check_mode_tail(populations: np.ndarray, bound: float, dim: int,
                     what: str):
    tail = float(populations[-2:].sum())
    if tail > bound:
        raise TruncationInadequateError(
            f"{what}: top-two-level population {tail:.3e} exceeds "
            f"bound {bound:.1e} at dim {dim}", tail_mass=tail, dim=dim)


def build_seed_state(seed: Seed, dim: int,
                     config: OracleConfig | None = None) -> np.ndarray:
    """Single-mode density matrix of a seed, truncated to ``dim`` levels.

    Raises TruncationInadequateError if the top two Fock levels hold more
    than the configured tail bound.
    """
    config = config or OracleConfig(dim=dim)
    w, vecs, diagonal = _seed_components(seed, dim, config)
    if diagonal:
        rho = np.zeros((dim, dim), dtype=complex)
        idx = np.argmax(np.abs(vecs), axis=0)
        rho[idx, idx] = w
    else:
        rho = (vecs * w) @ vecs.conj().T
    _check_mode_tail(np.real(np.diag(rho)), config.tail_bound, dim,
                     f"{seed.family.value} seed")
    return rho


def mode_mean_and_variance(rho: np.ndarray) -> tuple[float, float]:
    """Photon-number mean and variance of a single-mode density matrix."""
    p = np.real(np.diag(rho))
    n = np.arange(rho.shape[0])
    mean = float(p @ n)
    return mean, float(p @ (n * n)) - mean * mean


class TwoModeFockState:
    """Weighted ensemble of pure two-mode vectors on a dim^2 Fock grid.

    ``vectors`` has one unit-norm column per ensemble component (index
    convention: entry i_A * dim + i_B).  ``component_diffs`` carries the
    conserved photon-number difference of each component when the input
    was number-diagonal, enabling a block-diagonal partial transpose.
    """

    def __init__(self, vectors: np.ndarray, weights: np.ndarray, dim: int,
                 component_diffs: np.ndarray | None = None):
        self.vectors = vectors
        self.weights = weights
        self.dim = dim
        self.component_diffs = component_diffs

    @property
    def probabilities(self) -> np.ndarray:
        """Diagonal of the density matrix, shape (dim*dim,)."""
        return (np.abs(self.vectors) ** 2) @ self.weights

    def mode_populations(self) -> tuple[np.ndarray, np.ndarray]:
        p = self.probabilities.reshape(self.dim, self.dim)
        return p.sum(axis=1), p.sum(axis=0)

    @property
    def tail_mass(self) -> float:
        """Total population of the top two Fock levels of either mode."""
        pa, pb = self.mode_populations()
        return float(pa[-2:].sum() + pb[-2:].sum())

    @property
    def rho(self) -> np.ndarray:
        """Dense density matrix (dim^2 x dim^2); materialized on demand."""
        return (self.vectors * self.weights) @ self.vectors.conj().T

    @property
    def trace(self) -> float:
        return float(self.weights.sum())


def build_input_state(seed_a: Seed, seed_b: Seed, dim: int,
                      config: OracleConfig | None = None) -> TwoModeFockState:
    """Product input state of the two seeded arms as a pure-state ensemble."""
    config = config or OracleConfig(dim=dim)
    wa, va, diag_a = _seed_components(seed_a, dim, config)
    wb, vb, diag_b = _seed_components(seed_b, dim, config)
    for w, v, seed in ((wa, va, seed_a), (wb, vb, seed_b)):
        pops = (np.abs(v) ** 2) @ w
        _check_mode_tail(pops, config.tail_bound, dim,
                         f"{seed.family.value} seed")
    weights = np.outer(wa, wb).ravel()
    keep = weights > config.weight_cutoff
    # vectors of the product ensemble: kron of every kept column pair
    ka, kb = va.shape[1], vb.shape[1]
    pair_a, pair_b = np.divmod(np.flatnonzero(keep), kb)
    vecs = (va[:, pair_a][:, None, :] * vb[:, pair_b][None, :, :]).reshape(
        dim * dim, pair_a.size)
    diffs = None
    if diag_a and diag_b:
        na = np.argmax(np.abs(va), axis=0)
        nb = np.argmax(np.abs(vb), axis=0)
        diffs = na[pair_a] - nb[pair_b]
    return TwoModeFockState(vecs, weights[keep], dim, diffs)


def _pair_generator(pdc: PdcParams, dim: int) -> sp.csr_matrix:
    """Anti-Hermitian generator i(kappa a_A a_B + kappa* a_A^dag a_B^dag)."""
    kappa = pdc.coupling_magnitude * cmath.exp(1j * pdc.phi)
    a = sp.diags(np.sqrt(np.arange(1, dim)), 1, dtype=complex, format="csr")
    ab = sp.kron(a, a, format="csr")
    return (1j * kappa) * ab + (1j * kappa.conjugate()) * ab.conj().T


def build_pdc_unitary(pdc: PdcParams, dim: int,
                      config: OracleConfig | None = None) -> np.ndarray:
    """Dense pair-coupling unitary; intended for modest dims and tests."""
    config = config or OracleConfig(dim=dim)
    x = _pair_generator(pdc, dim)
    u = _unitary_from_hermitian((-1j * x).toarray())
    residual = np.abs(u.conj().T @ u - np.eye(dim * dim)).max()
    if residual > config.exp_tol:
        raise ArithmeticError(f"pair exponential residual {residual:.2e}")
    return u


@lru_cache(maxsize=4)
def _sector_unitaries(n_gain: float, phi: float,
                      dim: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair evolution split over photon-number-difference sectors.

    The generator only couples |i, j> to |i+-1, j+-1>, so it is block
    diagonal over q = i - j; each block is exponentiated exactly by
    eigendecomposition.  Returns (flat indices, dense unitary) per sector.
    """
    x = _pair_generator(PdcParams(n_gain, phi), dim).tocsr()
    flat = np.arange(dim * dim)
    q = flat // dim - flat % dim
    blocks = []
    covered = 0
    for diff in range(-(dim - 1), dim):
        idx = np.flatnonzero(q == diff)
        h = x[idx][:, idx]
        covered += h.nnz
        blocks.append((idx, _unitary_from_hermitian((-1j * h).toarray())))
    if covered != x.nnz:  # a generator that mixed sectors would be a bug
        raise ArithmeticError("pair generator couples difference sectors")
    return blocks


def evolve_pdc(state: TwoModeFockState, pdc: PdcParams,
               config: OracleConfig | None = None) -> TwoModeFockState:
    """Apply the pair-coupling unitary to every ensemble component.

    Component norms are preserved within exp_tol (the generator is
    anti-Hermitian, so this doubles as the unitarity check); the evolved
    state must stay tail-adequate or the call is refused.
    """
    dim = state.dim
    config = config or OracleConfig(dim=dim)
    if pdc.n_gain == 0.0:
        out = TwoModeFockState(state.vectors, state.weights, dim,
                               state.component_diffs)
    else:
        evolved = np.array(state.vectors, dtype=complex, copy=True)
        for idx, u in _sector_unitaries(pdc.n_gain, pdc.phi, dim):
            evolved[idx] = u @ evolved[idx]
        norms = np.linalg.norm(evolved, axis=0)
        worst = float(np.abs(norms - 1.0).max())
        if worst > config.exp_tol:
            raise ArithmeticError(
                f"pair evolution norm residual {worst:.2e} exceeds "
                f"{config.exp_tol:.1e}")
        out = TwoModeFockState(evolved, state.weights, dim,
                               state.component_diffs)
    tail = out.tail_mass
    if tail > config.tail_bound:
        raise TruncationInadequateError(
            f"evolved state: top-two-level population {tail:.3e} exceeds "
            f"bound {config.tail_bound:.1e} at dim {dim}",
            tail_mass=tail, dim=dim)
    return out


def seeded_pdc_state(seed_a: Seed, seed_b: Seed, pdc: PdcParams, dim: int,
                     config: OracleConfig | None = None) -> TwoModeFockState:
    config = config or OracleConfig(dim=dim)
    return evolve_pdc(build_input_state(seed_a, seed_b, dim, config), pdc,
                      config)


def measure_moments(state: TwoModeFockState) -> MomentSet:
    """Photon-counting moments by direct trace against number operators."""
    d = state.dim
    p = state.probabilities
    na = np.repeat(np.arange(d, dtype=float), d)
    nb = np.tile(np.arange(d, dtype=float), d)
    mean_a = float(p @ na)
    mean_b = float(p @ nb)
    diff = na - nb
    var_diff = float(p @ (diff * diff)) - (mean_a - mean_b) ** 2
    return MomentSet(
        mean_a=mean_a,
        mean_b=mean_b,
        var_diff=var_diff,
        cross=float(p @ (na * nb)),
        fac2_a=float(p @ (na * (na - 1.0))),
        fac2_b=float(p @ (nb * (nb - 1.0))),
    )


def _quadrature_operators(dim: int) -> list[sp.csr_matrix]:
    a = sp.diags(np.sqrt(np.arange(1, dim)), 1, dtype=complex, format="csr")
    eye = sp.identity(dim, dtype=complex, format="csr")
    ops = []  # (X_A, Y_A, X_B, Y_B)
    for single in (sp.kron(a, eye, format="csr"),
                   sp.kron(eye, a, format="csr")):
        ops.append((single + single.conj().T) / math.sqrt(2.0))
        ops.append((single - single.conj().T) / (1j * math.sqrt(2.0)))
    return ops


def measure_covariance(state: TwoModeFockState) -> np.ndarray:
    """Symmetrized quadrature covariance, ordering (X_A, Y_A, X_B, Y_B)."""
    v, w = state.vectors, state.weights
    applied = [op @ v for op in _quadrature_operators(state.dim)]
    means = np.array([float(np.einsum("ik,ik,k->", v.conj(), qv, w).real)
                      for qv in applied])
    cov = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            second = float(np.einsum("ik,ik,k->", applied[i].conj(),
                                     applied[j], w).real)
            cov[i, j] = cov[j, i] = second - means[i] * means[j]
    return cov


def _pt_min_eig_blocked(state: TwoModeFockState) -> float:
    """Minimum eigenvalue of the partial transpose using conservation of
    the per-component photon-number difference: the partially transposed
    matrix is block diagonal over the total photon number s = i_A + i_B,
    and its block entries are gathered from per-difference profile
    matrices P_q[i, k] = sum_m w_m psi_m[i] conj(psi_m[k]) where psi_m is
    the diagonal profile psi_m[i] = <i, i-q | v_m>."""
    d = state.dim
    vecs = state.vectors.reshape(d, d, -1)
    diffs = state.component_diffs
    profiles = np.zeros((2 * d - 1, d, d), dtype=complex)
    for q in np.unique(diffs):
        sel = np.flatnonzero(diffs == q)
        idx = np.arange(max(0, q), d + min(0, q))
        psi = vecs[idx[:, None], (idx - q)[:, None], sel[None, :]]
        profiles[q + d - 1, idx[:, None], idx[None, :]] = (
            (psi * state.weights[sel]) @ psi.conj().T)
    min_eig = math.inf
    for s in range(2 * d - 1):
        idx = np.arange(max(0, s - d + 1), min(s, d - 1) + 1)
        # B_s[i, k] = rho_pt[(i, s-i), (k, s-k)] lives at q = i + k - s
        q_idx = idx[:, None] + idx[None, :] - s + d - 1
        block = profiles[q_idx, idx[:, None], idx[None, :]]
        if idx.size == 1:
            min_eig = min(min_eig, float(block[0, 0].real))
        else:
            min_eig = min(min_eig, float(np.linalg.eigvalsh(block)[0]))
    return min_eig


def pt_negativity(state: TwoModeFockState) -> float:
    """Minimum eigenvalue of the partial transpose of the density matrix
    (negative exactly when the criterion certifies entanglement)."""
    if state.component_diffs is not None:
        return _pt_min_eig_blocked(state)
    d = state.dim
    rho = state.rho.reshape(d, d, d, d)
    rho_pt = rho.transpose(0, 3, 2, 1).reshape(d * d, d * d)
    return float(np.linalg.eigvalsh(rho_pt)[0])
