"""Brute-force steady state on a truncated Fock space.

Used only to cross-check the Gaussian engine at small occupations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import NoUniqueSteadyState, TruncationNotConverged
from .gaussian import CovarianceMatrix, QuadraticModel


@dataclass(frozen=True)
class TruncationSpec:
    dim: int = 10
    leakage_tol: float = 1e-5
    convergence_tol: float = 1e-4

    def __post_init__(self):
        if self.dim < 3:
            raise ValueError("truncation dimension must be at least 3")


def _lowering(dim: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, dim)), 1, format="csr", dtype=complex)


def _mode_ops(n_modes: int, dim: int):
    """Sparse a_j on the product space."""
    a1 = _lowering(dim)
    eye = sp.identity(dim, format="csr", dtype=complex)
    ops = []
    for j in range(n_modes):
        factors = [eye] * n_modes
        factors[j] = a1
        a = factors[0]
        for f in factors[1:]:
            a = sp.kron(a, f, format="csr")
        ops.append(a)
    return ops


def _ladder_basis(lowering):
    """Operators (a_1, a_1†, a_2, a_2†, ...) matching the quadrature ordering."""
    out = []
    for a in lowering:
        out += [a, a.conj().T.tocsr()]
    return out


def _to_ladder(c: np.ndarray) -> np.ndarray:
    """Rewrite c.x as a combination of (a_1, a_1†, ...).

    c_X X + c_P P = a (c_X − i c_P)/√2 + a† (c_X + i c_P)/√2.
    """
    cx, cp = c[0::2], c[1::2]
    out = np.empty_like(c, dtype=complex)
    out[0::2] = (cx - 1j * cp) / np.sqrt(2.0)
    out[1::2] = (cx + 1j * cp) / np.sqrt(2.0)
    # drop round-off so the sparse operators stay sparse
    out[np.abs(out) < 1e-14 * max(np.max(np.abs(out)), 1e-300)] = 0.0
    return out


def _combine(coefs, basis, n):
    op = sp.csr_matrix((n, n), dtype=complex)
    for w, b in zip(coefs, basis):
        if w != 0:
            op = op + w * b
    return op


def _liouvillian(model: QuadraticModel, lowering) -> sp.csr_matrix:
    basis = _ladder_basis(lowering)
    n = basis[0].shape[0]
    eye = sp.identity(n, format="csr", dtype=complex)
    # x = T y with y the ladder operators, so H = ½ yᵀ (TᵀGT) y
    T = np.stack([_to_ladder_column(j, model.n_modes) for j in range(2 * model.n_modes)])
    Gy = T.T @ model.hamiltonian @ T
    Gy[np.abs(Gy) < 1e-14 * max(np.max(np.abs(Gy)), 1e-300)] = 0.0
    H = sp.csr_matrix((n, n), dtype=complex)
    for j, yj in enumerate(basis):
        for k, yk in enumerate(basis):
            if Gy[j, k] != 0:
                H = H + 0.5 * Gy[j, k] * (yj @ yk)
    # column-stacking: vec(A rho B) = (B^T kron A) vec(rho)
    L = -1j * (sp.kron(eye, H) - sp.kron(H.T, eye))
    for c in model.lindblad:
        op = _combine(_to_ladder(c), basis, n)
        ldl = op.conj().T @ op
        L = L + sp.kron(op.conj(), op) - 0.5 * sp.kron(eye, ldl) - 0.5 * sp.kron(ldl.T, eye)
    L = L.tocsr()
    L.sum_duplicates()
    L.eliminate_zeros()
    return L


def _to_ladder_column(j: int, n_modes: int) -> np.ndarray:
    """Row j of T: the quadrature x_j written in ladder operators."""
    row = np.zeros(2 * n_modes, dtype=complex)
    mode, is_p = divmod(j, 2)
    s = 1.0 / np.sqrt(2.0)
    if is_p:
        row[2 * mode], row[2 * mode + 1] = -1j * s, 1j * s
    else:
        row[2 * mode], row[2 * mode + 1] = s, s
    return row


def _steady_rho(L: sp.csr_matrix, n: int, rtol: float = 1e-12) -> np.ndarray:
    """Null vector of L with unit trace.

    The first equation is swapped for the trace condition and the system is
    solved with BiCGSTAB from two different starting vectors. A degenerate
    null space leaves the modified system singular, so the two answers differ.
    """
    trace_row = np.zeros(n * n, dtype=complex)
    trace_row[:: n + 1] = 1.0
    M = L.tolil()
    M[0, :] = trace_row
    M = M.tocsr()
    rhs = np.zeros(n * n, dtype=complex)
    rhs[0] = 1.0
    rng = np.random.default_rng(0)
    sols = []
    for x0 in (None, rng.standard_normal(n * n) + 1j * rng.standard_normal(n * n)):
        x, info = spla.bicgstab(M, rhs, x0=x0, rtol=rtol, atol=0.0, maxiter=50 * n * n)
        if info != 0:
            raise NoUniqueSteadyState(f"steady-state solve did not converge (info={info})")
        sols.append(x)
    spread = np.max(np.abs(sols[0] - sols[1]))
    if spread > 1e-8:
        raise NoUniqueSteadyState(f"steady state depends on the starting vector (spread {spread:.2e})")
    residual = np.linalg.norm(L @ sols[0]) / max(abs(L).max(), 1.0)
    if residual > 1e-8:
        raise NoUniqueSteadyState(f"null-vector residual {residual:.2e}")
    rho = sols[0].reshape((n, n), order="F")
    rho = rho / np.trace(rho)
    return 0.5 * (rho + rho.conj().T)


def _top_level_population(rho: np.ndarray, n_modes: int, dim: int) -> float:
    diag = np.real(np.diag(rho)).reshape((dim,) * n_modes)
    worst = 0.0
    for j in range(n_modes):
        marginal = diag.sum(axis=tuple(k for k in range(n_modes) if k != j))
        worst = max(worst, float(marginal[-1]))
    return worst


def _covariance_at(model: QuadraticModel, dim: int, leakage_tol: float):
    lowering = _mode_ops(model.n_modes, dim)
    n = lowering[0].shape[0]
    rho = _steady_rho(_liouvillian(model, lowering), n)
    quads = []
    for a in lowering:
        ad = a.conj().T
        quads += [(a + ad) / np.sqrt(2.0), (a - ad) / (1j * np.sqrt(2.0))]
    top = _top_level_population(rho, model.n_modes, dim)
    if top > leakage_tol:
        raise TruncationNotConverged(f"top Fock level holds {top:.3e} > {leakage_tol:.1e} at N = {dim}")
    means = np.array([np.trace(rho @ x.toarray()) for x in quads])
    m = len(quads)
    V = np.empty((m, m))
    for j in range(m):
        for k in range(j, m):
            xjxk = (quads[j] @ quads[k]).toarray()
            sym = np.trace(rho @ (xjxk + xjxk.conj().T)).real / 2
            V[j, k] = V[k, j] = sym - (means[j] * means[k]).real
    return V, rho, means


@dataclass(frozen=True, eq=False)
class FockResult:
    covariance: CovarianceMatrix
    rho: np.ndarray
    first_moments: np.ndarray
    convergence_error: float


def solve_fock(model: QuadraticModel, trunc: TruncationSpec | None = None) -> FockResult:
    """Steady state at N and N + 2; fails unless the two covariances agree."""
    trunc = trunc or TruncationSpec()
    if model.n_modes > 2:
        raise ValueError("the Fock oracle handles at most two modes")
    V, rho, means = _covariance_at(model, trunc.dim, trunc.leakage_tol)
    V2, _, _ = _covariance_at(model, trunc.dim + 2, trunc.leakage_tol)
    err = float(np.max(np.abs(V - V2)))
    if err > trunc.convergence_tol:
        raise TruncationNotConverged(f"covariance moved by {err:.3e} between N = {trunc.dim} and {trunc.dim + 2}")
    cov = CovarianceMatrix(V)
    # near-pure states sit on the physicality boundary; truncation error can
    # push them across by about the convergence error
    if not cov.is_physical(trunc.convergence_tol):
        raise TruncationNotConverged(f"truncated covariance is unphysical (margin {cov.physicality_margin():.3e})")
    return FockResult(cov, rho, means.real, err)


def steady_covariance_fock(model: QuadraticModel, trunc: TruncationSpec | None = None) -> CovarianceMatrix:
    return solve_fock(model, trunc).covariance
