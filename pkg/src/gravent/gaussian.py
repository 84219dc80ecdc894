"""Gaussian open-system engine.

Quadratures are ordered x = (X_1, P_1, ..., X_n, P_n) with [X_j, P_j] = i,
a_j = (X_j + i P_j)/sqrt(2), so the vacuum covariance is I/2. A model is a
quadratic Hamiltonian H = x^T G x / 2 plus linear jump operators
L_k = c_k . x. Its covariance obeys dV/dt = A V + V A^T + D.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, NotStable, SolveFailed, Unphysical

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_SQRT_HALF = np.sqrt(0.5)

PHYSICALITY_TOL = 1e-9


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), _J)


def annihilation(mode: int, n_modes: int) -> np.ndarray:
    """Quadrature coefficient vector of a_mode."""
    v = np.zeros(2 * n_modes, dtype=complex)
    v[2 * mode] = _SQRT_HALF
    v[2 * mode + 1] = 1j * _SQRT_HALF
    return v


def creation(mode: int, n_modes: int) -> np.ndarray:
    return annihilation(mode, n_modes).conj()


def quadratic_hamiltonian(n_modes: int, terms) -> np.ndarray:
    """Matrix G of H = sum(coef * (u.x)(v.x)) over ``terms`` of (coef, u, v).

    The caller must include Hermitian conjugates so that H is Hermitian;
    constant offsets from operator ordering are dropped.
    """
    dim = 2 * n_modes
    G = np.zeros((dim, dim), dtype=complex)
    for coef, u, v in terms:
        u = np.asarray(u)
        v = np.asarray(v)
        if u.shape != (dim,) or v.shape != (dim,):
            raise DimensionMismatch(f"operator vectors must have length {dim}")
        G += coef * (np.outer(u, v) + np.outer(v, u))
    if np.max(np.abs(G.imag), initial=0.0) > 1e-12 * max(np.max(np.abs(G)), 1.0):
        raise ValueError("Hamiltonian terms are not Hermitian")
    return G.real.copy()


@dataclass(frozen=True, eq=False)
class QuadraticModel:
    n_modes: int
    hamiltonian: np.ndarray
    lindblad: np.ndarray = field(default=None)
    labels: tuple = ()

    def __post_init__(self):
        dim = 2 * self.n_modes
        H = np.asarray(self.hamiltonian, dtype=float)
        if H.shape != (dim, dim):
            raise DimensionMismatch(f"Hamiltonian must be {dim}x{dim}, got {H.shape}")
        scale = max(np.max(np.abs(H)), 1e-300)
        if np.max(np.abs(H - H.T)) > 1e-12 * scale:
            raise ValueError("Hamiltonian matrix must be symmetric")
        ops = self.lindblad
        if ops is None:
            ops = np.zeros((0, dim), dtype=complex)
        ops = np.atleast_2d(np.asarray(ops, dtype=complex))
        if ops.size == 0:
            ops = np.zeros((0, dim), dtype=complex)
        if ops.shape[1] != dim:
            raise DimensionMismatch(f"Lindblad vectors must have length {dim}, got {ops.shape[1]}")
        object.__setattr__(self, "hamiltonian", 0.5 * (H + H.T))
        object.__setattr__(self, "lindblad", ops)

    @property
    def n_lindblad(self) -> int:
        return self.lindblad.shape[0]


@dataclass(frozen=True, eq=False)
class DriftDiffusion:
    drift: np.ndarray
    diffusion: np.ndarray


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.matrix, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2:
            raise DimensionMismatch(f"covariance must be 2n x 2n, got {V.shape}")
        object.__setattr__(self, "matrix", 0.5 * (V + V.T))

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def block(self, i: int, j: int) -> np.ndarray:
        return self.matrix[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]

    def reduced(self, modes) -> CovarianceMatrix:
        idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
        return CovarianceMatrix(self.matrix[np.ix_(idx, idx)])

    def physicality_margin(self) -> float:
        """Smallest eigenvalue of V + (i/2) sigma; non-negative for physical states."""
        M = self.matrix + 0.5j * symplectic_form(self.n_modes)
        return float(np.linalg.eigvalsh(M)[0])

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return self.physicality_margin() >= -(tol + 1e-13 * np.max(np.abs(self.matrix)))


def assemble(model: QuadraticModel) -> DriftDiffusion:
    n = model.n_modes
    sigma = symplectic_form(n)
    C = model.lindblad
    CC = C.conj().T @ C
    A = sigma @ (model.hamiltonian + CC.imag)
    D = sigma @ CC.real @ sigma.T
    return DriftDiffusion(A, 0.5 * (D + D.T))


def is_hurwitz(A: np.ndarray, tol_stability: float = 1e-12) -> bool:
    tol = tol_stability * np.linalg.norm(A, 2)
    return bool(np.max(np.linalg.eigvals(A).real) < -tol)


def lyapunov_residual(dd: DriftDiffusion, V: np.ndarray) -> float:
    A, D = dd.drift, dd.diffusion
    return float(np.linalg.norm(A @ V + V @ A.T + D))


def solve_lyapunov(A: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Solve A V + V A^T + D = 0 via the dense Kronecker-sum system."""
    dim = A.shape[0]
    eye = np.eye(dim)
    # row-major vec: vec(AV) = (A kron I) vec(V), vec(VA^T) = (I kron A) vec(V)
    K = np.kron(A, eye) + np.kron(eye, A)
    lu = sla.lu_factor(K, check_finite=False)
    V = sla.lu_solve(lu, -D.ravel()).reshape(dim, dim)
    # one refinement step recovers digits lost to K's conditioning
    R = A @ V + V @ A.T + D
    V = V + sla.lu_solve(lu, -R.ravel()).reshape(dim, dim)
    return 0.5 * (V + V.T)


def steady_state(dd: DriftDiffusion, tol_stability: float = 1e-12) -> CovarianceMatrix:
    A, D = dd.drift, dd.diffusion
    if not is_hurwitz(A, tol_stability):
        worst = np.max(np.linalg.eigvals(A).real)
        raise NotStable(f"drift is not Hurwitz (max Re eigenvalue {worst:.3e})")
    V = solve_lyapunov(A, D)
    bound = 1e-9 * (np.linalg.norm(A) * np.linalg.norm(V) + np.linalg.norm(D))
    res = lyapunov_residual(dd, V)
    if not res <= bound:
        raise SolveFailed(f"Lyapunov residual {res:.3e} exceeds {bound:.3e}")
    return CovarianceMatrix(V)


def steady_covariance(model: QuadraticModel, tol_stability: float = 1e-12) -> CovarianceMatrix:
    return steady_state(assemble(model), tol_stability)


def symplectic_eigenvalues(V) -> np.ndarray:
    """Sorted symplectic eigenvalues: |eig(i sigma V)|, one per mode.

    Evaluated as eigenvalues of the Hermitian V^½ (iσ) V^½, which has the same
    spectrum and stays well conditioned when eigenvalues are degenerate.
    """
    M = V.matrix if isinstance(V, CovarianceMatrix) else np.asarray(V, dtype=float)
    n = M.shape[0] // 2
    w, U = np.linalg.eigh(M)
    root = (U * np.sqrt(np.clip(w, 0.0, None))) @ U.T
    ev = np.sort(np.abs(np.linalg.eigvalsh(root @ (1j * symplectic_form(n)) @ root)))
    # eigenvalues come in +/- pairs
    return 0.5 * (ev[0::2] + ev[1::2])


def partial_transpose(V: CovarianceMatrix) -> CovarianceMatrix:
    """Flip P of the last mode (transposition of that subsystem)."""
    flip = np.ones(2 * V.n_modes)
    flip[-1] = -1.0
    return CovarianceMatrix(V.matrix * np.outer(flip, flip))


def smallest_pt_eigenvalue(V: CovarianceMatrix) -> float:
    """Smallest symplectic eigenvalue of the partial transpose (two modes)."""
    return float(symplectic_eigenvalues(partial_transpose(V))[0])


def pt_eigenvalue_from_invariants(V: CovarianceMatrix) -> float:
    """Same quantity from Σ = det V_a + det V_b − 2 det V_ab and det V.

    Loses about half the digits near separable product states, where the
    discriminant vanishes; kept as a cross-check.
    """
    Va, Vb, Vab = V.block(0, 0), V.block(1, 1), V.block(0, 1)
    sigma_pt = np.linalg.det(Va) + np.linalg.det(Vb) - 2.0 * np.linalg.det(Vab)
    disc = sigma_pt**2 - 4.0 * np.linalg.det(V.matrix)
    # physical states have disc >= 0; rounding can push it slightly negative
    disc = max(disc, 0.0)
    return float(np.sqrt(max(sigma_pt - np.sqrt(disc), 0.0) / 2.0))


def log_negativity(V: CovarianceMatrix, tol: float = PHYSICALITY_TOL) -> float:
    if not isinstance(V, CovarianceMatrix):
        V = CovarianceMatrix(V)
    if V.n_modes != 2:
        raise DimensionMismatch("log_negativity needs a two-mode covariance")
    if not V.is_physical(tol):
        raise Unphysical(f"covariance violates the uncertainty principle (margin {V.physicality_margin():.3e})")
    nu = smallest_pt_eigenvalue(V)
    if nu <= 0:
        return np.inf
    return max(0.0, -float(np.log(2.0 * nu)))


def two_mode_squeezed(s: float, nbar: float = 0.0) -> CovarianceMatrix:
    """Two-mode squeezed thermal state with squeezing ``s``."""
    c = (nbar + 0.5) * np.cosh(2 * s)
    d = (nbar + 0.5) * np.sinh(2 * s)
    Z = np.diag([1.0, -1.0])
    I = np.eye(2)
    return CovarianceMatrix(np.block([[c * I, d * Z], [d * Z, c * I]]))
