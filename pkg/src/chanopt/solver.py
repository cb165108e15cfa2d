"""Optimal-channel solver.

The problem is a small dense semidefinite program: minimize Tr(C kappa)
over kappa >= 0 subject to Tr_B(kappa) = I/m and, for each prescribed
pair, to the fitted channel mapping rho_in to rho_out.

Everything is solved in real coordinates: Hermitian matrices are
vectorized isometrically (``linalg.vectorize_hermitian``), which turns
the affine conditions into one real linear system and the cone condition
into membership in the vectorized PSD cone.

The algorithm is ADMM-style operator splitting between the affine
subspace and the PSD cone, with the linear objective folded into the
affine prox:

    x   <- P_aff(z - u - C/rho)
    xr  <- alpha x + (1 - alpha) z          (over-relaxation)
    z   <- P_psd(xr + u)
    u   <- u + xr - z

P_aff is a minimum-norm projection through a cached pseudoinverse of the
constraint matrix, so redundant rows (each pair's trace condition is
implied by the reduction rows) are harmless. The objective is normalized
by the cost matrix's spectral norm inside the loop so that one penalty
setting covers cost matrices of any overall scale; reported costs always
use the original C.

Facial reduction: a pair whose output state is singular forces every
feasible kappa to vanish on range(conj(rho_in)) (x) null(rho_out) -- the
corresponding PSD functional has value Tr(P_null rho_out) = 0. Such
problems have no strictly feasible point, which makes splitting methods
converge sublinearly; the solver therefore restricts the variable to the
orthogonal complement of the forced subspace first. The feasible set is
unchanged, and on the reduced face the iteration regains its usual
linear tail. Iterations start from the maximally mixed state of the
face and are fully deterministic.

Infeasibility is flagged in two ways: an inconsistent affine system is
caught up front from the least-squares residual, and an empty
affine/PSD intersection is caught heuristically when the affine residual
of the PSD iterate stalls above sqrt(tol).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .choi import ChoiState, apply_choi_matrix
from .costs import CostMatrix
from .linalg import (
    devectorize_hermitian,
    frobenius_inner,
    hermitian_basis,
    kron,
    partial_trace,
    vectorize_hermitian,
)
from .validation import require_density

STALL_WINDOW = 1000
STALL_RTOL = 1e-3
INCONSISTENT_RTOL = 1e-7
PINV_RCOND = 1e-10
FACE_EIG_CUTOFF = 1e-11


@dataclass(frozen=True)
class SolverOptions:
    tol: float = 1e-8
    max_iters: int = 50000
    over_relaxation: float = 1.6
    penalty: float = 1.0

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not 1.0 <= self.over_relaxation < 2.0:
            raise ValueError(f"over_relaxation must lie in [1, 2), got {self.over_relaxation}")
        if self.penalty <= 0:
            raise ValueError(f"penalty must be > 0, got {self.penalty}")


@dataclass(frozen=True)
class TransportProblem:
    """Cost matrix plus prescribed input/output density-matrix pairs."""

    m: int
    n: int
    cost: CostMatrix
    constraints: tuple = ()
    options: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self):
        if (self.cost.m, self.cost.n) != (self.m, self.n):
            raise ValueError(
                f"cost matrix is for dims ({self.cost.m}, {self.cost.n}), problem has ({self.m}, {self.n})"
            )
        checked = []
        for idx, (rin, rout) in enumerate(self.constraints):
            rin = require_density(rin, name=f"constraint {idx} input")
            rout = require_density(rout, name=f"constraint {idx} output")
            if rin.shape != (self.m, self.m):
                raise ValueError(f"constraint {idx} input has shape {rin.shape}, expected ({self.m}, {self.m})")
            if rout.shape != (self.n, self.n):
                raise ValueError(f"constraint {idx} output has shape {rout.shape}, expected ({self.n}, {self.n})")
            checked.append((rin, rout))
        object.__setattr__(self, "constraints", tuple(checked))


class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class AffineSystem:
    """Real linear system A x = b over vectorized-Hermitian coordinates."""

    matrix: np.ndarray
    rhs: np.ndarray


@dataclass(frozen=True)
class Solution:
    kappa_star: ChoiState | None
    cost_value: float
    primal_residual: float
    constraint_residuals: tuple
    iterations: int
    status: Status


def _row_generators(p: TransportProblem):
    """Hermitian functionals W_k and scalars b_k encoding all conditions.

    Row k of block (a), indexed by the orthonormal Hermitian basis B_k of
    the m-space, is W = B_k (x) I_n with target Tr(B_k I/m); row k of a
    pair's block is W = m * (rho_in^T (x) B_k) over the n-space basis,
    with target Tr(B_k rho_out). Redundant rows are kept.
    """
    m, n = p.m, p.n
    gens = []
    rhs = []
    eye_n = np.eye(n)
    for bk in hermitian_basis(m):
        gens.append(kron(bk, eye_n))
    rhs.append(vectorize_hermitian(np.eye(m) / m))
    for rin, rout in p.constraints:
        rt = rin.T
        for bk in hermitian_basis(n):
            gens.append(m * kron(rt, bk))
        rhs.append(vectorize_hermitian(rout))
    return gens, np.concatenate(rhs)


def build_affine_system(p: TransportProblem) -> AffineSystem:
    """Assemble the full-space affine system for a problem."""
    gens, rhs = _row_generators(p)
    return AffineSystem(matrix=np.vstack([vectorize_hermitian(w) for w in gens]), rhs=rhs)


def _face_basis(p: TransportProblem) -> np.ndarray | None:
    """Orthonormal basis of the face of the PSD cone forced by the pairs.

    Returns None when no reduction applies (all outputs full rank).
    """
    forced = []
    for rin, rout in p.constraints:
        w_in, v_in = np.linalg.eigh(rin.conj())
        rng = v_in[:, w_in > FACE_EIG_CUTOFF]
        w_out, v_out = np.linalg.eigh(rout)
        nul = v_out[:, w_out <= FACE_EIG_CUTOFF]
        if rng.size and nul.size:
            forced.append(kron(rng, nul))
    if not forced:
        return None
    zmat = np.hstack(forced)
    u, s, _ = np.linalg.svd(zmat, full_matrices=True)
    rank = int(np.count_nonzero(s > 1e-10))
    if rank == 0:
        return None
    return u[:, rank:]


class _Workspace:
    """Reduced-coordinate view of a problem shared by solve and sampling."""

    def __init__(self, p: TransportProblem):
        self.problem = p
        d_full = p.m * p.n
        q = _face_basis(p)
        gens, rhs = _row_generators(p)
        if q is None:
            self.face = None
            self.dim = d_full
            self.matrix = np.vstack([vectorize_hermitian(w) for w in gens])
        else:
            self.face = q
            self.dim = q.shape[1]
            self.matrix = np.vstack(
                [vectorize_hermitian(q.conj().T @ w @ q) for w in gens]
            )
        self.rhs = rhs
        self.pinv = np.linalg.pinv(self.matrix, rcond=PINV_RCOND) if self.dim else None

    def inconsistent(self) -> bool:
        if self.dim == 0:
            return True
        resid = np.linalg.norm(self.matrix @ (self.pinv @ self.rhs) - self.rhs)
        return resid > INCONSISTENT_RTOL * max(1.0, np.linalg.norm(self.rhs))

    def proj_affine(self, v: np.ndarray) -> np.ndarray:
        return v - self.pinv @ (self.matrix @ v - self.rhs)

    def feas_residual(self, v: np.ndarray) -> float:
        return float(np.linalg.norm(self.matrix @ v - self.rhs))

    def reduce_matrix(self, x: np.ndarray) -> np.ndarray:
        return x if self.face is None else self.face.conj().T @ x @ self.face

    def expand(self, v: np.ndarray) -> np.ndarray:
        x = devectorize_hermitian(v, self.dim)
        return x if self.face is None else self.face @ x @ self.face.conj().T


def _psd_project_vec(v: np.ndarray, dim: int) -> np.ndarray:
    x = devectorize_hermitian(v, dim)
    w, q = np.linalg.eigh(x)
    np.maximum(w, 0.0, out=w)
    y = (q * w) @ q.conj().T
    return vectorize_hermitian(0.5 * (y + y.conj().T))


def _constraint_residuals(p: TransportProblem, kappa: np.ndarray) -> tuple:
    out = []
    for rin, rout in p.constraints:
        img = apply_choi_matrix(kappa, rin, p.m, p.n)
        out.append(float(np.linalg.norm(img - rout, "fro")))
    return tuple(out)


def _infeasible(iters: int, primal: float) -> Solution:
    return Solution(
        kappa_star=None,
        cost_value=float("nan"),
        primal_residual=float(primal),
        constraint_residuals=(),
        iterations=iters,
        status=Status.INFEASIBLE,
    )


def _finalize(p: TransportProblem, ws: _Workspace, zvec, iters, status, primal) -> Solution:
    kappa = ws.expand(zvec)
    tol = p.options.tol
    red = partial_trace(kappa, (p.m, p.n), "B")
    feas = np.linalg.norm(red - np.eye(p.m) / p.m, "fro")
    atol = max(1e-8, 10 * tol, 2.0 * feas, 2.0 * abs(np.trace(kappa).real - 1.0))
    cs = ChoiState(kappa, p.m, p.n, atol=atol)
    return Solution(
        kappa_star=cs,
        cost_value=frobenius_inner(p.cost.matrix, kappa),
        primal_residual=float(primal),
        constraint_residuals=_constraint_residuals(p, kappa),
        iterations=iters,
        status=status,
    )


def solve(p: TransportProblem, warm_start=None) -> Solution:
    """Minimize Tr(C kappa) over valid Choi states meeting the constraints.

    ``warm_start`` may be a Choi-sized Hermitian matrix (or ChoiState) used
    as the initial iterate in place of the maximally mixed state. The
    problem is convex, so the optimal value does not depend on it.
    """
    opts = p.options
    ws = _Workspace(p)
    if ws.inconsistent():
        return _infeasible(0, float("nan"))

    scale = max(np.linalg.norm(p.cost.matrix, 2), 1e-12)
    cvec = vectorize_hermitian(ws.reduce_matrix(p.cost.matrix)) / scale
    rho = opts.penalty
    alpha = opts.over_relaxation
    d = ws.dim

    if warm_start is None:
        z = vectorize_hermitian(np.eye(d) / d)
    else:
        w = warm_start.kappa if isinstance(warm_start, ChoiState) else np.asarray(warm_start)
        z = vectorize_hermitian(ws.reduce_matrix(w))
    u = np.zeros_like(z)

    best_feas = np.inf
    stall = 0
    sqrt_tol = np.sqrt(opts.tol)
    primal = np.inf

    for it in range(1, opts.max_iters + 1):
        x = ws.proj_affine(z - u - cvec / rho)
        xr = alpha * x + (1.0 - alpha) * z
        z_new = _psd_project_vec(xr + u, d)
        u += xr - z_new
        primal = np.linalg.norm(x - z_new)
        dual = rho * np.linalg.norm(z_new - z)
        z = z_new
        if primal <= opts.tol and dual <= opts.tol:
            return _finalize(p, ws, z, it, Status.CONVERGED, primal)

        feas = ws.feas_residual(z)
        if feas < best_feas * (1.0 - STALL_RTOL):
            best_feas = feas
            stall = 0
        else:
            stall += 1
        if stall >= STALL_WINDOW and feas > sqrt_tol:
            return _infeasible(it, primal)

    return _finalize(p, ws, z, opts.max_iters, Status.MAX_ITERS, primal)


def feasible_sample(p: TransportProblem, seed: int) -> ChoiState:
    """A feasible Choi state with no optimality claim.

    Alternating projections between the affine subspace and the PSD cone
    from a seeded random PSD start; useful as an independent dominance
    oracle for the optimum.
    """
    opts = p.options
    ws = _Workspace(p)
    if ws.inconsistent():
        raise ValueError("problem is infeasible: affine system is inconsistent")
    d = ws.dim

    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    start = g @ g.conj().T
    z = vectorize_hermitian(start / np.trace(start).real)

    best_feas = np.inf
    stall = 0
    sqrt_tol = np.sqrt(opts.tol)
    for _ in range(opts.max_iters):
        y = ws.proj_affine(z)
        z = _psd_project_vec(y, d)
        feas = ws.feas_residual(z)
        if feas <= opts.tol:
            kappa = ws.expand(z)
            return ChoiState(kappa, p.m, p.n, atol=max(1e-8, 10 * opts.tol))
        if feas < best_feas * (1.0 - STALL_RTOL):
            best_feas = feas
            stall = 0
        else:
            stall += 1
        if stall >= STALL_WINDOW and feas > sqrt_tol:
            raise ValueError(f"problem appears infeasible: affine residual stalled at {feas:.3e}")
    raise ValueError("feasible_sample did not converge within the iteration budget")


@dataclass(frozen=True)
class VerificationReport:
    cost_recomputed: float
    reduction_residual: float
    constraint_residuals: tuple
    min_eigenvalue: float


def verify_solution(p: TransportProblem, s: Solution) -> VerificationReport:
    """Re-evaluate a solution's cost and feasibility; no mutation."""
    if s.kappa_star is None:
        raise ValueError(f"solution has no Choi state (status {s.status.value})")
    kappa = s.kappa_star.kappa
    red = partial_trace(kappa, (p.m, p.n), "B")
    return VerificationReport(
        cost_recomputed=frobenius_inner(p.cost.matrix, kappa),
        reduction_residual=float(np.linalg.norm(red - np.eye(p.m) / p.m, "fro")),
        constraint_residuals=_constraint_residuals(p, kappa),
        min_eigenvalue=float(np.linalg.eigvalsh(kappa)[0]),
    )
