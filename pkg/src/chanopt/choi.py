"""Channel/state duality: Choi matrices, channel application, and the
decomposition of a channel into elementary transitions.

The correspondence is taken in the fixed computational basis of H_A
(0-based, see :mod:`chanopt.linalg`): a channel E from A (dim m) to B
(dim n) maps to the state

    kappa_E = (1/m) sum_ij |i><j| (x) E(|i><j|),

whose A-reduction is the maximally mixed state I/m. The inverse direction
is realized here as E(rho) = m * Tr_A[(rho^T (x) I_n) kappa]; its equality
with the partial-transpose sandwich form is covered by property tests
rather than assumed.

An elementary transition is the completely positive map dual to a single
pure state of AB; the rank-one terms of a Choi matrix's eigendecomposition
supply them, with the eigenvalues acting as probability weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import eig_hermitian, kron, partial_trace
from .validation import (
    UNIT_NORM_ATOL,
    as_complex_matrix,
    require_density,
    require_unit_vector,
)

KRAUS_ATOL = 1e-9
CHANNEL_ATOL = 1e-8
RANK_CUTOFF = 1e-10
DEGENERACY_ATOL = 1e-8
SUPPORT_EIG_CUTOFF = 1e-9


def maximally_entangled_vector(m: int) -> np.ndarray:
    """(1/sqrt(m)) sum_i |i>|i>, the unit vector behind the duality."""
    if m < 1:
        raise ValueError(f"dimension must be >= 1, got {m}")
    v = np.zeros(m * m, dtype=np.complex128)
    v[:: m + 1] = 1.0 / np.sqrt(m)
    return v


@dataclass(frozen=True)
class KrausChannel:
    """A channel in Kraus form: E(rho) = sum_j V_j rho V_j^dag.

    The operators are n x m; completeness sum_j V_j^dag V_j = I_m is
    validated on construction.
    """

    m: int
    n: int
    kraus_ops: tuple

    def __post_init__(self):
        ops = tuple(as_complex_matrix(v, "Kraus operator") for v in self.kraus_ops)
        if not ops:
            raise ValueError("need at least one Kraus operator")
        for v in ops:
            if v.shape != (self.n, self.m):
                raise ValueError(f"Kraus operator has shape {v.shape}, expected ({self.n}, {self.m})")
        acc = sum(v.conj().T @ v for v in ops)
        resid = np.linalg.norm(acc - np.eye(self.m), "fro")
        if resid > KRAUS_ATOL:
            raise ValueError(f"Kraus completeness violated: ||sum V^dag V - I||_F = {resid:.3e}")
        object.__setattr__(self, "kraus_ops", ops)

    def apply(self, rho) -> np.ndarray:
        r = require_density(rho, name="input state")
        if r.shape[0] != self.m:
            raise ValueError(f"state has dim {r.shape[0]}, channel expects {self.m}")
        return sum(v @ r @ v.conj().T for v in self.kraus_ops)


class ChoiState:
    """Density matrix on AB whose A-reduction is maximally mixed.

    Exactly the states dual to channels; complete positivity is the PSD
    condition, trace preservation is the reduction condition.
    """

    __slots__ = ("m", "n", "kappa")

    def __init__(self, kappa, m: int, n: int, atol: float = CHANNEL_ATOL):
        k = as_complex_matrix(kappa, "Choi matrix")
        if k.shape != (m * n, m * n):
            raise ValueError(f"Choi matrix has shape {k.shape}, expected ({m * n}, {m * n})")
        require_density(k, atol=max(1e-9, atol), name="Choi matrix")
        red = partial_trace(k, (m, n), "B")
        resid = np.linalg.norm(red - np.eye(m) / m, "fro")
        if resid > atol:
            raise ValueError(
                f"A-reduction is not maximally mixed: ||Tr_B(kappa) - I/m||_F = {resid:.3e} > {atol:.1e}"
            )
        self.m = m
        self.n = n
        self.kappa = k

    def __repr__(self):
        return f"ChoiState(m={self.m}, n={self.n})"


@dataclass(frozen=True)
class ElementaryTransition:
    """One rank-one term of a Choi matrix's eigendecomposition.

    ``degenerate_group`` labels transitions whose probabilities coincide
    within tolerance (the split of such a group is eigensolver-dependent,
    so only the group as a whole is meaningful); it is None for isolated
    probabilities.
    """

    probability: float
    pure_vector: np.ndarray
    dual_map_choi: np.ndarray
    m: int
    n: int
    degenerate_group: int | None = None

    def apply(self, rho) -> np.ndarray:
        """Action of the dual completely positive map (not a channel in general)."""
        return apply_choi_matrix(self.dual_map_choi, rho, self.m, self.n)


def channel_to_choi(ch: KrausChannel) -> ChoiState:
    """Dual state of a Kraus channel.

    Uses kappa = sum_j w_j w_j^dag with w_j = (I (x) V_j) |Omega>, which
    expands to the defining double sum over matrix units.
    """
    omega = maximally_entangled_vector(ch.m)
    kappa = np.zeros((ch.m * ch.n, ch.m * ch.n), dtype=np.complex128)
    for v in ch.kraus_ops:
        w = kron(np.eye(ch.m), v) @ omega
        kappa += np.outer(w, w.conj())
    return ChoiState(kappa, ch.m, ch.n)


def apply_choi_matrix(kappa, rho, m: int, n: int) -> np.ndarray:
    """m * Tr_A[(rho^T (x) I_n) kappa] for a raw (not validated) Choi-like matrix."""
    k = as_complex_matrix(kappa, "Choi matrix")
    r = as_complex_matrix(rho, "input state")
    if r.shape != (m, m):
        raise ValueError(f"state has shape {r.shape}, expected ({m}, {m})")
    if k.shape != (m * n, m * n):
        raise ValueError(f"Choi matrix has shape {k.shape}, expected ({m * n}, {m * n})")
    out = m * partial_trace(kron(r.T, np.eye(n)) @ k, (m, n), "A")
    return 0.5 * (out + out.conj().T)


def apply_via_choi(cs: ChoiState, rho) -> np.ndarray:
    """Apply the channel dual to ``cs`` to a density matrix."""
    r = require_density(rho, name="input state")
    return apply_choi_matrix(cs.kappa, r, cs.m, cs.n)


def decompose_elementary(
    cs: ChoiState,
    rank_cutoff: float = RANK_CUTOFF,
    degeneracy_atol: float = DEGENERACY_ATOL,
) -> list[ElementaryTransition]:
    """Eigendecompose a Choi state into weighted elementary transitions.

    Eigenvalues below ``rank_cutoff`` are treated as zero and dropped;
    the kept transitions are returned by descending probability and
    reconstruct the Choi matrix. Probabilities closer than
    ``degeneracy_atol`` share a ``degenerate_group`` id.
    """
    eig = eig_hermitian(cs.kappa)
    order = np.argsort(eig.values)[::-1]
    probs = eig.values[order]
    vecs = eig.vectors[:, order]
    keep = probs > rank_cutoff

    kept_p = probs[keep]
    kept_v = vecs[:, keep]

    # Group adjacent probabilities that agree within tolerance.
    groups: list[int | None] = [None] * len(kept_p)
    gid = 0
    i = 0
    while i < len(kept_p):
        j = i
        while j + 1 < len(kept_p) and abs(kept_p[j + 1] - kept_p[j]) <= degeneracy_atol:
            j += 1
        if j > i:
            for t in range(i, j + 1):
                groups[t] = gid
            gid += 1
        i = j + 1

    out = []
    for idx in range(len(kept_p)):
        v = kept_v[:, idx]
        out.append(
            ElementaryTransition(
                probability=float(kept_p[idx]),
                pure_vector=v,
                dual_map_choi=np.outer(v, v.conj()),
                m=cs.m,
                n=cs.n,
                degenerate_group=groups[idx],
            )
        )
    return out


def transition_support(t: ElementaryTransition) -> tuple[int, np.ndarray]:
    """Support of an elementary transition inside H_A.

    Returns ``(dim, basis)`` where the columns of ``basis`` span the
    orthogonal complement of the vectors psi with E(|psi><psi|) = 0,
    computed as the range of transpose(Tr_B kappa).
    """
    red_t = partial_trace(t.dual_map_choi, (t.m, t.n), "B").T
    w, v = np.linalg.eigh(0.5 * (red_t + red_t.conj().T))
    keep = w > SUPPORT_EIG_CUTOFF
    return int(np.count_nonzero(keep)), v[:, keep]


def is_channel(t: ElementaryTransition, atol: float = CHANNEL_ATOL) -> bool:
    """True iff the dual pure state is maximally entangled, i.e. the
    transition is itself a trace-preserving channel."""
    red = partial_trace(t.dual_map_choi, (t.m, t.n), "B")
    return bool(np.linalg.norm(red - np.eye(t.m) / t.m, "fro") <= atol)


@dataclass(frozen=True)
class TransitionDiagnostics:
    support_dim: int
    is_channel: bool
    cost: float | None = None


def transition_diagnostics(t: ElementaryTransition, cost_matrix=None) -> TransitionDiagnostics:
    """Support dimension, channel-ness, and (optionally) cost of a transition."""
    dim, _ = transition_support(t)
    c = None
    if cost_matrix is not None:
        from .linalg import frobenius_inner

        c = frobenius_inner(as_complex_matrix(cost_matrix, "cost matrix"), t.dual_map_choi)
    return TransitionDiagnostics(support_dim=dim, is_channel=is_channel(t), cost=c)


def pure_transition(vector, m: int, n: int, probability: float = 1.0) -> ElementaryTransition:
    """Elementary transition dual to a given pure state of AB."""
    v = require_unit_vector(vector, UNIT_NORM_ATOL, "pure state vector")
    if v.size != m * n:
        raise ValueError(f"vector has length {v.size}, expected m*n = {m * n}")
    return ElementaryTransition(
        probability=float(probability),
        pure_vector=v,
        dual_map_choi=np.outer(v, v.conj()),
        m=m,
        n=n,
    )
