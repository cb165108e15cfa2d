"""Entanglement and structure reporting for Choi states and transitions.

Entropy is reported in bits (base-2 log): the systems of interest here
are qubit registers, and maximal entanglement on an m-level input then
reads as exactly log2(m) bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .choi import ElementaryTransition, decompose_elementary, is_channel, transition_support
from .costs import CostMatrix
from .linalg import frobenius_inner, partial_trace
from .solver import Solution, Status
from .validation import require_unit_vector

COST_AGGREGATION_ATOL = 1e-8


def schmidt(v, dims: tuple[int, int]) -> np.ndarray:
    """Squared Schmidt coefficients of a bipartite unit vector, descending.

    These are the eigenvalues of the A-reduction of |v><v|; they sum to 1
    and are uniform exactly for maximally entangled vectors.
    """
    m, n = dims
    vec = require_unit_vector(v, name="bipartite vector")
    if vec.size != m * n:
        raise ValueError(f"vector has length {vec.size}, expected m*n = {m * n}")
    red = partial_trace(np.outer(vec, vec.conj()), (m, n), "B")
    w = np.linalg.eigvalsh(red)[::-1]
    return np.maximum(w, 0.0)


def entanglement_entropy(v, dims: tuple[int, int]) -> float:
    """Entropy of entanglement in bits, with 0 log 0 = 0."""
    lam = schmidt(v, dims)
    nz = lam[lam > 1e-18]
    return float(-(nz * np.log2(nz)).sum())


@dataclass(frozen=True)
class TransitionReport:
    probability: float
    cost: float | None
    entanglement_entropy: float
    schmidt_coeffs: np.ndarray
    support_dim: int
    is_channel: bool
    degenerate_group: int | None


@dataclass(frozen=True)
class ReportSummary:
    total_cost: float
    transition_cost_sum: float
    weighted_entropy: float
    n_transitions: int


def report_transition(t: ElementaryTransition, cost: CostMatrix | None = None) -> TransitionReport:
    lam = schmidt(t.pure_vector, (t.m, t.n))
    nz = lam[lam > 1e-18]
    entropy = float(-(nz * np.log2(nz)).sum())
    dim, _ = transition_support(t)
    c = frobenius_inner(cost.matrix, t.dual_map_choi) if cost is not None else None
    return TransitionReport(
        probability=t.probability,
        cost=c,
        entanglement_entropy=entropy,
        schmidt_coeffs=lam,
        support_dim=dim,
        is_channel=is_channel(t),
        degenerate_group=t.degenerate_group,
    )


def full_report(s: Solution, cost: CostMatrix) -> tuple[list[TransitionReport], ReportSummary]:
    """Per-transition reports for a converged solution plus an aggregate.

    The probability-weighted transition costs must reproduce the total
    cost Tr(C kappa); a violation beyond tolerance indicates a broken
    decomposition and raises.
    """
    if s.status is not Status.CONVERGED:
        raise ValueError(f"full_report needs a converged solution, got status {s.status.value}")
    cs = s.kappa_star
    reports = [report_transition(t, cost) for t in decompose_elementary(cs)]
    total = frobenius_inner(cost.matrix, cs.kappa)
    agg = sum(r.probability * r.cost for r in reports)
    if abs(agg - total) > COST_AGGREGATION_ATOL:
        raise ValueError(
            f"transition costs do not aggregate: sum p*cost = {agg!r} vs Tr(C kappa) = {total!r}"
        )
    weighted_entropy = sum(r.probability * r.entanglement_entropy for r in reports)
    summary = ReportSummary(
        total_cost=total,
        transition_cost_sum=float(agg),
        weighted_entropy=float(weighted_entropy),
        n_transitions=len(reports),
    )
    return reports, summary
