"""Cost matrix construction.

Three recipes are provided:

* ``cost_from_pure_mixture``: assign a real cost to each of a set of pure
  states of AB (not necessarily orthogonal) and sum the weighted
  projectors. Non-orthogonal states can push eigenvalues, and hence the
  optimal cost, below every constituent cost.
* ``cost_observable_difference``: I (x) O_B - O_A^T (x) I, penalizing a
  difference in corresponding observables. The transpose is taken in the
  same fixed basis as the Choi correspondence, which makes the maximally
  entangled vector a null vector when O_A = O_B.
* ``cost_quadratic_generators``: sum_j |I (x) g_j - g_j^T (x) I|^2 over a
  set of Hermitian generators of the full matrix algebra; a squared
  distance with the generators in place of coordinates. PSD with the
  maximally entangled vector in its kernel, so an unconstrained optimum
  is the identity channel.

Two concrete 2-level cost matrices used by the built-in example fixtures
(`energy_cost`, `gate_time_cost`) and two stock generator sets (per-spin
Paulis, discrete position/momentum pair) are included.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .choi import maximally_entangled_vector
from .linalg import kron
from .validation import require_hermitian, require_unit_vector

SPAN_RANK_CUTOFF = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


class CostSpanWarning(UserWarning):
    """Mixture terms span a proper subspace, leaving zero-cost directions."""


@dataclass(frozen=True)
class CostMatrix:
    """Hermitian observable on AB defining the channel cost Tr(C kappa)."""

    m: int
    n: int
    matrix: np.ndarray
    provenance: str = "raw"

    def __post_init__(self):
        c = require_hermitian(self.matrix, name="cost matrix")
        if c.shape != (self.m * self.n, self.m * self.n):
            raise ValueError(f"cost matrix has shape {c.shape}, expected ({self.m * self.n}, {self.m * self.n})")
        object.__setattr__(self, "matrix", c)


@dataclass(frozen=True)
class GeneratorSet:
    """Hermitian m x m matrices expected to generate the full algebra M_m.

    The generation property is checked numerically: the span of all
    products of generators up to length 2*log2(m) + 2 must reach
    dimension m^2. That bound is a practical sufficient test at the
    dimensions this package targets; pass ``check_generation=False`` to
    skip it (e.g. for deliberately degenerate sets).
    """

    m: int
    generators: tuple
    check_generation: bool = True

    def __post_init__(self):
        gens = tuple(require_hermitian(g, name="generator") for g in self.generators)
        if not gens:
            raise ValueError("need at least one generator")
        for g in gens:
            if g.shape != (self.m, self.m):
                raise ValueError(f"generator has shape {g.shape}, expected ({self.m}, {self.m})")
        object.__setattr__(self, "generators", gens)
        if self.check_generation and not generates_full_algebra(gens, self.m):
            raise ValueError(
                f"generators do not span M_{self.m} under products up to length {_max_word_length(self.m)}"
            )


def _max_word_length(m: int) -> int:
    return int(np.ceil(2 * np.log2(max(m, 2)))) + 2


def _orthonormal_rows(rows: np.ndarray, rank_cutoff: float) -> np.ndarray:
    norms = np.linalg.norm(rows, axis=1)
    rows = rows[norms > rank_cutoff] / norms[norms > rank_cutoff, None]
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    return vt[s > rank_cutoff * max(1.0, s[0])]


def generates_full_algebra(generators, m: int, rank_cutoff: float = SPAN_RANK_CUTOFF) -> bool:
    """Numerically test whether iterated products span all of M_m.

    Tracks an orthonormal basis of the span of all words in the
    generators; every word arises by left-multiplying shorter words, so
    iterating on the reduced basis is lossless.
    """
    d2 = m * m
    rows = [np.eye(m, dtype=np.complex128).reshape(d2)]
    rows += [np.asarray(g, dtype=np.complex128).reshape(d2) for g in generators]
    basis = _orthonormal_rows(np.vstack(rows), rank_cutoff)
    for _ in range(_max_word_length(m)):
        if basis.shape[0] == d2:
            return True
        new = [(g @ b.reshape(m, m)).reshape(d2) for b in basis for g in generators]
        grown = _orthonormal_rows(np.vstack([basis] + new), rank_cutoff)
        if grown.shape[0] == basis.shape[0]:
            return False  # closed under multiplication, span cannot grow further
        basis = grown
    return basis.shape[0] == d2


def cost_from_pure_mixture(m: int, n: int, terms) -> CostMatrix:
    """C = sum_alpha k_alpha |v_alpha><v_alpha| for (cost, vector) pairs.

    Warns when the vectors span fewer than m*n dimensions, since every
    direction orthogonal to all of them is then inadvertently assigned
    zero cost.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one (cost, vector) term")
    d = m * n
    c = np.zeros((d, d), dtype=np.complex128)
    stacked = np.zeros((len(terms), d), dtype=np.complex128)
    for idx, (k, vec) in enumerate(terms):
        v = require_unit_vector(vec, name=f"mixture vector {idx}")
        if v.size != d:
            raise ValueError(f"mixture vector {idx} has length {v.size}, expected {d}")
        c += float(k) * np.outer(v, v.conj())
        stacked[idx] = v
    span = int(np.linalg.matrix_rank(stacked, tol=SPAN_RANK_CUTOFF))
    if span < d:
        warnings.warn(
            f"mixture vectors span only {span} of {d} dimensions; "
            "the orthogonal complement carries zero cost",
            CostSpanWarning,
            stacklevel=2,
        )
    return CostMatrix(m=m, n=n, matrix=0.5 * (c + c.conj().T), provenance="mixture")


def cost_observable_difference(o_a, o_b) -> CostMatrix:
    """I_A (x) O_B - O_A^T (x) I_B for corresponding observables."""
    a = require_hermitian(o_a, name="input observable")
    b = require_hermitian(o_b, name="output observable")
    m, n = a.shape[0], b.shape[0]
    c = kron(np.eye(m), b) - kron(a.T, np.eye(n))
    return CostMatrix(m=m, n=n, matrix=c, provenance="observable_difference")


def cost_quadratic_generators(gs: GeneratorSet) -> CostMatrix:
    """sum_j |I (x) g_j - g_j^T (x) I|^2; PSD and annihilates the
    maximally entangled vector."""
    m = gs.m
    c = np.zeros((m * m, m * m), dtype=np.complex128)
    for g in gs.generators:
        d = kron(np.eye(m), g) - kron(g.T, np.eye(m))
        c += d.conj().T @ d
    return CostMatrix(m=m, n=m, matrix=0.5 * (c + c.conj().T), provenance="quadratic_generators")


def spin_generator_set(r: int, check_generation: bool = True) -> GeneratorSet:
    """The 3r single-spin Pauli observables on r spins (m = 2^r), ordered
    by (spin position, Pauli index)."""
    if r < 1:
        raise ValueError(f"need at least one spin, got {r}")
    m = 2**r
    gens = []
    for i in range(r):
        for sigma in _PAULIS:
            op = np.eye(1, dtype=np.complex128)
            for pos in range(r):
                op = kron(op, sigma if pos == i else np.eye(2))
            gens.append(op)
    return GeneratorSet(m=m, generators=tuple(gens), check_generation=check_generation)


def fourier_matrix(m: int) -> np.ndarray:
    """Unitary discrete Fourier transform, F_jk = exp(-2 pi i j k / m) / sqrt(m)."""
    j = np.arange(m)
    return np.exp(-2j * np.pi * np.outer(j, j) / m) / np.sqrt(m)


def schwinger_pair(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Discrete position h1 = diag(0..m-1) and momentum h2 = F^dag h1 F.

    The pair generates M_m: h1's commutant is the diagonal algebra, h2's
    is its Fourier conjugate, and they intersect in multiples of the
    identity.
    """
    if m < 2:
        raise ValueError(f"need dimension >= 2, got {m}")
    h1 = np.diag(np.arange(m, dtype=np.float64)).astype(np.complex128)
    f = fourier_matrix(m)
    h2 = f.conj().T @ h1 @ f
    return h1, 0.5 * (h2 + h2.conj().T)


def schwinger_generator_set(m: int, check_generation: bool = True) -> GeneratorSet:
    h1, h2 = schwinger_pair(m)
    return GeneratorSet(m=m, generators=(h1, h2), check_generation=check_generation)


def energy_cost(splitting: float, coupling: float) -> CostMatrix:
    """Two-level energy cost with an x-spin preserving coupling.

    With H = diag(splitting/2, -splitting/2), builds

        C = (I (x) H - H (x) I) + coupling * sigma_x (x) sigma_x,

    which penalizes raising the output energy while the (negative)
    coupling rewards preserving x spin. H is real diagonal, so the
    observable-difference recipe applies verbatim.
    """
    if splitting <= 0:
        raise ValueError(f"level splitting must be > 0, got {splitting}")
    if coupling >= 0:
        raise ValueError(f"spin coupling must be < 0, got {coupling}")
    h = np.diag([splitting / 2, -splitting / 2]).astype(np.complex128)
    c = cost_observable_difference(h, h).matrix + coupling * kron(PAULI_X, PAULI_X)
    return CostMatrix(m=2, n=2, matrix=c, provenance="energy")


def _gate_unitaries() -> tuple[np.ndarray, ...]:
    u1 = np.eye(2, dtype=np.complex128)
    u2 = PAULI_X
    u3 = PAULI_Z
    return u1, u2, u3, u3 @ u2


def gate_time_cost(k: float) -> CostMatrix:
    """Transition-time cost built from four unitary channels.

    The identity, bit flip, phase flip and their composition get costs
    (0, k, 2, k+2): doing nothing is free and the combined gate takes the
    sum of its parts. The Choi vectors of the four unitaries are mutually
    orthogonal and maximally entangled, so they are exactly the
    eigenvectors of C and the costs its eigenvalues.
    """
    if k <= 0:
        raise ValueError(f"flip cost must be > 0, got {k}")
    costs = (0.0, float(k), 2.0, float(k) + 2.0)
    omega = maximally_entangled_vector(2)
    terms = [(kj, kron(np.eye(2), u) @ omega) for kj, u in zip(costs, _gate_unitaries())]
    cm = cost_from_pure_mixture(2, 2, terms)
    return CostMatrix(m=2, n=2, matrix=cm.matrix, provenance="time")
