"""Dense complex linear algebra primitives for small composite systems.

Conventions used throughout the package:

* Operators are dense ``numpy`` complex arrays.
* A bipartite operator on ``H_A (dim m) x H_B (dim n)`` is an
  ``(m*n, m*n)`` array whose composite row index is ``i_A * n + i_B``
  (the ordering produced by ``numpy.kron(a_op, b_op)``).
* Basis indexing is 0-based: ``|0>, ..., |m-1>``.
* Tolerances are absolute.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .validation import require_hermitian, require_square

# The Kronecker product realizes every tensor product in the package.
kron = np.kron


def partial_trace(x, dims: tuple[int, int], which: str = "B") -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``which`` names the subsystem that is traced out: ``"B"`` returns the
    m x m reduction, ``"A"`` the n x n one. The full trace is preserved.
    """
    m, n = dims
    a = require_square(x, "bipartite operator")
    if a.shape[0] != m * n:
        raise ValueError(f"operator has dim {a.shape[0]}, expected m*n = {m * n}")
    r = a.reshape(m, n, m, n)
    if which == "B":
        return np.einsum("iaja->ij", r)
    if which == "A":
        return np.einsum("iaib->ab", r)
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def partial_transpose_a(x, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the A factor: block (i, j) swaps with block (j, i).

    Basis dependent by construction; uses the same fixed basis as the
    Choi correspondence in :mod:`chanopt.choi`. Involutive.
    """
    m, n = dims
    a = require_square(x, "bipartite operator")
    if a.shape[0] != m * n:
        raise ValueError(f"operator has dim {a.shape[0]}, expected m*n = {m * n}")
    return a.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues with orthonormal eigenvector columns.

    Within a degenerate eigenspace the basis is deterministic for a given
    backend but not canonical; callers must not rely on a particular
    choice inside an eigenspace.
    """

    values: np.ndarray
    vectors: np.ndarray


def eig_hermitian(x) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian operator, eigenvalues ascending."""
    a = require_hermitian(x)
    w, v = np.linalg.eigh(a)
    return EigenDecomposition(values=w, vectors=v)


def psd_project(x) -> np.ndarray:
    """Nearest (Frobenius) positive semidefinite matrix.

    Clamps negative eigenvalues to zero and reconstructs; idempotent and
    the identity on PSD inputs.
    """
    a = require_hermitian(x)
    w, v = np.linalg.eigh(a)
    w = np.maximum(w, 0.0)
    y = (v * w) @ v.conj().T
    return 0.5 * (y + y.conj().T)


def frobenius_inner(a, b) -> float:
    """Tr(a b), real for Hermitian arguments; symmetric in a and b."""
    x = require_square(a, "left operand")
    y = require_square(b, "right operand")
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.einsum("ij,ji->", x, y).real)


@lru_cache(maxsize=32)
def _triu_indices(d: int):
    return np.triu_indices(d, 1)


def vectorize_hermitian(x) -> np.ndarray:
    """Isometry from d x d Hermitian matrices onto R^(d^2).

    Coordinates are [diagonal; sqrt(2) Re(upper); sqrt(2) Im(upper)] with
    the strict upper triangle in row-major order, so the Frobenius inner
    product of two Hermitian matrices equals the dot product of their
    images.
    """
    a = np.asarray(x, dtype=np.complex128)
    d = a.shape[0]
    iu, ju = _triu_indices(d)
    up = a[iu, ju]
    return np.concatenate([a.diagonal().real, np.sqrt(2.0) * up.real, np.sqrt(2.0) * up.imag])


def devectorize_hermitian(v, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize_hermitian`."""
    v = np.asarray(v, dtype=np.float64)
    if v.size != dim * dim:
        raise ValueError(f"coordinate vector has size {v.size}, expected {dim * dim}")
    k = dim * (dim - 1) // 2
    out = np.zeros((dim, dim), dtype=np.complex128)
    np.fill_diagonal(out, v[:dim])
    iu, ju = _triu_indices(dim)
    up = (v[dim : dim + k] + 1j * v[dim + k :]) / np.sqrt(2.0)
    out[iu, ju] = up
    out[ju, iu] = up.conj()
    return out


def hermitian_basis(d: int):
    """Yield the orthonormal Hermitian basis dual to ``vectorize_hermitian``.

    The k-th yielded element B_k satisfies Tr(B_k x) = vectorize_hermitian(x)[k].
    """
    for i in range(d):
        e = np.zeros((d, d), dtype=np.complex128)
        e[i, i] = 1.0
        yield e
    iu, ju = _triu_indices(d)
    for i, j in zip(iu, ju):
        e = np.zeros((d, d), dtype=np.complex128)
        e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
        yield e
    for i, j in zip(iu, ju):
        e = np.zeros((d, d), dtype=np.complex128)
        e[i, j] = 1j / np.sqrt(2.0)
        e[j, i] = -1j / np.sqrt(2.0)
        yield e
