"""Input validation helpers shared across the package.

All tolerances are absolute; every operator in scope has norm of order one
to a few tens, so relative scaling would only obscure failures.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_ATOL = 1e-12
DENSITY_TRACE_ATOL = 1e-9
DENSITY_EIG_ATOL = 1e-9
UNIT_NORM_ATOL = 1e-10


def as_complex_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting anything else."""
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    return a


def require_square(x, name: str = "matrix") -> np.ndarray:
    a = as_complex_matrix(x, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def require_hermitian(x, atol: float = HERMITIAN_ATOL, name: str = "operator") -> np.ndarray:
    """Validate Hermiticity entrywise; reject rather than symmetrize.

    Inputs failing the check are almost always data errors, and silently
    symmetrizing them would let those errors propagate.
    """
    a = require_square(x, name)
    resid = np.max(np.abs(a - a.conj().T))
    if resid > atol:
        raise ValueError(f"{name} is not Hermitian: max |x - x^dag| = {resid:.3e} > {atol:.1e}")
    return a


def require_density(x, atol: float = DENSITY_TRACE_ATOL, name: str = "state") -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD."""
    a = require_hermitian(x, max(HERMITIAN_ATOL, atol), name)
    tr = np.trace(a).real
    if abs(tr - 1.0) > atol:
        raise ValueError(f"{name} has trace {tr!r}, expected 1 within {atol:.1e}")
    lo = np.linalg.eigvalsh(a)[0]
    if lo < -max(DENSITY_EIG_ATOL, atol):
        raise ValueError(f"{name} is not PSD: smallest eigenvalue {lo:.3e}")
    return a


def require_unit_vector(v, atol: float = UNIT_NORM_ATOL, name: str = "vector") -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128).reshape(-1)
    nrm = np.linalg.norm(a)
    if abs(nrm - 1.0) > atol:
        raise ValueError(f"{name} has norm {nrm!r}, expected 1 within {atol:.1e}")
    return a
