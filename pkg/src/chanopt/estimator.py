"""Scikit-learn style front end for the optimal-channel solver.

``OptimalChannelTransport`` treats the prescribed input/output density
matrices as supervised pairs: ``fit`` solves the semidefinite program for
the cheapest channel realizing them, and ``transform``/``predict`` apply
the fitted channel to new states. Parameters follow the usual
``get_params``/``set_params`` contract, so the estimator clones and
grid-searches like any other.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils.validation import check_is_fitted

from .choi import apply_via_choi, decompose_elementary
from .costs import CostMatrix
from .solver import SolverOptions, Status, TransportProblem, solve
from .validation import require_density


def _as_state_list(x):
    if x is None:
        return []
    arr = np.asarray(x)
    if arr.ndim == 2:
        return [arr]
    if arr.ndim == 3:
        return list(arr)
    raise ValueError(f"expected a density matrix or a stack of them, got shape {arr.shape}")


class OptimalChannelTransport(BaseEstimator):
    """Fit the cheapest quantum channel mapping given inputs to outputs.

    Parameters
    ----------
    cost : CostMatrix
        Hermitian cost observable on the composite input/output system;
        fixes the input and output dimensions.
    tol : float
        Primal/dual residual threshold for the splitting iteration.
    max_iters : int
        Iteration budget.
    over_relaxation : float
        Relaxation factor in [1, 2).
    penalty : float
        ADMM penalty parameter.

    Attributes
    ----------
    choi_ : ChoiState
        Choi state of the fitted channel.
    cost_ : float
        Optimal cost Tr(C kappa*).
    status_ : str
        Solver status ("converged" or "max_iters").
    n_iter_ : int
        Iterations used.
    constraint_residuals_ : tuple of float
        Frobenius residual per fitted pair.
    solution_ : Solution
        Full solver output.
    """

    def __init__(self, cost=None, tol=1e-8, max_iters=50000, over_relaxation=1.6, penalty=1.0):
        self.cost = cost
        self.tol = tol
        self.max_iters = max_iters
        self.over_relaxation = over_relaxation
        self.penalty = penalty

    def fit(self, X, y=None):
        """Solve for the optimal channel.

        ``X`` may be a sequence of input density matrices with ``y`` the
        matching outputs, or a sequence of (input, output) pairs with
        ``y=None``. An empty ``X`` fits the unconstrained problem.
        """
        if not isinstance(self.cost, CostMatrix):
            raise ValueError("cost must be a CostMatrix instance")
        if y is None:
            pairs = [(rin, rout) for rin, rout in (X or [])]
        else:
            ins, outs = _as_state_list(X), _as_state_list(y)
            if len(ins) != len(outs):
                raise ValueError(f"got {len(ins)} inputs but {len(outs)} outputs")
            pairs = list(zip(ins, outs))

        problem = TransportProblem(
            m=self.cost.m,
            n=self.cost.n,
            cost=self.cost,
            constraints=tuple(pairs),
            options=SolverOptions(
                tol=self.tol,
                max_iters=self.max_iters,
                over_relaxation=self.over_relaxation,
                penalty=self.penalty,
            ),
        )
        sol = solve(problem)
        if sol.status is Status.INFEASIBLE:
            raise ValueError("the prescribed input/output pairs admit no channel")
        if sol.status is Status.MAX_ITERS:
            warnings.warn(
                f"solver stopped at the iteration budget with primal residual {sol.primal_residual:.3e}",
                ConvergenceWarning,
                stacklevel=2,
            )
        self.solution_ = sol
        self.choi_ = sol.kappa_star
        self.cost_ = sol.cost_value
        self.status_ = sol.status.value
        self.n_iter_ = sol.iterations
        self.constraint_residuals_ = sol.constraint_residuals
        return self

    def transform(self, X):
        """Apply the fitted channel to one density matrix or a stack."""
        check_is_fitted(self, "choi_")
        arr = np.asarray(X)
        if arr.ndim == 2:
            return apply_via_choi(self.choi_, require_density(arr))
        return np.stack([apply_via_choi(self.choi_, require_density(r)) for r in arr])

    def predict(self, X):
        """Alias of :meth:`transform`."""
        return self.transform(X)

    def transitions(self):
        """Elementary transitions of the fitted channel."""
        check_is_fitted(self, "choi_")
        return decompose_elementary(self.choi_)
