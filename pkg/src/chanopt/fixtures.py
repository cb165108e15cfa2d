"""Built-in example problems with closed-form optima.

Three named fixtures are provided, each bundling a problem instance with
the values its solution must reproduce:

* ``energy``: two-level energy cost with x-spin coupling. With the
  flip task |1><1| -> |0><0| the optimum is the bit-flip unitary at cost
  equal to the coupling; unconstrained, the optimum is
  -sqrt(coupling^2 + splitting^2/4). The two negative cost eigenvalues
  are the coupling and -sqrt(coupling^2 + splitting^2).
* ``time``: gate-duration cost from four unitaries, with the task
  |0><0| -> |1><1|. For k <= 1 the bit flip is optimal at cost k; for
  k >= 1 a rank-2 channel mixing the bit flip with a reset beats it at
  cost 1 + k/2 - 1/(2k), with transition weights (1 -+ 1/k^2)/2.
  Unconstrained, doing nothing is free.
* ``mindisturb``: quadratic generator costs (per-spin Paulis or the
  discrete position/momentum pair). The maximally entangled vector is a
  null vector of the cost, and the identity channel is the unconstrained
  optimum at cost zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .choi import KrausChannel, channel_to_choi, decompose_elementary, maximally_entangled_vector
from .costs import (
    PAULI_X,
    cost_quadratic_generators,
    energy_cost,
    gate_time_cost,
    schwinger_generator_set,
    spin_generator_set,
)
from .solver import SolverOptions, TransportProblem, solve


def _pure(i: int, d: int = 2) -> np.ndarray:
    r = np.zeros((d, d), dtype=np.complex128)
    r[i, i] = 1.0
    return r


def bit_flip_choi() -> np.ndarray:
    return channel_to_choi(KrausChannel(2, 2, (PAULI_X,))).kappa


def identity_choi(m: int) -> np.ndarray:
    v = maximally_entangled_vector(m)
    return np.outer(v, v.conj())


def clamped_flip_choi(k: float) -> np.ndarray:
    """Choi matrix of the optimal flip channel for k >= 1.

    The channel sends rho to [[rho_11/k^2, rho_10/k], [rho_01/k,
    rho_00 + (1 - 1/k^2) rho_11]]; its Kraus operators are a damped swap
    and a reset onto |1>.
    """
    if k < 1:
        raise ValueError(f"this channel is trace preserving only for k >= 1, got {k}")
    kap = np.zeros((4, 4), dtype=np.complex128)
    kap[1, 1] = 0.5
    kap[1, 2] = kap[2, 1] = 1.0 / (2.0 * k)
    kap[2, 2] = 1.0 / (2.0 * k * k)
    kap[3, 3] = (1.0 - 1.0 / k**2) / 2.0
    return kap


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    expected: float
    actual: float
    atol: float

    @property
    def passed(self) -> bool:
        return abs(self.actual - self.expected) <= self.atol


def energy_fixture_checks(
    splitting: float = 1.0, coupling: float = -1.0, options: SolverOptions | None = None
) -> list[FixtureCheck]:
    opts = options or SolverOptions()
    c = energy_cost(splitting, coupling)
    checks = []

    low = -np.sqrt(coupling**2 + splitting**2)
    eigs = np.linalg.eigvalsh(c.matrix)
    checks.append(FixtureCheck("cost eigenvalue: coupling", coupling, float(eigs[1]), 1e-9))
    checks.append(FixtureCheck("cost eigenvalue: lowest", low, float(eigs[0]), 1e-9))

    flip = TransportProblem(2, 2, c, ((_pure(1), _pure(0)),), opts)
    s = solve(flip)
    checks.append(FixtureCheck("flip-task optimal cost", coupling, s.cost_value, 1e-5))
    dist = np.linalg.norm(s.kappa_star.kappa - bit_flip_choi(), "fro") if s.kappa_star else np.inf
    checks.append(FixtureCheck("flip-task channel is the bit flip", 0.0, float(dist), 1e-4))

    free = TransportProblem(2, 2, c, (), opts)
    s2 = solve(free)
    expected = -np.sqrt(coupling**2 + splitting**2 / 4)
    checks.append(FixtureCheck("unconstrained optimal cost", expected, s2.cost_value, 1e-5))
    return checks


def time_fixture_checks(k: float = 2.0, options: SolverOptions | None = None) -> list[FixtureCheck]:
    opts = options or SolverOptions()
    c = gate_time_cost(k)
    checks = []

    eigs = np.linalg.eigvalsh(c.matrix)
    for val, want in zip(eigs, sorted((0.0, k, 2.0, k + 2.0))):
        checks.append(FixtureCheck(f"cost eigenvalue {want:g}", want, float(val), 1e-9))

    flip = TransportProblem(2, 2, c, ((_pure(0), _pure(1)),), opts)
    s = solve(flip)
    if k <= 1:
        checks.append(FixtureCheck("flip-task optimal cost", k, s.cost_value, 1e-5))
        dist = np.linalg.norm(s.kappa_star.kappa - bit_flip_choi(), "fro")
        checks.append(FixtureCheck("flip-task channel is the bit flip", 0.0, float(dist), 1e-4))
    else:
        want = 1.0 + k / 2.0 - 1.0 / (2.0 * k)
        checks.append(FixtureCheck("flip-task optimal cost", want, s.cost_value, 1e-5))
        dist = np.linalg.norm(s.kappa_star.kappa - clamped_flip_choi(k), "fro")
        checks.append(FixtureCheck("flip-task channel matches closed form", 0.0, float(dist), 1e-4))
        weights = sorted(t.probability for t in decompose_elementary(s.kappa_star))
        checks.append(FixtureCheck("light transition weight", (1 - 1 / k**2) / 2, weights[0], 1e-4))
        checks.append(FixtureCheck("heavy transition weight", (1 + 1 / k**2) / 2, weights[-1], 1e-4))

    free = TransportProblem(2, 2, c, (), opts)
    s2 = solve(free)
    checks.append(FixtureCheck("unconstrained optimal cost", 0.0, s2.cost_value, 1e-6))
    dist = np.linalg.norm(s2.kappa_star.kappa - identity_choi(2), "fro")
    checks.append(FixtureCheck("unconstrained channel is the identity", 0.0, float(dist), 1e-4))
    return checks


def mindisturb_fixture_checks(
    spins: int = 1, levels: int = 2, options: SolverOptions | None = None
) -> list[FixtureCheck]:
    opts = options or SolverOptions()
    checks = []
    sets = [
        (f"spin r={spins}", cost_quadratic_generators(spin_generator_set(spins))),
        (f"schwinger m={levels}", cost_quadratic_generators(schwinger_generator_set(levels))),
    ]
    for tag, c in sets:
        m = c.m
        omega = maximally_entangled_vector(m)
        checks.append(
            FixtureCheck(f"{tag}: cost annihilates the entangled vector", 0.0,
                         float(np.linalg.norm(c.matrix @ omega)), 1e-10)
        )
        s = solve(TransportProblem(m, m, c, (), opts))
        checks.append(FixtureCheck(f"{tag}: unconstrained optimal cost", 0.0, s.cost_value, 1e-6))
        dist = np.linalg.norm(s.kappa_star.kappa - identity_choi(m), "fro")
        checks.append(FixtureCheck(f"{tag}: optimal channel is the identity", 0.0, float(dist), 1e-3))
    return checks


FIXTURES = {
    "energy": energy_fixture_checks,
    "time": time_fixture_checks,
    "mindisturb": mindisturb_fixture_checks,
}
