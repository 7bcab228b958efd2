"""Numerically exact ground state by symmetric eigendecomposition.

The Fock truncation is grown by doubling until the ground energy is
converged; energies decrease monotonically along the ladder because the
truncated spaces are nested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import ATOM_DIM, FockTruncation, ModelParams, build_hamiltonian


@dataclass(frozen=True, eq=False)
class JointState:
    """Real state vector on the product basis, in the `model` ordering.

    Unit norm; the sign is fixed so the largest-magnitude coefficient is
    positive (a global sign carries no physics).
    """

    coefficients: np.ndarray
    n_max: int


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    energy: float
    state: JointState
    n_max_used: int
    convergence_gap: float  # |E(n_max) - E(n_max/2)|
    excited_gap: float      # E_1 - E_0 at the final truncation
    residual: float         # ||H v - E v||_2 at the final truncation


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    return -vec if vec[k] < 0 else vec


def make_state(coefficients: np.ndarray, n_max: int) -> JointState:
    """Normalize, apply the sign convention and wrap as a JointState."""
    vec = np.asarray(coefficients, dtype=float)
    if vec.shape != (ATOM_DIM * (n_max + 1),):
        raise ValueError(
            f"expected length {ATOM_DIM * (n_max + 1)} for n_max={n_max}, "
            f"got shape {vec.shape}"
        )
    nrm = float(np.linalg.norm(vec))
    if nrm == 0.0:
        raise ValueError("zero vector cannot be a state")
    return JointState(_canonical_sign(vec / nrm), n_max)


def pad_state(state: JointState, n_max: int) -> JointState:
    """Extend a state with zero amplitude on the added Fock levels."""
    if n_max < state.n_max:
        raise ValueError(f"cannot pad from n_max={state.n_max} down to {n_max}")
    if n_max == state.n_max:
        return state
    vec = np.zeros(ATOM_DIM * (n_max + 1))
    vec[: state.coefficients.size] = state.coefficients
    return JointState(vec, n_max)


def fidelity(a: JointState, b: JointState) -> float:
    """|<a, b>|; global sign is unphysical.  Both states must share n_max."""
    if a.n_max != b.n_max:
        raise ValueError(
            f"states live on different truncations ({a.n_max} vs {b.n_max}); "
            "pad the shorter one with pad_state first"
        )
    return float(abs(a.coefficients @ b.coefficients))


def ground_state_at(
    params: ModelParams, n_max: int
) -> tuple[float, JointState, float, float]:
    """Lowest eigenpair at a fixed truncation.

    Returns (energy, state, excited_gap, residual).
    """
    h = build_hamiltonian(params, FockTruncation(n_max))
    vals, vecs = scipy.linalg.eigh(h, subset_by_index=(0, 1))
    energy = float(vals[0])
    vec = _canonical_sign(vecs[:, 0])
    residual = float(np.linalg.norm(h @ vec - energy * vec))
    return energy, JointState(vec, n_max), float(vals[1] - vals[0]), residual


def ground_state(
    params: ModelParams,
    tol: float = 1e-10,
    n_max_start: int = 16,
    n_max_cap: int = 4096,
) -> GroundStateResult:
    """Ground state with the truncation doubled until |dE| < tol.

    ``tol`` is an absolute energy tolerance in the units of ``params``.
    Raises RuntimeError if the cap is reached without convergence, which
    signals pathological parameters rather than a tight tolerance.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n_max_start < 8:
        raise ValueError(f"n_max_start must be >= 8, got {n_max_start}")

    n_max = n_max_start
    energy_prev, _, _, _ = ground_state_at(params, n_max)
    while True:
        n_max *= 2
        if n_max > n_max_cap:
            raise RuntimeError(
                f"ground state not converged to {tol:g} by n_max={n_max_cap} "
                f"(omega_a={params.omega_a}, omega_c={params.omega_c}, g={params.g})"
            )
        energy, state, excited_gap, residual = ground_state_at(params, n_max)
        gap = abs(energy - energy_prev)
        if gap < tol:
            return GroundStateResult(
                energy=energy,
                state=state,
                n_max_used=n_max,
                convergence_gap=gap,
                excited_gap=excited_gap,
                residual=residual,
            )
        energy_prev = energy
