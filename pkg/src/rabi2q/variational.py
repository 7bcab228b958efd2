"""Coherent-state trial ground state and its two-parameter minimization.

The trial state is

    |psi(alpha, beta)> = (|alpha>|m=-1> + beta |0>|m=0> + |-alpha>|m=+1>) / N,

with |alpha> a real-amplitude coherent state and N^2 = 2 + beta^2.  Its
energy expectation has the closed form implemented by
``energy_expectation``; setting its beta derivative to zero gives a
quadratic in beta that is solved exactly, so the minimization reduces to a
one-dimensional search in alpha on [0, g/omega_c].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .exact import JointState, make_state
from .model import SQRT2, FockTruncation, ModelParams, coherent_state_vector

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class VariationalSolution:
    alpha: float
    beta: float
    energy: float

    @property
    def norm_sq(self) -> float:
        return 2.0 + self.beta * self.beta


def energy_expectation(alpha: float, beta: float, params: ModelParams) -> float:
    """<H> in the trial state:

    2/(2 + beta^2) * (alpha^2 w_c - 2 alpha g + sqrt2 beta w_a exp(-alpha^2/2)).
    """
    return (
        2.0
        / (2.0 + beta * beta)
        * (
            alpha * alpha * params.omega_c
            - 2.0 * alpha * params.g
            + SQRT2 * beta * params.omega_a * math.exp(-alpha * alpha / 2.0)
        )
    )


def beta_stationary(alpha: float, params: ModelParams) -> tuple[float, float]:
    """Both roots of d<H>/dbeta = 0 at fixed alpha, lower root first.

    With A = alpha^2 w_c - 2 alpha g and B = sqrt2 w_a exp(-alpha^2/2) the
    condition is B beta^2 + 2 A beta - 2 B = 0 (B > 0 always), so the roots
    are (-A -/+ sqrt(A^2 + 2 B^2)) / B and their product is -2.  The lower
    root always minimizes <H> over beta, the upper one maximizes it.
    """
    a = alpha * alpha * params.omega_c - 2.0 * alpha * params.g
    b = SQRT2 * params.omega_a * math.exp(-alpha * alpha / 2.0)
    root = math.sqrt(a * a + 2.0 * b * b)
    return (-a - root) / b, (-a + root) / b


def stationarity_residuals(
    alpha: float, beta: float, params: ModelParams
) -> tuple[float, float]:
    """Residuals of the two first-order conditions at (alpha, beta).

    The first is the alpha condition rearranged for beta, the second the
    beta condition rearranged for g; both vanish at a true stationary
    point.  Only defined for alpha != 0 and beta != 0.
    """
    wa, wc, g = params.omega_a, params.omega_c, params.g
    r_alpha = beta - SQRT2 * (alpha * wc - g) * math.exp(alpha * alpha / 2.0) / (
        alpha * wa
    )
    r_beta = g - (
        alpha * alpha * beta * wc
        - (2.0 - beta * beta) * (wa / SQRT2) * math.exp(-alpha * alpha / 2.0)
    ) / (2.0 * alpha * beta)
    return r_alpha, r_beta


def small_g_approx(params: ModelParams) -> tuple[float, float]:
    """Leading small-coupling forms of the minimizing (alpha, beta).

    alpha ~ g/(w_a + w_c) and beta ~ -sqrt2 + g^2 (2 w_a + w_c) /
    (sqrt2 w_a (w_a + w_c)^2), valid for g < w_a + w_c.
    """
    wa, wc, g = params.omega_a, params.omega_c, params.g
    alpha = g / (wa + wc)
    beta = -SQRT2 + g * g * (2.0 * wa + wc) / (SQRT2 * wa * (wa + wc) ** 2)
    return alpha, beta


def _lower_branch_energy(alpha: float, params: ModelParams) -> float:
    lo, hi = beta_stationary(alpha, params)
    return min(
        energy_expectation(alpha, lo, params), energy_expectation(alpha, hi, params)
    )


def solve(params: ModelParams) -> VariationalSolution:
    """Minimize <H> over (alpha, beta); alpha lands strictly inside (0, g/w_c).

    beta is eliminated through its exact quadratic, the remaining
    one-dimensional profile is bracketed on [0, g/omega_c], and the
    bracketed minimum is polished by root-finding on the alpha stationarity
    condition (a bare function-value minimizer cannot localize alpha better
    than ~sqrt(eps)).  g = 0 is returned analytically because the alpha
    condition degenerates there.
    """
    wa, wc, g = params.omega_a, params.omega_c, params.g
    if g == 0.0:
        return VariationalSolution(alpha=0.0, beta=-SQRT2, energy=-wa)

    upper = g / wc
    scan = minimize_scalar(
        _lower_branch_energy,
        bounds=(0.0, upper),
        args=(params,),
        method="bounded",
        options={"xatol": 1e-10},
    )
    alpha = float(scan.x)

    def alpha_residual(a: float) -> float:
        return stationarity_residuals(a, beta_stationary(a, params)[0], params)[0]

    # Expand a bracket around the scan minimum until the residual changes sign.
    step = max(1e-6 * alpha, 1e-12)
    lo = hi = alpha
    while step < upper:
        lo = max(alpha - step, upper * 1e-14)
        hi = min(alpha + step, upper * (1.0 - 1e-14))
        if alpha_residual(lo) * alpha_residual(hi) < 0.0:
            alpha = float(brentq(alpha_residual, lo, hi, xtol=1e-15, rtol=1e-15))
            break
        step *= 8.0
    beta = beta_stationary(alpha, params)[0]
    energy = energy_expectation(alpha, beta, params)

    r_alpha, r_beta = stationarity_residuals(alpha, beta, params)
    if max(abs(r_alpha), abs(r_beta)) > RESIDUAL_TOL:
        raise RuntimeError(
            f"stationarity residuals ({r_alpha:.2e}, {r_beta:.2e}) exceed "
            f"{RESIDUAL_TOL:g} at alpha={alpha!r}; bracketing failed"
        )
    return VariationalSolution(alpha=alpha, beta=beta, energy=energy)


def trial_state(sol: VariationalSolution, trunc: FockTruncation) -> JointState:
    """Materialize the trial vector on a Fock truncation (renormalized once).

    Atom order is m = (+1, 0, -1): the m=+1 component carries |-alpha>, the
    m=0 component beta |0>, the m=-1 component |+alpha>.
    """
    plus = coherent_state_vector(sol.alpha, trunc)
    minus = coherent_state_vector(-sol.alpha, trunc)
    vec = np.zeros(trunc.dim)
    vec[0::3] = minus
    vec[1] = sol.beta  # beta |0>_F on the m=0 level
    vec[2::3] = plus
    return make_state(vec, trunc.n_max)
