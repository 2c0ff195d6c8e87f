"""Fixed-step integrator for the time-dependent Markovian master equation.

    drho/dt = -(i/hbar) [H(t), rho] + gamma(t) * (a rho a^dag - {a^dag a, rho}/2)

The right-hand side is assembled densely; stepping is classical RK4 with
the coefficient functions evaluated at the stage times, followed by a
hermitization (rho + rho^dag)/2 that scrubs the antisymmetric part of the
roundoff.  Fixed stepping keeps runs bit-for-bit reproducible.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def lindblad_rhs(rho: np.ndarray, h: np.ndarray, gamma: float, a: np.ndarray,
                 hbar: float = 1.0) -> np.ndarray:
    """Generator of the dissipative mode: commutator plus single-loss channel."""
    if rho.shape != h.shape or rho.shape != a.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape}, h {h.shape}, a {a.shape}")
    out = (-1j / hbar) * (h @ rho - rho @ h)
    if gamma != 0.0:
        if gamma < 0.0:
            raise ValueError("gamma must be >= 0")
        adag = a.conj().T
        n_rho = adag @ (a @ rho)
        rho_n = (rho @ adag) @ a
        out = out + gamma * (a @ rho @ adag - 0.5 * (n_rho + rho_n))
    return out


RhsEvaluator = Callable[[np.ndarray, float], np.ndarray]


def rk4_step(rho: np.ndarray, t: float, dt: float, rhs: RhsEvaluator) -> np.ndarray:
    """One classical RK4 step of the matrix ODE, hermitized on exit."""
    if not dt > 0:
        raise ValueError("dt must be > 0")
    k1 = rhs(rho, t)
    k2 = rhs(rho + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = rhs(rho + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = rhs(rho + dt * k3, t + dt)
    out = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (out + out.conj().T)
