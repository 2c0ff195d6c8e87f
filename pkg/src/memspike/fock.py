"""Truncated Fock-space operator algebra for the single membrane mode.

The membrane node is an LC-style mode quantized with ladder operators on the
lowest `dim` number states.  The circuit quadratures are

    phi0 = sqrt(hbar*Z0/2) * (a + a^dag)          (node flux)
    Q0   = i*sqrt(hbar/(2*Z0)) * (a^dag - a)      (node charge)

with Z0 the instantaneous memristance acting as the mode impedance scale.
The factor i in Q0 makes the charge operator hermitian and canonically
conjugate to the flux, [phi0, Q0] = i*hbar on the untruncated block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drive import DriveSpec
from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class ModeParams:
    """Mode frequency, action scale and Fock truncation."""

    omega0: float = 1.0
    hbar: float = 1.0
    dim: int = 20

    def __post_init__(self):
        errors = []
        if not self.omega0 > 0:
            errors.append("omega0 must be > 0")
        if not self.hbar > 0:
            errors.append("hbar must be > 0")
        if self.dim < 2:
            errors.append("dim must be >= 2")
        if errors:
            raise ConfigError(errors)


def build_ladder(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Annihilation, creation and number operators on the truncated basis.

    <m|a|n> = sqrt(n) delta_{m,n-1}; n = a^dag a.  On the truncation edge
    [a, a^dag] deviates from the identity: its last diagonal entry is 1-dim.
    """
    if dim < 2:
        raise ConfigError(["dim must be >= 2"])
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
    adag = a.conj().T
    n = adag @ a
    return a, adag, n


def flux_operator(z0: float, m: ModeParams) -> np.ndarray:
    """Node flux quadrature sqrt(hbar*Z0/2)*(a + a^dag); hermitian."""
    if not z0 > 0:
        raise DomainError(f"z0 must be > 0, got {z0}")
    a, adag, _ = build_ladder(m.dim)
    return math.sqrt(m.hbar * z0 / 2.0) * (a + adag)


def charge_operator(z0: float, m: ModeParams) -> np.ndarray:
    """Node charge quadrature i*sqrt(hbar/(2*Z0))*(a^dag - a); hermitian."""
    if not z0 > 0:
        raise DomainError(f"z0 must be > 0, got {z0}")
    a, adag, _ = build_ladder(m.dim)
    return 1j * math.sqrt(m.hbar / (2.0 * z0)) * (adag - a)


def hamiltonian(t: float, z0: float, drive: DriveSpec, m: ModeParams,
                drive_on: bool = True) -> np.ndarray:
    """hbar*w0*(n + 1/2) minus the flux-coupled drive term phi0*I(t).

    drive_on=False zeroes the stimulus (used inside refractory windows)
    while keeping the free part, so the returned matrix stays hermitian.
    """
    _, _, n = build_ladder(m.dim)
    h = m.hbar * m.omega0 * (n + 0.5 * np.eye(m.dim))
    if drive_on:
        h = h - flux_operator(z0, m) * drive.value(t)
    return h


def vacuum(dim: int) -> np.ndarray:
    """Density matrix of the ground state |0><0|."""
    if dim < 2:
        raise ConfigError(["dim must be >= 2"])
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    """Pure coherent-state density matrix, renormalized after truncation."""
    if dim < 2:
        raise ConfigError(["dim must be >= 2"])
    n = np.arange(dim)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    amp = np.exp(-0.5 * abs(alpha) ** 2) * np.power(complex(alpha), n) / np.exp(0.5 * log_fact)
    amp = amp / np.linalg.norm(amp)
    return np.outer(amp, amp.conj())


def expval(op: np.ndarray, rho: np.ndarray) -> complex:
    """Tr(op @ rho).  Callers assert a vanishing imaginary part for
    hermitian observables."""
    if op.shape != rho.shape:
        raise ValueError(f"shape mismatch: {op.shape} vs {rho.shape}")
    return complex(np.trace(op @ rho))


@dataclass(frozen=True)
class DensityReport:
    """Defects of a candidate density matrix; the caller decides what to do."""

    trace_defect: float
    hermiticity_defect: float
    min_eigenvalue: float


def validate_density(rho: np.ndarray) -> DensityReport:
    """Trace, hermiticity and positivity diagnostics of rho."""
    trace_defect = abs(np.trace(rho) - 1.0)
    herm_defect = float(np.max(np.abs(rho - rho.conj().T)))
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    return DensityReport(
        trace_defect=float(trace_defect),
        hermiticity_defect=herm_defect,
        min_eigenvalue=min_eig,
    )
