"""Quantum memristive integrate-and-fire neuron.

The quantum memristor is driven while the voltage expectation <V> = <Q0>/C_m
is monitored classically.  At the first sample reaching the threshold the
solver is interrupted, the mode is replaced by the vacuum state, and a
refractory window opens during which the stimulus is removed from the
Hamiltonian and the memristive bookkeeping (q, Z0, gamma) is frozen;
dissipation keeps acting on the mode.  Since the vacuum is stationary for
the undriven dissipative generator, every sample inside a window records
<V> = 0 and <n> = 0 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DomainError
from .fock import ModeParams, charge_operator
from .qmemristor import QuantumMemristorParams, QuantumRunResult, _evolve
from .timeseries import SpikeTrain, TimeSeries

QUANTUM_LIF_COLUMNS = ("t", "i_A", "v_V", "z0_ohm", "q_C", "gamma_per_s",
                       "n_expect", "trace_defect", "v_expect_V", "refractory_flag")


@dataclass(frozen=True)
class QuantumLifParams:
    """Quantum memristor circuit plus spiking thresholds."""

    qm: QuantumMemristorParams
    v_th: float
    tau_ref: float = 0.0

    def __post_init__(self):
        errors = []
        if not self.v_th > 0:
            errors.append("v_th must be > 0")
        if self.tau_ref < 0:
            errors.append("tau_ref must be >= 0")
        if errors:
            raise ConfigError(errors)


@dataclass
class NeuronRunResult:
    """Traces, spikes and the refractory bookkeeping of one neuron run."""

    traces: TimeSeries
    spikes: SpikeTrain
    refractory_windows: list[tuple[float, float]]
    diagnostics: object


def voltage_observable(z0: float, c_m: float, m: ModeParams) -> np.ndarray:
    """Hermitian voltage observable Q0/C_m for the instantaneous impedance."""
    if not c_m > 0:
        raise DomainError(f"c_m must be > 0, got {c_m}")
    return charge_operator(z0, m) / c_m


def run_quantum_lif(p: QuantumLifParams, t_end: float | None = None) -> NeuronRunResult:
    """Drive the quantum memristor with thresholding, vacuum reset and
    refractory freezing; returns traces, the spike train and the windows."""
    qm = p.qm
    if t_end is not None:
        if t_end < qm.dt:
            raise ConfigError(["t_end must be >= dt"])
        qm = replace(qm, n_steps=int(round(t_end / qm.dt)))
    v_th = p.v_th if math.isfinite(p.v_th) else None
    result: QuantumRunResult = _evolve(qm, v_th=v_th, tau_ref=p.tau_ref,
                                       extra_columns=True)
    return NeuronRunResult(
        traces=result.series,
        spikes=result.spikes,
        refractory_windows=result.refractory_windows,
        diagnostics=result.diagnostics,
    )


def calibrate_threshold(qm: QuantumMemristorParams, fraction: float,
                        n_steps: int | None = None) -> float:
    """Threshold from a thresholdless calibration run: fraction * max <V>.

    Runs the same circuit without spiking mechanics and returns the given
    fraction of the largest voltage expectation reached.
    """
    if not 0 < fraction:
        raise ConfigError(["calibration fraction must be > 0"])
    params = qm if n_steps is None else replace(qm, n_steps=n_steps)
    result = _evolve(params)
    v_max = float(np.max(result.series["v_V"]))
    if v_max <= 0:
        raise ConfigError(["calibration run never produced a positive voltage"])
    return fraction * v_max
