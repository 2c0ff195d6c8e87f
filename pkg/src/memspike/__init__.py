"""Deterministic simulators for memristive integrate-and-fire neurons.

The package covers the full model ladder: a charge/width-controlled
memristor with its pinched hysteresis loop, classical leaky
integrate-and-fire neurons (resistive and memristive leak), a dissipative
quantum memristor evolved under a time-dependent Markovian master
equation, the quantum spiking neuron built on it, and the transmission-line
boundary analysis that justifies treating a semi-infinite LC chain as the
resistive leak.
"""

from .drive import DriveSpec
from .errors import (AnalysisError, ConfigError, DomainError, StabilityError,
                     TruncationGuardError)
from .fock import (ModeParams, build_ladder, charge_operator, coherent_state,
                   expval, flux_operator, hamiltonian, vacuum, validate_density)
from .lif import LifParams, analytic_spike_time, lif_rhs, run_lif, run_memristive_lif
from .lindblad import lindblad_rhs, rk4_step
from .memristor import (MemristorParams, MemristorState, PinchReport,
                        memristance_charge, memristance_width, pinch_metrics,
                        run_hysteresis, step_drift)
from .qlif import (NeuronRunResult, QuantumLifParams, calibrate_threshold,
                   run_quantum_lif, voltage_observable)
from .qmemristor import (QuantumMemristorParams, QuantumMemristorState,
                         QuantumRunResult, memristive_step, ohmic_current,
                         run_quantum_hysteresis)
from .timeseries import SpikeTrain, TimeSeries
from .tline import (BoundaryParams, ChainParams, alpha,
                    effective_resistance_estimate, frequency_sweep,
                    input_impedance, reflection, simulate_chain, source_transfer)

__version__ = "0.1.0"
