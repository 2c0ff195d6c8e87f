"""Dissipative quantum memristor: a driven, damped mode whose loss channel
tracks a charge-controlled memristance.

Per step the master equation advances with the memristance Z0 and decay rate
gamma = 1/(Z0*C_m) frozen at their start-of-step values (piecewise-constant
adiabatic approximation; the sinusoidal stimulus itself is still evaluated
at the RK4 stage times).  The charge then accumulates the flux-projected
current,

    q <- clamp(q + (<phi0>/Z0) dt, 0, q_max),   Z0 <- M(q),   gamma <- 1/(Z0 C_m),

so the dissipative channel follows the device history without extra dynamics.
Recorded traces carry the literal current channel i = <phi0>/Z0 (which also
drives the charge update) and the voltage v = <Q0>/C_m; the Ohmic current
v/Z0 used for loop plotting is reconstructable from the columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .drive import DriveSpec
from .errors import ConfigError, TruncationGuardError
from .fock import ModeParams, build_ladder, validate_density, vacuum
from .lindblad import lindblad_rhs, rk4_step
from .memristor import MemristorParams, memristance_charge
from .timeseries import SpikeTrain, TimeSeries

QUANTUM_COLUMNS = ("t", "i_A", "v_V", "z0_ohm", "q_C", "gamma_per_s",
                   "n_expect", "trace_defect")


@dataclass(frozen=True)
class QuantumMemristorParams:
    """Full description of a quantum memristor run."""

    c_m: float
    mp: MemristorParams
    mode: ModeParams
    drive: DriveSpec
    dt: float
    n_steps: int
    q0: float = 0.0
    guard_top_pop: float = 1e-6
    check_every: int = 1
    substeps: int = 1

    def __post_init__(self):
        errors = []
        if not self.c_m > 0:
            errors.append("c_m must be > 0")
        if not self.dt > 0:
            errors.append("dt must be > 0")
        if self.n_steps < 2:
            errors.append("n_steps must be >= 2")
        if not 0.0 <= self.q0 <= self.mp.q_max:
            errors.append("q0 must lie in [0, q_max]")
        if not self.guard_top_pop > 0:
            errors.append("guard_top_pop must be > 0")
        if self.check_every < 1:
            errors.append("check_every must be >= 1")
        if self.substeps < 1:
            errors.append("substeps must be >= 1")
        if errors:
            raise ConfigError(errors)


@dataclass(frozen=True)
class QuantumMemristorState:
    """Mode state plus memristive bookkeeping at one instant."""

    rho: np.ndarray
    q: float
    z0: float
    gamma: float


class _Workspace:
    """Cached operators fixed by the truncation dimension."""

    def __init__(self, mode: ModeParams):
        self.mode = mode
        self.a, self.adag, self.n = build_ladder(mode.dim)
        self.x = self.a + self.adag                   # phi0 / sqrt(hbar Z0/2)
        self.y = 1j * (self.adag - self.a)            # Q0 / sqrt(hbar/(2 Z0))
        self.h0 = mode.hbar * mode.omega0 * (self.n + 0.5 * np.eye(mode.dim))


def initial_quantum_state(p: QuantumMemristorParams) -> QuantumMemristorState:
    """Vacuum mode with the charge accumulator at q0."""
    z0 = memristance_charge(p.q0, p.mp)
    return QuantumMemristorState(
        rho=vacuum(p.mode.dim), q=p.q0, z0=z0, gamma=1.0 / (z0 * p.c_m))


def _step(s: QuantumMemristorState, t: float, p: QuantumMemristorParams,
          ws: _Workspace, frozen: bool) -> QuantumMemristorState:
    hbar = p.mode.hbar
    z0 = s.z0
    gamma = s.gamma
    phi_scale = math.sqrt(hbar * z0 / 2.0)

    if frozen:
        def rhs(rho: np.ndarray, tt: float) -> np.ndarray:
            return lindblad_rhs(rho, ws.h0, gamma, ws.a, hbar)
    else:
        def rhs(rho: np.ndarray, tt: float) -> np.ndarray:
            h = ws.h0 - (phi_scale * p.drive.value(tt)) * ws.x
            return lindblad_rhs(rho, h, gamma, ws.a, hbar)

    # Integration substeps keep RK4 inside its stability region when the
    # flux-coupled drive is stiff; the memristive coefficients stay frozen
    # across all of them, so the device still updates once per outer step.
    rho1 = s.rho
    dt_sub = p.dt / p.substeps
    for j in range(p.substeps):
        rho1 = rk4_step(rho1, t + j * dt_sub, dt_sub, rhs)
    if frozen:
        return replace(s, rho=rho1)

    phi_expect = phi_scale * float(np.trace(ws.x @ rho1).real)
    q1 = min(max(s.q + (phi_expect / z0) * p.dt, 0.0), p.mp.q_max)
    z1 = memristance_charge(q1, p.mp)
    return QuantumMemristorState(rho=rho1, q=q1, z0=z1, gamma=1.0 / (z1 * p.c_m))


def memristive_step(s: QuantumMemristorState, t: float, p: QuantumMemristorParams,
                    frozen: bool = False) -> QuantumMemristorState:
    """One master-equation step followed by the memristive update.

    With frozen=True the stimulus is removed from the Hamiltonian and the
    charge/memristance/decay-rate bookkeeping is left untouched while the
    mode keeps dissipating, which is the refractory behaviour of the
    spiking neuron built on top of this model.
    """
    return _step(s, t, p, _Workspace(p.mode), frozen)


@dataclass
class RunDiagnostics:
    """Per-checkpoint density-matrix health metrics."""

    checkpoint_steps: list[int] = field(default_factory=list)
    trace_defect: list[float] = field(default_factory=list)
    hermiticity_defect: list[float] = field(default_factory=list)
    min_eigenvalue: list[float] = field(default_factory=list)
    top_population: list[float] = field(default_factory=list)

    def record(self, step: int, rho: np.ndarray):
        report = validate_density(rho)
        self.checkpoint_steps.append(step)
        self.trace_defect.append(report.trace_defect)
        self.hermiticity_defect.append(report.hermiticity_defect)
        self.min_eigenvalue.append(report.min_eigenvalue)
        self.top_population.append(float(rho[-1, -1].real))

    @property
    def worst_trace_defect(self) -> float:
        return max(self.trace_defect)

    @property
    def worst_hermiticity_defect(self) -> float:
        return max(self.hermiticity_defect)

    @property
    def worst_min_eigenvalue(self) -> float:
        return min(self.min_eigenvalue)

    @property
    def worst_top_population(self) -> float:
        return max(self.top_population)


@dataclass
class QuantumRunResult:
    series: TimeSeries
    diagnostics: RunDiagnostics
    spikes: SpikeTrain
    refractory_windows: list[tuple[float, float]]


def _evolve(p: QuantumMemristorParams, v_th: float | None = None,
            tau_ref: float = 0.0,
            extra_columns: bool = False) -> QuantumRunResult:
    """Core stepping loop shared by the hysteresis sweep and the spiking neuron.

    v_th=None runs thresholdless.  A spike is recorded at the first sample
    whose voltage expectation reaches v_th outside a refractory window; the
    mode is then reset to vacuum and for tau_ref the stimulus is removed and
    the memristive bookkeeping frozen (dissipation stays on).  Rows at and
    after a reset therefore record the post-reset state.
    """
    ws = _Workspace(p.mode)
    state = initial_quantum_state(p)
    hbar = p.mode.hbar

    n_rows = p.n_steps + 1
    cols = {name: np.empty(n_rows) for name in QUANTUM_COLUMNS}
    if extra_columns:
        cols["v_expect_V"] = np.empty(n_rows)
        cols["refractory_flag"] = np.zeros(n_rows, dtype=np.int64)

    diagnostics = RunDiagnostics()
    spikes: list[float] = []
    windows: list[tuple[float, float]] = []
    refractory_until = -math.inf

    def voltage_expect(s: QuantumMemristorState) -> float:
        q_scale = math.sqrt(hbar / (2.0 * s.z0))
        return q_scale * float(np.trace(ws.y @ s.rho).real) / p.c_m

    def record(k: int, t: float, s: QuantumMemristorState, v_now: float):
        phi_scale = math.sqrt(hbar * s.z0 / 2.0)
        phi_expect = phi_scale * float(np.trace(ws.x @ s.rho).real)
        cols["t"][k] = t
        cols["i_A"][k] = phi_expect / s.z0
        cols["v_V"][k] = v_now
        cols["z0_ohm"][k] = s.z0
        cols["q_C"][k] = s.q
        cols["gamma_per_s"][k] = s.gamma
        cols["n_expect"][k] = float(np.trace(ws.n @ s.rho).real)
        cols["trace_defect"][k] = abs(complex(np.trace(s.rho)) - 1.0)
        if extra_columns:
            cols["v_expect_V"][k] = v_now
            cols["refractory_flag"][k] = 1 if t < refractory_until else 0
        if k % p.check_every == 0 or k == p.n_steps:
            diagnostics.record(k, s.rho)
        top_pop = float(s.rho[-1, -1].real)
        if top_pop > p.guard_top_pop:
            raise TruncationGuardError(
                f"top Fock level population {top_pop:.3e} exceeded guard "
                f"{p.guard_top_pop:.1e} at step {k} (t={t:.6g}); increase dim "
                f"or weaken the stimulus",
                step=k, time=t, top_population=top_pop,
                threshold=p.guard_top_pop, dim=p.mode.dim)

    record(0, 0.0, state, voltage_expect(state))
    for k in range(p.n_steps):
        t = k * p.dt
        t1 = (k + 1) * p.dt
        frozen = t < refractory_until
        state = _step(state, t, p, ws, frozen)
        v_now = voltage_expect(state)
        if v_th is not None and t1 >= refractory_until and v_now >= v_th:
            spikes.append(t1)
            state = replace(state, rho=vacuum(p.mode.dim))
            refractory_until = t1 + tau_ref
            windows.append((t1, refractory_until))
            v_now = voltage_expect(state)
        record(k + 1, t1, state, v_now)

    columns = QUANTUM_COLUMNS + (("v_expect_V", "refractory_flag") if extra_columns else ())
    series = TimeSeries(columns=columns, data=cols)
    return QuantumRunResult(series=series, diagnostics=diagnostics,
                            spikes=SpikeTrain(np.array(spikes)),
                            refractory_windows=windows)


def run_quantum_hysteresis(p: QuantumMemristorParams) -> QuantumRunResult:
    """Drive the quantum memristor from vacuum and record the full trace.

    Requires the sinusoidal drive to be resolved by at least 200 steps per
    period.  Aborts with TruncationGuardError if the top Fock level ever
    holds more population than the configured guard.
    """
    if p.drive.kind == "sinusoid":
        steps_per_period = p.drive.period / p.dt
        if steps_per_period < 200:
            raise ConfigError(
                [f"drive must be resolved by >= 200 steps per period, got {steps_per_period:.1f}"])
    return _evolve(p)


def ohmic_current(series: TimeSeries) -> np.ndarray:
    """Consistency current channel v/Z0 derived from the recorded columns."""
    return np.asarray(series["v_V"]) / np.asarray(series["z0_ohm"])
