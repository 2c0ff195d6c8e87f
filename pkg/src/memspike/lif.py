"""Leaky integrate-and-fire neuron, with a plain resistor or a memristive leak.

The membrane obeys C_m dV/dt = -V/R_leak + I_in(t).  With a memristive leak
the resistance is the charge-controlled memristance M(q) and the device
charge advances through dq/dt = V/M(q).  Spiking mechanics: at the first
grid sample with V >= v_th outside a refractory window the spike time is
recorded, V resets to v_reset, and the drive, membrane update and memristor
update are all suspended for tau_ref.

Both run entry points share one stepping engine so that a memristive run
with r_on == r_off reproduces the plain-resistor run bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .drive import DriveSpec
from .errors import ConfigError
from .memristor import MemristorParams, memristance_charge
from .timeseries import SpikeTrain, TimeSeries

LIF_COLUMNS = ("t", "i_in_A", "v_V", "leak_ohm", "q_C", "refractory_flag")


@dataclass(frozen=True)
class LifParams:
    """Membrane constants and spiking thresholds."""

    c_m: float
    r: float = 1.0
    v_th: float = 1.0
    v_reset: float = 0.0
    tau_ref: float = 0.0

    def __post_init__(self):
        errors = []
        if not self.c_m > 0:
            errors.append("c_m must be > 0")
        if not self.r > 0:
            errors.append("r must be > 0")
        if not self.v_th > self.v_reset:
            errors.append("v_th must be > v_reset")
        if self.tau_ref < 0:
            errors.append("tau_ref must be >= 0")
        if errors:
            raise ConfigError(errors)


def lif_rhs(v: float, i_in: float, leak: float, p: LifParams) -> float:
    """Membrane derivative (-v/leak + i_in) / C_m."""
    if not leak > 0:
        raise ConfigError(["leak resistance must be > 0"])
    return (-v / leak + i_in) / p.c_m


def analytic_spike_time(p: LifParams, i_const: float) -> float | None:
    """Closed-form first-spike time under a constant current, from V(0)=v_reset=0.

    Returns -R*C_m*ln(1 - v_th/(I*R)) when the asymptote I*R exceeds the
    threshold, otherwise None (the membrane approaches I*R without crossing).
    """
    if i_const <= 0:
        return None
    vinf = i_const * p.r
    if vinf <= p.v_th:
        return None
    return -p.r * p.c_m * math.log(1.0 - p.v_th / vinf)


def _run_engine(p: LifParams, drive: DriveSpec, dt: float, t_end: float,
                leak_of_q: Callable[[float], float], q0: float,
                q_clamp: Callable[[float], float],
                v0: float | None = None) -> tuple[TimeSeries, SpikeTrain]:
    """Shared RK4 stepping loop for plain and memristive leaks.

    Within a step the leak is frozen at M(q(t_k)); the charge accumulator
    then advances by one forward-Euler increment (V/M)*dt.  During a
    refractory window the step is skipped entirely, so consecutive samples
    repeat bit-identical state.
    """
    if not dt > 0:
        raise ConfigError(["dt must be > 0"])
    if t_end < dt:
        raise ConfigError(["t_end must be >= dt"])

    n_steps = int(round(t_end / dt))
    v = p.v_reset if v0 is None else v0
    q = q0
    refractory_until = -math.inf
    spikes: list[float] = []

    n_rows = n_steps + 1
    t_arr = np.empty(n_rows)
    i_arr = np.empty(n_rows)
    v_arr = np.empty(n_rows)
    leak_arr = np.empty(n_rows)
    q_arr = np.empty(n_rows)
    flag_arr = np.zeros(n_rows, dtype=np.int64)

    if v >= p.v_th:
        spikes.append(0.0)
        v = p.v_reset
        refractory_until = p.tau_ref

    leak = leak_of_q(q)
    t_arr[0] = 0.0
    i_arr[0] = 0.0 if 0.0 < refractory_until else drive.value(0.0)
    v_arr[0] = v
    leak_arr[0] = leak
    q_arr[0] = q
    flag_arr[0] = 1 if 0.0 < refractory_until else 0

    for k in range(n_steps):
        t = k * dt
        t1 = (k + 1) * dt
        if t >= refractory_until:
            leak = leak_of_q(q)
            v_start = v

            def f(tt: float, vv: float) -> float:
                return (-vv / leak + drive.value(tt)) / p.c_m

            k1 = f(t, v)
            k2 = f(t + 0.5 * dt, v + 0.5 * dt * k1)
            k3 = f(t + 0.5 * dt, v + 0.5 * dt * k2)
            k4 = f(t + dt, v + dt * k3)
            v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            q = q_clamp(q + (v_start / leak) * dt)

        if t1 >= refractory_until and v >= p.v_th:
            spikes.append(t1)
            v = p.v_reset
            refractory_until = t1 + p.tau_ref

        in_window = t1 < refractory_until
        t_arr[k + 1] = t1
        i_arr[k + 1] = 0.0 if in_window else drive.value(t1)
        v_arr[k + 1] = v
        leak_arr[k + 1] = leak
        q_arr[k + 1] = q
        flag_arr[k + 1] = 1 if in_window else 0

    series = TimeSeries(
        columns=LIF_COLUMNS,
        data={
            "t": t_arr, "i_in_A": i_arr, "v_V": v_arr,
            "leak_ohm": leak_arr, "q_C": q_arr, "refractory_flag": flag_arr,
        },
    )
    return series, SpikeTrain(np.array(spikes))


def run_lif(p: LifParams, drive: DriveSpec, dt: float, t_end: float,
            v0: float | None = None) -> tuple[TimeSeries, SpikeTrain]:
    """Integrate the plain-resistor neuron with fixed-step RK4."""
    return _run_engine(p, drive, dt, t_end,
                       leak_of_q=lambda q: p.r, q0=0.0,
                       q_clamp=lambda q: q, v0=v0)


def run_memristive_lif(p: LifParams, mp: MemristorParams, drive: DriveSpec,
                       dt: float, t_end: float, q0: float = 0.0,
                       v0: float | None = None) -> tuple[TimeSeries, SpikeTrain]:
    """Integrate the neuron with its leak replaced by a charge-controlled memristor."""

    def clamp(q: float) -> float:
        return min(max(q, 0.0), mp.q_max)

    return _run_engine(p, drive, dt, t_end,
                       leak_of_q=lambda q: memristance_charge(q, mp),
                       q0=clamp(q0), q_clamp=clamp, v0=v0)
