"""Transmission-line boundary algebra and a discrete LC-chain oracle.

Frequency domain: a semi-infinite lossless line of characteristic impedance
Z0, reached through a coupling capacitor C_C, scatters an incoming wave with

    alpha(w) = w Z0 C_C                 (dimensionless coupling)
    R(w) = (1 - i alpha)/(1 + i alpha)  (reflection, all-pass)
    S(w) = -i alpha/(1 + i alpha)       (source-to-output transfer)
    Z_in(w) = Z0 (1 - i alpha)/(1 + i alpha)

with the identities R = 1 + 2S and |R| = 1, |Z_in| = Z0.

Time domain: the line is represented literally as its discrete LC ladder.
A membrane node (C_m), capacitively coupled (C_C) to the chain head, drives
waves down n_nodes cells of inductance L0 and capacitance C0 with the far
end short-circuited.  Velocity-Verlet keeps the closed-chain energy bounded,
and before the first round-trip reflection the chain presents the resistive
boundary Z0 = sqrt(L0/C0), which a least-squares V-vs-I fit recovers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drive import DriveSpec
from .errors import AnalysisError, ConfigError, StabilityError
from .timeseries import TimeSeries

CHAIN_COLUMNS = ("t", "v_V", "i_A")
SWEEP_COLUMNS = ("omega", "re_R", "im_R", "re_S", "im_S", "re_Zin", "im_Zin")


@dataclass(frozen=True)
class BoundaryParams:
    """Characteristic impedance and coupling capacitance of the boundary."""

    z0: float
    c_c: float

    def __post_init__(self):
        errors = []
        if not self.z0 > 0:
            errors.append("z0 must be > 0")
        if self.c_c < 0:
            errors.append("c_c must be >= 0")
        if errors:
            raise ConfigError(errors)


def alpha(omega: float, b: BoundaryParams) -> float:
    """Dimensionless boundary coupling w*Z0*C_C."""
    if omega < 0:
        raise ConfigError(["omega must be >= 0"])
    return omega * b.z0 * b.c_c


def reflection(omega: float, b: BoundaryParams) -> complex:
    """All-pass reflection coefficient (1 - i a)/(1 + i a)."""
    a = alpha(omega, b)
    return (1.0 - 1j * a) / (1.0 + 1j * a)


def source_transfer(omega: float, b: BoundaryParams) -> complex:
    """Transfer -i a/(1 + i a) from the node drive into the outgoing wave."""
    a = alpha(omega, b)
    return -1j * a / (1.0 + 1j * a)


def input_impedance(omega: float, b: BoundaryParams) -> complex:
    """Impedance Z0 (1 - i a)/(1 + i a) seen at the boundary; |Z_in| = Z0."""
    return b.z0 * reflection(omega, b)


def frequency_sweep(b: BoundaryParams, omegas: np.ndarray) -> TimeSeries:
    """Tabulate R, S and Z_in over a frequency grid."""
    omegas = np.asarray(omegas, dtype=float)
    r = np.array([reflection(w, b) for w in omegas])
    s = np.array([source_transfer(w, b) for w in omegas])
    zin = np.array([input_impedance(w, b) for w in omegas])
    return TimeSeries(
        columns=SWEEP_COLUMNS,
        data={
            "omega": omegas,
            "re_R": r.real, "im_R": r.imag,
            "re_S": s.real, "im_S": s.imag,
            "re_Zin": zin.real, "im_Zin": zin.imag,
        },
    )


@dataclass(frozen=True)
class ChainParams:
    """Discrete LC ladder with a capacitively coupled membrane node.

    Node 0 is the membrane (capacitance c_m, optional shunt inductance l_m
    for an intrinsic leak, disabled by default); nodes 1..n_nodes are line
    cells of capacitance c0 linked by inductors l0, with the cell past the
    last node short-circuited to ground.
    """

    n_nodes: int
    l0: float
    c0: float
    c_c: float
    c_m: float
    l_m: float = math.inf

    def __post_init__(self):
        errors = []
        if self.n_nodes < 10:
            errors.append("n_nodes must be >= 10")
        if not self.l0 > 0:
            errors.append("l0 must be > 0")
        if not self.c0 > 0:
            errors.append("c0 must be > 0")
        if self.c_c < 0:
            errors.append("c_c must be >= 0")
        if not self.c_m > 0:
            errors.append("c_m must be > 0")
        if not self.l_m > 0:
            errors.append("l_m must be > 0")
        if errors:
            raise ConfigError(errors)

    @property
    def z0(self) -> float:
        return math.sqrt(self.l0 / self.c0)

    @property
    def cell_time(self) -> float:
        return math.sqrt(self.l0 * self.c0)

    @property
    def round_trip_time(self) -> float:
        return 2.0 * self.n_nodes * self.cell_time


@dataclass
class ChainRun:
    """Boundary trace plus energy bookkeeping of one chain simulation."""

    series: TimeSeries
    energy: TimeSeries
    node_energy_snapshots: list[tuple[float, np.ndarray]]


def _accelerations(phi: np.ndarray, force0: float, p: ChainParams) -> np.ndarray:
    """Solve M a = F for the constant mass matrix of the chain.

    Only nodes 0 and 1 are inertially coupled (through C_C); the rest of
    the mass matrix is diagonal.
    """
    n = p.n_nodes + 1  # node 0 is the membrane
    f = np.empty(n)
    f[0] = force0
    if math.isfinite(p.l_m):
        f[0] -= phi[0] / p.l_m
    # Line forces: (phi[i+1] - 2 phi[i] + phi[i-1])/L0 with no inductor
    # between nodes 0 and 1 and a grounded virtual node past the end.
    f[1] = (phi[2] - phi[1]) / p.l0
    f[2:n - 1] = (phi[3:n] - 2.0 * phi[2:n - 1] + phi[1:n - 2]) / p.l0
    f[n - 1] = (-2.0 * phi[n - 1] + phi[n - 2]) / p.l0

    acc = np.empty(n)
    acc[2:] = f[2:] / p.c0
    det = (p.c_m + p.c_c) * (p.c0 + p.c_c) - p.c_c * p.c_c
    acc[0] = ((p.c0 + p.c_c) * f[0] + p.c_c * f[1]) / det
    acc[1] = (p.c_c * f[0] + (p.c_m + p.c_c) * f[1]) / det
    return acc


def _chain_energy(phi: np.ndarray, vel: np.ndarray, p: ChainParams) -> tuple[float, float]:
    kinetic = 0.5 * p.c_m * vel[0] ** 2 + 0.5 * p.c_c * (vel[0] - vel[1]) ** 2 \
        + 0.5 * p.c0 * float(np.sum(vel[1:] ** 2))
    gaps = np.diff(phi[1:])
    potential = float(np.sum(gaps ** 2)) / (2.0 * p.l0) + phi[-1] ** 2 / (2.0 * p.l0)
    if math.isfinite(p.l_m):
        potential += phi[0] ** 2 / (2.0 * p.l_m)
    return kinetic, potential


def _node_energies(phi: np.ndarray, vel: np.ndarray, p: ChainParams) -> np.ndarray:
    """Per-node energy split: node capacitor energy plus half of each
    adjacent inductor's energy."""
    n = p.n_nodes + 1
    e = np.zeros(n)
    e[0] = 0.5 * p.c_m * vel[0] ** 2
    e[1:] = 0.5 * p.c0 * vel[1:] ** 2
    e[0] += 0.5 * p.c_c * (vel[0] - vel[1]) ** 2
    if math.isfinite(p.l_m):
        e[0] += phi[0] ** 2 / (2.0 * p.l_m)
    gaps = np.diff(phi[1:])
    inductor = gaps ** 2 / (2.0 * p.l0)
    e[1:n - 1] += 0.5 * inductor
    e[2:n] += 0.5 * inductor
    e[n - 1] += phi[n - 1] ** 2 / (2.0 * p.l0)
    return e


def simulate_chain(p: ChainParams, drive: DriveSpec | None, dt: float, t_end: float,
                   initial_pulse: tuple[float, float, float] | None = None,
                   snapshot_every: int = 0) -> ChainRun:
    """Velocity-Verlet integration of the coupled chain.

    drive (may be None for closed runs) injects current into the membrane
    node.  initial_pulse=(center, width, amplitude) seeds a Gaussian flux
    profile over the line cells with zero initial velocity.  Records the
    line-head voltage v = dphi1/dt and the coupling-capacitor current
    i = C_C (a0 - a1) flowing into the line, plus total-energy bookkeeping
    and optional per-node energy snapshots every snapshot_every samples.
    """
    if not dt > 0:
        raise ConfigError(["dt must be > 0"])
    if dt >= 0.1 * p.cell_time:
        raise StabilityError(
            f"dt={dt} violates the stability bound 0.1*sqrt(L0*C0)={0.1 * p.cell_time}")
    if t_end < dt:
        raise ConfigError(["t_end must be >= dt"])

    n = p.n_nodes + 1
    n_steps = int(round(t_end / dt))
    phi = np.zeros(n)
    vel = np.zeros(n)
    if initial_pulse is not None:
        center, width, amp = initial_pulse
        cells = np.arange(1, n)
        phi[1:] = amp * np.exp(-((cells - center) ** 2) / (2.0 * width ** 2))

    def drive_value(t: float) -> float:
        return 0.0 if drive is None else drive.value(t)

    n_rows = n_steps + 1
    t_arr = np.empty(n_rows)
    v_arr = np.empty(n_rows)
    i_arr = np.empty(n_rows)
    ek_arr = np.empty(n_rows)
    ep_arr = np.empty(n_rows)
    snapshots: list[tuple[float, np.ndarray]] = []

    acc = _accelerations(phi, drive_value(0.0), p)
    for k in range(n_rows):
        t = k * dt
        t_arr[k] = t
        v_arr[k] = vel[1]
        i_arr[k] = p.c_c * (acc[0] - acc[1])
        ek, ep = _chain_energy(phi, vel, p)
        ek_arr[k] = ek
        ep_arr[k] = ep
        if snapshot_every and k % snapshot_every == 0:
            snapshots.append((t, _node_energies(phi, vel, p)))
        if k == n_steps:
            break
        phi = phi + vel * dt + 0.5 * acc * dt * dt
        acc_new = _accelerations(phi, drive_value(t + dt), p)
        vel = vel + 0.5 * (acc + acc_new) * dt
        acc = acc_new

    series = TimeSeries(columns=CHAIN_COLUMNS,
                        data={"t": t_arr, "v_V": v_arr, "i_A": i_arr})
    energy = TimeSeries(
        columns=("t", "e_kinetic", "e_potential", "e_total"),
        data={"t": t_arr, "e_kinetic": ek_arr, "e_potential": ep_arr,
              "e_total": ek_arr + ep_arr},
    )
    return ChainRun(series=series, energy=energy, node_energy_snapshots=snapshots)


def effective_resistance_estimate(series: TimeSeries, window: tuple[float, float]) -> float:
    """Through-origin least-squares slope of boundary voltage against the
    current into the line, over the given time window.

    The window must end before the first round-trip reflection for the fit
    to see the line as a pure resistance.
    """
    t = np.asarray(series["t"])
    mask = (t >= window[0]) & (t <= window[1])
    if not np.any(mask):
        raise AnalysisError(f"empty fit window {window}")
    v = np.asarray(series["v_V"])[mask]
    i = np.asarray(series["i_A"])[mask]
    denom = float(np.dot(i, i))
    if denom == 0.0:
        raise AnalysisError("boundary current is identically zero in the window")
    return float(np.dot(v, i)) / denom
