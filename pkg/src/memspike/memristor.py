"""Charge-controlled TiO2-style memristor model and hysteresis sweeps.

The device is a series pair of a doped low-resistance region and an undoped
high-resistance region.  The doped width w (or, in the charge-controlled
variant, the accumulated charge q) sets the instantaneous memristance

    M = R_off + (R_on - R_off) * x,   x = w/D  or  q/q_max,

which interpolates linearly between R_off (x = 0) and R_on (x = 1).  This
rearranged form hits the endpoints exactly in floating point and collapses
to a plain resistor when R_on == R_off, which several reduction tests rely
on.  Under a periodic current the internal state drifts within each half
cycle and the I-V trajectory closes into the characteristic two-lobe loop
pinched at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .drive import DriveSpec
from .errors import AnalysisError, ConfigError, DomainError
from .timeseries import TimeSeries

HYSTERESIS_COLUMNS = ("t", "current_A", "voltage_V", "memristance_ohm", "w_m", "q_C")


@dataclass(frozen=True)
class MemristorParams:
    """Device constants.

    r_on/r_off are the fully doped / undoped resistances, d the device
    thickness, mobility the dopant mobility used by the linear-drift law,
    and q_max the reference charge of the charge-controlled law.
    """

    r_on: float
    r_off: float
    d: float = 1e-9
    mobility: float = 1e-14
    q_max: float = 1.0

    def __post_init__(self):
        errors = []
        if not self.r_on > 0:
            errors.append("r_on must be > 0")
        if not self.r_off > 0:
            errors.append("r_off must be > 0")
        if self.r_off < self.r_on:
            errors.append("r_off must be >= r_on")
        if not self.d > 0:
            errors.append("d must be > 0")
        if self.mobility < 0:
            errors.append("mobility must be >= 0")
        if not self.q_max > 0:
            errors.append("q_max must be > 0")
        if errors:
            raise ConfigError(errors)


@dataclass(frozen=True)
class MemristorState:
    """Evolving internal state: doped width, accumulated charge, memristance."""

    w: float
    q: float
    m: float


def memristance_width(w: float, p: MemristorParams) -> float:
    """Memristance from the doped width: R_on*(w/D) + R_off*(1 - w/D)."""
    if not 0.0 <= w <= p.d:
        raise DomainError(f"w={w} outside [0, {p.d}]")
    return p.r_off + (p.r_on - p.r_off) * (w / p.d)


def memristance_charge(q: float, p: MemristorParams) -> float:
    """Memristance from accumulated charge: R_on*(q/q_max) + R_off*(1 - q/q_max)."""
    if not 0.0 <= q <= p.q_max:
        raise DomainError(f"q={q} outside [0, {p.q_max}]")
    return p.r_off + (p.r_on - p.r_off) * (q / p.q_max)


def initial_state(p: MemristorParams, w0: float | None = None, q0: float = 0.0,
                  law: str = "width") -> MemristorState:
    """State at t=0; w0 defaults to the mid-device position D/2."""
    w = p.d / 2.0 if w0 is None else w0
    m = memristance_width(w, p) if law == "width" else memristance_charge(q0, p)
    return MemristorState(w=w, q=q0, m=m)


def step_drift(s: MemristorState, i: float, dt: float, p: MemristorParams,
               law: str = "width") -> MemristorState:
    """Advance the internal state by one forward-Euler step under current i.

    Linear ion drift dw/dt = mobility*(R_on/D)*i with hard clamping of w to
    [0, D] and of the charge accumulator to [0, q_max]; the memristance is
    recomputed from whichever law is active.
    """
    if not dt > 0:
        raise ConfigError(["dt must be > 0"])
    w = s.w + p.mobility * (p.r_on / p.d) * i * dt
    w = min(max(w, 0.0), p.d)
    q = s.q + i * dt
    q = min(max(q, 0.0), p.q_max)
    m = memristance_width(w, p) if law == "width" else memristance_charge(q, p)
    return replace(s, w=w, q=q, m=m)


def run_hysteresis(p: MemristorParams, drive: DriveSpec, n_steps: int,
                   n_periods: int = 1, w0: float | None = None, q0: float = 0.0,
                   law: str = "width", mode: str = "current") -> TimeSeries:
    """Sweep the device through n_periods of the periodic drive.

    mode="current" drives I(t) = I0 sin(wt) directly; mode="voltage" applies
    V(t) = V0 sin(wt) and draws I = V/M.  Samples (n_steps + 1 rows) record
    the state before each step, so V = M*I holds exactly on every row.
    """
    errors = []
    if drive.kind != "sinusoid":
        errors.append("hysteresis sweep requires a sinusoidal drive")
    elif drive.i0 <= 0:
        errors.append("drive amplitude must be > 0")
    if n_steps < 2:
        errors.append("n_steps must be >= 2")
    if n_periods < 1:
        errors.append("n_periods must be >= 1")
    if mode not in ("current", "voltage"):
        errors.append(f"mode must be 'current' or 'voltage', got {mode!r}")
    if law not in ("width", "charge"):
        errors.append(f"law must be 'width' or 'charge', got {law!r}")
    if not errors and n_steps // n_periods < 100:
        errors.append("drive period must be resolved by >= 100 steps")
    if errors:
        raise ConfigError(errors)

    t_end = n_periods * drive.period
    dt = t_end / n_steps
    state = initial_state(p, w0=w0, q0=q0, law=law)

    n_rows = n_steps + 1
    t_arr = np.empty(n_rows)
    i_arr = np.empty(n_rows)
    v_arr = np.empty(n_rows)
    m_arr = np.empty(n_rows)
    w_arr = np.empty(n_rows)
    q_arr = np.empty(n_rows)

    for k in range(n_rows):
        t = k * dt
        amp = drive.value_at_fraction(k / n_steps, n_periods)
        if mode == "current":
            i = amp
            v = state.m * i
        else:
            v = amp
            i = v / state.m
        t_arr[k] = t
        i_arr[k] = i
        v_arr[k] = v
        m_arr[k] = state.m
        w_arr[k] = state.w
        q_arr[k] = state.q
        if k < n_steps:
            state = step_drift(state, i, dt, p, law=law)

    return TimeSeries(
        columns=HYSTERESIS_COLUMNS,
        data={
            "t": t_arr, "current_A": i_arr, "voltage_V": v_arr,
            "memristance_ohm": m_arr, "w_m": w_arr, "q_C": q_arr,
        },
    )


@dataclass(frozen=True)
class PinchReport:
    """Loop-shape metrics of an I-V trajectory.

    lobe_areas are signed shoelace areas of the trace segments between
    current zero crossings; lobe_sides marks which side of I = 0 each
    segment lies on (+1 / -1 by the sign of its mean current).
    """

    pinch_defect: float
    lobe_areas: tuple[float, ...]
    lobe_sides: tuple[int, ...]
    m_max: float
    m_min: float

    @property
    def positive_lobe_area(self) -> float:
        """Total unsigned area enclosed on the I > 0 side."""
        return sum(abs(a) for a, s in zip(self.lobe_areas, self.lobe_sides) if s > 0)

    @property
    def negative_lobe_area(self) -> float:
        return sum(abs(a) for a, s in zip(self.lobe_areas, self.lobe_sides) if s < 0)


def _shoelace(i: np.ndarray, v: np.ndarray) -> float:
    """Signed area of the closed polygon (i_k, v_k)."""
    return 0.5 * float(np.sum(i * np.roll(v, -1) - np.roll(i, -1) * v))


def pinch_metrics(series: TimeSeries, current_column: str = "current_A",
                  voltage_column: str = "voltage_V",
                  memristance_column: str = "memristance_ohm") -> PinchReport:
    """Quantify how pinched a periodic I-V trajectory is.

    The trace is split into lobes at the zero crossings of the current; each
    lobe polygon gets a signed shoelace area.  The pinch defect is the
    largest |V| seen at a crossing, measured at the sample nearest the
    crossing (the smaller-|I| endpoint, or the sample itself for exact
    zeros).  Raises AnalysisError when the current never crosses zero.
    """
    i = np.asarray(series[current_column], dtype=float)
    v = np.asarray(series[voltage_column], dtype=float)
    if memristance_column in series.data:
        m = np.asarray(series[memristance_column], dtype=float)
    else:
        m = np.array([math.nan])

    sign = np.sign(i)
    crossings = []  # index just before/at each crossing
    defect = 0.0
    have_crossing = False
    for k in range(len(i)):
        if i[k] == 0.0:
            have_crossing = True
            crossings.append(k)
            defect = max(defect, abs(v[k]))
        elif k + 1 < len(i) and sign[k] != 0 and sign[k + 1] != 0 and sign[k] != sign[k + 1]:
            have_crossing = True
            crossings.append(k)
            nearest = k if abs(i[k]) <= abs(i[k + 1]) else k + 1
            defect = max(defect, abs(v[nearest]))
    if not have_crossing:
        raise AnalysisError("current has no zero crossing; cannot split lobes")

    # Lobe boundaries: segment between consecutive crossing anchors.
    bounds = sorted(set(crossings))
    if bounds[0] != 0:
        bounds.insert(0, 0)
    if bounds[-1] != len(i) - 1:
        bounds.append(len(i) - 1)
    areas = []
    sides = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a < 2:
            continue
        seg_i = i[a:b + 1]
        seg_v = v[a:b + 1]
        areas.append(_shoelace(seg_i, seg_v))
        sides.append(1 if float(np.mean(seg_i)) > 0 else -1)

    return PinchReport(
        pinch_defect=defect,
        lobe_areas=tuple(areas),
        lobe_sides=tuple(sides),
        m_max=float(np.max(m)),
        m_min=float(np.min(m)),
    )
