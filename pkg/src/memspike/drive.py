"""Input drive waveforms.

All experiments are driven either by a sinusoidal current I(t) = I0 sin(w t)
or by a constant current.  The sinusoid is the canonical stimulus for both
hysteresis sweeps and spiking runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class DriveSpec:
    """Stimulus description.

    i0 is the amplitude (amperes in current mode; for the voltage-driven
    memristor sweep it is interpreted as volts).  omega is the angular
    frequency in rad/s and is required for the sinusoid kind.
    """

    i0: float
    omega: float = 0.0
    kind: str = "sinusoid"

    def __post_init__(self):
        errors = []
        if self.kind not in ("sinusoid", "constant"):
            errors.append(f"drive kind must be 'sinusoid' or 'constant', got {self.kind!r}")
        if not math.isfinite(self.i0):
            errors.append("drive i0 must be finite")
        if self.kind == "sinusoid" and not self.omega > 0.0:
            errors.append("drive omega must be > 0 for a sinusoid")
        if errors:
            raise ConfigError(errors)

    @property
    def period(self) -> float:
        if self.kind != "sinusoid":
            raise ValueError("constant drive has no period")
        return 2.0 * math.pi / self.omega

    def value(self, t: float) -> float:
        """Drive value at time t."""
        if self.kind == "constant":
            return self.i0
        return self.i0 * math.sin(self.omega * t)

    def value_at_fraction(self, fraction: float, n_periods: int) -> float:
        """Drive value at a given fraction of an n-period sinusoidal run.

        Evaluating the phase as (2*pi*n_periods) * fraction keeps the
        nominal zero crossings (fraction a multiple of 1/(2*n_periods))
        at |sin| <= a few ulp, which a plain omega*t product does not
        guarantee.  Used by the hysteresis runners where the pinch at
        I = 0 is checked to near machine precision.
        """
        if self.kind == "constant":
            return self.i0
        return self.i0 * math.sin((2.0 * math.pi * n_periods) * fraction)
