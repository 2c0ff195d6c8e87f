"""Exception types shared across the simulation package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the physical domain of an operation."""


class ConfigError(ValueError):
    """Invalid experiment configuration.

    Carries the full list of validation messages so callers can report
    every offending key at once instead of failing on the first.
    """

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class AnalysisError(ValueError):
    """A post-processing step received data it cannot analyse."""


class StabilityError(ValueError):
    """Integrator step size violates a stability bound."""


class TruncationGuardError(RuntimeError):
    """Fock-space truncation guard tripped during a quantum run.

    The top basis level accumulated more population than the configured
    threshold, which means the truncated simulation can no longer be
    trusted.
    """

    def __init__(self, message: str, *, step: int, time: float,
                 top_population: float, threshold: float, dim: int):
        super().__init__(message)
        self.step = step
        self.time = time
        self.top_population = top_population
        self.threshold = threshold
        self.dim = dim

    def diagnostic(self) -> dict:
        return {
            "step": self.step,
            "time": self.time,
            "top_population": self.top_population,
            "threshold": self.threshold,
            "dim": self.dim,
        }
