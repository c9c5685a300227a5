"""Monte Carlo photon counting and witness estimation with Poisson error bars.

Every setting (x, y) with a nonzero witness coefficient gets a Poisson
number of detected photons with mean ``rate * duration``; each photon lands
in the +1 outcome with probability (1 + E_xy)/2. Detectors are ideal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation, MissingData
from .settings import experiment
from .witness import Witness, catalog, evaluate

DEFAULT_RATE = 2e4
DEFAULT_DURATION = 30.0


@dataclass(frozen=True)
class CountRecord:
    """Detections for preparation ``x`` and measurement ``y`` (both 1-based)."""

    x: int
    y: int
    n_plus: int
    n_minus: int

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0:
            raise InvariantViolation(f"negative counts at (x={self.x}, y={self.y})")

    @property
    def total(self) -> int:
        return self.n_plus + self.n_minus

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "n_plus": self.n_plus, "n_minus": self.n_minus}


@dataclass(frozen=True)
class RunConfig:
    rate: float = DEFAULT_RATE
    duration: float = DEFAULT_DURATION
    seed: int = 0

    def __post_init__(self):
        if not (self.rate > 0 and self.duration > 0):
            raise InvariantViolation("rate and duration must be positive")

    @property
    def mean_counts(self) -> float:
        return self.rate * self.duration


@dataclass
class WitnessEstimate:
    witness_name: str
    value: float
    sigma: float
    counts: list = field(default_factory=list)
    degenerate_variance: bool = False

    def to_json(self) -> dict:
        return {
            "witness": self.witness_name,
            "value": self.value,
            "sigma": self.sigma,
            "degenerate_variance": self.degenerate_variance,
        }


def setting_rng(seed: int, x: int, y: int) -> np.random.Generator:
    """Independent stream for setting (x, y), keyed by seed XOR (1000x + y)."""
    return np.random.Generator(np.random.Philox(key=(int(seed) ^ (x * 1000 + y)) & (2**64 - 1)))


def simulate_table(w: Witness, e, cfg: RunConfig) -> list:
    """Sample counts for every used setting of ``w`` given exact correlators ``e``."""
    e = np.asarray(e, dtype=float)
    records = []
    for x0, y0 in w.support():
        x, y = x0 + 1, y0 + 1
        rng = setting_rng(cfg.seed, x, y)
        total = int(rng.poisson(cfg.mean_counts))
        p_plus = min(1.0, max(0.0, (1.0 + e[x0, y0]) / 2.0))
        n_plus = int(rng.binomial(total, p_plus))
        records.append(CountRecord(x, y, n_plus, total - n_plus))
    return records


def simulate_counts(spec, cfg: RunConfig) -> list:
    return simulate_table(spec.witness, spec.expectations(), cfg)


def record_variance(n_plus: int, n_minus: int) -> float:
    """Delta-method variance of (n+ - n-)/(n+ + n-) for independent Poisson counts."""
    n = n_plus + n_minus
    return 4.0 * n_plus * n_minus / n**3


def estimate(w: Witness, counts) -> WitnessEstimate:
    by_setting = {(r.x, r.y): r for r in counts}
    e = np.full(w.coeffs.shape, np.nan)
    var = 0.0
    degenerate = False
    for x0, y0 in w.support():
        r = by_setting.get((x0 + 1, y0 + 1))
        if r is None:
            raise MissingData(f"no count record for setting x={x0 + 1}, y={y0 + 1}")
        if r.total == 0:
            raise MissingData(f"setting x={r.x}, y={r.y} has zero detections")
        e[x0, y0] = (r.n_plus - r.n_minus) / r.total
        var += w.coeffs[x0, y0] ** 2 * record_variance(r.n_plus, r.n_minus)
        degenerate |= r.n_plus == 0 or r.n_minus == 0
    return WitnessEstimate(w.name, evaluate(w, e), math.sqrt(var), list(counts), degenerate)


def run_experiment(id: str, cfg: RunConfig) -> WitnessEstimate:
    spec = experiment(id)
    return estimate(catalog(spec.witness_name)[0], simulate_counts(spec, cfg))
