"""Dimension certificates from a measured witness value and its error bar."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvariantViolation, NotFound, ParseError
from .simulate import CountRecord, WitnessEstimate
from .witness import CLASSICAL, QUANTUM, BoundTable, Witness, algebraic_max, catalog

DEFAULT_K = 3.0
# a value equal to a bound up to rounding must not count as a violation
CERT_TOL = 1e-9
SANITY_SIGMAS = 3.0


@dataclass(frozen=True)
class Violation:
    model: str
    dim: int
    bound: float
    significance: float

    def to_json(self) -> dict:
        sig = self.significance
        return {
            "model": self.model,
            "dim": self.dim,
            "bound": self.bound,
            "significance": sig if math.isfinite(sig) else "inf",
        }


@dataclass
class DimensionCertificate:
    witness_name: str
    value: float
    sigma: float
    violations: list
    min_classical_dim: int
    min_quantum_dim: int
    confidence_sigmas: float
    bounds: BoundTable
    warnings: list = field(default_factory=list)

    @property
    def nontrivial(self) -> bool:
        return bool(self.violations)

    def summary(self) -> str:
        if not self.nontrivial:
            return "no nontrivial certificate"
        return (f"classical dimension >= {self.min_classical_dim}, "
                f"quantum dimension >= {self.min_quantum_dim}")

    def to_json(self) -> dict:
        return {
            "witness_name": self.witness_name,
            "value": self.value,
            "sigma": self.sigma,
            "confidence_sigmas": self.confidence_sigmas,
            "violations": [v.to_json() for v in self.violations],
            "min_classical_dim": self.min_classical_dim,
            "min_quantum_dim": self.min_quantum_dim,
            "summary": self.summary(),
            "warnings": list(self.warnings),
            "bounds": self.bounds.to_json(),
        }


def certify(w_name: str, est: WitnessEstimate, k: float = DEFAULT_K,
            witness: Witness | None = None, bounds: BoundTable | None = None) -> DimensionCertificate:
    """Which tabulated bounds does ``value - k·sigma`` exceed?

    Catalog witnesses bring their own bound table; a custom witness needs
    ``bounds`` supplied. A quantum system of dimension 1 is a classical one,
    so any violation at all implies quantum dimension at least 2.
    """
    if est.sigma < 0:
        raise InvariantViolation("sigma must be non-negative")
    if not k > 0:
        raise InvariantViolation("confidence k must be positive")
    if bounds is None:
        try:
            witness, bounds = catalog(w_name)
        except NotFound:
            raise NotFound(f"witness {w_name!r} is not in the catalog and no bounds were given") from None

    lower = est.value - k * est.sigma
    violations = []
    for b in bounds.entries:
        if lower > b.value + CERT_TOL:
            sig = (est.value - b.value) / est.sigma if est.sigma > 0 else math.inf
            violations.append(Violation(b.model, b.dim, b.value, sig))

    def min_dim(model):
        dims = [v.dim for v in violations if v.model == model]
        return 1 + max(dims) if dims else 1

    min_c = min_dim(CLASSICAL)
    min_q = max(min_dim(QUANTUM), 2) if violations else 1

    warnings = []
    if witness is not None:
        amax = algebraic_max(witness)
        if est.value > amax + SANITY_SIGMAS * est.sigma + CERT_TOL:
            warnings.append(
                f"value {est.value:.6g} exceeds the algebraic maximum {amax:.6g} "
                f"by more than {SANITY_SIGMAS:g} sigma; data are inconsistent with any model"
            )
    if est.degenerate_variance:
        warnings.append("degenerate-variance: some setting had all counts in one outcome, "
                        "so sigma underestimates the uncertainty")
    return DimensionCertificate(w_name, est.value, est.sigma, violations, min_c, min_q,
                                float(k), bounds, warnings)


def counts_to_json(witness_name: str, records, **extra) -> dict:
    out = {"witness": witness_name, "records": [r.to_json() for r in records]}
    out.update(extra)
    return out


def _int_field(rec, key, where):
    if key not in rec:
        raise ParseError(f"{where}: missing field '{key}'")
    val = rec[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ParseError(f"{where}.{key}: expected an integer, got {val!r}")
    return val


def parse_counts(data, source: str = "<counts>", merge: bool = False):
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    if not isinstance(data.get("witness"), str):
        raise ParseError(f"{source}: missing string field 'witness'")
    raw = data.get("records")
    if not isinstance(raw, list):
        raise ParseError(f"{source}: missing list field 'records'")
    merged = {}
    for i, rec in enumerate(raw):
        where = f"{source}: records[{i}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: expected an object")
        x, y = _int_field(rec, "x", where), _int_field(rec, "y", where)
        n_plus, n_minus = _int_field(rec, "n_plus", where), _int_field(rec, "n_minus", where)
        if x < 1 or y < 1:
            raise ParseError(f"{where}: settings are numbered from 1")
        r = CountRecord(x, y, n_plus, n_minus)
        if (x, y) in merged:
            if not merge:
                raise ParseError(f"{where}: duplicate record for (x={x}, y={y})")
            old = merged[(x, y)]
            r = CountRecord(x, y, old.n_plus + n_plus, old.n_minus + n_minus)
        merged[(x, y)] = r
    return data["witness"], list(merged.values())


def load_counts(path, merge: bool = False):
    """Read a counts file; returns ``(witness_name, records)``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_counts(data, str(path), merge)
