"""Linear dimension witnesses over correlators E_xy and their published bounds."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DimensionError, InvariantViolation, NotFound, ParseError

E_TOL = 1e-9

CLASSICAL = "classical"
QUANTUM = "quantum"
MODELS = (CLASSICAL, QUANTUM)


@dataclass(frozen=True)
class Witness:
    name: str
    coeffs: np.ndarray
    take_abs: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 2 or c.size == 0:
            raise DimensionError("coefficients must form a non-empty N x m table")
        if not np.all(np.isfinite(c)):
            raise InvariantViolation("coefficients must be finite")
        if not np.any(c != 0):
            raise InvariantViolation("witness needs at least one nonzero coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.coeffs.shape[0]

    @property
    def m(self) -> int:
        return self.coeffs.shape[1]

    def support(self):
        """(x, y) index pairs with a nonzero coefficient, zero-based."""
        return [tuple(int(i) for i in p) for p in np.argwhere(self.coeffs != 0)]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "coefficients": self.coeffs.tolist(),
            "take_abs": self.take_abs,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        try:
            name = str(data["name"])
            coeffs = data["coefficients"]
            take_abs = bool(data.get("take_abs", False))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"witness JSON missing field: {exc}") from exc
        if not isinstance(coeffs, list) or not all(isinstance(r, list) for r in coeffs):
            raise ParseError("witness 'coefficients' must be a list of rows")
        if len({len(r) for r in coeffs}) != 1:
            raise ParseError("witness 'coefficients' rows have unequal length")
        return cls(name, np.array(coeffs, dtype=float), take_abs)


@dataclass(frozen=True)
class Bound:
    model: str
    dim: int
    value: float
    exact: bool = True


@dataclass(frozen=True)
class BoundTable:
    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for b in self.entries:
            if b.model not in MODELS:
                raise InvariantViolation(f"unknown model {b.model!r}")
        for model in MODELS:
            vals = [b.value for b in sorted(self.for_model(model), key=lambda b: b.dim)]
            if any(v2 < v1 for v1, v2 in zip(vals, vals[1:])):
                raise InvariantViolation(f"{model} bounds must be non-decreasing in dim")
        q = {b.dim: b.value for b in self.for_model(QUANTUM)}
        for b in self.for_model(CLASSICAL):
            if b.dim in q and q[b.dim] < b.value:
                raise InvariantViolation(f"quantum bound below classical at dim {b.dim}")

    def for_model(self, model: str):
        return [b for b in self.entries if b.model == model]

    def get(self, model: str, dim: int) -> float:
        for b in self.entries:
            if b.model == model and b.dim == dim:
                return b.value
        raise NotFound(f"no {model} bound for dim {dim}")

    def to_json(self) -> list:
        return [
            {"model": b.model, "dim": b.dim, "bound": b.value, "exact": b.exact}
            for b in self.entries
        ]

    @classmethod
    def from_json(cls, data) -> "BoundTable":
        try:
            return cls(tuple(
                Bound(str(e["model"]), int(e["dim"]), float(e["bound"]), bool(e.get("exact", True)))
                for e in data
            ))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed bound table: {exc}") from exc


def expectation_table(values, shape=None) -> np.ndarray:
    """Validate a table of correlators. NaN marks unused entries."""
    e = np.array(values, dtype=float)
    if e.ndim != 2:
        raise DimensionError("expectation table must be two-dimensional")
    if shape is not None and e.shape != tuple(shape):
        raise DimensionError(f"expectation table shape {e.shape} != {tuple(shape)}")
    finite = e[np.isfinite(e)]
    if np.any(np.abs(finite) > 1 + E_TOL):
        raise InvariantViolation("expectation values must lie in [-1, 1]")
    return e


def evaluate(w: Witness, e) -> float:
    e = np.asarray(e, dtype=float)
    if e.shape != w.coeffs.shape:
        raise DimensionError(f"table shape {e.shape} does not match witness {w.coeffs.shape}")
    used = w.coeffs != 0
    if np.any(~np.isfinite(e[used])):
        raise InvariantViolation("missing expectation value for a nonzero coefficient")
    if np.any(np.abs(e[used]) > 1 + E_TOL):
        raise InvariantViolation("expectation values must lie in [-1, 1]")
    total = float(np.sum(w.coeffs[used] * e[used]))
    return abs(total) if w.take_abs else total


def algebraic_max(w: Witness) -> float:
    return float(np.sum(np.abs(w.coeffs)))


SQRT2 = math.sqrt(2.0)

I3 = Witness("i3", np.array([[1, 1], [1, -1], [-1, 0]], dtype=float), take_abs=True)
I4 = Witness(
    "i4",
    np.array([[1, 1, 1], [1, 1, -1], [1, -1, 0], [-1, 0, 0]], dtype=float),
    take_abs=False,
)

_CATALOG = {
    "i3": (
        I3,
        BoundTable((
            Bound(CLASSICAL, 2, 3.0),
            Bound(QUANTUM, 2, 1.0 + 2.0 * SQRT2),
            Bound(CLASSICAL, 3, 5.0),
            Bound(QUANTUM, 3, 5.0),
        )),
    ),
    "i4": (
        I4,
        BoundTable((
            Bound(CLASSICAL, 2, 5.0),
            Bound(QUANTUM, 2, 6.0),
            Bound(CLASSICAL, 3, 7.0),
            Bound(QUANTUM, 3, 2.0 + math.sqrt(13.0 + 16.0 * SQRT2)),
            Bound(CLASSICAL, 4, 9.0),
            Bound(QUANTUM, 4, 9.0),
        )),
    ),
}


def catalog(name: str) -> tuple[Witness, BoundTable]:
    try:
        return _CATALOG[name.lower()]
    except KeyError:
        raise NotFound(f"unknown witness {name!r}; known: {sorted(_CATALOG)}") from None


def catalog_names():
    return sorted(_CATALOG)


def load_witness(spec: str) -> Witness:
    """Catalog name, or path to a witness JSON file."""
    if spec.lower() in _CATALOG:
        return catalog(spec)[0]
    path = Path(spec)
    if not path.exists():
        raise NotFound(f"{spec!r} is neither a catalog witness nor a file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return Witness.from_json(data)
