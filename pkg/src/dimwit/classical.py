"""Exact classical bounds by enumerating deterministic d-valued strategies.

A classical strategy of dimension d sends one of d labels per preparation,
and each measurement answers with a fixed ±1 function of the label. Shared
randomness only mixes deterministic strategies, so the maximum over them is
the classical bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvariantViolation, TooLarge
from .witness import Witness, evaluate

DEFAULT_LIMIT = 10**9
# response tables are materialised in blocks of this many bitmasks
_MASK_BLOCK = 1 << 16


@dataclass(frozen=True)
class ClassicalStrategy:
    d: int
    labels: tuple
    responses: tuple

    def __post_init__(self):
        labels = tuple(int(l) for l in self.labels)
        responses = tuple(tuple(int(v) for v in f) for f in self.responses)
        if self.d < 1:
            raise InvariantViolation("classical dimension must be >= 1")
        if any(not 0 <= l < self.d for l in labels):
            raise InvariantViolation(f"labels must lie in [0, {self.d})")
        for f in responses:
            if len(f) != self.d or any(v not in (1, -1) for v in f):
                raise InvariantViolation("each response must list d values in {-1, +1}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "responses", responses)

    @property
    def N(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.responses)


def classical_expectations(s: ClassicalStrategy, N: int, m: int) -> np.ndarray:
    """E_xy = f_y(label_x); every entry is ±1."""
    if s.N != N or s.m != m:
        raise DimensionError(f"strategy shape ({s.N}, {s.m}) does not match ({N}, {m})")
    return np.array([[s.responses[y][s.labels[x]] for y in range(m)] for x in range(N)], dtype=float)


def enumeration_size(w: Witness, d: int) -> int:
    return d**w.N * 2 ** (d * w.m)


def _response_block(start: int, stop: int, width: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(width, dtype=np.int64)) & 1
    return 1.0 - 2.0 * bits


def _decode(mask: int, d: int, m: int) -> tuple:
    # bit y*d + l set  <=>  f_y(l) = -1
    return tuple(
        tuple(-1 if (mask >> (y * d + l)) & 1 else 1 for l in range(d)) for y in range(m)
    )


def classical_bound(w: Witness, d: int, limit: int = DEFAULT_LIMIT):
    """Maximum of the witness over all deterministic d-dimensional strategies.

    Labels are enumerated in odometer order and responses as bitmasks; the
    first strategy reaching the maximum is returned, so results are stable
    across runs. Returns ``(value, strategy)``.
    """
    if d < 1:
        raise InvariantViolation("classical dimension must be >= 1")
    size = enumeration_size(w, d)
    if size > limit:
        raise TooLarge(
            f"enumerating {size} strategies for {w.name} at d={d} exceeds the limit {limit}"
        )
    N, m = w.N, w.m
    width = d * m
    n_masks = 1 << width
    single = n_masks <= _MASK_BLOCK
    table = _response_block(0, n_masks, width) if single else None

    best_value, best_labels, best_mask = -np.inf, None, None
    for labels in itertools.product(range(d), repeat=N):
        # weight of response value f_y(l) in the witness: S[y, l] = sum_{x: label_x = l} c_xy
        s = np.zeros((m, d))
        for x, l in enumerate(labels):
            s[:, l] += w.coeffs[x]
        flat = s.reshape(-1)
        for start in range(0, n_masks, _MASK_BLOCK):
            stop = min(start + _MASK_BLOCK, n_masks)
            block = table if single else _response_block(start, stop, width)
            vals = block @ flat
            if w.take_abs:
                vals = np.abs(vals)
            i = int(np.argmax(vals))
            if vals[i] > best_value:
                best_value, best_labels, best_mask = float(vals[i]), labels, start + i

    strategy = ClassicalStrategy(d, best_labels, _decode(best_mask, d, m))
    # report the value recomputed from the strategy so both always agree exactly
    value = evaluate(w, classical_expectations(strategy, N, m))
    return value, strategy
