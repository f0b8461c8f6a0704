"""Persistence diagrams: the (birth, death) multiset of one homology
dimension, plus conversions into the measure representation used by the
classifiers."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..measures import Measure

__all__ = [
    "PersistenceDiagram",
    "rotate_diagram",
    "diagram_to_measure",
    "persistence_weight",
    "save_diagrams_jsonl",
    "load_diagrams_jsonl",
]


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death) pairs for one homology dimension.

    Deaths may be +inf (features alive at the end of the filtration).
    """

    dim: int
    pairs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pairs, dtype=float).reshape(-1, 2)
        if np.any(p[:, 0] > p[:, 1]):
            raise ValueError("birth must not exceed death")
        p.setflags(write=False)
        object.__setattr__(self, "pairs", p)

    def __len__(self) -> int:
        return len(self.pairs)

    def persistent_betti(self, r: float) -> int:
        """Number of features alive at scale r: pairs with birth <= r < death."""
        b, d = self.pairs[:, 0], self.pairs[:, 1]
        return int(np.sum((b <= r) & (r < d)))


def rotate_diagram(diagram: PersistenceDiagram, truncation: float | None = None) -> Measure:
    """Apply (b, d) -> (b, d - b) and package the result as a unit-weight measure.

    Infinite deaths are replaced by `truncation` before rotating; without a
    truncation value they are an error.
    """
    return diagram_to_measure(diagram, truncation=truncation, rotate=True)


def persistence_weight(power: float = 1.0) -> Callable[[float, float], float]:
    """Weight function (d - b)^power; power 0 gives constant weight 1."""

    def w(b: float, d: float) -> float:
        return (d - b) ** power

    return w


def diagram_to_measure(
    diagram: PersistenceDiagram,
    weight: Callable[[float, float], float] | None = None,
    truncation: float | None = None,
    rotate: bool = False,
) -> Measure:
    """Measure on the plane with one point per pair and weight w(b, d).

    `weight=None` gives unit weights.  Truncation replaces infinite deaths
    (required if any are present); the weight is evaluated on the truncated
    pair.
    """
    pairs = np.array(diagram.pairs, dtype=float)
    if np.any(np.isinf(pairs[:, 1])):
        if truncation is None:
            raise ValueError("diagram has infinite deaths; pass a truncation value")
        pairs[np.isinf(pairs[:, 1]), 1] = truncation
    if len(pairs) == 0:
        return Measure(np.empty((0, 2)))
    weights = (
        None
        if weight is None
        else np.array([weight(b, d) for b, d in pairs], dtype=float)
    )
    if rotate:
        pairs = np.column_stack([pairs[:, 0], pairs[:, 1] - pairs[:, 0]])
    return Measure(pairs, weights)


# --- JSON Lines diagram format -------------------------------------------
#
# One diagram per line: {"dim": k, "pairs": [[b, d] | [b, "inf"], ...]},
# with any extra metadata keys preserved.


def save_diagrams_jsonl(diagrams, path, metas=None) -> None:
    metas = metas or [{}] * len(diagrams)
    with open(path, "w") as fh:
        for dg, meta in zip(diagrams, metas):
            pairs = [
                [b, "inf" if math.isinf(d) else d] for b, d in dg.pairs.tolist()
            ]
            rec = {"dim": dg.dim, "pairs": pairs, **meta}
            fh.write(json.dumps(rec) + "\n")


def load_diagrams_jsonl(path):
    """Returns (diagrams, metas): metadata is every key besides dim/pairs."""
    diagrams, metas = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            pairs = [
                [b, math.inf if d == "inf" else d] for b, d in rec["pairs"]
            ]
            diagrams.append(
                PersistenceDiagram(rec["dim"], np.array(pairs, dtype=float).reshape(-1, 2))
            )
            metas.append({k: v for k, v in rec.items() if k not in ("dim", "pairs")})
    return diagrams, metas
