from .complexes import FilteredComplex, cech_filtration, rips_filtration, miniball_radius
from .persistence import persistence, betti_oracle
from .diagrams import (
    PersistenceDiagram,
    rotate_diagram,
    diagram_to_measure,
    persistence_weight,
    save_diagrams_jsonl,
    load_diagrams_jsonl,
)
from .bottleneck import bottleneck, bottleneck_bruteforce

__all__ = [
    "FilteredComplex",
    "cech_filtration",
    "rips_filtration",
    "miniball_radius",
    "persistence",
    "betti_oracle",
    "PersistenceDiagram",
    "rotate_diagram",
    "diagram_to_measure",
    "persistence_weight",
    "save_diagrams_jsonl",
    "load_diagrams_jsonl",
    "bottleneck",
    "bottleneck_bruteforce",
]
