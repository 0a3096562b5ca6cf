"""Finite violator spaces, closure spaces and convex spaces as explicit tables."""

from .axioms import Axiom, AxiomReport, classify
from .core import GroundSet, Kind, OperatorTable, load_operator, save_operator
from .duality import tau_from_violator, violator_from_tau
from .enumeration import paper_example, run_theorem_sweep
from .generators import extreme_points, generators_of, is_uniquely_generated

__all__ = [
    "Axiom",
    "AxiomReport",
    "GroundSet",
    "Kind",
    "OperatorTable",
    "classify",
    "extreme_points",
    "generators_of",
    "is_uniquely_generated",
    "load_operator",
    "paper_example",
    "run_theorem_sweep",
    "save_operator",
    "tau_from_violator",
    "violator_from_tau",
]

__version__ = "0.1.0"
