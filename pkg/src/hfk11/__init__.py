"""Knot Floer invariants of (1,1)-knots from genus one doubly pointed diagrams."""

from .diagram import (
    OneOneDiagram,
    RasmussenParams,
    beta_cycle,
    decode,
    family_params,
    from_matchings,
    validate,
)
from .invariants import InvariantReport, run_pipeline

__all__ = [
    "InvariantReport",
    "OneOneDiagram",
    "RasmussenParams",
    "beta_cycle",
    "decode",
    "family_params",
    "from_matchings",
    "run_pipeline",
    "validate",
]
