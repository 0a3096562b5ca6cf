"""Pointwise complement between closure-style and violator-style tables."""

from __future__ import annotations

from .core import Kind, KindError, OperatorTable


def _complemented(op: OperatorTable, kind: Kind) -> OperatorTable:
    full = op.ground.full
    return OperatorTable(op.ground, kind, tuple(full & ~img for img in op.images))


def violator_from_tau(op: OperatorTable) -> OperatorTable:
    """``V(X) = E - τ(X)`` for every ``X``; no axiom is checked or repaired."""
    if op.kind is not Kind.TAU:
        raise KindError("violator_from_tau expects a tau table")
    return _complemented(op, Kind.VIOLATOR)


def tau_from_violator(op: OperatorTable) -> OperatorTable:
    """``τ(X) = H - V(X)`` for every ``X``."""
    if op.kind is not Kind.VIOLATOR:
        raise KindError("tau_from_violator expects a violator table")
    return _complemented(op, Kind.TAU)


def as_tau(op: OperatorTable) -> OperatorTable:
    return op if op.kind is Kind.TAU else tau_from_violator(op)


def as_violator(op: OperatorTable) -> OperatorTable:
    return op if op.kind is Kind.VIOLATOR else violator_from_tau(op)
