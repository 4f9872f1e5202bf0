"""Sorting coins of a few unknown weights with a balance scale."""

from __future__ import annotations

from .kernels import BACKEND
from .model import (
    Assignment,
    MiddleCoin,
    OrderedPartition,
    Outcome,
    Transcript,
    Weighing,
    same_weak_order,
    weak_order_of,
)
from .scale import PanPolicy, Session, WeightModel

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Assignment",
    "MiddleCoin",
    "OrderedPartition",
    "Outcome",
    "PanPolicy",
    "Session",
    "Transcript",
    "WeightModel",
    "Weighing",
    "same_weak_order",
    "weak_order_of",
]
