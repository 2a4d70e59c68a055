"""Exact arithmetic in towers of local fields."""
from .element import AtLeast, FieldElement
from .tower import (
    DEFAULT_PRECISION,
    EISENSTEIN,
    MIN_PRECISION,
    UNRAMIFIED,
    ExtensionStep,
    FieldTower,
    derivative_value,
    extend,
)


def valuation(x: FieldElement):
    """Normalized valuation (``v(p) = 1`` or ``v(t) = 1``), or :class:`AtLeast` when zero at precision."""
    return x.valuation()


def arith(x: FieldElement, y: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")
from .adjoin import Adjunction, adjoin  # noqa: E402
from .builtins import builtin_towers, constant, cyclotomic, p_radical, step_corpus, unramified  # noqa: E402
