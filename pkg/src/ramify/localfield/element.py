"""Elements of a tower at tracked absolute precision."""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from ..errors import DivisionByZeroAtPrecision, PrecisionExhausted, ValidationError


@total_ordering
class AtLeast:
    """The valuation of an element that is zero at its precision: known only to be ``>= bound``."""

    __slots__ = ("bound",)

    def __init__(self, bound):
        self.bound = Fraction(bound)

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.bound == self.bound

    def __hash__(self):
        return hash(("AtLeast", self.bound))

    def __lt__(self, other):
        # only ever compared against thresholds: "≥ N" is below x iff N < x is not known
        if isinstance(other, AtLeast):
            return self.bound < other.bound
        return False

    def __repr__(self):
        return f"≥{self.bound}"

    def to_json(self):
        return {"at_least": [self.bound.numerator, self.bound.denominator]}


def lower_bound(v) -> Fraction:
    return v.bound if isinstance(v, AtLeast) else v


class FieldElement:
    """``rep`` is a canonical representative modulo ``{v >= prec}`` at the tower's top level."""

    __slots__ = ("tower", "rep", "prec")
    __hash__ = None

    def __init__(self, tower, rep, prec=None, _canonical=False):
        self.tower = tower
        N = tower.precision
        prec = Fraction(N) if prec is None else min(Fraction(prec), Fraction(N))
        self.prec = prec
        self.rep = rep if _canonical else tower.arith.trunc(rep, prec)

    # -- inspection -----------------------------------------------------------
    def valuation(self):
        v = self.tower.arith.val(self.rep)
        return AtLeast(self.prec) if v is None else Fraction(v)

    def vlow(self) -> Fraction:
        return lower_bound(self.valuation())

    def is_zero(self) -> bool:
        return self.tower.arith.is_zero(self.rep)

    def is_integral(self) -> bool:
        return self.vlow() >= 0

    @property
    def relative_precision(self):
        v = self.valuation()
        return None if isinstance(v, AtLeast) else self.prec - v

    def flat(self) -> list:
        """Coefficients on the monomial basis ``θ_1^{i_1}…θ_k^{i_k}`` (``i_1`` fastest)."""
        out = []

        def walk(x, depth):
            if depth == 0:
                out.append(x)
                return
            for c in x:
                walk(c, depth - 1)

        walk(self.rep, self.tower.depth)
        return out

    def __repr__(self):
        return f"FieldElement({self.tower.describe_element(self.rep)}, prec={self.prec})"

    def __str__(self):
        return self.tower.describe_element(self.rep)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise ValidationError("elements belong to different towers")
        return self.tower(other)

    def __add__(self, other):
        other = self._coerce(other)
        A = self.tower.arith
        prec = min(self.prec, other.prec)
        return FieldElement(self.tower, A.add(self.rep, other.rep), prec)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, self.tower.arith.neg(self.rep), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        A = self.tower.arith
        return FieldElement(self.tower, A.sub(self.rep, other.rep), min(self.prec, other.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        A = self.tower.arith
        vx, vy = self.vlow(), other.vlow()
        prec = min(Fraction(self.tower.precision), vx + other.prec, vy + self.prec)
        rep = A.mul(self.rep, other.rep)
        out = FieldElement(self.tower, rep, prec)
        if not out.is_zero() and out.prec <= out.vlow():
            raise PrecisionExhausted("product has no certified digit")
        return out

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZeroAtPrecision(f"inverse of an element that is zero at precision {self.prec}")
        v = self.valuation()
        A = self.tower.arith
        prec = min(Fraction(self.tower.precision), self.prec - 2 * v)
        return FieldElement(self.tower, A.inv(self.rep), prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        """Equal at the common precision (the difference is zero there)."""
        try:
            return (self - other).is_zero()
        except ValidationError:
            return False

    def with_precision(self, prec) -> "FieldElement":
        """Lower the precision (raising it would invent digits)."""
        return FieldElement(self.tower, self.rep, min(Fraction(prec), self.prec))

    def lift_exact(self, tower=None) -> "FieldElement":
        """Treat the representative as exact, at the full precision of ``tower``."""
        tower = tower or self.tower
        return FieldElement(tower, self.rep, tower.precision)
