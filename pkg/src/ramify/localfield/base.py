"""Level-0 arithmetic: Q (completed at p) and F_p(t) (completed at t).

Both classes expose the same small protocol used by the tower arithmetic:
exact ring operations on global representatives, an exact valuation, and a
canonical truncation ``trunc(x, P)`` that reduces ``x`` modulo ``{v >= P}``.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .. import _fpt
from .._fpt import RatFunc
from ..errors import ValidationError


def vp_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _ceil(x) -> int:
    return math.ceil(x)


class PadicBase:
    kind = "padic"
    depth = 0
    degree = 1
    char = 0

    def __init__(self, p: int):
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return type(other) is PadicBase and other.p == self.p

    def __hash__(self):
        return hash(("padic", self.p))

    def __repr__(self):
        return f"Q_{self.p}"

    # exact ring operations
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return not a

    def from_int(self, n: int):
        return Fraction(n)

    def coerce(self, c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        if isinstance(c, (list, tuple)) and len(c) == 2 and all(isinstance(x, int) for x in c):
            return Fraction(c[0], c[1])
        if isinstance(c, str):
            return Fraction(c)
        raise ValidationError(f"cannot read {c!r} as a rational")

    def uniformizer(self):
        return Fraction(self.p)

    # valuation and truncation
    def val(self, a):
        if not a:
            return None
        return vp_int(a.numerator, self.p) - vp_int(a.denominator, self.p)

    def trunc(self, a, prec):
        """Canonical (balanced) representative of ``a`` modulo ``p^ceil(prec)``."""
        if not a:
            return a
        m = _ceil(prec)
        p = self.p
        n, d = a.numerator, a.denominator
        s = vp_int(d, p)
        if s:
            d //= p ** s
        # a = n / (p^s d), reduce n/d mod p^(m+s)
        k = m + s
        if k <= 0:
            return self.zero
        mod = p ** k
        r = n * pow(d, -1, mod) % mod if d != 1 else n % mod
        if 2 * r > mod:
            r -= mod  # balanced residues keep small negatives readable
        if not r:
            return self.zero
        return Fraction(r, p ** s) if s else Fraction(r)

    # residue field F_p
    def residue(self, a) -> int:
        if not a:
            return 0
        if self.val(a) < 0:
            raise ValidationError("residue of a non-integral element")
        return a.numerator * pow(a.denominator, -1, self.p) % self.p

    def lift(self, r: int):
        return Fraction(r % self.p)

    def to_json(self, a):
        return [a.numerator, a.denominator]

    def to_str(self, a) -> str:
        return str(a)


class LaurentBase:
    kind = "laurent"
    depth = 0
    degree = 1

    def __init__(self, p: int):
        self.p = p
        self.char = p
        self.zero = RatFunc(p, ())
        self.one = RatFunc(p, (1,))
        self._t = RatFunc(p, (0, 1))

    def __eq__(self, other):
        return type(other) is LaurentBase and other.p == self.p

    def __hash__(self):
        return hash(("laurent", self.p))

    def __repr__(self):
        return f"F_{self.p}((t))"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a) -> bool:
        return not a

    def from_int(self, n: int):
        return RatFunc(self.p, (n % self.p,))

    def coerce(self, c):
        if isinstance(c, RatFunc):
            return c
        if isinstance(c, int):
            return self.from_int(c)
        if isinstance(c, dict):
            # {"shift": s, "coeffs": [...]} means t^s * sum coeffs[i] t^i
            if "num" in c:
                return RatFunc(self.p, tuple(c["num"]), tuple(c.get("den", (1,))))
            return RatFunc.laurent(self.p, tuple(c.get("coeffs", ())), int(c.get("shift", 0)))
        if isinstance(c, (list, tuple)) and len(c) == 2 and all(isinstance(x, int) for x in c):
            n, d = c
            return RatFunc(self.p, (n % self.p,)) * RatFunc(self.p, (d % self.p,)).inverse()
        raise ValidationError(f"cannot read {c!r} as an element of F_{self.p}(t)")

    def uniformizer(self):
        return self._t

    def val(self, a):
        if not a:
            return None
        return a.order()

    def trunc(self, a, prec):
        if not a:
            return a
        return a.truncate(_ceil(prec))

    def residue(self, a) -> int:
        if not a:
            return 0
        o = a.order()
        if o < 0:
            raise ValidationError("residue of a non-integral element")
        if o > 0:
            return 0
        return a.num[0] * pow(a.den[0], -1, self.p) % self.p

    def lift(self, r: int):
        return self.from_int(r)

    def to_json(self, a):
        if not a.num:
            return {"shift": 0, "coeffs": []}
        s = _fpt.order(a.den)
        if a.den != (0,) * s + (1,):
            return {"num": list(a.num), "den": list(a.den)}
        return {"shift": -s, "coeffs": list(a.num)}

    def to_str(self, a) -> str:
        j = self.to_json(a)
        if "num" in j:
            return f"({j['num']})/({j['den']})"
        terms = [f"{c}*t^{i + j['shift']}" for i, c in enumerate(j["coeffs"]) if c]
        return " + ".join(terms) or "0"
