"""Exact arithmetic in F_p[t] and F_p(t).

Polynomials are tuples of ints in ``[0, p)``, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).  Only what the Laurent-series
base needs is here: ring operations, division with remainder, gcd and a
normalized fraction type.
"""
from __future__ import annotations


def norm(a, p) -> tuple:
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def add(a, b, p) -> tuple:
    n = max(len(a), len(b))
    return norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def neg(a, p) -> tuple:
    return tuple((-c) % p for c in a)


def sub(a, b, p) -> tuple:
    return add(a, neg(b, p), p)


def mul(a, b, p) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return norm(out, p)


def scale(a, c, p) -> tuple:
    return norm([x * c for x in a], p)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv_lead % p
        q[k] = c
        if c:
            for i, y in enumerate(b):
                r[k + i] = (r[k + i] - c * y) % p
    return norm(q, p), norm(r, p)


def gcd(a, b, p) -> tuple:
    while b:
        a, b = b, divmod_(a, b, p)[1]
    if not a:
        return ()
    return scale(a, pow(a[-1], -1, p), p)


def order(a) -> int:
    """t-adic order of a nonzero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("order of zero")


def series_inverse(a, m, p) -> tuple:
    """Inverse of ``a`` (with ``a[0] != 0``) modulo ``t^m``."""
    if m <= 0:
        return ()
    inv0 = pow(a[0], -1, p)
    out = [0] * m
    for k in range(m):
        s = 1 if k == 0 else 0
        for i in range(1, min(k, len(a) - 1) + 1):
            s -= a[i] * out[k - i]
        out[k] = s * inv0 % p
    return norm(out, p)


class RatFunc:
    """An element of F_p(t) as ``num/den`` with ``gcd = 1`` and monic ``den``."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num, den=(1,), _normalized=False):
        self.p = p
        if _normalized:
            self.num, self.den = num, den
            return
        num, den = norm(num, p), norm(den, p)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        g = gcd(num, den, p)
        if g != (1,):
            num, den = divmod_(num, g, p)[0], divmod_(den, g, p)[0]
        c = pow(den[-1], -1, p)
        self.num, self.den = scale(num, c, p), scale(den, c, p)

    @classmethod
    def laurent(cls, p: int, coeffs, shift: int = 0) -> "RatFunc":
        """``t^shift * sum(coeffs[i] t^i)``."""
        if shift >= 0:
            return cls(p, (0,) * shift + tuple(coeffs))
        return cls(p, tuple(coeffs), (0,) * (-shift) + (1,))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, int):
                return self == RatFunc(self.p, (other,))
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __add__(self, o):
        p = self.p
        if self.den == o.den:
            return RatFunc(p, add(self.num, o.num, p), self.den)
        return RatFunc(p, add(mul(self.num, o.den, p), mul(o.num, self.den, p), p), mul(self.den, o.den, p))

    def __neg__(self):
        return RatFunc(self.p, neg(self.num, self.p), self.den, _normalized=True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        p = self.p
        return RatFunc(p, mul(self.num, o.num, p), mul(self.den, o.den, p))

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in F_p(t)")
        return RatFunc(self.p, self.den, self.num)

    def order(self) -> int:
        return order(self.num) - order(self.den)

    def truncate(self, m: int) -> "RatFunc":
        """Laurent expansion with every term of degree >= m dropped."""
        if not self.num:
            return self
        p = self.p
        s = order(self.den)
        d = self.den[s:]
        if self.den == (0,) * s + (1,):
            terms = self.num
        else:
            terms = mul(self.num, series_inverse(d, m + s, p), p)
        # terms / t^s; keep degrees < m + s
        terms = norm(terms[: max(m + s, 0)], p)
        return RatFunc.laurent(p, terms, -s) if s else RatFunc(p, terms)

    def __repr__(self):
        return f"RatFunc({self.p}, {self.num}, {self.den})"
