"""Exact arithmetic in simple extensions, stacked level by level.

An element of ``K[θ]/(f)`` is a tuple of ``d`` elements of ``K``, lowest power
first.  Every operation here is exact on the representatives; precision is the
business of :mod:`.element`.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ValidationError


class PrimeField:
    """F_p with elements as ints in ``[0, p)``; the bottom of residue towers."""

    depth = 0
    degree = 1

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1
        self.size = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if not a % self.p:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.p)

    def index(self, a) -> int:
        return a

    def from_index(self, k: int):
        return k % self.p


def berkowitz(mat, R) -> list:
    """Characteristic polynomial ``det(xI - mat)`` over ring ``R``, highest degree first.

    Division free, so it is exact over any commutative ring.
    """
    n = len(mat)
    if n == 0:
        return [R.one]
    if n == 1:
        return [R.one, R.neg(mat[0][0])]
    a = mat[0][0]
    row = mat[0][1:]
    col = [mat[i][0] for i in range(1, n)]
    sub = [r[1:] for r in mat[1:]]

    def dot(u, w):
        acc = R.zero
        for x, y in zip(u, w):
            acc = R.add(acc, R.mul(x, y))
        return acc

    items = [R.one, R.neg(a)]
    vec = col
    for i in range(n - 1):
        items.append(R.neg(dot(row, vec)))
        if i < n - 2:
            vec = [dot(r, vec) for r in sub]
    tail = berkowitz(sub, R)
    # (n+1) x n lower-triangular Toeplitz matrix times tail
    out = []
    for i in range(n + 1):
        acc = R.zero
        for j in range(n):
            if 0 <= i - j < len(items):
                acc = R.add(acc, R.mul(items[i - j], tail[j]))
        out.append(acc)
    return out


class SimpleExt:
    """Arithmetic in ``lower[θ]/(f)`` for a monic ``f`` of degree ``d``."""

    def __init__(self, lower, f):
        self.lower = lower
        self.f = tuple(f)
        self.d = len(f) - 1
        self.depth = lower.depth + 1
        self.degree = lower.degree * self.d
        L = lower
        self.zero = (L.zero,) * self.d
        self.one = (L.one,) + (L.zero,) * (self.d - 1)

    # ring structure
    def add(self, a, b):
        L = self.lower
        return tuple(L.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        L = self.lower
        return tuple(L.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        L = self.lower
        return tuple(L.neg(x) for x in a)

    def is_zero(self, a) -> bool:
        L = self.lower
        return all(L.is_zero(x) for x in a)

    def from_int(self, n: int):
        return (self.lower.from_int(n),) + (self.lower.zero,) * (self.d - 1)

    def embed(self, c):
        """Constant ``c`` from the level below."""
        return (c,) + (self.lower.zero,) * (self.d - 1)

    def gen(self):
        L = self.lower
        if self.d == 1:
            return (L.neg(self.f[0]),)
        return (L.zero, L.one) + (L.zero,) * (self.d - 2)

    def reduce(self, coeffs):
        """Reduce a coefficient list of any length modulo ``f``."""
        L = self.lower
        d = self.d
        r = list(coeffs)
        f = self.f
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if L.is_zero(c):
                continue
            for i in range(d):
                if not L.is_zero(f[i]):
                    r[k - d + i] = L.sub(r[k - d + i], L.mul(c, f[i]))
        r = r[:d]
        if len(r) < d:
            r += [L.zero] * (d - len(r))
        return tuple(r)

    def polymul(self, a, b) -> list:
        L = self.lower
        out = [L.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if L.is_zero(x):
                continue
            for j, y in enumerate(b):
                if L.is_zero(y):
                    continue
                out[i + j] = L.add(out[i + j], L.mul(x, y))
        return out

    def mul(self, a, b):
        return self.reduce(self.polymul(a, b))

    def scalar(self, c, a):
        L = self.lower
        return tuple(L.mul(c, x) for x in a)

    def mul_gen(self, a):
        """``θ·a``."""
        return self.reduce((self.lower.zero,) + tuple(a))

    def mult_matrix(self, a):
        """Matrix (over the level below) of multiplication by ``a``; column j is ``a θ^j``."""
        cols = [a]
        for _ in range(self.d - 1):
            cols.append(self.mul_gen(cols[-1]))
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def charpoly(self, a) -> list:
        """Characteristic polynomial of ``a`` over the level below, highest degree first."""
        return berkowitz(self.mult_matrix(a), self.lower)

    def norm(self, a):
        c0 = self.charpoly(a)[-1]
        return c0 if self.d % 2 == 0 else self.lower.neg(c0)

    def inv(self, a):
        L = self.lower
        if self.d == 1:
            return (L.inv(a[0]),)
        cp = self.charpoly(a)  # [1, c_{d-1}, ..., c_0]
        c0 = cp[-1]
        if L.is_zero(c0):
            raise ZeroDivisionError("inverse of zero")
        # a^{-1} = -(a^{d-1} + c_{d-1} a^{d-2} + ... + c_1) / c_0
        acc = self.embed(cp[0])
        for c in cp[1:-1]:
            acc = self.add(self.mul(acc, a), self.embed(c))
        return self.scalar(L.neg(L.inv(c0)), acc)

    def pow(self, a, n: int):
        result = self.one
        base = a
        if n < 0:
            base, n = self.inv(a), -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def power_sums(self, count: int) -> list:
        """``Tr(θ^k)`` for ``k < count`` via Newton's identities (division free)."""
        L = self.lower
        d = self.d
        a = self.f  # a[d] = 1
        s = [L.from_int(d)]
        for k in range(1, count):
            acc = L.zero
            for i in range(1, min(k - 1, d) + 1):
                acc = L.add(acc, L.mul(a[d - i], s[k - i]))
            if k <= d:
                acc = L.add(acc, L.mul(L.from_int(k), a[d - k]))
            s.append(L.neg(acc))
        return s

    def trace(self, a, sums=None):
        L = self.lower
        sums = sums or self.power_sums(self.d)
        acc = L.zero
        for x, s in zip(a, sums):
            acc = L.add(acc, L.mul(x, s))
        return acc


class FiniteExt(SimpleExt):
    """Residue-field level: a simple extension of a finite field."""

    def __init__(self, lower, f):
        super().__init__(lower, f)
        self.size = lower.size ** self.d

    def elements(self):
        for k in range(self.size):
            yield self.from_index(k)

    def from_index(self, k: int):
        q = self.lower.size
        out = []
        for _ in range(self.d):
            out.append(self.lower.from_index(k % q))
            k //= q
        return tuple(out)

    def index(self, a) -> int:
        q = self.lower.size
        k = 0
        for x in reversed(a):
            k = k * q + self.lower.index(x)
        return k


class ValuedExt(SimpleExt):
    """A tower level with valuation: ``v(Σ a_i θ^i) = min v(a_i) + i·vθ``."""

    def __init__(self, lower, f, vtheta: Fraction, kind: str):
        super().__init__(lower, f)
        self.vtheta = Fraction(vtheta)
        self.kind = kind
        self.base = getattr(lower, "base", lower)

    def val(self, a):
        L = self.lower
        best = None
        for i, x in enumerate(a):
            v = L.val(x)
            if v is None:
                continue
            v = v + i * self.vtheta
            if best is None or v < best:
                best = v
        return best

    def trunc(self, a, prec):
        L = self.lower
        vt = self.vtheta
        return tuple(L.trunc(x, prec - i * vt) for i, x in enumerate(a))

    def coerce(self, c):
        if isinstance(c, tuple) and len(c) == self.d:
            return c
        if isinstance(c, list):
            # at levels above the base a list is always a coefficient vector
            if len(c) != self.d:
                raise ValidationError(f"expected {self.d} coefficients, got {len(c)}")
            return tuple(self.lower.coerce(x) for x in c)
        return self.embed(self.lower.coerce(c))
