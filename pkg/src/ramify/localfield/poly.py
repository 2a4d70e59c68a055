"""Polynomials with :class:`FieldElement` coefficients (lists, lowest degree first)."""
from __future__ import annotations

from .arith import berkowitz


class ElementRing:
    """Adapter so the generic Berkowitz routine can run on tracked elements."""

    def __init__(self, tower):
        self.zero = tower.zero()
        self.one = tower.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b


def peval(poly, x):
    acc = x.tower.zero()
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def derivative(poly) -> list:
    return [c * i for i, c in enumerate(poly)][1:]


def synthetic_division(poly, r):
    """``poly = (x - r)·q + rem``; returns ``(q, rem)``."""
    n = len(poly) - 1
    q = [None] * n
    acc = poly[-1]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = poly[i] + acc * r
    return q, acc


def taylor_shift(poly, c) -> list:
    """Coefficients of ``poly(x + c)``."""
    out = list(poly)
    n = len(out) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            out[j] = out[j] + out[j + 1] * c
    return out


def scale_root(poly, c) -> list:
    """Monic polynomial whose roots are ``c`` times the roots of the monic ``poly``."""
    r = len(poly) - 1
    out = []
    cp = poly[0].tower.one()
    powers = [cp]
    for _ in range(r):
        powers.append(powers[-1] * c)
    for i, a in enumerate(poly):
        out.append(a * powers[r - i])
    return out


def companion(poly) -> list:
    T = poly[0].tower
    r = len(poly) - 1
    m = [[T.zero() for _ in range(r)] for _ in range(r)]
    for j in range(r - 1):
        m[j + 1][j] = T.one()
    for i in range(r):
        m[i][r - 1] = -poly[i]
    return m


def matmul(a, b) -> list:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def charpoly_of_power(poly, s: int) -> list:
    """Monic polynomial (lowest first) satisfied by ``β^s`` where ``poly(β) = 0``."""
    T = poly[0].tower
    C = companion(poly)
    M = C
    for _ in range(s - 1):
        M = matmul(M, C)
    cp = berkowitz(M, ElementRing(T))
    return list(reversed(cp))
