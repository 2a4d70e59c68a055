"""Polynomials over finite residue fields: division, gcd and Rabin's irreducibility test."""
from __future__ import annotations


def trim(F, a) -> list:
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def poly_divmod(F, a, b):
    a, b = trim(F, a), trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    inv_lead = F.inv(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = F.mul(r[k + len(b) - 1], inv_lead)
        q[k] = c
        if not F.is_zero(c):
            for i, y in enumerate(b):
                r[k + i] = F.sub(r[k + i], F.mul(c, y))
    return trim(F, q), trim(F, r[: len(b) - 1])


def poly_mul(F, a, b) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def poly_mulmod(F, a, b, m) -> list:
    return poly_divmod(F, poly_mul(F, a, b), m)[1]


def poly_powmod(F, a, n: int, m) -> list:
    result = [F.one]
    base = poly_divmod(F, a, m)[1]
    while n:
        if n & 1:
            result = poly_mulmod(F, result, base, m)
        n >>= 1
        if n:
            base = poly_mulmod(F, base, base, m)
    return result


def poly_gcd(F, a, b) -> list:
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if a:
        c = F.inv(a[-1])
        a = [F.mul(c, x) for x in a]
    return a


def poly_sub(F, a, b) -> list:
    n = max(len(a), len(b))
    z = F.zero
    return trim(F, [F.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def poly_eval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _prime_factors(n: int) -> list:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, g) -> bool:
    """Rabin's test for a polynomial ``g`` over the finite field ``F`` (of size ``F.size``)."""
    g = trim(F, g)
    d = len(g) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    q = F.size
    x = [F.zero, F.one]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = poly_powmod(F, h, q, g)
        return h

    for r in _prime_factors(d):
        h = poly_sub(F, frob_iter(d // r), x)
        if len(poly_gcd(F, h, g)) != 1:
            return False
    return not poly_sub(F, frob_iter(d), x)


def roots(F, g) -> list:
    """All roots of ``g`` in ``F`` by exhaustive evaluation, in enumeration order."""
    return [c for c in F.elements() if F.is_zero(poly_eval(F, g, c))]
