"""Present ``F(α)`` as a single Eisenstein or unramified step over ``F``.

Given the minimal polynomial ``g`` of ``α`` over ``F`` we track an element
``β = (α - C)/D`` together with its minimal polynomial ``h``.  The valuation
of ``β`` is read off the norm, ``v(β) = v(h(0))/r``.  When it is not in the
value group of ``F`` a suitable monomial ``β^s π^t`` is a uniformizer of the
extension; when it is, ``β`` is rescaled to a unit and its residue is either
peeled off (``β - c``) or shown to generate an unramified extension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import PrecisionExhausted, UnsupportedExtension, ValidationError
from . import residue as rz
from .element import AtLeast
from .poly import charpoly_of_power, scale_root, taylor_shift
from .tower import EISENSTEIN, UNRAMIFIED, FieldTower

MAX_ROUNDS = 200


@dataclass(frozen=True)
class Adjunction:
    tower: FieldTower
    kind: str
    rounds: int
    exponents: tuple  # (s, t) of the uniformizer β^s π^t, or () when unramified/direct


def _is_eisenstein(tower, g) -> bool:
    v0 = g[0].valuation()
    if isinstance(v0, AtLeast) or v0 != Fraction(1, tower.e):
        return False
    return all(c.vlow() > 0 for c in g[1:-1])


def _is_unramified_poly(tower, g) -> bool:
    if any(c.vlow() < 0 for c in g):
        return False
    rpoly = [tower.residue(c) for c in g]
    return rz.is_irreducible(tower.residue_field, rpoly)


def adjoin(tower: FieldTower, g) -> Adjunction:
    """Extend ``tower`` by a root of the monic irreducible ``g`` (coefficients lowest first)."""
    g = [tower(c) for c in g]
    r = len(g) - 1
    if r < 1 or not (g[-1] - 1).is_zero():
        raise ValidationError("adjoin needs a monic polynomial of degree >= 1")
    if r == 1:
        # a rational root: record a trivial step so the level count stays aligned
        return Adjunction(tower.extend([tower.zero(), tower.one()], UNRAMIFIED), UNRAMIFIED, 0, ())
    if _is_eisenstein(tower, g):
        return Adjunction(tower.extend(g, EISENSTEIN), EISENSTEIN, 0, ())
    if _is_unramified_poly(tower, g):
        return Adjunction(tower.extend(g, UNRAMIFIED), UNRAMIFIED, 0, ())

    pi = tower.uniformizer()
    e = tower.e
    R = tower.residue_field
    h = g
    for rounds in range(1, MAX_ROUNDS + 1):
        v0 = h[0].valuation()
        if isinstance(v0, AtLeast):
            raise ValidationError("polynomial has a root in the base field at working precision (reducible)")
        a = v0 * e  # r·e·v(β), an integer
        if a.denominator != 1:
            raise ValidationError("constant term valuation outside the value group")
        a = int(a)
        if a % r:
            if math.gcd(a, r) != 1:
                raise UnsupportedExtension(
                    "partially ramified extension of composite degree; present it as a multi-step tower"
                )
            s = pow(a, -1, r)
            t = (1 - s * a) // r
            cp = h if s == 1 else charpoly_of_power(h, s)
            cp = scale_root(cp, pi ** t)
            return Adjunction(tower.extend(cp, EISENSTEIN), EISENSTEIN, rounds, (s, t))
        k = a // r
        if k:
            h = scale_root(h, pi ** (-k))
            continue
        if any(c.vlow() < 0 for c in h):
            raise PrecisionExhausted("lost integrality while normalizing the generator")
        hbar = [tower.residue(c) for c in h]
        roots = rz.roots(R, hbar)
        if not roots:
            if rz.is_irreducible(R, hbar):
                return Adjunction(tower.extend(h, UNRAMIFIED), UNRAMIFIED, rounds, ())
            raise UnsupportedExtension("residue polynomial factors without roots; extension is not a single step")
        c = roots[0]
        if len(roots) > 1 or not _is_pure_power(R, hbar, c):
            raise ValidationError("polynomial is reducible (residue polynomial has coprime factors)")
        h = taylor_shift(h, tower.lift_residue(c))
    raise PrecisionExhausted(f"no single-step presentation found after {MAX_ROUNDS} rounds")


def _is_pure_power(R, hbar, c) -> bool:
    """``hbar == (x - c)^deg``."""
    r = len(hbar) - 1
    target = [R.one]
    for _ in range(r):
        target = rz.poly_mul(R, target, [R.neg(c), R.one])
    return not rz.poly_sub(R, hbar, target)
