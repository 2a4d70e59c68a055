"""Built-in tower families."""
from __future__ import annotations

from math import comb

from ..errors import ValidationError
from . import residue as rz
from .tower import DEFAULT_PRECISION, EISENSTEIN, UNRAMIFIED, FieldTower


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise ValidationError("n must be a non-negative integer")


def cyclotomic(p: int, n: int, precision: int = DEFAULT_PRECISION) -> FieldTower:
    """``Q_p(ζ_{p^n})`` with ``θ_k = ζ_{p^k} - 1``."""
    _check_n(n)
    T = FieldTower.padic(p, precision)
    for k in range(1, n + 1):
        if k == 1:
            # Φ_p(x + 1) = ((x+1)^p - 1)/x
            poly = [comb(p, i + 1) for i in range(p)]
        else:
            # (x + 1)^p - (θ_{k-1} + 1)
            poly = [-T.gen()] + [comb(p, i) for i in range(1, p + 1)]
        T = T.extend(poly, EISENSTEIN)
    return T


def p_radical(p: int, n: int, precision: int = DEFAULT_PRECISION) -> FieldTower:
    """``Q_p(p^{1/p^n})`` with ``θ_k = p^{1/p^k}``."""
    _check_n(n)
    T = FieldTower.padic(p, precision)
    for k in range(1, n + 1):
        c = -p if k == 1 else -T.gen()
        T = T.extend([c] + [0] * (p - 1) + [1], EISENSTEIN)
    return T


def quadratic_unramified_poly(T: FieldTower) -> list:
    """The first (in residue enumeration order) monic quadratic irreducible over the residue field."""
    R = T.residue_field
    for idx in range(R.size):
        a = R.from_index(idx)
        if T.p == 2:
            rpoly = [a, R.one, R.one]
        else:
            rpoly = [R.neg(a), R.zero, R.one]
        if rz.is_irreducible(R, rpoly):
            lift = T.lift_residue(a)
            return [lift, 1, 1] if T.p == 2 else [-lift, 0, 1]
    raise AssertionError("every finite field has a quadratic extension")


def unramified(p: int, n: int, precision: int = DEFAULT_PRECISION) -> FieldTower:
    """Unramified extension of ``Q_p`` of degree ``2^n`` as ``n`` quadratic steps."""
    _check_n(n)
    T = FieldTower.padic(p, precision)
    for _ in range(n):
        T = T.extend(quadratic_unramified_poly(T), UNRAMIFIED)
    return T


def constant(base: FieldTower, n: int = 0) -> FieldTower:
    """The family whose every member is ``base``."""
    _check_n(n)
    return base


def builtin_towers(name: str, **params) -> FieldTower:
    precision = params.get("precision", DEFAULT_PRECISION)
    if name == "constant":
        base = params.get("base")
        if base is None:
            base = FieldTower.padic(params["p"], precision)
        return constant(base, params.get("n", 0))
    makers = {"cyclotomic": cyclotomic, "p_radical": p_radical, "unramified": unramified}
    if name not in makers:
        raise ValidationError(f"unknown built-in tower {name!r}")
    try:
        return makers[name](params["p"], params["n"], precision)
    except KeyError as exc:
        raise ValidationError(f"missing parameter {exc.args[0]!r}") from None


def step_corpus(precision: int = DEFAULT_PRECISION) -> dict:
    """Named towers covering tame, wild, unramified and mixed steps over Q_p and F_p((t))."""
    from .adjoin import adjoin

    out = {}
    for p in (2, 3, 5):
        Qp = FieldTower.padic(p, precision)
        out[f"Q{p}(sqrt{p})"] = Qp.extend([-p, 0, 1], EISENSTEIN)
        out[f"Q{p}(zeta{p})"] = cyclotomic(p, 1, precision)
        out[f"Q{p} unramified quadratic"] = unramified(p, 1, precision)
    out["Q3(sqrt2)"] = FieldTower.padic(3, precision).extend([-2, 0, 1], UNRAMIFIED)
    out["Q2(zeta4)"] = cyclotomic(2, 2, precision)
    out["Q3(zeta9)"] = cyclotomic(3, 2, precision)
    out["Q2(2^(1/4))"] = p_radical(2, 2, precision)
    out["Q2 by x^4-2"] = FieldTower.padic(2, precision).extend([-2, 0, 0, 0, 1], EISENSTEIN)
    out["Q3(3^(1/9))"] = p_radical(3, 2, precision)
    out["Q2 unramified quartic"] = unramified(2, 2, precision)
    out["Q3(zeta3) then unramified"] = cyclotomic(3, 1, precision).extend(
        quadratic_unramified_poly(cyclotomic(3, 1, precision)), UNRAMIFIED)
    U2 = unramified(2, 1, precision)
    out["Q4 then sqrt2"] = U2.extend([-2, 0, 1], EISENSTEIN)
    F2 = FieldTower.laurent(2, precision)
    t2 = F2.uniformizer()
    out["F2((t)) Artin-Schreier"] = adjoin(F2, [-t2.inverse(), -1, 1]).tower
    F3 = FieldTower.laurent(3, precision)
    out["F3((t))(sqrt t)"] = F3.extend([-F3.uniformizer(), 0, 1], EISENSTEIN)
    out["F3((t)) unramified"] = F3.extend([1, 0, 1], UNRAMIFIED)
    return out
