"""Towers of Eisenstein and unramified steps over Q_p or F_p((t))."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import (
    NonEisenstein,
    NotSeparable,
    NotUnramified,
    PrecisionExhausted,
    ValidationError,
)
from . import residue as rz
from .arith import FiniteExt, PrimeField, ValuedExt
from .base import LaurentBase, PadicBase
from .element import AtLeast, FieldElement

EISENSTEIN = "eisenstein"
UNRAMIFIED = "unramified"
MIN_PRECISION = 8
DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class ExtensionStep:
    poly: tuple  # monic, coefficients at the previous level, lowest degree first
    kind: str
    symbol: str
    residue_poly: tuple | None = field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1


class FieldTower:
    """An immutable chain ``base = F_0 ⊂ F_1 ⊂ … ⊂ F_k``; elements live at the top."""

    def __init__(self, base, precision: int = DEFAULT_PRECISION, steps=(), _levels=None):
        if not isinstance(precision, int) or precision < MIN_PRECISION:
            raise ValidationError(f"precision must be an integer >= {MIN_PRECISION}")
        self.base = base
        self.p = base.p
        self.precision = precision
        self.steps = tuple(steps)
        if _levels is None:
            _levels = _build_levels(base, self.steps)
        self.levels, self.residue_levels, self._e = _levels
        self.arith = self.levels[-1]
        self.depth = len(self.steps)
        self.degree = self.arith.degree
        self.e = self._e[-1]
        self.f = self.degree // self.e
        self.key = (base.kind, base.p, precision, self.steps)

    # constructors
    @classmethod
    def padic(cls, p: int, precision: int = DEFAULT_PRECISION) -> "FieldTower":
        _check_prime(p)
        return cls(PadicBase(p), precision)

    @classmethod
    def laurent(cls, p: int, precision: int = DEFAULT_PRECISION) -> "FieldTower":
        _check_prime(p)
        return cls(LaurentBase(p), precision)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldTower({self.base!r}, N={self.precision}, degrees={self.step_degrees}, e={self.e}, f={self.f})"

    @property
    def step_degrees(self) -> list:
        return [s.degree for s in self.steps]

    @property
    def residue_field(self):
        return self.residue_levels[-1]

    def e_at(self, k: int) -> int:
        return self._e[k]

    def vtheta(self, k: int) -> Fraction:
        return self.levels[k].vtheta

    def value_group_generator(self) -> Fraction:
        """The normalized value group is ``(1/e)Z``; this returns ``1/e``."""
        return Fraction(1, self.e)

    # sub-towers and precision
    def prefix(self, k: int) -> "FieldTower":
        if k == self.depth:
            return self
        if not 0 <= k <= self.depth:
            raise ValidationError("prefix level out of range")
        lv = (self.levels[: k + 1], self.residue_levels[: k + 1], self._e[: k + 1])
        return FieldTower(self.base, self.precision, self.steps[:k], _levels=lv)

    def with_precision(self, precision: int) -> "FieldTower":
        return FieldTower(self.base, precision, self.steps, _levels=(self.levels, self.residue_levels, self._e))

    def extend(self, poly, kind: str, symbol: str | None = None, check: bool = True) -> "FieldTower":
        return extend(self, poly, kind, symbol, check)

    # elements
    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.tower == self:
                return x
            return self.embed(x)
        return FieldElement(self, self._coerce_rep(x), self.precision)

    def _coerce_rep(self, x):
        if self.depth == 0:
            return self.base.coerce(x)
        return self.arith.coerce(x)

    def element(self, coeffs, prec=None) -> FieldElement:
        return FieldElement(self, self._coerce_rep(coeffs), prec)

    def zero(self) -> FieldElement:
        return FieldElement(self, self.arith.zero, self.precision, _canonical=True)

    def one(self) -> FieldElement:
        return FieldElement(self, self._one_rep(), self.precision, _canonical=True)

    def _one_rep(self):
        return self.arith.one

    def gen(self, k: int | None = None) -> FieldElement:
        """The generator ``θ_k`` of step ``k`` (1-based; default: top step)."""
        k = self.depth if k is None else k
        if not 1 <= k <= self.depth:
            raise ValidationError("no such step")
        theta = self.levels[k].gen()
        return self.embed_rep(theta, k)

    def uniformizer(self) -> FieldElement:
        for k in range(self.depth, 0, -1):
            if self.steps[k - 1].kind == EISENSTEIN:
                return self.gen(k)
        return self(self.base.uniformizer())

    def embed_rep(self, rep, level: int):
        x = rep
        for k in range(level + 1, self.depth + 1):
            x = self.levels[k].embed(x)
        return FieldElement(self, x, self.precision)

    def embed(self, x: FieldElement) -> FieldElement:
        """Image of an element of ``self.prefix(k)``."""
        k = x.tower.depth
        if x.tower.steps != self.steps[:k] or x.tower.base != self.base:
            raise ValidationError("element does not come from a sub-tower")
        y = self.embed_rep(x.rep, k)
        return FieldElement(self, y.rep, x.prec, _canonical=False)

    def restrict(self, x: FieldElement, k: int) -> FieldElement:
        """Inverse of :meth:`embed` for elements that lie in level ``k``."""
        rep = x.rep
        T = self.prefix(k)
        for j in range(self.depth, k, -1):
            L = self.levels[j - 1]
            if any(not L.is_zero(c) for c in rep[1:]):
                # coefficients above θ^0 must vanish at precision
                sub = FieldElement(self.prefix(j - 1), rep[1], x.prec)
                if not sub.is_zero():
                    raise ValidationError(f"element does not lie in level {k}")
            rep = rep[0]
        return FieldElement(T, rep, x.prec)

    # residue field
    def residue(self, x: FieldElement, level: int | None = None):
        level = self.depth if level is None else level
        if x.vlow() < 0:
            raise ValidationError("residue of a non-integral element")
        return self._residue(x.rep, level)

    def _residue(self, rep, k):
        if k == 0:
            return self.base.residue(rep)
        if self.steps[k - 1].kind == EISENSTEIN:
            return self._residue(rep[0], k - 1)
        return tuple(self._residue(c, k - 1) for c in rep)

    def lift_residue(self, r) -> FieldElement:
        return FieldElement(self, self._lift(r, self.depth), self.precision)

    def _lift(self, r, k):
        if k == 0:
            return self.base.lift(r)
        if self.steps[k - 1].kind == EISENSTEIN:
            return self.levels[k].embed(self._lift(r, k - 1))
        return tuple(self._lift(c, k - 1) for c in r)

    def monomial_reps(self) -> list:
        """Flat monomial basis ``θ_1^{i_1}…θ_k^{i_k}`` (``i_1`` fastest) as elements."""
        gens = [self.gen(k) for k in range(1, self.depth + 1)]
        basis = [self.one()]
        for g, d in zip(gens, self.step_degrees):
            powers = [self.one()]
            for _ in range(d - 1):
                powers.append(powers[-1] * g)
            basis = [b * q for q in powers for b in basis]
        return basis

    def describe_element(self, rep) -> str:
        terms = []
        flat = []

        def walk(x, depth, idx):
            if depth == 0:
                flat.append((idx, x))
                return
            for i, c in enumerate(x):
                walk(c, depth - 1, idx + (i,))

        walk(rep, self.depth, ())
        for idx, c in flat:
            if self.base.is_zero(c):
                continue
            mono = "*".join(
                f"th{self.depth - j}" + (f"^{i}" if i > 1 else "") for j, i in enumerate(idx) if i
            )
            cs = self.base.to_str(c)
            terms.append(f"({cs})*{mono}" if mono else f"({cs})")
        return " + ".join(terms) or "0"


def _check_prime(p):
    if not isinstance(p, int) or p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValidationError(f"{p!r} is not a prime")


def _build_levels(base, steps):
    levels = [base]
    res = [PrimeField(base.p)]
    es = [1]
    for k, s in enumerate(steps, 1):
        lvl, rlvl, e = _next_level(levels[-1], res[-1], es[-1], s)
        levels.append(lvl)
        res.append(rlvl)
        es.append(e)
    return levels, res, es


def _next_level(lower, rlower, e, step):
    if step.kind == EISENSTEIN:
        e_new = e * step.degree
        return ValuedExt(lower, step.poly, Fraction(1, e_new), EISENSTEIN), rlower, e_new
    rpoly = step.residue_poly
    return ValuedExt(lower, step.poly, Fraction(0), UNRAMIFIED), FiniteExt(rlower, rpoly), e


def _reduce_poly(tower, coeffs):
    out = []
    for c in coeffs:
        x = FieldElement(tower, c, tower.precision)
        out.append(tower.residue(x))
    return out


def extend(tower: FieldTower, poly, kind: str, symbol: str | None = None, check: bool = True) -> FieldTower:
    """Adjoin a root of the monic ``poly`` (coefficients in ``tower``, lowest first)."""
    if kind not in (EISENSTEIN, UNRAMIFIED):
        raise ValidationError(f"unknown step kind {kind!r}")
    # keep the caller's representatives exact; only FieldElements arrive truncated
    coeffs = [c if isinstance(c, FieldElement) and c.tower == tower else tower(c) for c in poly]
    raw = [tower(c).rep if isinstance(c, FieldElement) else tower._coerce_rep(c) for c in poly]
    if len(coeffs) < 2:
        raise ValidationError("a step polynomial needs degree >= 1")
    d = len(coeffs) - 1
    if not (coeffs[-1] - 1).is_zero():
        raise ValidationError("step polynomial must be monic")
    N = tower.precision
    reps = tuple(raw[:-1]) + (tower.one().rep,)
    symbol = symbol or f"th{tower.depth + 1}"
    if kind == EISENSTEIN:
        if check:
            v0 = coeffs[0].valuation()
            if isinstance(v0, AtLeast):
                raise PrecisionExhausted("constant term is zero at working precision")
            if v0 != Fraction(1, tower.e):
                raise NonEisenstein(f"constant term has valuation {v0}, expected {Fraction(1, tower.e)}")
            for i, c in enumerate(coeffs[1:-1], 1):
                if not c.vlow() > 0:
                    raise NonEisenstein(f"coefficient of x^{i} is not in the maximal ideal")
        step = ExtensionStep(reps, EISENSTEIN, symbol)
    else:
        for i, c in enumerate(coeffs):
            if c.vlow() < 0:
                raise NotUnramified(f"coefficient of x^{i} is not integral")
        rpoly = tuple(_reduce_poly(tower, reps))
        if check and not rz.is_irreducible(tower.residue_field, list(rpoly)):
            raise NotUnramified("reduction is not irreducible over the residue field")
        step = ExtensionStep(reps, UNRAMIFIED, symbol, rpoly)
    levels = list(tower.levels)
    res = list(tower.residue_levels)
    es = list(tower._e)
    lvl, rlvl, e = _next_level(levels[-1], res[-1], es[-1], step)
    new = FieldTower(tower.base, N, tower.steps + (step,), _levels=(levels + [lvl], res + [rlvl], es + [e]))
    if check and d > 1:
        dpoly = derivative_value(new)
        if dpoly.is_zero():
            raise NotSeparable("f'(θ) is zero at working precision")
    return new


def derivative_value(tower: FieldTower) -> FieldElement:
    """``f'(θ)`` for the top step's defining polynomial ``f``."""
    step = tower.steps[-1]
    k = tower.depth
    lower = tower.prefix(k - 1)
    theta = tower.gen()
    acc = tower.zero()
    d = step.degree
    for i in range(d, 0, -1):
        c = tower.embed(FieldElement(lower, step.poly[i], tower.precision)) * i
        acc = acc * theta + c
    return acc
