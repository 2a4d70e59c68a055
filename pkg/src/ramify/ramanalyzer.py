"""Tower families: relative-different scans, deeply-ramified evidence, Frobenius witnesses."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .differential import different, different_tower
from .errors import RamifyError, ValidationError
from .localfield import FieldElement, FieldTower, adjoin
from .localfield.builtins import cyclotomic, p_radical, unramified
from .localfield.tower import DEFAULT_PRECISION

DEEPLY_RAMIFIED = "DeeplyRamifiedEvidence"
NOT_DEEPLY_RAMIFIED = "NotDeeplyRamified"
INCONCLUSIVE = "Inconclusive"

DEFAULT_THRESHOLD = Fraction(1, 4)
DEFAULT_RANGE = range(1, 5)
DEFAULT_BUDGET = 10 ** 6

FAMILIES = ("cyclotomic", "p_radical", "unramified", "constant")


@dataclass(frozen=True)
class KPrimeRecipe:
    """``F_n' = F_n(α)`` where ``α`` is a root of ``poly`` (coefficients over ``F_{level}``)."""

    level: int
    poly: tuple
    label: str = ""


@dataclass(frozen=True)
class TowerFamily:
    name: str
    p: int
    precision: int = DEFAULT_PRECISION
    base: FieldTower | None = None  # only for the constant family

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValidationError(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")
        if self.name == "constant" and self.base is None:
            object.__setattr__(self, "base", FieldTower.padic(self.p, self.precision))

    @classmethod
    def constant(cls, base: FieldTower) -> "TowerFamily":
        return cls("constant", base.p, base.precision, base)

    def level(self, n: int) -> FieldTower:
        if n < 0:
            raise ValidationError("levels start at 0")
        if self.name == "cyclotomic":
            return cyclotomic(self.p, n, self.precision)
        if self.name == "p_radical":
            return p_radical(self.p, n, self.precision)
        if self.name == "unramified":
            return unramified(self.p, n, self.precision)
        return self.base

    @property
    def stabilizes(self) -> bool:
        """A registered argument shows ``δ(F_n'/F_n)`` is independent of ``n``.

        Constant family: every level is the same field.  Unramified family: the
        relative different is unchanged by unramified base change.
        """
        return self.name in ("constant", "unramified")

    def embed_from(self, x: FieldElement, n: int) -> FieldElement:
        T = self.level(n)
        return T(x)

    def describe(self) -> dict:
        d = {"family": self.name, "p": self.p}
        if self.name == "constant":
            d["base_degree"] = self.base.degree
        return d


def default_kprime(family: TowerFamily) -> KPrimeRecipe:
    """A ramified ``K'`` that stays a proper extension at every level of the family.

    For ``p = 2`` the odd-prime recipes degenerate: ``√2`` already lies in
    ``Q_2(ζ_8)`` and ``Φ_2`` is linear.  Every quadratic extension of ``Q_2``
    becomes trivial or unramified high enough in the cyclotomic tower, so the
    cyclotomic default there is the tame cube root ``2^{1/3}``; the radical
    tower uses ``ζ_4``.
    """
    p = family.p
    if family.name == "cyclotomic":
        if p == 2:
            return KPrimeRecipe(0, (-2, 0, 0, 1), "x^3 - 2")
        return KPrimeRecipe(0, tuple([-p] + [0] * (p - 1) + [1]), f"x^{p} - {p}")
    if family.name == "p_radical":
        from math import comb

        if p == 2:
            return KPrimeRecipe(0, (2, 2, 1), "Phi_4(x+1)")
        return KPrimeRecipe(0, tuple(comb(p, i + 1) for i in range(p)), f"Phi_{p}(x+1)")
    return KPrimeRecipe(0, (-p, 0, 1), f"x^2 - {p}")


def _recipe_poly(family: TowerFamily, recipe: KPrimeRecipe, n: int) -> list:
    Fn = family.level(n)
    if family.name == "constant":
        return [Fn(c) for c in recipe.poly]
    if recipe.level > n:
        raise ValidationError(f"K' is defined over level {recipe.level}, above n = {n}")
    F0 = family.level(recipe.level)
    return [Fn(c if isinstance(c, FieldElement) else F0(c)) for c in recipe.poly]


@dataclass
class ScanEntry:
    n: int
    v_delta: Fraction | None
    methods: dict = field(default_factory=dict)
    agree: bool | None = None
    kind: str | None = None
    error: str | None = None


@dataclass
class TowerScan:
    family: dict
    kprime: str
    n_range: list
    entries: list
    threshold: Fraction
    sequence: list
    non_increasing: bool
    strictly_decreasing: bool
    eventually_constant: bool
    verdict: str
    basis: str  # "closed-form" or "evidence"
    monotone: bool = True

    @property
    def complete(self) -> bool:
        return all(e.error is None for e in self.entries)


def _scan_one(args) -> ScanEntry:
    family, recipe, n, cross_check = args
    try:
        g = _recipe_poly(family, recipe, n)
        adj = adjoin(family.level(n), g)
        entry = different(adj.tower, cross_check=cross_check)
        return ScanEntry(n, entry.v_delta, {k: v for k, v in entry.methods.items()}, entry.agree, adj.kind)
    except RamifyError as exc:
        return ScanEntry(n, None, error=f"{type(exc).__name__}: {exc}")


def scan(
    family: TowerFamily,
    kprime: KPrimeRecipe | None = None,
    n_range: Sequence[int] = DEFAULT_RANGE,
    threshold=DEFAULT_THRESHOLD,
    cross_check: bool = True,
    workers: int = 1,
) -> TowerScan:
    """Relative differents ``v(δ(F_n'/F_n))`` over ``n_range`` and a verdict.

    Rules: NotDeeplyRamified when the sequence ends constant at a positive value
    and the family has a registered stabilization argument; DeeplyRamifiedEvidence
    when the sequence is strictly decreasing and its last value is below
    ``threshold``; Inconclusive otherwise.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValidationError("threshold must be positive")
    kprime = kprime or default_kprime(family)
    ns = list(n_range)
    if not ns:
        raise ValidationError("empty scan range")
    jobs = [(family, kprime, n, cross_check) for n in ns]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_scan_one, jobs))
    else:
        entries = [_scan_one(j) for j in jobs]
    seq = [e.v_delta for e in entries if e.v_delta is not None]
    pairs = list(zip(seq, seq[1:]))
    non_inc = all(b <= a for a, b in pairs)
    strict = bool(pairs) and all(b < a for a, b in pairs) and len(seq) == len(entries)
    const_tail = len(seq) >= 2 and seq[-1] == seq[-2]
    basis = "closed-form" if family.stabilizes and kprime == default_kprime(family) else "evidence"
    if const_tail and seq[-1] > 0 and family.stabilizes and len(seq) == len(entries):
        verdict = NOT_DEEPLY_RAMIFIED
    elif strict and seq[-1] < threshold:
        verdict = DEEPLY_RAMIFIED
        basis = "evidence"
    else:
        verdict = INCONCLUSIVE
        basis = "evidence"
    return TowerScan(
        family.describe(), kprime.label or "custom", ns, entries, threshold, seq,
        non_inc, strict, const_tail, verdict, basis, monotone=non_inc,
    )


# -- absolute differents ---------------------------------------------------------------------


@dataclass
class AbsoluteDifferent:
    family: str
    n: int
    value: Fraction
    closed_form: Fraction | None
    agree: bool | None


def closed_form_absolute(family: TowerFamily, n: int):
    p = family.p
    if family.name == "cyclotomic":
        return Fraction(0) if n == 0 else n - Fraction(1, p - 1)
    if family.name == "p_radical":
        return n + 1 - Fraction(1, p ** n) if n else Fraction(0)
    if family.name == "unramified":
        return Fraction(0)
    return None


def absolute_different(family: TowerFamily, n: int, cross_check: bool = True) -> AbsoluteDifferent:
    """``v(δ(F_n/Q_p))`` as the sum of step differents, beside any registered closed form."""
    T = family.level(n)
    value = different_tower(T, cross_check=cross_check, absolute=False).total
    cf = closed_form_absolute(family, n)
    return AbsoluteDifferent(family.name, n, value, cf, None if cf is None else cf == value)


# -- Frobenius witnesses ----------------------------------------------------------------------

WITNESS = "witness"
BUDGET_EXHAUSTED = "budget-exhausted"
LEVELS_EXHAUSTED = "levels-exhausted"


@dataclass
class FrobeniusWitness:
    status: str
    x: FieldElement
    n: int
    m_max: int
    budget: int
    tried: int
    witness: FieldElement | None = None
    level: int | None = None
    index: int | None = None  # position in the enumeration at that level
    levels_searched: list = field(default_factory=list)
    verified: bool = False


def _candidates(T: FieldTower):
    """Residue representatives of ``O_T/p``: flat coefficient vectors with digits in ``[0, p)``.

    Candidate ``k`` has the base-``p`` digits of ``k`` as coefficients, least
    significant digit on the first monomial.
    """
    basis = T.monomial_reps()
    p = T.p
    D = len(basis)
    for k in range(p ** D):
        y = T.zero()
        kk = k
        for b in basis:
            digit = kk % p
            kk //= p
            if digit:
                y = y + b * digit
        yield k, y


def _is_pth_root(y: FieldElement, x: FieldElement) -> bool:
    return (y ** y.tower.p - x).vlow() >= 1


def frobenius_witness(
    family: TowerFamily, n: int, x, m_max: int | None = None, budget: int = DEFAULT_BUDGET
) -> FrobeniusWitness:
    """First ``y`` (level by level, in enumeration order) with ``y^p ≡ x mod p``."""
    if family.level(0).base.kind != "padic":
        raise ValidationError("Frobenius witness search needs a p-adic family")
    if budget <= 0:
        raise ValidationError("budget must be positive")
    m_max = n if m_max is None else m_max
    if m_max < n:
        raise ValidationError("m_max must be at least n")
    Fn = family.level(n)
    x = Fn(x)
    if x.vlow() < 0:
        raise ValidationError("x must be integral")
    tried = 0
    searched = []
    seen = set()
    for m in range(n, m_max + 1):
        Fm = family.level(m)
        if Fm.key in seen:
            continue
        seen.add(Fm.key)
        searched.append(m)
        xm = Fm(x)
        for k, y in _candidates(Fm):
            if tried >= budget:
                return FrobeniusWitness(BUDGET_EXHAUSTED, x, n, m_max, budget, tried, levels_searched=searched)
            tried += 1
            if _is_pth_root(y, xm):
                # independent re-verification: expand y^p by repeated multiplication
                yp = Fm.one()
                for _ in range(Fm.p):
                    yp = yp * y
                ok = (yp - xm).vlow() >= 1
                return FrobeniusWitness(WITNESS, x, n, m_max, budget, tried, y, m, k, searched, ok)
    return FrobeniusWitness(LEVELS_EXHAUSTED, x, n, m_max, budget, tried, levels_searched=searched)
