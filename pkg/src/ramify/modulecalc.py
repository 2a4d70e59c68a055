"""Modules over a discretely valued tower level, and symbolic cut modules.

Presentation matrices follow the convention *rows are relations, columns are
generators*: the module is ``O^g / (row space)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PrecisionExhausted, ValidationError
from .localfield import AtLeast, FieldElement, FieldTower
from .valuegroup import (
    Cut,
    ValueGroup,
    coerce_value,
    cut_contains,
    cut_equal,
    cut_from_canonical,
    cut_power,
)

INF = None  # the zero ideal / a free summand


# -- Smith normal form -----------------------------------------------------------


@dataclass
class SNFResult:
    invariants: list  # finite invariant valuations, non-decreasing
    rank: int
    U: list
    V: list
    D: list
    shape: tuple

    @property
    def free_rank(self) -> int:
        return self.shape[1] - self.rank

    @property
    def redundant_relations(self) -> int:
        return self.shape[0] - self.rank


def _as_matrix(tower: FieldTower, m) -> list:
    return [[x if isinstance(x, FieldElement) else tower(x) for x in row] for row in m]


def identity(tower: FieldTower, n: int) -> list:
    return [[tower.one() if i == j else tower.zero() for j in range(n)] for i in range(n)]


def smith_normal_form(m, tower: FieldTower | None = None, guard=None) -> SNFResult:
    """Diagonalize ``m`` with valuation-minimal pivots (ties: lowest row, then column).

    Returns unimodular ``U``, ``V`` with ``U·m·V = D``.  Entries that are zero at
    their precision count as zero; if such an entry's precision is below
    ``guard`` (default: half the tower precision) it cannot be told apart from a
    small nonzero entry and :class:`PrecisionExhausted` is raised.
    """
    if tower is None:
        tower = _find_tower(m)
    A = _as_matrix(tower, m)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise ValidationError("ragged matrix")
    guard = Fraction(tower.precision, 2) if guard is None else Fraction(guard)
    U = identity(tower, rows)
    V = identity(tower, cols)
    invariants = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = A[i][j]
                if x.is_zero():
                    continue
                v = x.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j].prec < guard:
                        raise PrecisionExhausted(
                            f"entry ({i},{j}) is zero only to precision {A[i][j].prec}; pivot cannot be certified"
                        )
            break
        v, i, j = best
        A[t], A[i] = A[i], A[t]
        U[t], U[i] = U[i], U[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        for row in V:
            row[t], row[j] = row[j], row[t]
        piv_inv = A[t][t].inverse()
        for i in range(t + 1, rows):
            if A[i][t].is_zero():
                continue
            c = A[i][t] * piv_inv
            A[i] = [a - c * b for a, b in zip(A[i], A[t])]
            U[i] = [a - c * b for a, b in zip(U[i], U[t])]
        for j in range(t + 1, cols):
            if A[t][j].is_zero():
                continue
            c = A[t][j] * piv_inv
            for row in A:
                row[j] = row[j] - c * row[t]
            for row in V:
                row[j] = row[j] - c * row[t]
        invariants.append(v)
        t += 1
    D = [[A[i][j] if i == j and i < len(invariants) else tower.zero() for j in range(cols)] for i in range(rows)]
    return SNFResult(invariants, len(invariants), U, V, D, (rows, cols))


def _find_tower(m):
    for row in m:
        for x in row:
            if isinstance(x, FieldElement):
                return x.tower
    raise ValidationError("pass a tower for a matrix of plain numbers")


def matmul(a, b) -> list:
    if not a or not b:
        return []
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


def check_certificate(m, res: SNFResult, tower: FieldTower | None = None) -> bool:
    """``U·m·V`` equals ``D`` at working precision."""
    tower = tower or _find_tower(res.U or res.V)
    A = _as_matrix(tower, m)
    if not A or not A[0]:
        return True
    prod = matmul(matmul(res.U, A), res.V)
    return all((x - y).is_zero() for r1, r2 in zip(prod, res.D) for x, y in zip(r1, r2))


def determinant_unit(m) -> bool:
    """The determinant of a square matrix of elements is a unit (used to check certificates)."""
    from .localfield.poly import ElementRing
    from .localfield.arith import berkowitz

    if not m:
        return True
    R = ElementRing(m[0][0].tower)
    det = berkowitz(m, R)[-1]
    return det.valuation() == 0


# -- presented modules -------------------------------------------------------------


class PresentedModule:
    """``O^g / (rows of the presentation)`` over the top level of ``tower``."""

    def __init__(self, relations, tower: FieldTower, generators: int | None = None):
        self.tower = tower
        self.relations = _as_matrix(tower, relations)
        if generators is None:
            if not self.relations:
                raise ValidationError("give the number of generators for an empty presentation")
            generators = len(self.relations[0])
        self.generators = generators
        self._snf = None

    @classmethod
    def cyclic(cls, tower: FieldTower, a) -> "PresentedModule":
        """``O/(a)``."""
        return cls([[a]], tower)

    @classmethod
    def diagonal(cls, tower: FieldTower, entries) -> "PresentedModule":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], tower)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        g1, g2 = self.generators, other.generators
        z = self.tower.zero()
        rows = [r + [z] * g2 for r in self.relations] + [[z] * g1 + r for r in other.relations]
        return PresentedModule(rows, self.tower, g1 + g2)

    @property
    def snf(self) -> SNFResult:
        if self._snf is None:
            if self.relations:
                self._snf = smith_normal_form(self.relations, self.tower)
            else:
                self._snf = SNFResult([], 0, [], identity(self.tower, self.generators), [], (0, self.generators))
        return self._snf

    @property
    def invariants(self) -> list:
        """Finite invariants, non-decreasing (normalized valuations)."""
        return list(self.snf.invariants)

    @property
    def free_rank(self) -> int:
        return self.generators - self.snf.rank

    def all_invariants(self) -> list:
        """One entry per generator: finite invariants then ``None`` for each free summand."""
        return self.invariants + [INF] * self.free_rank

    @property
    def length(self):
        """Sum of the finite invariants; ``None`` if the module has a free part."""
        return None if self.free_rank else sum(self.invariants, Fraction(0))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and all(d == 0 for d in self.invariants)

    def nonzero_invariants(self) -> list:
        return [d for d in self.invariants if d != 0]


def fitting_ideals(M: PresentedModule) -> list:
    """Valuations of ``F_0, …, F_g``; ``None`` stands for the zero ideal.

    ``F_i`` is generated by the ``(g-i)``-minors, so its valuation is the sum of
    the ``g - i`` smallest invariants.
    """
    inv = M.all_invariants()
    g = M.generators
    out = []
    for i in range(g + 1):
        part = inv[: g - i]
        out.append(None if any(d is INF for d in part) else sum(part, Fraction(0)))
    return out


# -- cut modules --------------------------------------------------------------------


def _require_dense_rank1(group: ValueGroup):
    if group.rank != 1 or group.is_discrete:
        raise ValidationError("cut modules need a rank-1 non-discrete value group")


@dataclass(frozen=True)
class CutModule:
    """``⊕ I/J`` for cut pairs ``I ⊇ J`` over a rank-1 non-discrete group."""

    summands: tuple

    def __post_init__(self):
        for I, J in self.summands:
            _require_dense_rank1(I.group)
            if I.group != J.group:
                raise ValidationError("summand cuts live in different groups")
            if not cut_contains(I, J):
                raise ValidationError("each summand needs I ⊇ J")

    def gaps(self) -> list:
        return [annihilator_gap(I, J) for I, J in self.summands]


def annihilator_gap(I: Cut, J: Cut) -> Fraction:
    """Least ``g`` with ``g·I ⊆ J``, read off canonical boundaries."""
    (bi, _), (bj, _) = I.canonical, J.canonical
    return bj[0] - bi[0]


def is_almost_zero(M: CutModule) -> bool:
    return all(g == 0 for g in M.gaps())


def star(c: Cut) -> Cut:
    """``{x : v(x) + g ∈ c for every g > 0}``: closes an open boundary that lies in the group."""
    _require_dense_rank1(c.group)
    b, closed = c.canonical
    if closed or b not in c.group:
        return c
    return Cut.closed(c.group, b)


def ramification_ideal(terms: Sequence, infimum, group: ValueGroup, attained: bool | None = None) -> Cut:
    """The cut generated upward by a strictly decreasing sequence with declared infimum.

    ``S`` stands for the whole (possibly infinite) sequence, so unless told
    otherwise the infimum counts as attained exactly when it is one of the terms.
    """
    if group.rank != 1:
        raise ValidationError("ramification ideals live in a rank-1 group")
    if attained is None:
        sigma = coerce_value(group, infimum)
        attained = any(coerce_value(group, t) == sigma for t in terms)
    return Cut.limit(group, terms, infimum, attained)


@dataclass(frozen=True)
class DefectResult:
    verdict: str
    ideal: Cut
    power: Cut
    omega: CutModule
    gap: Fraction

    @property
    def omega_zero(self) -> bool:
        return is_almost_zero(self.omega)


INDEPENDENT = "Independent"
DEPENDENT = "Dependent"


def defect_classify(terms: Sequence, p: int, group: ValueGroup | None = None, infimum=None,
                    attained: bool | None = None) -> DefectResult:
    """Classify from the ramification ideal ``I``: independent iff ``I^p = I``; ``Ω = I/I^p``."""
    group = group or ValueGroup((p,))
    _require_dense_rank1(group)
    if infimum is None:
        raise ValidationError("a declared infimum is required")
    I = ramification_ideal(terms, infimum, group, attained)
    Ip = cut_power(I, p)
    omega = CutModule(((I, Ip),))
    verdict = INDEPENDENT if cut_equal(Ip, I) else DEPENDENT
    return DefectResult(verdict, I, Ip, omega, annihilator_gap(I, Ip))


__all__ = [
    "AtLeast",
    "CutModule",
    "DefectResult",
    "PresentedModule",
    "SNFResult",
    "annihilator_gap",
    "check_certificate",
    "cut_from_canonical",
    "defect_classify",
    "fitting_ideals",
    "is_almost_zero",
    "ramification_ideal",
    "smith_normal_form",
    "star",
]


def inverse_matrix(m) -> list:
    """Inverse of a square matrix of elements by Gauss-Jordan with valuation-minimal pivots.

    Raises :class:`PrecisionExhausted` if the matrix is singular at working precision.
    """
    n = len(m)
    if n == 0:
        return []
    T = m[0][0].tower
    A = [list(r) + [T.one() if i == j else T.zero() for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        best = None
        for i in range(c, n):
            if A[i][c].is_zero():
                continue
            v = A[i][c].valuation()
            if best is None or v < best[0]:
                best = (v, i)
        if best is None:
            raise PrecisionExhausted("matrix is singular at working precision")
        i = best[1]
        A[c], A[i] = A[i], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]
