"""Lexicographically ordered value groups and cuts in their non-negative part.

A representable group is a finite lex product of copies of ``Z``, ``Z[1/p]``
and ``Q``.  Elements are tuples of :class:`~fractions.Fraction`; Python's
tuple ordering is already lexicographic, which is the order we want.

Cuts model ideals of the valuation ring: a cut is an upward closed subset of
the non-negative part of the group.  Every cut has a canonical form
``(boundary, closed)`` meaning ``{x >= boundary}`` when ``closed`` and
``{x > boundary}`` otherwise; all predicates compare canonical forms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistentInfimum, Undecidable, ValidationError

Z = "Z"
Q = "Q"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _p_power_only(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _tag_allows(tag, x: Fraction) -> bool:
    if tag == Z:
        return x.denominator == 1
    if tag == Q:
        return True
    return _p_power_only(x.denominator, tag)


def _tag_name(tag) -> str:
    return tag if tag in (Z, Q) else f"Z[1/{tag}]"


@dataclass(frozen=True)
class ValueGroup:
    """Finite-rank lex product; ``divisibility[i]`` is ``"Z"``, ``"Q"`` or a prime ``p`` for ``Z[1/p]``."""

    divisibility: tuple

    def __post_init__(self):
        if not self.divisibility:
            raise ValidationError("a value group needs rank >= 1")
        for tag in self.divisibility:
            if tag in (Z, Q):
                continue
            if not isinstance(tag, int) or tag < 2 or any(tag % d == 0 for d in range(2, int(tag ** 0.5) + 1)):
                raise ValidationError(f"bad divisibility tag {tag!r}")

    @classmethod
    def parse(cls, text: str) -> "ValueGroup":
        """Parse ``"Z"``, ``"Q"``, ``"Z[1/3]"`` or lex products such as ``"Z[1/3] x Z"``."""
        tags = []
        for part in re.split(r"\s*[x×]\s*", text.strip()):
            part = part.replace(" ", "")
            if part in (Z, Q):
                tags.append(part)
                continue
            m = re.fullmatch(r"Z\[1/(\d+)\]", part)
            if not m:
                raise ValidationError(f"cannot parse group factor {part!r}")
            tags.append(int(m.group(1)))
        return cls(tuple(tags))

    @classmethod
    def from_json(cls, doc) -> "ValueGroup":
        tags = []
        for t in doc["divisibility"]:
            if isinstance(t, dict):
                tags.append(int(t["p-divisible"]))
            elif isinstance(t, str) and t not in (Z, Q):
                tags.extend(cls.parse(t).divisibility)
            else:
                tags.append(t)
        g = cls(tuple(tags))
        if "rank" in doc and doc["rank"] != g.rank:
            raise ValidationError("rank does not match divisibility list")
        return g

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "divisibility": [t if t in (Z, Q) else {"p-divisible": t} for t in self.divisibility],
        }

    @property
    def rank(self) -> int:
        return len(self.divisibility)

    @property
    def is_discrete(self) -> bool:
        return self.rank == 1 and self.divisibility[0] == Z

    def __str__(self):
        return " x ".join(_tag_name(t) for t in self.divisibility)

    def element(self, *coords) -> tuple:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)) and self.rank > 1:
            coords = tuple(coords[0])
        x = tuple(_as_fraction(c) for c in coords)
        if x not in self:
            raise ValidationError(f"{x} is not an element of {self}")
        return x

    def zero(self) -> tuple:
        return (Fraction(0),) * self.rank

    def __contains__(self, x) -> bool:
        return len(x) == self.rank and all(_tag_allows(t, c) for t, c in zip(self.divisibility, x))

    def unit_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(j == i)) for j in range(self.rank))


@dataclass(frozen=True)
class ConvexSubgroup:
    """``{0}^start x (coordinates start..k-1)`` inside a lex group."""

    group: ValueGroup
    start: int

    def __contains__(self, x) -> bool:
        return x in self.group and all(c == 0 for c in x[: self.start])

    @property
    def rank(self) -> int:
        return self.group.rank - self.start

    def __str__(self):
        if self.start == self.group.rank:
            return "0"
        head = ["0"] * self.start
        tail = [_tag_name(t) for t in self.group.divisibility[self.start:]]
        return " x ".join(head + tail)


def convex_subgroups(group: ValueGroup) -> list[ConvexSubgroup]:
    """The chain of convex subgroups, smallest first: ``{0} ⊂ ... ⊂ group``."""
    return [ConvexSubgroup(group, i) for i in range(group.rank, -1, -1)]


def consecutive_quotients(group: ValueGroup) -> list:
    """Divisibility tag of each quotient ``Γ₂/Γ₁`` of consecutive convex subgroups."""
    chain = convex_subgroups(group)
    # Γ_{i+1}/Γ_i is the coordinate that Γ_{i+1} frees up
    return [group.divisibility[big.start] for _, big in zip(chain, chain[1:])]


def dr_valuegroup_condition(group: ValueGroup) -> bool:
    """True iff no quotient of consecutive convex subgroups is isomorphic to ``Z``."""
    return all(tag != Z for tag in consecutive_quotients(group))


def rank(group: ValueGroup) -> int:
    return len(convex_subgroups(group)) - 1


# -- cuts ---------------------------------------------------------------------

CLOSED = "principal-closed"
OPEN = "principal-open"
LIMIT = "limit"


def _check_nonneg(group: ValueGroup, b: tuple):
    if b < group.zero():
        raise ValidationError("cut boundaries live in the non-negative part of the group")


@dataclass(frozen=True)
class Cut:
    """An upward closed subset of ``Γ_{>=0}``.

    Build with :meth:`closed`, :meth:`open` or :meth:`limit`.  ``attained``
    only matters for limit cuts and may be ``None`` when the caller cannot
    say; such cuts raise :class:`Undecidable` when compared.
    """

    group: ValueGroup
    kind: str
    boundary: tuple
    terms: tuple = ()
    attained: bool | None = None
    _canon: tuple | None = field(default=None, compare=False, repr=False)

    # constructors
    @classmethod
    def closed(cls, group: ValueGroup, gamma) -> "Cut":
        b = coerce_value(group, gamma)
        if b not in group:
            raise ValidationError(f"boundary {b} not in {group}")
        _check_nonneg(group, b)
        return cls(group, CLOSED, b, (), True, (b, True))

    @classmethod
    def open(cls, group: ValueGroup, gamma) -> "Cut":
        b = coerce_value(group, gamma)
        if b not in group:
            raise ValidationError(f"boundary {b} not in {group}")
        _check_nonneg(group, b)
        if group.divisibility[-1] == Z:
            canon = (tuple(x + y for x, y in zip(b, group.unit_vector(group.rank - 1))), True)
        else:
            canon = (b, False)
        return cls(group, OPEN, b, (), False, canon)

    @classmethod
    def limit(cls, group: ValueGroup, terms: Iterable, infimum, attained: bool | None = None) -> "Cut":
        """Upward closure of a strictly decreasing sequence with declared infimum (rank 1 only)."""
        if group.rank != 1:
            raise ValidationError("limit cuts require a rank-1 group")
        ts = tuple(coerce_value(group, t) for t in terms)
        sigma = coerce_value(group, infimum)
        _check_nonneg(group, sigma)
        for t in ts:
            if t not in group:
                raise ValidationError(f"sequence term {t} not in {group}")
        if any(a <= b for a, b in zip(ts, ts[1:])):
            raise ValidationError("sequence must be strictly decreasing")
        if any(t < sigma for t in ts):
            raise InconsistentInfimum("a sequence term lies below the declared infimum")
        if ts and ts[-1] == sigma:
            if attained is False:
                raise InconsistentInfimum("infimum appears in the sequence but is declared unattained")
            attained = True
        elif any(t == sigma for t in ts[:-1]):
            raise InconsistentInfimum("infimum must be the last term when attained")
        in_group = sigma in group
        if attained and not in_group:
            raise InconsistentInfimum("an attained infimum must be a group element")
        if attained is False and group.is_discrete:
            raise InconsistentInfimum("a strictly decreasing sequence in Z attains its infimum")
        if attained:
            return cls(group, CLOSED, sigma, ts, True, (sigma, True))
        if attained is None and not in_group:
            attained = False
        canon = (sigma, False) if attained is False else None
        return cls(group, LIMIT, sigma, ts, attained, canon)

    @property
    def canonical(self) -> tuple:
        if self._canon is None:
            raise Undecidable(
                "limit cut with undeclared attainment: the finite prefix does not reach the infimum"
            )
        return self._canon

    @property
    def is_closed(self) -> bool:
        return self.canonical[1]

    @property
    def value(self) -> tuple:
        return self.canonical[0]

    def __contains__(self, x) -> bool:
        b, closed = self.canonical
        x = coerce_value(self.group, x)
        return x >= b if closed else x > b

    def __str__(self):
        b = ", ".join(str(c) for c in self.boundary)
        if self.kind == CLOSED:
            return f"[{b}, ∞)"
        if self.kind == OPEN:
            return f"({b}, ∞)"
        return f"limit→{b}"

    def to_json(self) -> dict:
        doc = self.group.to_json()
        cut = {"kind": self.kind, "boundary": _pairs(self.boundary)}
        if self.kind == LIMIT or self.terms:
            cut["sequence"] = {"terms": [_pairs(t) for t in self.terms], "attained": self.attained}
        doc["cut"] = cut
        return doc

    @classmethod
    def from_json(cls, doc) -> "Cut":
        group = ValueGroup.from_json(doc)
        cut = doc["cut"]
        kind = cut["kind"]
        b = _parse_boundary(cut["boundary"])
        if kind == CLOSED:
            return cls.closed(group, b)
        if kind == OPEN:
            return cls.open(group, b)
        if kind == LIMIT:
            seq = cut.get("sequence", {})
            return cls.limit(group, [_parse_boundary(t) for t in seq.get("terms", [])], b, seq.get("attained"))
        raise ValidationError(f"unknown cut kind {kind!r}")


def coerce_value(group: ValueGroup, x) -> tuple:
    """Read ``x`` (a number, ``[num, den]`` pair or tuple) as a group element tuple."""
    if isinstance(x, tuple) and len(x) == group.rank and all(isinstance(c, Fraction) for c in x):
        return x
    if group.rank == 1 and not (isinstance(x, (tuple, list)) and len(x) == 1):
        if isinstance(x, list) and len(x) == 2:
            return (Fraction(int(x[0]), int(x[1])),)
        return (_as_fraction(x),)
    return tuple(_as_fraction(c) for c in x)


def _pairs(x: tuple):
    out = [[c.numerator, c.denominator] for c in x]
    return out[0] if len(out) == 1 else out


def _parse_boundary(b):
    # rank-1 boundaries come as a bare [num, den] pair
    if isinstance(b, list) and len(b) == 2 and all(isinstance(c, int) for c in b):
        return [Fraction(b[0], b[1])]
    if isinstance(b, list):
        return [_as_fraction(c) for c in b]
    return [_as_fraction(b)]


def cut_power(c: Cut, m: int) -> Cut:
    """The cut of the ``m``-th power of the ideal ``c``."""
    if m < 1:
        raise ValidationError("power must be a positive integer")
    g = c.group
    scale = lambda x: tuple(m * xi for xi in x)  # noqa: E731
    if c.kind == LIMIT:
        return Cut.limit(g, [scale(t) for t in c.terms], scale(c.boundary), c.attained)
    b, closed = c.canonical
    if closed:
        out = Cut.closed(g, scale(b))
        return Cut(g, CLOSED, out.boundary, tuple(scale(t) for t in c.terms), True, out._canon)
    return Cut.open(g, scale(b))


def cut_equal(a: Cut, b: Cut) -> bool:
    if a.group != b.group:
        raise ValidationError("cuts live in different groups")
    return a.canonical == b.canonical


def cut_contains(big: Cut, small: Cut) -> bool:
    """``small ⊆ big`` as subsets of the group."""
    (bb, bc), (sb, sc) = big.canonical, small.canonical
    if sb != bb:
        return sb > bb
    return bc or not sc


def cut_from_canonical(group: ValueGroup, boundary: tuple, closed: bool) -> Cut:
    if closed:
        return Cut.closed(group, boundary)
    if boundary in group:
        return Cut.open(group, boundary)
    return Cut.limit(group, (), boundary, False)


def group_grid(primes: Sequence[int] = (2, 3, 5), max_rank: int = 3) -> list[ValueGroup]:
    """Every lex group up to ``max_rank`` built from ``Z``, ``Q`` and ``Z[1/p]`` for the given primes."""
    import itertools

    tags = [Z, Q, *primes]
    out = []
    for k in range(1, max_rank + 1):
        out.extend(ValueGroup(t) for t in itertools.product(tags, repeat=k))
    return out
