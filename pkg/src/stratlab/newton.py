"""Symmetric Newton polygons as multisets of coprime segments ``[m, n]``.

A segment ``[m, n]`` has height ``m + n``, dimension ``m`` and slope
``n / (m + n)``.  Polygons are kept in a canonical form: equal segments are
aggregated with a multiplicity and sorted by ascending slope.  All slope
arithmetic is exact.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .eo_seq import MAX_G
from .errors import InvariantViolation, LengthCap, MalformedInput, NonCoprime

__all__ = [
    "NPSegment",
    "NewtonPolygon",
    "parse_np",
    "np_p_rank",
    "np_first_slope",
    "np_break_points",
    "enumerate_symmetric_np",
    "np_sum",
    "supersingular",
]


@dataclass(frozen=True)
class NPSegment:
    m: int
    n: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or (self.m, self.n) == (0, 0):
            raise InvariantViolation(f"bad segment [{self.m},{self.n}]")
        if gcd(self.m, self.n) != 1:
            raise NonCoprime(f"[{self.m},{self.n}] is not a coprime pair")
        if self.multiplicity < 1:
            raise InvariantViolation("multiplicity must be positive")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.n, self.m + self.n)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __str__(self):
        k = f"{self.multiplicity}" if self.multiplicity > 1 else ""
        return f"{k}[{self.m},{self.n}]"


def _slope_key(pair):
    m, n = pair
    return (Fraction(n, m + n), m)


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple[NPSegment, ...]

    def __post_init__(self):
        counts = Counter()
        for seg in self.segments:
            counts[seg.pair] += seg.multiplicity
        canon = tuple(
            NPSegment(m, n, counts[(m, n)]) for (m, n) in sorted(counts, key=_slope_key)
        )
        if not canon:
            raise InvariantViolation("empty Newton polygon")
        object.__setattr__(self, "segments", canon)

    @classmethod
    def from_pairs(cls, pairs) -> "NewtonPolygon":
        return cls(tuple(NPSegment(m, n) for m, n in pairs))

    def multiplicity(self, m: int, n: int) -> int:
        for seg in self.segments:
            if seg.pair == (m, n):
                return seg.multiplicity
        return 0

    @property
    def height(self) -> int:
        return sum(s.multiplicity * (s.m + s.n) for s in self.segments)

    @property
    def dimension(self) -> int:
        return sum(s.multiplicity * s.m for s in self.segments)

    @property
    def codimension(self) -> int:
        return sum(s.multiplicity * s.n for s in self.segments)

    @property
    def is_symmetric(self) -> bool:
        return all(self.multiplicity(s.n, s.m) == s.multiplicity for s in self.segments)

    def expanded(self) -> list[tuple[int, int]]:
        return [s.pair for s in self.segments for _ in range(s.multiplicity)]

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, m + n) for m, n in self.expanded())

    def format(self) -> str:
        return " + ".join(str(s) for s in self.segments)

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        fs = np_first_slope(self)
        return {
            "np": self.format(),
            "segments": [[m, n] for m, n in self.expanded()],
            "dimension": self.dimension,
            "height": self.height,
            "p_rank": np_p_rank(self),
            "first_slope": f"{fs.numerator}/{fs.denominator}",
            "break_points": [list(p) for p in np_break_points(self)],
        }


_TERM = re.compile(r"^\s*(\d*)\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$")


def parse_np(text: str) -> NewtonPolygon:
    """Parse ``"[2,1] + 2[1,1] + [1,2]"``; a leading integer is a multiplier."""
    if not text or not text.strip():
        raise MalformedInput("empty Newton polygon text")
    segs = []
    for term in text.split("+"):
        mt = _TERM.match(term)
        if not mt:
            raise MalformedInput(f"bad Newton polygon term {term.strip()!r} in {text!r}")
        k = int(mt.group(1)) if mt.group(1) else 1
        if k < 1:
            raise MalformedInput(f"multiplier must be positive in {term.strip()!r}")
        m, n = int(mt.group(2)), int(mt.group(3))
        segs.append(NPSegment(m, n, k))
    return NewtonPolygon(tuple(segs))


def to_np(xi) -> NewtonPolygon:
    if isinstance(xi, NewtonPolygon):
        return xi
    if isinstance(xi, str):
        return parse_np(xi)
    return NewtonPolygon.from_pairs(xi)


def supersingular(g: int) -> NewtonPolygon:
    """The polygon g[1,1] of the supersingular locus."""
    return NewtonPolygon((NPSegment(1, 1, g),))


def np_p_rank(xi) -> int:
    return to_np(xi).multiplicity(1, 0)


def np_first_slope(xi) -> Fraction:
    return min(s.slope for s in to_np(xi).segments)


def np_break_points(xi) -> list[tuple[int, int]]:
    pts = [(0, 0)]
    x = y = 0
    for s in to_np(xi).segments:
        x += s.multiplicity * (s.m + s.n)
        y += s.multiplicity * s.n
        pts.append((x, y))
    return pts


def np_sum(xi1, xi2) -> NewtonPolygon:
    a, b = to_np(xi1), to_np(xi2)
    return NewtonPolygon(a.segments + b.segments)


def _coprime_halves(limit: int) -> list[tuple[int, int]]:
    return [
        (m, h - m)
        for h in range(1, limit + 1)
        for m in range(h, 0, -1)
        if m > h - m and gcd(m, h - m) == 1
    ]


def _half_multisets(budget: int, pairs, start: int = 0):
    """Multisets of pairs with sum(m + n) == budget, each emitted once."""
    if budget == 0:
        yield ()
        return
    for k in range(start, len(pairs)):
        m, n = pairs[k]
        if m + n <= budget:
            for rest in _half_multisets(budget - m - n, pairs, k):
                yield ((m, n),) + rest


def enumerate_symmetric_np(g: int, prank: int | None = None) -> list[NewtonPolygon]:
    """All symmetric Newton polygons of dimension ``g``.

    Generated as a half ``[m, n]`` (m > n) multiset plus ``s`` copies of
    ``[1,1]``, then symmetrised.  Sorted by p-rank, then by slope sequence.
    """
    if g < 1:
        raise InvariantViolation("g must be positive")
    if g > MAX_G:
        raise LengthCap(f"g={g} exceeds the cap {MAX_G}")
    halves = _coprime_halves(g)
    out = []
    for s in range(g + 1):
        budget = g - s
        for half in _half_multisets(budget, halves):
            pairs = list(half) + [(n, m) for m, n in half] + [(1, 1)] * s
            xi = NewtonPolygon.from_pairs(pairs)
            if prank is None or np_p_rank(xi) == prank:
                out.append(xi)
    out.sort(key=lambda x: (np_p_rank(x), x.slopes()))
    return out
