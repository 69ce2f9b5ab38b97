"""Elementary sequences and their stretched final sequences.

An elementary sequence ``phi`` of length ``g`` labels an Ekedahl-Oort stratum
of A_g.  Values are stored 1-indexed: ``phi(i)`` for ``1 <= i <= g`` with the
implicit ``phi(0) = 0``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import InvariantViolation, LengthCap, MalformedInput

MAX_G = 16
MAX_COMPACT_G = 9

__all__ = [
    "MAX_G",
    "ElementarySeq",
    "FinalSeq",
    "parse_elementary",
    "enumerate_elementary",
    "p_rank",
    "a_number",
    "eo_dimension",
    "stretch",
    "to_seq",
]


def _check_g(g: int, cap: int = MAX_G) -> None:
    if g < 1:
        raise InvariantViolation(f"length must be positive, got {g}")
    if g > cap:
        raise LengthCap(f"g={g} exceeds the cap {cap}")


@dataclass(frozen=True, order=True)
class ElementarySeq:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        _check_g(len(vals))
        prev = 0
        for i, v in enumerate(vals, start=1):
            if not prev <= v <= prev + 1:
                raise InvariantViolation(
                    f"phi({i})={v} breaks phi({i - 1}) <= phi({i}) <= phi({i - 1})+1"
                )
            prev = v
        assert all(0 <= v <= i for i, v in enumerate(vals, start=1))

    @classmethod
    def of(cls, *values: int) -> "ElementarySeq":
        if len(values) == 1 and not isinstance(values[0], int):
            values = tuple(values[0])
        return cls(tuple(values))

    @property
    def g(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        if not 1 <= i <= self.g:
            raise IndexError(i)
        return self.values[i - 1]

    def __len__(self):
        return self.g

    def __iter__(self):
        return iter(self.values)

    def format(self) -> str:
        """Canonical comma form, e.g. ``0,1,1,2,2``."""
        return ",".join(map(str, self.values))

    def compact(self) -> str:
        """Digit-string form; only unambiguous for g <= 9."""
        if self.g > MAX_COMPACT_G:
            return self.format()
        return "".join(map(str, self.values))

    def __str__(self):
        return "(" + self.format() + ")"


@dataclass(frozen=True)
class FinalSeq:
    """The final sequence psi(0..2g) stretched from an elementary sequence."""

    g: int
    values: tuple[int, ...]

    def __post_init__(self):
        g, vals = self.g, self.values
        if len(vals) != 2 * g + 1:
            raise InvariantViolation("final sequence must have 2g+1 entries")
        if vals[0] != 0 or vals[2 * g] != g:
            raise InvariantViolation("final sequence must start at 0 and end at g")
        for i in range(2 * g):
            if not vals[i] <= vals[i + 1] <= vals[i] + 1:
                raise InvariantViolation(f"step constraint broken at {i}")
        for i in range(g + 1):
            if vals[2 * g - i] != g - i + vals[i]:
                raise InvariantViolation(f"symmetry psi(2g-i)=g-i+psi(i) broken at i={i}")

    def __call__(self, i: int) -> int:
        return self.values[i]


_COMMA = re.compile(r"^\s*\d+(\s*,\s*\d+)*\s*$")
_DIGITS = re.compile(r"^\s*\d+\s*$")


def parse_elementary(text: str) -> ElementarySeq:
    """Parse ``"0,1,1,2,2"`` or a compact digit string like ``"01122"``.

    Surrounding parentheses are tolerated so that ``str(phi)`` parses back.
    """
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if "," in s:
        if not _COMMA.match(s):
            raise MalformedInput(f"not a comma-separated integer list: {text!r}")
        vals = tuple(int(t) for t in s.split(","))
    elif _DIGITS.match(s):
        s = s.strip()
        if len(s) > MAX_COMPACT_G:
            if len(s) > MAX_G:
                raise LengthCap(f"g={len(s)} exceeds the cap {MAX_G}")
            raise MalformedInput("compact digit form only accepted for g <= 9; use commas")
        vals = tuple(int(c) for c in s)
    else:
        raise MalformedInput(f"cannot parse elementary sequence from {text!r}")
    return ElementarySeq(vals)


def to_seq(phi) -> ElementarySeq:
    if isinstance(phi, ElementarySeq):
        return phi
    if isinstance(phi, str):
        return parse_elementary(phi)
    return ElementarySeq(tuple(phi))


def enumerate_elementary(g: int, prank: int | None = None) -> list[ElementarySeq]:
    """All elementary sequences of length ``g`` in lexicographic order.

    Each sequence is determined by its g step bits, so there are exactly 2**g.
    """
    _check_g(g)
    if prank is not None and not 0 <= prank <= g:
        raise InvariantViolation(f"p-rank {prank} outside [0, {g}]")
    out = []
    for steps in product((0, 1), repeat=g):
        vals, cur = [], 0
        for s in steps:
            cur += s
            vals.append(cur)
        phi = ElementarySeq(tuple(vals))
        if prank is None or p_rank(phi) == prank:
            out.append(phi)
    return out


def p_rank(phi) -> int:
    phi = to_seq(phi)
    return max((i for i in range(1, phi.g + 1) if phi(i) == i), default=0)


def a_number(phi) -> int:
    phi = to_seq(phi)
    return phi.g - phi(phi.g)


def eo_dimension(phi) -> int:
    return sum(to_seq(phi).values)


def stretch(phi) -> FinalSeq:
    phi = to_seq(phi)
    g = phi.g
    psi = [0] * (2 * g + 1)
    for i in range(g + 1):
        psi[i] = phi(i)
        psi[2 * g - i] = g - i + phi(i)
    return FinalSeq(g, tuple(psi))
