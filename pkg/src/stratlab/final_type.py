"""Final types and direct sums of symmetric BT_1 invariants.

A final type of length ``d`` is a bit string ``delta(b_1..b_d)`` over a totally
ordered set.  Its final sequence is ``psi(i) = i - sum(delta[:i])`` and it
carries a permutation ``pi`` whose orbits are the minimal final subtypes.
Every element gets an exact value ``nu`` in [0, 1] whose binary expansion is
periodic and read backwards along its orbit; direct sums are computed by
merging orbit elements of all summands in ``nu`` order.

Positions are 1-based throughout, matching ``b_1 < ... < b_d``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .eo_seq import ElementarySeq, enumerate_elementary, p_rank, stretch, to_seq
from .errors import (
    InvalidPair,
    InvariantViolation,
    LengthCap,
    NotBijective,
    NotSymmetric,
    NuCollision,
)
from .newton import NewtonPolygon, np_p_rank, to_np

MAX_DECOMPOSE_G = 10

__all__ = [
    "FinalType",
    "Cycle",
    "final_type_of",
    "elementary_of",
    "pi_map",
    "cycles",
    "is_cycle_indecomposable",
    "nu_values",
    "ft_sum",
    "es_sum",
    "es_decompose",
    "Decomposition",
    "is_sum_indecomposable",
    "base_type",
    "minimal_sequence",
]


@dataclass(frozen=True)
class FinalType:
    delta: tuple[int, ...]
    # (summand index, original position) per position; only used for stable merges.
    tags: tuple[tuple[int, int], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        delta = tuple(int(b) for b in self.delta)
        if not delta:
            raise InvariantViolation("final type must be non-empty")
        if any(b not in (0, 1) for b in delta):
            raise InvariantViolation(f"delta must be a bit string, got {delta}")
        object.__setattr__(self, "delta", delta)
        if self.tags is None:
            object.__setattr__(self, "tags", tuple((0, i) for i in range(1, len(delta) + 1)))

    @property
    def d(self) -> int:
        return len(self.delta)

    def psi(self) -> tuple[int, ...]:
        """psi(0..d) with psi(i) = i - sum_{j<=i} delta(b_j)."""
        out, ones = [0], 0
        for i, b in enumerate(self.delta, start=1):
            ones += b
            out.append(i - ones)
        return tuple(out)

    @property
    def is_symmetric(self) -> bool:
        d = self.d
        if d % 2:
            return False
        return all(self.delta[i] + self.delta[d - 1 - i] == 1 for i in range(d // 2))

    def __str__(self):
        return "".join(map(str, self.delta))


def final_type_of(phi) -> FinalType:
    psi = stretch(to_seq(phi)).values
    return FinalType(tuple(1 - psi[i] + psi[i - 1] for i in range(1, len(psi))))


def elementary_of(ft: FinalType) -> ElementarySeq:
    if not ft.is_symmetric:
        raise NotSymmetric(f"final type {ft} is not symmetric")
    g = ft.d // 2
    return ElementarySeq(ft.psi()[1 : g + 1])


def pi_map(ft: FinalType) -> tuple[int, ...]:
    """Images ``pi(1..d)`` as 1-based positions."""
    psi, d = ft.psi(), ft.d
    img = tuple(
        psi[i] if ft.delta[i - 1] == 0 else psi[d] + i - psi[i] for i in range(1, d + 1)
    )
    if sorted(img) != list(range(1, d + 1)):
        raise NotBijective(f"pi is not a permutation for delta={ft.delta}")
    return img


@dataclass(frozen=True)
class Cycle:
    support: tuple[int, ...]  # positions in pi-orbit order, starting at the smallest
    bits: tuple[int, ...]  # delta read along the orbit

    def __len__(self):
        return len(self.support)

    def canonical_word(self) -> tuple[int, ...]:
        """Lexicographically least rotation of the bit word."""
        w = self.bits
        return min(w[k:] + w[:k] for k in range(len(w)))


def cycles(ft: FinalType) -> list[Cycle]:
    pi = pi_map(ft)
    seen, out = set(), []
    for start in range(1, ft.d + 1):
        if start in seen:
            continue
        orbit, b = [], start
        while b not in seen:
            seen.add(b)
            orbit.append(b)
            b = pi[b - 1]
        out.append(Cycle(tuple(orbit), tuple(ft.delta[x - 1] for x in orbit)))
    return out


def is_cycle_indecomposable(ft: FinalType) -> bool:
    """True iff ft has no proper final subtype, i.e. pi is a single cycle.

    Not the same as ⊕-indecomposability of an elementary sequence: (1) is
    ⊕-indecomposable but its final type splits into two fixed points.
    """
    return len(cycles(ft)) == 1


def _cycle_nu(cyc: Cycle) -> dict[int, Fraction]:
    # Along the orbit list, pi^{-l}(support[k]) = support[k - l].
    c = len(cyc)
    denom = (1 << c) - 1
    out = {}
    for k, b in enumerate(cyc.support):
        num = 0
        for l in range(1, c + 1):
            num = (num << 1) | cyc.bits[(k - l) % c]
        out[b] = Fraction(num, denom)
    return out


def nu_values(ft: FinalType) -> dict[int, Fraction]:
    """Map position -> nu(b) = sum_{l>=1} delta(pi^{-l}(b)) 2^{-l}, exactly."""
    out = {}
    for cyc in cycles(ft):
        out.update(_cycle_nu(cyc))
    return dict(sorted(out.items()))


def ft_sum(*types: FinalType) -> FinalType:
    """Direct sum of final types.

    All orbit elements of all summands are merged and sorted by
    ``(nu, summand index, original position)``.  Identical orbits interleave
    through the tie-break; distinct orbits never share a nu value (checked).
    """
    entries = []
    owner = {}
    for j, ft in enumerate(types):
        for cyc in cycles(ft):
            word = cyc.canonical_word()
            for b, v in _cycle_nu(cyc).items():
                entries.append((v, j, b, ft.delta[b - 1]))
                owner[(j, b)] = (len(cyc), word)
    entries.sort()
    for (v1, j1, b1, _), (v2, j2, b2, _) in zip(entries, entries[1:]):
        if v1 == v2 and owner[(j1, b1)] != owner[(j2, b2)]:
            raise NuCollision(
                f"nu={v1} shared by non-isomorphic cycles {owner[(j1, b1)]} and {owner[(j2, b2)]}"
            )
    return FinalType(tuple(e[3] for e in entries), tuple((e[1], e[2]) for e in entries))


@lru_cache(maxsize=None)
def _es_sum_cached(a: tuple[int, ...], b: tuple[int, ...]) -> ElementarySeq:
    ft = ft_sum(final_type_of(ElementarySeq(a)), final_type_of(ElementarySeq(b)))
    return elementary_of(ft)


def es_sum(*seqs) -> ElementarySeq:
    """Elementary sequence of the direct sum of the corresponding BT_1s."""
    seqs = [to_seq(s) for s in seqs]
    if not seqs:
        raise InvariantViolation("es_sum needs at least one summand")
    acc = seqs[0]
    for s in seqs[1:]:
        acc = _es_sum_cached(acc.values, s.values)
    return acc


@dataclass(frozen=True)
class Decomposition:
    target: ElementarySeq
    factors: tuple[ElementarySeq, ...]
    alternatives: tuple[tuple[ElementarySeq, ...], ...] = ()

    @property
    def ambiguous(self) -> bool:
        return bool(self.alternatives)

    @property
    def indecomposable(self) -> bool:
        return len(self.factors) == 1

    def format(self) -> str:
        """Render like ``(1,1,1,2) = (0) ⊕ (1) ⊕ (0,1)``, powers as ``^⊕k``."""
        if self.indecomposable:
            return f"{self.target} (indecomposable)"
        counts = Counter(self.factors)
        parts = []
        for f in sorted(counts, key=_factor_key):
            k = counts[f]
            parts.append(f"{f}^⊕{k}" if k > 1 else str(f))
        return f"{self.target} = " + " ⊕ ".join(parts)


def _factor_key(phi: ElementarySeq):
    return (phi.g, phi.values)


@lru_cache(maxsize=None)
def _splits(values: tuple[int, ...]) -> tuple[tuple[ElementarySeq, ElementarySeq], ...]:
    """All (alpha, beta) with len(alpha) <= len(beta) and alpha ⊕ beta == phi."""
    phi = ElementarySeq(values)
    g = phi.g
    f = p_rank(phi)
    out = []
    for k in range(1, g // 2 + 1):
        for alpha in enumerate_elementary(k):
            fa = p_rank(alpha)
            if fa > f or f - fa > g - k:
                continue
            for beta in enumerate_elementary(g - k, prank=f - fa):
                if k == g - k and beta < alpha:
                    continue
                if es_sum(alpha, beta) == phi:
                    out.append((alpha, beta))
    return tuple(out)


def is_sum_indecomposable(phi) -> bool:
    """True iff phi admits no splitting alpha ⊕ beta with both lengths >= 1."""
    phi = to_seq(phi)
    if phi.g > MAX_DECOMPOSE_G:
        raise LengthCap(f"g={phi.g} exceeds the decomposition cap {MAX_DECOMPOSE_G}")
    return not _splits(phi.values)


@lru_cache(maxsize=None)
def _all_factorisations(values: tuple[int, ...]) -> frozenset:
    phi = ElementarySeq(values)
    splits = _splits(values)
    if not splits:
        return frozenset({(phi,)})
    out = set()
    for alpha, beta in splits:
        for fa in _all_factorisations(alpha.values):
            for fb in _all_factorisations(beta.values):
                out.add(tuple(sorted(fa + fb, key=_factor_key)))
    return frozenset(out)


def es_decompose(phi) -> Decomposition:
    """Factor phi into ⊕-indecomposable elementary sequences.

    Returns the lexicographically least factor multiset (factors ordered
    smallest length first); other factorisations, if any, are listed in
    ``alternatives``.
    """
    phi = to_seq(phi)
    if phi.g > MAX_DECOMPOSE_G:
        raise LengthCap(f"g={phi.g} exceeds the decomposition cap {MAX_DECOMPOSE_G}")
    facts = sorted(_all_factorisations(phi.values), key=lambda fs: [_factor_key(f) for f in fs])
    return Decomposition(phi, facts[0], tuple(facts[1:]))


def base_type(m: int, n: int) -> FinalType:
    """Final type of psi_{m,n} = (0,...,0,1,...,m) with n leading zeros."""
    if m < n or n < 0 or (m, n) == (0, 0) or gcd(m, n) != 1:
        raise InvalidPair(f"base_type needs coprime m >= n >= 0, got ({m},{n})")
    return FinalType((1,) * n + (0,) * m)


def minimal_sequence(xi) -> ElementarySeq:
    """Elementary sequence of the minimal p-divisible group with polygon xi.

    Built from the slope <= 1/2 half ``eta`` of xi (the [1,1] part counted
    separately as s): psi_eta is read off the sum of base types and padded
    with n + s copies of m - n.
    """
    xi = to_np(xi)
    if not xi.is_symmetric:
        raise NotSymmetric(f"{xi} is not symmetric")
    s = xi.multiplicity(1, 1)
    halves = [(seg.m, seg.n) for seg in xi.segments if seg.m > seg.n for _ in range(seg.multiplicity)]
    m = sum(a for a, _ in halves)
    n = sum(b for _, b in halves)
    if not halves:
        return ElementarySeq((0,) * s)
    psi_eta = ft_sum(*(base_type(a, b) for a, b in halves)).psi()
    vals = psi_eta[1 : m + 1] + (m - n,) * (n + s)
    phi = ElementarySeq(vals)
    assert phi.g == xi.dimension and p_rank(phi) == np_p_rank(xi)
    return phi

