"""The symplectic Weyl group W_g, Bruhat order and EO closure relations.

W_g is realised inside S_2g as the permutations with
``w(i) + w(2g+1-i) = 2g+1``.  Products compose right to left:
``(x*y)(i) = x(y(i))``.

Each elementary sequence phi gives an element omega_phi, and one stratum lies
in the closure of another iff some twisted conjugate of omega_phi1 by an
element of W_I (the stabiliser of {1..g}) is below omega_phi2 in Bruhat order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .eo_seq import ElementarySeq, a_number, eo_dimension, enumerate_elementary, p_rank, to_seq
from .errors import DimensionMismatch, InvariantViolation, LengthCap, MalformedInput

MAX_W_G = 7
MAX_WI_G = 10
CONVENTIONS = ("standard", "literal", "opposite")

__all__ = [
    "CONVENTIONS",
    "SymplecticPerm",
    "ClosurePoset",
    "weyl_element",
    "enumerate_W",
    "enumerate_WI",
    "w0I",
    "bc_below",
    "bruhat_leq",
    "closure_below",
    "closure_witness",
    "semicontinuity_violations",
    "closure_poset",
    "poset_to_dot",
]


@dataclass(frozen=True)
class SymplecticPerm:
    images: tuple[int, ...]  # w(1..2g)

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if n == 0 or n % 2:
            raise InvariantViolation(f"need 2g images, got {n}")
        if sorted(imgs) != list(range(1, n + 1)):
            raise InvariantViolation(f"{imgs} is not a permutation of 1..{n}")
        for i in range(1, n // 2 + 1):
            if imgs[i - 1] + imgs[n - i] != n + 1:
                raise InvariantViolation(f"w({i}) + w({n + 1 - i}) != {n + 1}")

    @property
    def g(self) -> int:
        return len(self.images) // 2

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "SymplecticPerm") -> "SymplecticPerm":
        _same_g(self, other)
        return SymplecticPerm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "SymplecticPerm":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return SymplecticPerm(tuple(inv))

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"


def _same_g(a: SymplecticPerm, b: SymplecticPerm) -> None:
    if a.g != b.g:
        raise DimensionMismatch(f"g={a.g} vs g={b.g}")


def weyl_element(phi) -> SymplecticPerm:
    """omega_phi: steps where phi stays put go to 1, 2, ..., jumps go to g+1, g+2, ..."""
    phi = to_seq(phi)
    g = phi.g
    w = [0] * (2 * g)
    stay = jump = 0
    for i in range(1, g + 1):
        if phi(i) == phi(i - 1):
            stay += 1
            w[i - 1] = stay
        else:
            jump += 1
            w[i - 1] = g + jump
    for i in range(1, g + 1):
        w[2 * g - i] = 2 * g + 1 - w[i - 1]
    return SymplecticPerm(tuple(w))


def _from_half(p, g: int) -> SymplecticPerm:
    w = list(p) + [0] * g
    for i in range(1, g + 1):
        w[2 * g - i] = 2 * g + 1 - p[i - 1]
    return SymplecticPerm(tuple(w))


def enumerate_W(g: int) -> list[SymplecticPerm]:
    """All 2^g * g! elements of W_g, in lexicographic order of images."""
    if g < 1:
        raise InvariantViolation("g must be positive")
    if g > MAX_W_G:
        raise LengthCap(f"g={g} exceeds the W_g enumeration cap {MAX_W_G}")
    out = []
    for p in permutations(range(1, g + 1)):
        for flips in product((0, 1), repeat=g):
            half = [2 * g + 1 - x if f else x for x, f in zip(p, flips)]
            out.append(_from_half(half, g))
    return sorted(out, key=lambda w: w.images)


def enumerate_WI(g: int) -> list[SymplecticPerm]:
    """The g! elements of W_g preserving {1..g}, lexicographic."""
    if g < 1:
        raise InvariantViolation("g must be positive")
    if g > MAX_WI_G:
        raise LengthCap(f"g={g} exceeds the W_I enumeration cap {MAX_WI_G}")
    return [_from_half(p, g) for p in permutations(range(1, g + 1))]


def w0I(g: int) -> SymplecticPerm:
    """Longest element of W_I."""
    return SymplecticPerm(
        tuple(g + 1 - i for i in range(1, g + 1)) + tuple(3 * g + 1 - i for i in range(g + 1, 2 * g + 1))
    )


def bc_below(w1: SymplecticPerm, w2: SymplecticPerm) -> bool:
    """Prefix-maximum test: max w1(1..d) <= max w2(1..d) for d = 1..g."""
    _same_g(w1, w2)
    m1 = m2 = 0
    for d in range(w1.g):
        m1 = max(m1, w1.images[d])
        m2 = max(m2, w2.images[d])
        if m1 > m2:
            return False
    return True


def bruhat_leq(w1: SymplecticPerm, w2: SymplecticPerm) -> bool:
    """Bruhat order of S_2g (tableau criterion), which restricts to that of W_g."""
    _same_g(w1, w2)
    a, b = w1.images, w2.images
    for d in range(1, len(a)):
        if any(x > y for x, y in zip(sorted(a[:d]), sorted(b[:d]))):
            return False
    return True


# -- vectorised closure search ------------------------------------------------


def _rank_counts(arr: np.ndarray) -> np.ndarray:
    """r[..., d, k] = #{i <= d : w(i) > k}; w <= v in Bruhat iff r_w <= r_v everywhere."""
    n = arr.shape[-1]
    ks = np.arange(1, n + 1)
    return np.cumsum(arr[..., :, None] > ks, axis=-2)


@lru_cache(maxsize=None)
def _wi_array(g: int) -> np.ndarray:
    return np.array([u.images for u in enumerate_WI(g)], dtype=np.int16)


def _compose(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # (x*y)(i) = x(y(i)), broadcast over the leading axis
    return np.take_along_axis(x, y - 1, axis=-1)


def _invert(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    n = x.shape[-1]
    np.put_along_axis(out, x - 1, np.broadcast_to(np.arange(1, n + 1, dtype=x.dtype), x.shape), axis=-1)
    return out


@lru_cache(maxsize=None)
def _candidates(values: tuple[int, ...], convention: str) -> np.ndarray:
    """All twisted conjugates of omega_phi over u in W_I, one row per u (lex order)."""
    g = len(values)
    U = _wi_array(g)
    w1 = np.array(weyl_element(ElementarySeq(values)).images, dtype=np.int16)
    z = np.array(w0I(g).images, dtype=np.int16)
    W1 = np.broadcast_to(w1, U.shape)
    Z = np.broadcast_to(z, U.shape)
    twisted = _compose(_compose(Z, U), Z)
    if convention == "standard":
        C = _compose(_compose(U, W1), _invert(twisted))
    elif convention == "literal":
        C = _compose(_compose(U, W1), twisted)
    else:  # factors applied left to right
        C = _compose(_invert(twisted), _compose(W1, U))
    return C


@lru_cache(maxsize=None)
def _candidate_test_data(values: tuple[int, ...], convention: str) -> np.ndarray:
    C = _candidates(values, convention)
    if convention == "literal":
        g = len(values)
        return np.maximum.accumulate(C[:, :g], axis=1)
    return _rank_counts(C)


def _target_test_data(phi: ElementarySeq, convention: str) -> np.ndarray:
    w2 = np.array(weyl_element(phi).images, dtype=np.int16)
    if convention == "literal":
        return np.maximum.accumulate(w2[: phi.g])
    return _rank_counts(w2)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise MalformedInput(f"unknown convention {convention!r}; choose from {', '.join(CONVENTIONS)}")


def closure_witness(phi1, phi2, convention: str = "standard") -> SymplecticPerm | None:
    """First u in W_I (lexicographic) certifying phi1 in the closure of phi2, else None."""
    phi1, phi2 = to_seq(phi1), to_seq(phi2)
    _check_convention(convention)
    if phi1.g != phi2.g:
        raise DimensionMismatch(f"g={phi1.g} vs g={phi2.g}")
    if phi1.g > MAX_W_G:
        raise LengthCap(f"g={phi1.g} exceeds the closure cap {MAX_W_G}")
    cand = _candidate_test_data(phi1.values, convention)
    target = _target_test_data(phi2, convention)
    axes = tuple(range(1, cand.ndim))
    ok = np.all(cand <= target, axis=axes)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return SymplecticPerm(tuple(int(x) for x in _wi_array(phi1.g)[hits[0]]))


def closure_below(phi1, phi2, convention: str = "standard") -> bool:
    """True iff the stratum of phi1 lies in the Zariski closure of that of phi2."""
    return closure_witness(phi1, phi2, convention) is not None


@dataclass(frozen=True)
class ClosurePoset:
    g: int
    prank: int | None
    nodes: tuple[ElementarySeq, ...]
    relation: np.ndarray  # relation[i, j]: nodes[i] below nodes[j]
    hasse_edges: tuple[tuple[ElementarySeq, ElementarySeq], ...]
    convention: str = "standard"

    def index(self, phi) -> int:
        return self.nodes.index(to_seq(phi))

    def below(self, a, b) -> bool:
        return bool(self.relation[self.index(a), self.index(b)])


def _node_key(phi: ElementarySeq):
    return (eo_dimension(phi), phi.values)


def closure_poset(g: int, prank: int | None = None, convention: str = "standard") -> ClosurePoset:
    """Closure relation on the strata of A_g (optionally one p-rank) with its Hasse diagram.

    The relation is the reflexive-transitive closure of :func:`closure_below`.
    """
    if g > MAX_W_G:
        raise LengthCap(f"g={g} exceeds the closure cap {MAX_W_G}")
    _check_convention(convention)
    nodes = tuple(sorted(enumerate_elementary(g, prank), key=_node_key))
    n = len(nodes)
    rel = np.zeros((n, n), dtype=bool)
    for j, b in enumerate(nodes):
        target = _target_test_data(b, convention)
        for i, a in enumerate(nodes):
            cand = _candidate_test_data(a.values, convention)
            rel[i, j] = bool(np.any(np.all(cand <= target, axis=tuple(range(1, cand.ndim)))))
    np.fill_diagonal(rel, True)
    # Warshall; a no-op when the base relation is already transitive
    for k in range(n):
        rel |= rel[:, k : k + 1] & rel[k : k + 1, :]
    strict = rel & ~np.eye(n, dtype=bool)
    two_step = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
    cover = strict & ~two_step
    edges = tuple((nodes[i], nodes[j]) for i, j in zip(*np.nonzero(cover)))
    edges = tuple(sorted(edges, key=lambda e: (_node_key(e[0]), _node_key(e[1]))))
    return ClosurePoset(g, prank, nodes, rel, edges, convention)


def poset_to_dot(poset: ClosurePoset) -> str:
    """Byte-stable DOT text: compact labels, one rank group per dimension, edges lower -> upper."""
    lines = [f'digraph "closure_g{poset.g}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    by_dim: dict[int, list[ElementarySeq]] = {}
    for phi in poset.nodes:
        by_dim.setdefault(eo_dimension(phi), []).append(phi)
    for dim in sorted(by_dim):
        names = " ".join(f'"{p.compact()}";' for p in by_dim[dim])
        lines.append(f"  {{ rank=same; {names} }}  // dim {dim}")
    for a, b in poset.hasse_edges:
        lines.append(f'  "{a.compact()}" -> "{b.compact()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def semicontinuity_violations(edges) -> list[tuple[ElementarySeq, ElementarySeq]]:
    """Edges (lower, upper) where the lower stratum has larger p-rank or smaller a-number."""
    out = []
    for a, b in edges:
        a, b = to_seq(a), to_seq(b)
        if p_rank(a) > p_rank(b) or a_number(a) < a_number(b):
            out.append((a, b))
    return out
