"""Independent brute-force oracles used by the test suite.

None of these call into the code paths they check.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import gcd


def psi_of(phi):
    """Final sequence psi(0..2g) straight from its two defining formulas."""
    g = len(phi)
    p = [0] * (2 * g + 1)
    for i in range(g + 1):
        v = phi[i - 1] if i else 0
        p[i] = v
        p[2 * g - i] = g - i + v
    return p


def direct_sum_by_filtration(*phis):
    """Elementary sequence of a direct sum from its canonical filtration.

    V and F^{-1} act componentwise on a direct sum, and on a summand with final
    sequence psi a canonical piece of dimension n is sent to pieces of dimension
    psi(n) and g + n - psi(n).  Words in V, F^{-1} starting from the whole module
    give the canonical filtration of the sum; psi of the sum is read off it and
    is linear in between.
    """
    ps = [psi_of(p) for p in phis]
    gs = [len(p) for p in phis]
    start = tuple(2 * g for g in gs)
    zero = tuple(0 for _ in gs)
    seen = {start, zero}
    todo = [start, zero]
    psi = {}
    while todo:
        n = todo.pop()
        v = tuple(ps[k][n[k]] for k in range(len(gs)))
        fi = tuple(gs[k] + n[k] - ps[k][n[k]] for k in range(len(gs)))
        psi[sum(n)] = sum(v)
        for m in (v, fi):
            if m not in seen:
                seen.add(m)
                todo.append(m)
    dims = sorted(psi)
    full = {}
    for a, b in zip(dims, dims[1:]):
        step = psi[b] - psi[a]
        assert step in (0, b - a), "canonical filtration is not a chain of the right shape"
        for k in range(a, b + 1):
            full[k] = psi[a] + (k - a if step else 0)
    g = sum(gs)
    return tuple(full[i] for i in range(1, g + 1))


def all_elementary(g):
    out = []

    def rec(cur):
        if len(cur) == g:
            out.append(tuple(cur))
            return
        prev = cur[-1] if cur else 0
        for v in (prev, prev + 1):
            rec(cur + [v])

    rec([])
    return out


def symmetric_np_multisets(g):
    """All symmetric Newton polygons of dimension g as sorted lists of (m, n).

    Brute force: every multiset of coprime pairs of total height 2g, kept if
    dimension is g and [m,n], [n,m] occur equally often.
    """
    pairs = [(m, n) for m in range(0, 2 * g + 1) for n in range(0, 2 * g + 1)
             if (m, n) != (0, 0) and gcd(m, n) == 1 and m + n <= 2 * g]
    found = set()

    def rec(start, height, acc):
        if height == 2 * g:
            if sum(m for m, _ in acc) == g and all(acc.count((m, n)) == acc.count((n, m)) for m, n in acc):
                found.add(tuple(sorted(acc)))
            return
        for k in range(start, len(pairs)):
            m, n = pairs[k]
            if height + m + n <= 2 * g:
                rec(k, height + m + n, acc + [(m, n)])

    rec(0, 0, [])
    return found


def brute_W(g):
    """W_g by filtering all of S_2g."""
    n = 2 * g
    return [p for p in permutations(range(1, n + 1)) if all(p[i] + p[n - 1 - i] == n + 1 for i in range(g))]


def nu_by_series(delta, pi, b, terms=64):
    """nu(b) = sum_{l>=1} delta(pi^{-l} b) 2^{-l}, summed exactly to a cut-off."""
    inv = {v: k for k, v in enumerate(pi, start=1)}
    total = Fraction(0)
    x = b
    for l in range(1, terms + 1):
        x = inv[x]
        total += Fraction(delta[x - 1], 2 ** l)
    return total
