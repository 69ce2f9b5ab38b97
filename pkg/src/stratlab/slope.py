"""First Newton slope of an Ekedahl-Oort stratum.

From the final sequence psi of phi define a self-map of {1..2g}:
``Phi(i) = psi(i)`` when ``psi(i) != 0`` and ``Phi(i) = g + i`` otherwise.
The eventual image ``D`` of Phi (the intersection of all iterated images) is
Phi-stable; with ``C = D ∩ {g+1..2g}`` the slope is ``|C| / |D|``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .eo_seq import FinalSeq, stretch, to_seq

__all__ = ["SlopeTrace", "slope_trace", "first_newton_slope"]


@dataclass(frozen=True)
class SlopeTrace:
    psi: FinalSeq
    phi_map: tuple[int, ...]  # Phi(1..2g)
    D: frozenset[int]
    C: frozenset[int]
    steps: int

    @property
    def lam(self) -> Fraction:
        return Fraction(len(self.C), len(self.D))

    def format(self) -> str:
        fmt = lambda xs: "{" + ",".join(map(str, sorted(xs))) + "}"
        lam = self.lam
        return "\n".join(
            [
                "psi = (" + ",".join(map(str, self.psi.values)) + ")",
                "Phi = (" + ",".join(map(str, self.phi_map)) + ")",
                f"D = {fmt(self.D)}",
                f"C = {fmt(self.C)}",
                f"lambda = {lam.numerator}/{lam.denominator}",
            ]
        )


def slope_trace(phi) -> SlopeTrace:
    phi = to_seq(phi)
    g = phi.g
    psi = stretch(phi)
    Phi = tuple(psi(i) if psi(i) != 0 else g + i for i in range(1, 2 * g + 1))
    image = frozenset(range(1, 2 * g + 1))
    steps = 0
    while True:
        nxt = frozenset(Phi[i - 1] for i in image)
        if nxt == image:
            break
        image = nxt
        steps += 1
        assert steps <= 2 * g, "iterated image failed to stabilise"
    D = image
    C = frozenset(i for i in D if i > g)
    return SlopeTrace(psi, Phi, D, C, steps)


def first_newton_slope(phi) -> Fraction:
    return slope_trace(phi).lam
