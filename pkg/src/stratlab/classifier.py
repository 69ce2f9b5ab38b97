"""Rule engine for EO x Newton stratum intersections.

Every cell (phi, xi) of dimension g starts Unknown and is raised through the
lattice Unknown < NonEmpty < {NonEmptyDense, Contained}, or set to Empty.
Empty is terminal; asking a non-empty cell to become Empty (or the reverse)
raises :class:`Contradiction`.  The rules below are applied until nothing
changes.  Each application is recorded with a short citation so that
:func:`explain` can report why a cell ended up where it did.

Rules
  R1  Chai-Oort: phi(floor((g+1)/2)) = 0 iff S_phi lies in the supersingular locus.
  R2  minimality: the minimal stratum of xi lies in N(xi), hence misses every other xi'.
  R3  p-rank: strata of different p-rank never meet.
  R4  first slope: every slope of a point of S_phi is >= lambda_phi.
  R4b if exactly one xi has first slope lambda_phi > 0, S_phi meets N(xi).
  R5  a-number one strata are dense in every compatible Newton stratum.
  R6  direct sums of non-empty lower-dimensional intersections are non-empty.
  R7  facts supplied by a ledger, taken as axioms.
  R8  if only one xi has p-rank f, every p-rank f stratum meets it.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from pathlib import Path

from .eo_seq import ElementarySeq, a_number, enumerate_elementary, p_rank, to_seq
from .errors import CellNotFound, Contradiction, LengthCap, MalformedInput
from .final_type import es_sum, minimal_sequence
from .newton import (
    NewtonPolygon,
    enumerate_symmetric_np,
    np_first_slope,
    np_p_rank,
    np_sum,
    supersingular,
    to_np,
)
from .slope import first_newton_slope

MAX_CLASSIFY_G = 6
RULES = ("R1", "R2", "R3", "R4", "R4b", "R5", "R6", "R7", "R8")

__all__ = [
    "Status",
    "Firing",
    "CellStatus",
    "LedgerEntry",
    "FactsLedger",
    "DEFAULT_LEDGER",
    "ClassificationMatrix",
    "classify",
    "explain",
    "RULES",
]


class Status(Enum):
    UNKNOWN = "unknown"
    NONEMPTY = "nonempty"
    DENSE = "dense"
    CONTAINED = "contained"
    EMPTY = "empty"

    @property
    def nonempty(self) -> bool:
        return self in (Status.NONEMPTY, Status.DENSE, Status.CONTAINED)

    @classmethod
    def parse(cls, text: str) -> "Status":
        t = text.strip().lower().replace("_", "").replace("-", "")
        aliases = {"nonemptydense": "dense"}
        t = aliases.get(t, t)
        for s in cls:
            if s.value == t:
                return s
        raise MalformedInput(f"unknown status {text!r}")


_RANK = {Status.UNKNOWN: 0, Status.NONEMPTY: 1, Status.DENSE: 2, Status.CONTAINED: 3}


def join(a: Status, b: Status) -> Status | None:
    """Least upper bound, or None if the two statuses are incompatible.

    Contained absorbs Dense: a stratum contained in N(xi) is trivially dense in
    its intersection with N(xi).
    """
    if a == b or b == Status.UNKNOWN:
        return a
    if a == Status.UNKNOWN:
        return b
    if Status.EMPTY in (a, b):
        return None
    return a if _RANK[a] >= _RANK[b] else b


@dataclass(frozen=True, order=True)
class Firing:
    rule: str
    detail: str
    citation: str
    status: Status = field(compare=False)

    def as_dict(self) -> dict:
        return {"rule": self.rule, "status": self.status.value, "detail": self.detail, "citation": self.citation}

    def format(self) -> str:
        return f"{self.rule} [{self.status.value}] {self.detail} ({self.citation})"


@dataclass
class CellStatus:
    status: Status = Status.UNKNOWN
    provenance: set = field(default_factory=set)

    def firings(self) -> list[Firing]:
        return sorted(self.provenance, key=lambda f: (RULES.index(f.rule), f.detail))

    def explain(self) -> list[Firing]:
        """Firings that assert the final status."""
        st = self.status
        if st == Status.UNKNOWN:
            return []
        return [f for f in self.firings() if f.status == st]


# -- ledger ------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    g: int
    phi: ElementarySeq
    np: NewtonPolygon
    status: Status
    citation: str

    def __post_init__(self):
        if self.phi.g != self.g or self.np.dimension != self.g:
            raise MalformedInput(f"ledger entry {self.phi} / {self.np} does not live in dimension {self.g}")
        if not self.np.is_symmetric:
            raise MalformedInput(f"ledger polygon {self.np} is not symmetric")
        if p_rank(self.phi) != np_p_rank(self.np):
            raise MalformedInput(f"ledger entry {self.phi} / {self.np} mixes p-ranks")
        if self.status not in (Status.NONEMPTY, Status.EMPTY, Status.CONTAINED):
            raise MalformedInput(f"ledger status must be nonempty, empty or contained, got {self.status.value}")

    @classmethod
    def from_dict(cls, d: dict) -> "LedgerEntry":
        try:
            return cls(
                int(d["g"]),
                to_seq(str(d["phi"])),
                to_np(str(d["np"])),
                Status.parse(str(d["status"])),
                str(d.get("citation", "")),
            )
        except KeyError as exc:
            raise MalformedInput(f"ledger entry missing field {exc}") from None

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "phi": self.phi.format(),
            "np": self.np.format(),
            "status": self.status.value,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class FactsLedger:
    entries: tuple[LedgerEntry, ...] = ()

    @classmethod
    def from_json(cls, text: str) -> "FactsLedger":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"ledger is not valid JSON: {exc.msg}") from None
        if not isinstance(data, list):
            raise MalformedInput("ledger must be a JSON array")
        return cls(tuple(LedgerEntry.from_dict(d) for d in data))

    @classmethod
    def load(cls, path) -> "FactsLedger":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def for_g(self, g: int) -> tuple[LedgerEntry, ...]:
        return tuple(e for e in self.entries if e.g == g)

    def to_json(self) -> str:
        return json.dumps([e.as_dict() for e in self.entries], indent=2)


DEFAULT_LEDGER = FactsLedger(
    (
        LedgerEntry(
            5,
            ElementarySeq((0, 0, 1, 1, 2)),
            supersingular(5),
            Status.NONEMPTY,
            "closure relations among the p-rank 0 strata of A_5 (taken as an axiom, not re-derived)",
        ),
    )
)


# -- matrix ------------------------------------------------------------------


@dataclass
class ClassificationMatrix:
    g: int
    rows: tuple[ElementarySeq, ...]
    columns: tuple[NewtonPolygon, ...]
    cells: dict

    def cell(self, phi, xi) -> CellStatus:
        key = (to_seq(phi), to_np(xi))
        if key not in self.cells:
            raise CellNotFound(f"no cell ({key[0]}, {key[1]}) in dimension {self.g}")
        return self.cells[key]

    def status(self, phi, xi) -> Status:
        return self.cell(phi, xi).status

    def prank_rows(self, f: int) -> list[ElementarySeq]:
        return [r for r in self.rows if p_rank(r) == f]

    def prank_columns(self, f: int) -> list[NewtonPolygon]:
        return [c for c in self.columns if np_p_rank(c) == f]

    def block(self, f: int) -> dict:
        """{phi: {xi: status}} restricted to p-rank f."""
        return {r: {c: self.status(r, c) for c in self.prank_columns(f)} for r in self.prank_rows(f)}

    def with_status(self, status: Status, f: int | None = None) -> list[tuple[ElementarySeq, NewtonPolygon]]:
        out = []
        for r in self.rows:
            for c in self.columns:
                if f is not None and (p_rank(r) != f or np_p_rank(c) != f):
                    continue
                if self.cells[(r, c)].status == status:
                    out.append((r, c))
        return out

    def snapshot(self) -> dict:
        return {k: v.status for k, v in self.cells.items()}

    def to_dict(self, provenance: bool = True) -> dict:
        blocks = []
        for f in range(self.g + 1):
            cols = self.prank_columns(f)
            rows = self.prank_rows(f)
            out_rows = []
            for r in rows:
                cells = []
                for c in cols:
                    cs = self.cells[(r, c)]
                    entry = {"np": c.format(), "status": cs.status.value}
                    if provenance:
                        entry["provenance"] = [x.as_dict() for x in cs.firings()]
                    cells.append(entry)
                out_rows.append({"phi": r.format(), "cells": cells})
            blocks.append({"p_rank": f, "columns": [c.format() for c in cols], "rows": out_rows})
        return {"schema": "stratlab/1", "g": self.g, "blocks": blocks}

    def to_csv(self) -> str:
        """Status grid of the compatible cells, one line per (phi, xi)."""
        lines = ["g,p_rank,phi,np,status"]
        for f in range(self.g + 1):
            for r in self.prank_rows(f):
                for c in self.prank_columns(f):
                    lines.append(f'{self.g},{f},"{r.format()}","{c.format()}",{self.status(r, c).value}')
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        lines = [f"# Intersections in dimension {self.g}", ""]
        for f in range(self.g + 1):
            lines.append(f"## p-rank {f}")
            lines.append("")
            for c in self.prank_columns(f):
                lines.append(f"### N({c.format()})")
                lines.append("")
                groups = {s: [] for s in Status}
                for r in self.prank_rows(f):
                    groups[self.status(r, c)].append(r)
                labels = [
                    (Status.CONTAINED, "contains"),
                    (Status.DENSE, "meets densely"),
                    (Status.NONEMPTY, "meets"),
                    (Status.UNKNOWN, "undecided"),
                    (Status.EMPTY, "misses"),
                ]
                for st, label in labels:
                    if groups[st]:
                        union = " ∪ ".join(f"S_{r}" for r in groups[st])
                        lines.append(f"- {label}: {union}")
                lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"

    def to_table(self) -> str:
        lines = []
        for f in range(self.g + 1):
            cols = self.prank_columns(f)
            rows = self.prank_rows(f)
            lines.append(f"p-rank {f}")
            for i, c in enumerate(cols):
                lines.append(f"  N{i + 1} = {c.format()}")
            width = max(len(r.compact()) for r in rows)
            header = " " * (width + 2) + " ".join(f"{'N' + str(i + 1):>9}" for i in range(len(cols)))
            lines.append(header)
            for r in rows:
                cells = " ".join(f"{self.status(r, c).value:>9}" for c in cols)
                lines.append(f"  {r.compact():<{width}}{cells}")
            lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"


# -- engine ------------------------------------------------------------------


CITE = {
    "R1": "Chai-Oort: S_phi lies in the supersingular locus iff phi(floor((g+1)/2)) = 0",
    "R2": "minimal p-divisible groups: S_(phi_xi) lies in N(xi)",
    "R3": "a point has a single p-rank, read off from phi and from the zero slopes of xi",
    "R4": "first slope bound: every Newton slope on S_phi is at least lambda_phi",
    "R4b": "first slope bound is attained: S_phi meets some N(xi) with first slope lambda_phi",
    "R5": "a-number one strata are dense in each compatible Newton stratum",
    "R6": "direct sum of points: S_(phi+phi') meets N(xi+xi') when both factors are realised",
    "R8": "EO strata are non-empty and the Newton stratum of their p-rank is unique",
}


class _Engine:
    def __init__(self, g: int, ledger: FactsLedger, lower: dict):
        self.g = g
        self.ledger = ledger
        self.lower = lower  # dimension -> ClassificationMatrix
        self.rows = tuple(sorted(enumerate_elementary(g), key=lambda p: (p_rank(p), p.values)))
        self.columns = tuple(enumerate_symmetric_np(g))
        self.cells = {(r, c): CellStatus() for r in self.rows for c in self.columns}
        self.lam = {r: first_newton_slope(r) for r in self.rows}
        self.changed = False

    def assert_(self, phi, xi, status: Status, rule: str, detail: str, citation: str | None = None):
        cs = self.cells[(phi, xi)]
        firing = Firing(rule, detail, citation or CITE[rule], status)
        new = join(cs.status, status)
        if new is None:
            prior = [f.format() for f in cs.explain()]
            raise Contradiction(
                f"cell ({phi}, {xi.format()}): {firing.format()} conflicts with {cs.status.value} from {prior}"
            )
        if firing not in cs.provenance:
            cs.provenance.add(firing)
            self.changed = True
        if new != cs.status:
            cs.status = new
            self.changed = True

    def _exclude_row(self, phi, xi, rule: str, why: str):
        for other in self.columns:
            if other != xi:
                self.assert_(phi, other, Status.EMPTY, rule, f"{why}; S_{phi} lies in N({xi.format()})")

    # each rule is idempotent, so the fixed point does not depend on their order

    def r1(self):
        g = self.g
        sigma = supersingular(g)
        k = (g + 1) // 2
        for phi in self.rows:
            if phi(k) == 0:
                self.assert_(phi, sigma, Status.CONTAINED, "R1", f"phi({k}) = 0")
                self._exclude_row(phi, sigma, "R1", "R1-exclusion")

    def r2(self):
        for xi in self.columns:
            phi = minimal_sequence(xi)
            detail = "minimal sequence" + (" (degenerate)" if xi == supersingular(self.g) and phi(self.g) == 0 else "")
            self.assert_(phi, xi, Status.CONTAINED, "R2", detail)
            self._exclude_row(phi, xi, "R2", "R2-exclusion")

    def r3(self):
        for (phi, xi) in self.cells:
            f, h = p_rank(phi), np_p_rank(xi)
            if f != h:
                self.assert_(phi, xi, Status.EMPTY, "R3", f"p-rank {f} vs {h}")

    def r4(self):
        for (phi, xi) in self.cells:
            s, lam = np_first_slope(xi), self.lam[phi]
            if s < lam:
                self.assert_(phi, xi, Status.EMPTY, "R4", f"first slope {_frac(s)} < lambda {_frac(lam)}")

    def r4b(self):
        for phi in self.rows:
            lam = self.lam[phi]
            if lam == 0:
                continue
            hits = [xi for xi in self.columns if np_first_slope(xi) == lam]
            if len(hits) == 1:
                self.assert_(phi, hits[0], Status.NONEMPTY, "R4b", f"unique first slope {_frac(lam)}")

    def r5(self):
        for phi in self.rows:
            if a_number(phi) == 1:
                for xi in self.columns:
                    if np_p_rank(xi) == p_rank(phi):
                        self.assert_(phi, xi, Status.DENSE, "R5", "a-number 1")

    def r6(self):
        g = self.g
        for g1 in range(1, g // 2 + 1):
            m1, m2 = self.lower[g1], self.lower[g - g1]
            left = [(k, v.status) for k, v in m1.cells.items() if v.status.nonempty]
            right = [(k, v.status) for k, v in m2.cells.items() if v.status.nonempty]
            for (p1, x1), _ in left:
                for (p2, x2), _ in right:
                    phi = es_sum(p1, p2)
                    xi = np_sum(x1, x2)
                    self.assert_(
                        phi,
                        xi,
                        Status.NONEMPTY,
                        "R6",
                        f"{p1} ⊕ {p2} with N({x1.format()}) ⊕ N({x2.format()})",
                    )

    def r7(self):
        for e in self.ledger.for_g(self.g):
            self.assert_(e.phi, e.np, e.status, "R7", "ledger entry", e.citation)
            if e.status == Status.CONTAINED:
                self._exclude_row(e.phi, e.np, "R7", "R7-exclusion")

    def r8(self):
        for f in range(self.g + 1):
            cols = [xi for xi in self.columns if np_p_rank(xi) == f]
            if len(cols) == 1:
                for phi in self.rows:
                    if p_rank(phi) == f:
                        self.assert_(phi, cols[0], Status.NONEMPTY, "R8", f"only Newton polygon of p-rank {f}")

    def run(self, order) -> ClassificationMatrix:
        rules = {r: getattr(self, r.lower()) for r in RULES}
        rounds = 0
        while True:
            self.changed = False
            for r in order:
                rules[r]()
            rounds += 1
            if not self.changed:
                break
            assert rounds <= 20, "rule engine failed to reach a fixed point"
        m = ClassificationMatrix(self.g, self.rows, self.columns, self.cells)
        _check_rows(m)
        return m


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _check_rows(m: ClassificationMatrix) -> None:
    for phi in m.rows:
        f = p_rank(phi)
        if all(m.status(phi, xi) == Status.EMPTY for xi in m.prank_columns(f)):
            raise Contradiction(f"every Newton stratum of p-rank {f} was ruled out for S_{phi}")


@lru_cache(maxsize=None)
def _classify(g: int, ledger: FactsLedger, order: tuple[str, ...]) -> ClassificationMatrix:
    lower = {h: _classify(h, ledger, order) for h in range(1, g)}
    return _Engine(g, ledger, lower).run(order)


def classify(g: int, ledger: FactsLedger | None = DEFAULT_LEDGER, *, rule_order=None, seed: int | None = None) -> ClassificationMatrix:
    """Classify every (EO stratum, Newton stratum) pair of A_g.

    ``ledger=None`` runs without any ledger facts.  ``rule_order`` (or a
    ``seed`` that shuffles it) only changes the order rules are tried in; the
    result is the same fixed point.
    """
    if g < 1:
        raise MalformedInput("g must be positive")
    if g > MAX_CLASSIFY_G:
        raise LengthCap(f"g={g} exceeds the classifier cap {MAX_CLASSIFY_G}")
    if ledger is None:
        ledger = FactsLedger()
    order = tuple(rule_order) if rule_order is not None else RULES
    if seed is not None:
        order = list(order)
        random.Random(seed).shuffle(order)
        order = tuple(order)
    if sorted(order) != sorted(RULES):
        raise MalformedInput(f"rule order must be a permutation of {RULES}")
    return _classify(g, ledger, order)


def explain(matrix: ClassificationMatrix, phi, xi) -> list[Firing]:
    """The rule firings responsible for the final status of one cell."""
    return matrix.cell(phi, xi).explain()
