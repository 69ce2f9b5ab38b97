"""Markdown / JSON / DOT emitters for the reference tables and matrices.

Everything here is a pure function of the library results, so re-running an
emitter gives byte-identical text.
"""
from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path

from .classifier import ClassificationMatrix, DEFAULT_LEDGER, FactsLedger, Status, classify
from .eo_seq import enumerate_elementary, p_rank
from .final_type import es_decompose, minimal_sequence
from .newton import enumerate_symmetric_np, np_p_rank, supersingular
from .slope import first_newton_slope
from .weyl import closure_poset, poset_to_dot

GOLDEN_FILES = (
    "table1.md",
    "table2.md",
    "table3.md",
    "table4.md",
    "figure1.dot",
    "thm1.json",
    "thm2.json",
    "thm3.json",
    "thm4.json",
)

__all__ = [
    "GOLDEN_FILES",
    "dump_json",
    "slope_table",
    "decomposition_table",
    "minimal_table",
    "unique_np_table",
    "matrix_columns",
    "emit_goldens",
]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def slope_table(g: int = 5, prank: int = 0) -> str:
    """First slopes of all strata of one p-rank, grouped by value."""
    groups = defaultdict(list)
    for phi in enumerate_elementary(g, prank):
        groups[first_newton_slope(phi)].append(phi)
    lines = ["| φ | λ_φ |", "|---|---|"]
    for lam in sorted(groups):
        seqs = ", ".join(str(p) for p in sorted(groups[lam], reverse=True))
        lines.append(f"| {seqs} | {_frac(lam)} |")
    return "\n".join(lines) + "\n"


def decomposition_table(max_g: int = 4) -> str:
    lines = ["| Dimension | Decomposable | Indecomposable | p-rank |", "|---|---|---|---|"]
    for g in range(1, max_g + 1):
        for f in range(g + 1):
            dec, ind = [], []
            for phi in enumerate_elementary(g, f):
                d = es_decompose(phi)
                if d.indecomposable:
                    ind.append(str(phi))
                else:
                    dec.append(d.format())
            lines.append(f"| {g} | {', '.join(dec)} | {', '.join(ind)} | {f} |")
    return "\n".join(lines) + "\n"


def minimal_table(g: int = 5) -> str:
    lines = ["| ξ → φ_ξ | p-rank |", "|---|---|"]
    for xi in enumerate_symmetric_np(g):
        lines.append(f"| {xi.format()} → {minimal_sequence(xi)} | {np_p_rank(xi)} |")
    return "\n".join(lines) + "\n"


def unique_np_table(max_g: int = 3, ledger: FactsLedger | None = DEFAULT_LEDGER) -> str:
    """Positive p-rank Newton strata that are a union of EO strata (single polygon of that p-rank)."""
    lines = ["| Dimension | Decomposition | p-rank |", "|---|---|---|"]
    for g in range(1, max_g + 1):
        m = classify(g, ledger)
        for f in range(1, g + 1):
            cols = m.prank_columns(f)
            if len(cols) != 1:
                continue
            xi = cols[0]
            strata = [r for r in m.prank_rows(f) if m.status(r, xi).nonempty]
            union = " ∪ ".join(f"S_{r}" for r in strata)
            lines.append(f"| {g} | N({xi.format()}) = {union} | {f} |")
    return "\n".join(lines) + "\n"


def matrix_columns(m: ClassificationMatrix, columns) -> dict:
    """Compact {np: {phi: status}} view of selected columns (rows of matching p-rank)."""
    out = {}
    for xi in columns:
        f = np_p_rank(xi)
        out[xi.format()] = {r.format(): m.status(r, xi).value for r in m.prank_rows(f)}
    return {"schema": "stratlab/1", "g": m.g, "columns": out}


def emit_goldens(outdir, ledger: FactsLedger | None = DEFAULT_LEDGER) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    m4, m5 = classify(4, ledger), classify(5, ledger)
    sigma5 = supersingular(5)
    texts = {
        "table1.md": slope_table(5, 0),
        "table2.md": decomposition_table(4),
        "table3.md": minimal_table(5),
        "table4.md": unique_np_table(3, ledger),
        "figure1.dot": poset_to_dot(closure_poset(5, 0)),
        "thm1.json": dump_json(matrix_columns(m5, [sigma5])),
        "thm2.json": dump_json(matrix_columns(m5, [x for x in m5.prank_columns(0) if x != sigma5])),
        "thm3.json": dump_json(matrix_columns(m4, m4.columns)),
        "thm4.json": dump_json(matrix_columns(m5, [x for x in m5.columns if 1 <= np_p_rank(x) <= 2])),
    }
    written = []
    for name in GOLDEN_FILES:
        path = outdir / name
        path.write_text(texts[name], encoding="utf-8")
        written.append(path)
    return written
