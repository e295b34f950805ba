"""Report rendering: JSON documents, delimited tables, matplotlib figures.

The CLI's report path writes, next to the machine-readable JSON verdicts,
CSV tables of the degreewise data and PNG figures rendered with the Agg
backend.  Reports contain no timestamps or environment data, so identical
inputs and seeds produce byte-identical output.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

REPORT_SCHEMA = "torushom-report/1"


def jsonable(x):
    if isinstance(x, float):
        if x == float("inf"):
            return "infinity"
        if x == float("-inf"):
            return "-infinity"
    return x


def dump_report(doc: dict, path: Optional[str]):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def fig_hilbert_function(dims: Dict[int, int], path: str, title: str):
    """Bar chart of degreewise dimensions over the window."""
    plt = _plt()
    degrees = sorted(dims)
    values = [dims[d] for d in degrees]
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.bar(degrees, values, width=1.6, color="#3a6ea5")
    ax.set_xlabel("internal degree")
    ax.set_ylabel("dim over Q")
    ax.set_title(title)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def fig_betti(betti_degrees: Sequence[Sequence[int]], path: str, title: str):
    """Betti table: homological step vs generator degrees, counts annotated."""
    plt = _plt()
    steps = range(len(betti_degrees))
    all_degrees = sorted({d for degs in betti_degrees for d in degs})
    fig, ax = plt.subplots(figsize=(1.2 + 1.1 * len(betti_degrees),
                                    1.0 + 0.45 * max(len(all_degrees), 2)))
    for k, degs in enumerate(betti_degrees):
        counts: Dict[int, int] = {}
        for d in degs:
            counts[d] = counts.get(d, 0) + 1
        for d, c in counts.items():
            ax.text(k, d, str(c), ha="center", va="center", fontsize=11)
    ax.set_xticks(list(steps))
    ax.set_xlabel("homological degree")
    ax.set_ylabel("generator degree")
    if all_degrees:
        ax.set_yticks(all_degrees)
        ax.set_ylim(min(all_degrees) - 1, max(all_degrees) + 1)
    ax.set_xlim(-0.5, len(betti_degrees) - 0.5)
    ax.invert_yaxis()
    ax.set_title(title)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def fig_dims_heatmap(table: Dict[int, Dict[int, int]], path: str, title: str,
                     row_label: str, lo: int, hi: int):
    """Heatmap of a (row index) x (degree) dimension table."""
    plt = _plt()
    rows = sorted(table)
    degrees = list(range(lo, hi + 1))
    data = [[table[r].get(d, 0) for d in degrees] for r in rows]
    fig, ax = plt.subplots(figsize=(8, 1.2 + 0.5 * max(len(rows), 1)))
    im = ax.imshow(data, aspect="auto", cmap="Blues",
                   extent=(lo - 0.5, hi + 0.5, len(rows) - 0.5, -0.5))
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([str(r) for r in rows])
    ax.set_xlabel("internal degree")
    ax.set_ylabel(row_label)
    ax.set_title(title)
    fig.colorbar(im, ax=ax, label="dim")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def fig_verdict_matrix(rows: List[Tuple[str, str, bool]], path: str, title: str):
    """Fixture x check grid, green pass / red fail / grey skipped."""
    plt = _plt()
    fixtures = sorted({r[0] for r in rows})
    checks = sorted({r[1] for r in rows})
    lookup = {(f, c): v for f, c, v in rows}
    fig, ax = plt.subplots(figsize=(1.5 + 0.9 * len(checks),
                                    1.0 + 0.5 * len(fixtures)))
    for i, f in enumerate(fixtures):
        for j, c in enumerate(checks):
            v = lookup.get((f, c))
            if v is None:
                color = "#cccccc"
            else:
                color = "#2e7d32" if v else "#c62828"
            ax.add_patch(plt.Rectangle((j - 0.45, i - 0.45), 0.9, 0.9,
                                       color=color))
    ax.set_xlim(-0.5, len(checks) - 0.5)
    ax.set_ylim(len(fixtures) - 0.5, -0.5)
    ax.set_xticks(range(len(checks)))
    ax.set_xticklabels(checks, rotation=30, ha="right", fontsize=8)
    ax.set_yticks(range(len(fixtures)))
    ax.set_yticklabels(fixtures, fontsize=9)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


class OutputDir:
    """Collects the report, CSV tables and figures of one CLI run."""

    def __init__(self, directory: Optional[str]):
        self.directory = directory
        if directory:
            os.makedirs(directory, exist_ok=True)

    def path(self, name: str) -> Optional[str]:
        if not self.directory:
            return None
        return os.path.join(self.directory, name)

    def csv(self, name: str, header, rows):
        p = self.path(name)
        if p:
            write_csv(p, header, rows)

    def figure(self, render, name: str, *args, **kwargs):
        p = self.path(name)
        if p:
            render(*args, path=p, **kwargs)

    def report(self, doc: dict):
        p = self.path("report.json")
        if p:
            dump_report(doc, p)
