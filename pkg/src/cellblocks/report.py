"""Report rendering: JSON documents, CSV summaries and matplotlib figures.

write_report persists a VerificationReport as a directory containing
report.json, report.csv, a per-scenario decomposition CSV, a heatmap PNG
for every decomposition matrix and a Hasse-diagram PNG per Weyl type.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import kl  # noqa: E402
from .coxeter import CoxeterSystem  # noqa: E402
from .verify import VerificationReport  # noqa: E402


def hasse_figure(label: str, path: str) -> str:
    """Render the two-sided cell poset of a Weyl type as a layered diagram,
    one layer per a-value (larger a-values drawn lower)."""
    part = kl.two_sided_cells(CoxeterSystem(label))
    a_vals = part.a_values
    levels = sorted(set(a_vals), reverse=True)
    ypos = {a: i for i, a in enumerate(levels)}
    coords = {}
    per_level: Dict[int, int] = {}
    for i, a in enumerate(a_vals):
        k = per_level.get(a, 0)
        per_level[a] = k + 1
        coords[i] = (k, ypos[a])
    fig, ax = plt.subplots(figsize=(4, 3))
    for i, j in part.hasse_edges():
        (x0, y0), (x1, y1) = coords[i], coords[j]
        ax.plot([x0, x1], [y0, y1], color="gray", zorder=1)
    for i, (x, y) in coords.items():
        ax.scatter([x], [y], s=600, color="steelblue", zorder=2)
        ax.annotate(f"a={a_vals[i]}\n|{len(part.blocks[i])}|", (x, y),
                    ha="center", va="center", fontsize=7, color="white")
    ax.set_title(f"two-sided cells of {label}")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def heatmap_figure(matrix: dict, path: str) -> str:
    """Render a decomposition matrix (as produced by as_dict) as a heatmap."""
    entries = matrix["entries"]
    row_labels = [f'{r["label"]} (a={r["a_value"]})' for r in matrix["rows"]]
    col_labels = [c["label"] for c in matrix["cols"]]
    fig, ax = plt.subplots(figsize=(1.2 + 0.6 * len(col_labels),
                                    1.0 + 0.4 * len(row_labels)))
    im = ax.imshow(entries, cmap="Blues", vmin=0)
    for i, row in enumerate(entries):
        for j, v in enumerate(row):
            ax.text(j, i, str(v), ha="center", va="center", fontsize=8,
                    color="black" if v <= max(max(r) for r in entries) / 2
                    else "white")
    ax.set_xticks(range(len(col_labels)), col_labels, fontsize=7)
    ax.set_yticks(range(len(row_labels)), row_labels, fontsize=7)
    ax.set_title(f'{matrix["type"]}: q={matrix["q"]}, ell={matrix["ell"]}',
                 fontsize=9)
    fig.colorbar(im, shrink=0.7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _summary_rows(report: VerificationReport) -> List[List]:
    rows = [["key", "check", "ok", "control", "violations"]]
    for key, frag in report.fragments.items():
        rows.append([key, frag.get("check", ""), int(frag["ok"]),
                     int(frag.get("control", False)),
                     len(frag.get("violations", []))])
    return rows


def _decomp_rows(report: VerificationReport) -> List[List]:
    rows = [["key", "type", "q", "ell", "ordinary", "a_value",
             "modular", "multiplicity"]]
    for key, frag in report.fragments.items():
        matrix = frag.get("matrix")
        if not matrix:
            continue
        for i, r in enumerate(matrix["rows"]):
            for j, c in enumerate(matrix["cols"]):
                rows.append([key, matrix["type"], matrix["q"], matrix["ell"],
                             r["label"], r["a_value"], c["label"],
                             matrix["entries"][i][j]])
    return rows


def write_report(report: VerificationReport, out_dir: str,
                 figures: bool = True) -> dict:
    """Persist a report; returns a manifest of everything written."""
    os.makedirs(out_dir, exist_ok=True)
    fig_dir = os.path.join(out_dir, "figures")
    manifest = {"json": os.path.join(out_dir, "report.json"),
                "summary_csv": os.path.join(out_dir, "report.csv"),
                "decomp_csv": os.path.join(out_dir, "decompositions.csv"),
                "figures": []}
    with open(manifest["json"], "w") as fh:
        json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
    for name, rows in (("summary_csv", _summary_rows(report)),
                       ("decomp_csv", _decomp_rows(report))):
        with open(manifest[name], "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    if figures:
        os.makedirs(fig_dir, exist_ok=True)
        types = sorted({frag["matrix"]["type"]
                        for frag in report.fragments.values()
                        if frag.get("matrix")})
        for label in types:
            path = os.path.join(fig_dir, f"cells-{label}.png")
            manifest["figures"].append(hasse_figure(label, path))
        for key, frag in report.fragments.items():
            matrix = frag.get("matrix")
            if not matrix:
                continue
            slug = key.replace("/", "_").replace(",", "_").replace("(", "") \
                      .replace(")", "")
            path = os.path.join(fig_dir, f"decomp-{slug}.png")
            manifest["figures"].append(heatmap_figure(matrix, path))
    return manifest
