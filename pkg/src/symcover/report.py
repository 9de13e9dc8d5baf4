"""File reports: delimited tables plus rendered figures.

The lattice and classification reports can be written to a directory as
tab-separated tables with a matplotlib figure alongside: a Hasse diagram
for the submodule lattice, and a verdict table for the classification.
"""

from __future__ import annotations

from pathlib import Path

from symcover.classify import ClassifyReport
from symcover.specht import LatticeReport

__all__ = [
    "write_classify_outputs",
    "write_lattice_outputs",
]


def _fmt_j(J) -> str:
    return "{" + ",".join(map(str, J)) + "}"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_lattice_outputs(report: LatticeReport, outdir: str | Path) -> dict[str, Path]:
    """Write nodes.tsv, hasse.tsv and a Hasse-diagram PNG; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = f"lattice_k{report.k}_n{report.n}"

    nodes_path = outdir / f"{stem}_nodes.tsv"
    with nodes_path.open("w") as fh:
        fh.write("index\tJ\tdim\ts2Factor\n")
        for i, nd in enumerate(report.nodes):
            fh.write(f"{i}\t{_fmt_j(nd.J)}\t{nd.dim}\t{int(nd.s2_factor)}\n")
    edges_path = outdir / f"{stem}_hasse.tsv"
    with edges_path.open("w") as fh:
        fh.write("lower\tupper\n")
        for i, j in report.hasse:
            fh.write(f"{i}\t{j}\n")

    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 5))
    dims = sorted({nd.dim for nd in report.nodes})
    ypos = {d: i for i, d in enumerate(dims)}
    by_dim: dict[int, list[int]] = {}
    for i, nd in enumerate(report.nodes):
        by_dim.setdefault(nd.dim, []).append(i)
    coords = {}
    for d, idxs in by_dim.items():
        for slot, i in enumerate(idxs):
            coords[i] = (slot - (len(idxs) - 1) / 2.0, ypos[d])
    for i, j in report.hasse:
        (x0, y0), (x1, y1) = coords[i], coords[j]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    for i, nd in enumerate(report.nodes):
        x, y = coords[i]
        ax.scatter([x], [y], s=320, color="#4c72b0" if nd.s2_factor else "#dd8452", zorder=2)
        ax.annotate(
            f"{_fmt_j(nd.J)}\ndim {nd.dim}",
            (x, y),
            textcoords="offset points",
            xytext=(0, 14),
            ha="center",
            fontsize=8,
        )
    ax.set_yticks(list(ypos.values()), [str(d) for d in dims])
    ax.set_ylabel("dimension")
    ax.set_xticks([])
    ax.set_title(f"standard submodule lattice, k={report.k}, n={report.n}")
    ax.margins(0.2)
    fig_path = outdir / f"{stem}.png"
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return {"nodes": nodes_path, "hasse": edges_path, "figure": fig_path}


def write_classify_outputs(report: ClassifyReport, outdir: str | Path) -> dict[str, Path]:
    """Write the kernel table as TSV and a coloured verdict figure."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = f"classify_k{report.k}_n{report.n}"

    tsv_path = outdir / f"{stem}.tsv"
    with tsv_path.open("w") as fh:
        for v in report.verdicts:
            fh.write(f"# verdict {v.name}: {'PASS' if v.passed else 'FAIL'}\n")
        if report.regime_warning:
            fh.write(f"# warning: {report.regime_warning}\n")
        fh.write("J\tdim\ts2Factor\texists\trankGap\n")
        for row in report.rows:
            gap = "" if row.rank_gap is None else str(row.rank_gap)
            fh.write(
                f"{_fmt_j(row.J)}\t{row.dim}\t{int(row.s2_factor)}\t{int(row.exists)}\t{gap}\n"
            )

    plt = _pyplot()
    nrows = len(report.rows)
    fig, ax = plt.subplots(figsize=(6.5, 1.2 + 0.45 * nrows))
    ax.axis("off")
    cell_text = [
        [
            _fmt_j(row.J),
            str(row.dim),
            "yes" if row.s2_factor else "no",
            "SAT" if row.exists else "UNSAT",
        ]
        for row in report.rows
    ]
    colors = [
        ["white", "white", "white", "#c3e6c3" if row.exists else "#f2c1c1"]
        for row in report.rows
    ]
    table = ax.table(
        cellText=cell_text,
        cellColours=colors,
        colLabels=["kernel J", "dim", "level-2 factor", "full subgroup"],
        loc="center",
    )
    table.scale(1, 1.4)
    status = "all PASS" if report.all_pass else "FAIL"
    title = f"full-subgroup kernels, k={report.k}, n={report.n} ({status})"
    if report.regime_warning:
        title += "\n" + report.regime_warning
    ax.set_title(title, fontsize=10)
    fig_path = outdir / f"{stem}.png"
    fig.savefig(fig_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return {"table": tsv_path, "figure": fig_path}
