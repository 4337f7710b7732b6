"""Figures for verification reports (Agg backend, PNG files)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _coeffs(text_or_list):
    if isinstance(text_or_list, (list, tuple)):
        return list(text_or_list)
    from .series import parse_series
    return list(parse_series(text_or_list).coeffs)


def series_figure(report, path):
    """Bar chart of the computed family's Hilbert series against the expected
    series, with the oracle dimensions overlaid when present."""
    series = report.series
    keys = [k for k in ("expected", "computed", "oracle") if k in series]
    if not keys:
        return None
    data = {k: _coeffs(series[k]) for k in keys}
    top = max(len(v) for v in data.values())
    fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * top + 2), 3.2))
    width = 0.8 / len(keys)
    for i, k in enumerate(keys):
        vals = data[k] + [0] * (top - len(data[k]))
        xs = [d + (i - (len(keys) - 1) / 2) * width for d in range(top)]
        ax.bar(xs, vals, width=width, label=k)
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title(f"{report.case_label()}: {report.status}")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return Path(path)


def grid_figure(reports, path):
    """Pass/fail timing overview across a grid of reports."""
    reports = list(reports)
    if not reports:
        return None
    fig, ax = plt.subplots(figsize=(max(4.0, 0.4 * len(reports) + 2), 3.2))
    colors = ["tab:green" if r.passed else "tab:red" for r in reports]
    ax.bar(range(len(reports)), [r.timing for r in reports], color=colors)
    ax.set_xticks(range(len(reports)))
    ax.set_xticklabels([r.case_label() for r in reports], rotation=75, fontsize=6)
    ax.set_ylabel("seconds")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return Path(path)


def _slug(label: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in label).strip("_")


def write_figures(reports, figure_dir) -> list:
    """One series figure per report plus a grid overview; returns the paths."""
    out_dir = Path(figure_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for r in reports:
        p = series_figure(r, out_dir / f"{_slug(r.case_label())}.png")
        if p is not None:
            paths.append(p)
    if len(reports) > 1:
        paths.append(grid_figure(reports, out_dir / "grid.png"))
    return paths
