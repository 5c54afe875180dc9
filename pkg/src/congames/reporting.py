"""Report files: delimited check summaries plus rendered figures.

Used by the CLI's report paths (``verify-paper --out``, ``analyze --out``)
to leave a machine-readable CSV next to a couple of matplotlib renderings.
Figures use float approximations of the exact values; they are for eyes,
not proofs.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import certificates, instances
from .game import social_cost
from .verify import CheckResult

plt.rcParams.update({
    "figure.figsize": (7.0, 4.5),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
})


def write_check_csv(path: Path, results: Sequence[CheckResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["section", "status", "detail"])
        for r in results:
            writer.writerow([r.name, "PASS" if r.passed else "FAIL", r.detail])


def write_analysis_csv(path: Path, rows: Sequence[dict]) -> None:
    if not rows:
        return
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def _as_float(x) -> float:
    if isinstance(x, Fraction):
        return float(x)
    return float(x.a) + float(x.b) * x.d ** 0.5


def render_certificate_bounds(path: Path, samples: int = 64) -> None:
    """Bound curves against the uniform altruism level.

    Stability bound from the two certificate branches; anarchy bound with
    both level extremes equal.  The vertical asymptote at level one is cut
    off at the last sample.
    """
    levels = [Fraction(i, samples) for i in range(0, samples)]  # stop short of 1
    pos_vals = [_as_float(certificates.pos_certificate(v).theta) for v in levels]
    poa_vals = [_as_float(certificates.poa_certificate(v, v).theta) for v in levels]
    xs = [float(v) for v in levels]
    fig, ax = plt.subplots()
    ax.plot(xs, pos_vals, label="stability bound")
    ax.plot(xs, poa_vals, label="anarchy bound")
    ax.axhline(1.0, color="gray", lw=0.8)
    ax.set_xlabel("uniform altruism level v")
    ax.set_ylabel("certified bound")
    ax.set_ylim(0, 12)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_tree_ratio(path: Path, hs: Sequence[int] = (1, 2, 3, 4, 5)) -> None:
    """Equilibrium/optimum cost ratio of the tree family, versus its 17/3 limit."""
    ratios = [
        float(instances.tree_eq_closed_form(h) / instances.tree_opt_closed_form(h))
        for h in hs
    ]
    fig, ax = plt.subplots()
    ax.plot(list(hs), ratios, marker="o", label="tree family ratio")
    ax.axhline(17 / 3, color="crimson", ls="--", label="17/3")
    ax.set_xlabel("height parameter h")
    ax.set_ylabel("cost ratio")
    ax.set_xticks(list(hs))
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_profile_costs(path: Path, game, report) -> None:
    """Bar chart of social cost per profile with equilibria highlighted."""
    profiles = list(game.profiles())
    values = [float(social_cost(game, p)) for p in profiles]
    ne_set = set(report.ne_list)
    colors = ["crimson" if p in ne_set else "steelblue" for p in profiles]
    fig, ax = plt.subplots()
    ax.bar(range(len(profiles)), values, color=colors)
    ax.axhline(float(report.opt_value), color="gray", ls="--", lw=0.8, label="optimum")
    ax.set_xlabel("profile (enumeration order)")
    ax.set_ylabel("social cost")
    ax.set_title("red bars are equilibria" if ne_set else "no equilibria")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
