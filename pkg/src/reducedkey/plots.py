"""Figure rendering for simulation and timing reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "reducedkey"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .klm import KlmParams, t_ipreti, t_stem
from .simulate import SimulationResult


def save_simulation_figure(result: SimulationResult, path: str | Path) -> None:
    """Per-phrase keystroke bars for both methods, plus the improvement line."""
    assert result.aggregate is not None
    labels = [str(i) for i in range(1, len(result.phrases) + 1)]
    ipreti = [p.ipreti_keystrokes for p in result.phrases]
    stem = [p.stem_keystrokes for p in result.phrases]
    improvement = [p.improvement_pct for p in result.phrases]

    fig, ax = plt.subplots(figsize=(8, 4.5))
    xs = range(len(labels))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], ipreti, width, label="iPRETI", color="#2b6cb0")
    ax.bar([x + width / 2 for x in xs], stem, width, label="STEM", color="#b03a2b")
    ax.set_xticks(list(xs), labels)
    ax.set_xlabel("phrase")
    ax.set_ylabel("keystrokes")
    ax.legend(loc="upper left")

    twin = ax.twinx()
    twin.plot(list(xs), improvement, "k.--", label="% improvement")
    twin.set_ylabel("% improvement")
    twin.set_ylim(0, 100)

    total = result.aggregate.total
    ax.set_title(
        f"{total.ipreti_keystrokes} vs {total.stem_keystrokes} keystrokes "
        f"({total.improvement_pct:.1f}% saved)"
    )
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_klm_figure(params: KlmParams, path: str | Path, x_max: int = 12) -> None:
    """Entry time versus word length for both methods."""
    xs = list(range(1, x_max + 1))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, [t_stem(params, x) for x in xs], "o-", label="STEM", color="#b03a2b")
    ax.plot(xs, [t_ipreti(params, x) for x in xs], "s-", label="iPRETI", color="#2b6cb0")
    ax.set_xlabel("word length (letters)")
    ax.set_ylabel("entry time (ms)")
    ax.set_title("Predicted word entry time")
    ax.legend(loc="upper left")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
