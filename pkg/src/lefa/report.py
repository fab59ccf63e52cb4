"""Figure rendering for the reporting paths of the CLI.

All figures are written as PNG files next to the delimited output; nothing
is displayed interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .aligner import AlignedCorpus
from .corpus import CorpusStats
from .evaluator import ComplianceDelta


def render_stats_figures(
    stats: CorpusStats, outdir, corpus: AlignedCorpus | None = None
) -> list[Path]:
    """Theme distribution, word-count means and (optionally) a score histogram."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if stats.per_theme:
        themes = sorted(stats.per_theme, key=lambda t: t.value)
        counts = [stats.per_theme[t][1] for t in themes]
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.bar([t.value for t in themes], counts, color="#4878a8")
        ax.set_ylabel("sentences")
        ax.set_title("Sentence distribution by theme")
        ax.tick_params(axis="x", rotation=20)
        fig.tight_layout()
        path = outdir / "theme_distribution.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(
        ["original", "adapted"],
        [stats.mean_original_words_per_sentence, stats.mean_adapted_words_per_sentence],
        color=["#a85048", "#48a878"],
    )
    ax.set_ylabel("mean words per sentence")
    ax.set_title("Sentence length before vs after adaptation")
    fig.tight_layout()
    path = outdir / "mean_sentence_length.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    if corpus is not None and corpus.pairs:
        scores = [p.similarity for p in corpus.pairs]
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.hist(scores, bins=20, range=(-1.0, 1.0), color="#4878a8", edgecolor="white")
        ax.set_xlabel("cosine similarity")
        ax.set_ylabel("pairs")
        ax.set_title("Alignment score distribution")
        fig.tight_layout()
        path = outdir / "similarity_histogram.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    return written


def render_compliance_figure(delta: ComplianceDelta, outdir) -> Path:
    """Grouped per-guideline bar chart of gold vs candidate finding counts."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    gids = sorted(delta.per_guideline, key=lambda g: int(g[1:]))
    gold = [
        delta.per_guideline[g].gold_violations + delta.per_guideline[g].gold_advisories
        for g in gids
    ]
    cand = [
        delta.per_guideline[g].candidate_violations + delta.per_guideline[g].candidate_advisories
        for g in gids
    ]
    x = range(len(gids))
    width = 0.4
    fig, ax = plt.subplots(figsize=(11, 4))
    ax.bar([i - width / 2 for i in x], gold, width, label="gold", color="#48a878")
    ax.bar([i + width / 2 for i in x], cand, width, label="candidate", color="#a85048")
    ax.set_xticks(list(x))
    ax.set_xticklabels(gids, rotation=45)
    ax.set_ylabel("findings")
    ax.set_title("Guideline findings: gold vs candidate")
    ax.legend()
    fig.tight_layout()
    path = outdir / "compliance_delta.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
