"""Figure rendering for the growth statistics."""

from __future__ import annotations

from pathlib import Path


def render_growth_figure(
    stats: list[tuple[int, int, float, float | None]], path: Path
) -> None:
    """Plot the two normalized growth series and save to ``path``.

    ``stats`` rows are ``(n, card, log_card/n, log_card*log(n)/n)``; the
    fourth column may be None where the denominator is undefined.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [row[0] for row in stats]
    per_n = [row[2] for row in stats]
    scaled = [(row[0], row[3]) for row in stats if row[3] is not None]

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(ns, per_n, marker="o", markersize=3, label="log(card) / n")
    if scaled:
        ax.plot(
            [n for n, _ in scaled],
            [v for _, v in scaled],
            marker="s",
            markersize=3,
            label="log(card) / (n / log n)",
        )
    ax.set_xlabel("n")
    ax.set_ylabel("normalized growth")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
