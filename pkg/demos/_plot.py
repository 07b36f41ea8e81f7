"""Optional plotting: figures are saved only when matplotlib is importable."""

from pathlib import Path

OUT = Path(__file__).parent / "output"


def figure():
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return None
    return plt


def save(plt, fig, name):
    OUT.mkdir(exist_ok=True)
    fig.savefig(OUT / name, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print(f"saved {OUT / name}")
