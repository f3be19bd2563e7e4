"""Optional matplotlib output shared by the demos."""
import os


def get_pyplot():
    try:
        import matplotlib
    except ImportError:
        return None
    if not os.environ.get("DISPLAY"):
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save(fig, name):
    out = os.path.join(os.path.dirname(__file__), "output")
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    print(f"wrote {path}")
