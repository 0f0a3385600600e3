"""Rendering of analysis results as JSON-ready dicts and human-readable text."""
from __future__ import annotations

from fractions import Fraction

from .graph import Digraph
from .paths import Chain, Path

MINUS = "−"


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def path_label(g: Digraph, p: Path) -> str:
    """Compact display form, e.g. ``v0v2v3``."""
    return "".join(g.labels[v] for v in p)


def path_key(g: Digraph, p: Path) -> str:
    """Unambiguous serialized form, e.g. ``v0-v2-v3``."""
    return "-".join(g.labels[v] for v in p)


def chain_key(g: Digraph, c: Chain) -> str:
    """``<coeff>*<path>`` terms joined by `` + ``; ``0`` for the zero chain."""
    return " + ".join(f"{fmt_rational(k)}*{path_key(g, p)}" for p, k in c.items()) or "0"


def chain_text(g: Digraph, c: Chain) -> str:
    """Display form such as ``v0v2+v2v3`` or ``v2−v1``; positive terms come first."""
    out = []
    terms = [t for t in c.items() if t[1] > 0] + [t for t in c.items() if t[1] < 0]
    for i, (p, k) in enumerate(terms):
        sign = MINUS if k < 0 else ("+" if i else "")
        mag = abs(k)
        coef = "" if mag == 1 else (f"{mag}" if mag.denominator == 1 else f"({fmt_rational(mag)})")
        out.append(f"{sign}{coef}{path_label(g, p)}")
    return "".join(out) or "0"


def vector_text(xs, min_len: int = 2) -> str:
    """``(1,0)`` style tuple, trimmed after the last nonzero entry."""
    xs = list(xs)
    last = max((i for i, x in enumerate(xs) if x), default=-1)
    keep = xs[: max(last + 1, min(min_len, len(xs)))]
    return "(" + ",".join(str(x) for x in keep) + ")"


def warning(code: str, message: str) -> dict:
    return {"code": code, "message": message}


def digraph_summary(g: Digraph, transitive: bool) -> dict:
    return {"vertices": g.n_vertices, "edges": len(g.edges), "transitive": transitive,
            "labels": list(g.labels)}


def layers_text(g: Digraph, layers) -> str:
    """Per-dimension path lists joined by `` | ``, trailing empty layers dropped."""
    layers = [list(layer) for layer in layers]
    while len(layers) > 1 and not layers[-1]:
        layers.pop()
    return " | ".join(" ".join(path_label(g, p) for p in layer) or "-" for layer in layers)


def top_nonzero(dims) -> int:
    return max((i for i, d in enumerate(dims) if d), default=0)
