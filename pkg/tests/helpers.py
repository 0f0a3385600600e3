"""Shared test helpers: path notation and hypothesis strategies."""
from __future__ import annotations

import re
from fractions import Fraction

from hypothesis import strategies as st

from pathmorse.graph import Digraph, transitive_closure
from pathmorse.morse import MorseFunction, validate_morse
from pathmorse.paths import Chain

_TOKEN = re.compile(r"v\d+")


def P(g: Digraph, text: str) -> tuple[int, ...]:
    """``"v0v2v3"`` -> vertex-index tuple."""
    return tuple(g.index(t) for t in _TOKEN.findall(text))


def C(g: Digraph, *terms) -> Chain:
    """Chain from ``(coeff, "v0v1")`` pairs or bare path strings (coefficient 1)."""
    out = None
    for t in terms:
        k, s = (1, t) if isinstance(t, str) else t
        c = Chain.of(P(g, s), k)
        out = c if out is None else out + c
    return out


def morse(g: Digraph, values) -> MorseFunction:
    return MorseFunction(tuple(Fraction(v) for v in values))


@st.composite
def digraphs(draw, max_vertices=6, cyclic_max_vertices=4, cyclic=None):
    """Mostly acyclic digraphs (random topological order); small ones may have cycles.

    ``cyclic=True`` always draws from all ordered pairs.
    """
    n = draw(st.integers(2 if cyclic else 1, max_vertices))
    labels = tuple(f"v{i}" for i in range(n))
    if cyclic is None:
        cyclic = n <= cyclic_max_vertices and draw(st.integers(0, 3)) == 0
    if cyclic:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        order = draw(st.permutations(range(n)))
        pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Digraph(labels, frozenset(edges))


def dim_bound(g: Digraph) -> int:
    """Bound used by property tests: ≤ 4, and 3 on digraphs with cycles."""
    if not _acyclic(g):
        return 3
    return min(4, max(g.n_vertices - 1, 1))


def _acyclic(g: Digraph) -> bool:
    gbar = transitive_closure(g)
    return all(not gbar.has_edge(v, u) for u, v in gbar.edges)


@st.composite
def morse_instances(draw, max_vertices=6, cyclic=None):
    """``(g, f, bound)`` with ``f`` Morse on the closure of ``g`` (hence on ``g``).

    Zeros are drawn first and dropped one at a time until the closure check passes.
    """
    g = draw(digraphs(max_vertices, cyclic=cyclic))
    n = g.n_vertices
    bound = dim_bound(g)
    weights = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    zeros = sorted(draw(st.sets(st.integers(0, n - 1), max_size=2)))
    gbar = transitive_closure(g)
    while True:
        f = morse(g, [0 if v in zeros else w for v, w in enumerate(weights)])
        if validate_morse(gbar, f, bound + 1).is_morse:
            return g, f, bound
        zeros.pop()


def positive_twin(draw, f: MorseFunction) -> MorseFunction:
    """Another function with the same zero set and fresh positive values."""
    vals = [Fraction(0) if x == 0 else Fraction(draw(st.integers(1, 9)), draw(st.integers(1, 4)))
            for x in f.values]
    return MorseFunction(tuple(vals))
