"""Finite digraphs without self-loops: parsing, serialization, transitive closure."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BadToken, EmptyGraph, SelfLoop, UnknownVertex

_LABEL = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph over vertices ``0..n-1``.

    ``labels[i]`` is the external name of vertex ``i``; indices follow the
    first-appearance order of the source text and are the canonical basis
    order everywhere downstream.
    """

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    _succ: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise BadToken("duplicate vertex labels")
        for u, v in self.edges:
            if u == v:
                raise SelfLoop(f"self-loop at {self.labels[u]}")
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertex(f"edge ({u}, {v}) references a missing vertex")
        succ = [set() for _ in range(n)]
        for u, v in self.edges:
            succ[u].add(v)
        object.__setattr__(self, "_succ", tuple(frozenset(s) for s in succ))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> Digraph:
        """Build from labelled edges; ``vertices`` are declared first, in order."""
        order: dict[str, int] = {}
        for v in vertices:
            order.setdefault(v, len(order))
        idx_edges = set()
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            iu = order.setdefault(u, len(order))
            iv = order.setdefault(v, len(order))
            idx_edges.add((iu, iv))
        return cls(tuple(order), frozenset(idx_edges))

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._succ[u]

    def successors(self, u: int) -> frozenset[int]:
        return self._succ[u]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertex(label) from None

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def undirected_components(self) -> int:
        parent = list(self.vertices)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in self.vertices})


def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format.

    One ``src dst`` pair per line, ``vertex <label>`` declares a vertex,
    ``#`` starts a comment line, blank lines are skipped.
    """
    declared: list[str] = []
    edges: list[tuple[str, str]] = []
    order: dict[str, None] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise BadToken(f"line {lineno}: expected two tokens, got {len(tokens)}")
        a, b = tokens
        if a == "vertex":
            _check_label(b, lineno)
            order.setdefault(b, None)
            declared.append(b)
            continue
        _check_label(a, lineno)
        _check_label(b, lineno)
        if a == b:
            raise SelfLoop(f"line {lineno}: self-loop {a} -> {a}")
        order.setdefault(a, None)
        order.setdefault(b, None)
        edges.append((a, b))
    if not order:
        raise EmptyGraph("no vertices or edges declared")
    return Digraph.from_edges(edges, vertices=order)


def _check_label(token: str, lineno: int) -> None:
    if not _LABEL.match(token):
        raise BadToken(f"line {lineno}: malformed label {token!r}")


def serialize_digraph(g: Digraph) -> str:
    """Render in the edge-list format; ``parse_digraph`` inverts it exactly.

    ``vertex`` lines are emitted only when the sorted edge list would not
    reproduce the vertex order on its own.
    """
    edge_lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.sorted_edges()]
    seen: dict[int, None] = {}
    for u, v in g.sorted_edges():
        seen.setdefault(u, None)
        seen.setdefault(v, None)
    lines = []
    if list(seen) != list(g.vertices):
        lines = [f"vertex {lab}" for lab in g.labels]
    return "\n".join(lines + edge_lines) + "\n"


def transitive_closure(g: Digraph) -> Digraph:
    """Smallest transitive digraph containing ``g``; ``(u, u)`` pairs are dropped."""
    n = g.n_vertices
    reach = [[g.has_edge(u, v) for v in range(n)] for u in range(n)]
    for k in range(n):
        row_k = reach[k]
        for i in range(n):
            if reach[i][k]:
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    edges = frozenset((u, v) for u in range(n) for v in range(n) if u != v and reach[u][v])
    return Digraph(g.labels, edges)


def is_transitive(g: Digraph) -> bool:
    for u, v in g.edges:
        for w in g.successors(v):
            if w != u and not g.has_edge(u, w):
                return False
    return True
