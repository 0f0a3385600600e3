"""Elementary paths, rational chains, the boundary operator and ∂-invariant paths.

A path is a tuple of vertex indices.  Sequences with two equal consecutive
vertices are degenerate: they are never allowed on a digraph, and the
boundary operator drops them (the standard regular convention under which
the ∂-invariant space of a transitive digraph is all of its allowed paths).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import DimensionBoundExceeded, DimensionMismatch, IndexOutOfRange
from .graph import Digraph
from .linalg import sparse_kernel

Path = tuple[int, ...]


def dim(p: Path) -> int:
    return len(p) - 1


def is_regular(p: Path) -> bool:
    return all(a != b for a, b in zip(p, p[1:]))


def is_allowed(g: Digraph, p: Path) -> bool:
    return bool(p) and all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


class Chain:
    """Finite rational combination of paths of one dimension.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[Path, Fraction] | None = None):
        self.dimension = dimension
        clean: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            if len(p) != dimension + 1:
                raise DimensionMismatch(f"path {p} in a {dimension}-chain")
            c = Fraction(c)
            if c:
                clean[p] = c
        self.terms = clean

    @classmethod
    def of(cls, p: Path, coeff=1) -> Chain:
        return cls(len(p) - 1, {p: coeff})

    @classmethod
    def zero(cls, dimension: int) -> Chain:
        return cls(dimension)

    @classmethod
    def _raw(cls, dimension: int, terms: dict[Path, Fraction]) -> Chain:
        ch = cls.__new__(cls)
        ch.dimension = dimension
        ch.terms = terms
        return ch

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[Path]:
        return iter(sorted(self.terms))

    def items(self) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items())

    def coeff(self, p: Path) -> Fraction:
        return self.terms.get(p, Fraction(0))

    def support(self) -> list[Path]:
        return sorted(self.terms)

    def _check(self, other: Chain):
        if other.dimension != self.dimension:
            raise DimensionMismatch(f"{self.dimension}-chain vs {other.dimension}-chain")

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p, 0) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return Chain._raw(self.dimension, out)

    def __neg__(self) -> Chain:
        return Chain._raw(self.dimension, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __mul__(self, k) -> Chain:
        k = Fraction(k)
        if not k:
            return Chain.zero(self.dimension)
        return Chain._raw(self.dimension, {p: c * k for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __repr__(self):
        inner = " + ".join(f"{c}*{'-'.join(map(str, p))}" for p, c in self.items()) or "0"
        return f"Chain[{self.dimension}]({inner})"


def linear_sum(dimension: int, pieces: Iterable[tuple[Fraction, Chain]]) -> Chain:
    out: dict[Path, Fraction] = {}
    for k, ch in pieces:
        if not k:
            continue
        for p, c in ch.terms.items():
            s = out.get(p, 0) + k * c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
    return Chain._raw(dimension, out)


# -- enumeration ------------------------------------------------------------

def default_max_dim(g: Digraph) -> int:
    return g.n_vertices


def allowed_paths(g: Digraph, n: int, *, max_dim: int | None = None) -> list[Path]:
    """All allowed elementary ``n``-paths of ``g`` in lexicographic order."""
    bound = default_max_dim(g) if max_dim is None else max_dim
    if n < 0:
        raise IndexOutOfRange(f"negative dimension {n}")
    if n > bound:
        raise DimensionBoundExceeded(n, bound)
    return list(_allowed_paths(g, n))


@lru_cache(maxsize=256)
def _allowed_paths(g: Digraph, n: int) -> tuple[Path, ...]:
    if n == 0:
        return tuple((v,) for v in g.vertices)
    out = []
    for p in _allowed_paths(g, n - 1):
        for w in sorted(g.successors(p[-1])):
            out.append(p + (w,))
    return tuple(out)


def face(p: Path, i: int) -> Path:
    """Drop the vertex at position ``i``; the result need not be allowed."""
    if len(p) < 2:
        raise IndexOutOfRange("face of a 0-path")
    if not 0 <= i < len(p):
        raise IndexOutOfRange(f"face index {i} outside 0..{len(p) - 1}")
    return p[:i] + p[i + 1:]


def path_boundary(p: Path) -> dict[Path, int]:
    """Alternating face sum of one path, degenerate faces dropped."""
    out: dict[Path, int] = {}
    if len(p) < 2:
        return out
    for i in range(len(p)):
        q = p[:i] + p[i + 1:]
        if not is_regular(q):
            continue
        s = out.get(q, 0) + (-1 if i % 2 else 1)
        if s:
            out[q] = s
        else:
            del out[q]
    return out


def boundary(c: Chain) -> Chain:
    """Linear extension of ``∂ = Σ (-1)^i d_i``; a 0-chain maps to zero."""
    if c.dimension == 0:
        return Chain.zero(0)
    out: dict[Path, Fraction] = {}
    for p, k in c.terms.items():
        for q, s in path_boundary(p).items():
            v = out.get(q, 0) + k * s
            if v:
                out[q] = v
            else:
                out.pop(q, None)
    return Chain._raw(c.dimension - 1, out)


def boundary_squared_is_zero(c: Chain) -> bool:
    if c.dimension < 2:
        return True
    return not boundary(boundary(c))


def inner_product(a: Chain, b: Chain) -> Fraction:
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"{a.dimension}-chain vs {b.dimension}-chain")
    small, large = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    return sum((c * large.terms[p] for p, c in small.terms.items() if p in large.terms), Fraction(0))


def omega_basis(g: Digraph, n: int, *, max_dim: int | None = None) -> list[Chain]:
    """Basis of the ∂-invariant ``n``-paths, in reduced echelon form.

    Kernel of ``P_n -> Λ_{n-1} / P_{n-1}``: only the coordinates of boundary
    terms that are *not* allowed paths constrain the combination.
    """
    paths = allowed_paths(g, n, max_dim=max_dim)
    if n == 0:
        return [Chain.of(p) for p in paths]
    bad_rows: dict[Path, dict[int, Fraction]] = {}
    for j, p in enumerate(paths):
        for q, s in path_boundary(p).items():
            if not is_allowed(g, q):
                bad_rows.setdefault(q, {})[j] = Fraction(s)
    if not bad_rows:
        return [Chain.of(p) for p in paths]
    kernel = sparse_kernel([bad_rows[q] for q in sorted(bad_rows)], len(paths))
    return [Chain._raw(n, {paths[j]: x for j, x in v.items()}) for v in kernel]


def satisfies_interpolation(g: Digraph, max_dim: int) -> bool:
    """Path-level transitivity test.

    True iff for every allowed ``γ > α > β`` (one vertex removed at each
    step, ``dim γ <= max_dim``) there is another allowed ``α' ≠ α`` with
    ``γ > α' > β``.
    """
    for n in range(2, max_dim + 1):
        for gamma in _allowed_paths(g, n):
            middles = {face(gamma, i) for i in range(len(gamma))}
            middles = [a for a in middles if is_allowed(g, a)]
            for alpha in middles:
                for beta in {face(alpha, i) for i in range(len(alpha))}:
                    if not is_allowed(g, beta):
                        continue
                    if not any(a != alpha and beta in {face(a, i) for i in range(len(a))}
                               for a in middles):
                        return False
    return True
