"""Gradient vector field, gradient flow and its stabilization on a transitive digraph."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import DimensionBoundExceeded, NonUniqueTarget, NotTransitive, StabilizationDiverged
from ..graph import Digraph, is_transitive
from ..linalg import sparse_kernel
from ..paths import Chain, Path, allowed_paths, boundary, default_max_dim, path_boundary
from .function import MorseFunction, equal_weight_cofaces, is_critical


@dataclass(frozen=True)
class VectorField:
    """``V(α) = sign * γ`` for the paired paths; every other path maps to zero."""

    pairs: dict[Path, tuple[Path, int]]
    max_dim: int

    def __call__(self, p: Path) -> tuple[Path, int] | None:
        return self.pairs.get(p)

    def apply(self, c: Chain) -> Chain:
        if c.dimension > self.max_dim:
            raise DimensionBoundExceeded(c.dimension, self.max_dim)
        out: dict[Path, Fraction] = {}
        for p, k in c.terms.items():
            hit = self.pairs.get(p)
            if hit is not None:
                gamma, sign = hit
                v = out.get(gamma, 0) + sign * k
                if v:
                    out[gamma] = v
                else:
                    out.pop(gamma, None)
        return Chain._raw(c.dimension + 1, out)

    def sources(self, n: int) -> list[Path]:
        return sorted(p for p in self.pairs if len(p) == n + 1)


def _require_transitive(g: Digraph) -> None:
    if not is_transitive(g):
        raise NotTransitive("the gradient flow is defined on a transitive digraph; take the closure first")


def gradient_field(gbar: Digraph, fbar: MorseFunction, max_dim: int | None = None) -> VectorField:
    _require_transitive(gbar)
    bound = default_max_dim(gbar) if max_dim is None else max_dim
    pairs: dict[Path, tuple[Path, int]] = {}
    targets: set[Path] = set()
    for n in range(bound + 1):
        for alpha in allowed_paths(gbar, n, max_dim=bound + 1):
            ups = equal_weight_cofaces(gbar, fbar, alpha)
            if not ups:
                continue
            if len(ups) > 1:
                raise NonUniqueTarget(f"{alpha} has {len(ups)} equal-weight cofaces")
            gamma = ups[0]
            if gamma in targets:
                raise NonUniqueTarget(f"{gamma} is the equal-weight coface of two paths")
            targets.add(gamma)
            pairs[alpha] = (gamma, -path_boundary(gamma)[alpha])
    return VectorField(pairs, bound)


class DiscreteGradient:
    """Bundles the closure, the function and its vector field for repeated flow evaluation."""

    def __init__(self, gbar: Digraph, fbar: MorseFunction, max_dim: int | None = None):
        self.g = gbar
        self.f = fbar
        self.max_dim = default_max_dim(gbar) if max_dim is None else max_dim
        self.field = gradient_field(gbar, fbar, self.max_dim)

    def V(self, c: Chain) -> Chain:
        return self.field.apply(c)

    def flow(self, c: Chain) -> Chain:
        """``Φ(c) = c + ∂V(c) + V(∂c)``."""
        out = c + boundary(self.V(c))
        if c.dimension > 0:
            out = out + self.V(boundary(c))
        return out

    def stabilize(self, c: Chain) -> Chain:
        cap = len(allowed_paths(self.g, c.dimension, max_dim=self.max_dim + 1)) + 1
        cur = c
        for _ in range(cap):
            nxt = self.flow(cur)
            if nxt == cur:
                return cur
            cur = nxt
        raise StabilizationDiverged(f"flow did not reach a fixpoint within {cap} iterations")

    def critical(self, n: int) -> list[Path]:
        return [p for p in allowed_paths(self.g, n, max_dim=self.max_dim + 1)
                if is_critical(self.g, self.f, p)]

    def invariant_basis(self, n: int) -> list[Chain]:
        """``α + V∂α`` for each critical ``n``-path ``α``."""
        out = []
        for alpha in self.critical(n):
            a = Chain.of(alpha)
            if n > 0:
                a = a + self.V(boundary(a))
            out.append(a)
        return out

    def fixed_space(self, n: int) -> list[Chain]:
        """Basis of ``{c : Φ(c) = c}`` found directly as the kernel of ``Φ - Id`` on ``P_n``."""
        paths = allowed_paths(self.g, n, max_dim=self.max_dim + 1)
        pos = {p: i for i, p in enumerate(paths)}
        rows: dict[int, dict[int, Fraction]] = {}
        for j, p in enumerate(paths):
            diff = self.flow(Chain.of(p)) - Chain.of(p)
            for q, x in diff.terms.items():
                rows.setdefault(pos[q], {})[j] = x
        kernel = sparse_kernel(list(rows.values()), len(paths))
        return [Chain._raw(n, {paths[j]: x for j, x in v.items()}) for v in kernel]


@lru_cache(maxsize=64)
def discrete_gradient(gbar: Digraph, fbar: MorseFunction, max_dim: int | None = None) -> DiscreteGradient:
    return DiscreteGradient(gbar, fbar, max_dim)


def _for_chain(gbar, fbar, c: Chain, max_dim) -> DiscreteGradient:
    bound = default_max_dim(gbar) if max_dim is None else max_dim
    if c.dimension > bound:
        raise DimensionBoundExceeded(c.dimension, bound)
    return discrete_gradient(gbar, fbar, bound)


def gradient_flow(gbar: Digraph, fbar: MorseFunction, c: Chain, max_dim: int | None = None) -> Chain:
    return _for_chain(gbar, fbar, c, max_dim).flow(c)


def flow_stabilize(gbar: Digraph, fbar: MorseFunction, c: Chain, max_dim: int | None = None) -> Chain:
    return _for_chain(gbar, fbar, c, max_dim).stabilize(c)


def phi_invariant_basis(gbar: Digraph, fbar: MorseFunction, n: int, max_dim: int | None = None) -> list[Chain]:
    bound = max(n, default_max_dim(gbar) if max_dim is None else max_dim)
    return discrete_gradient(gbar, fbar, bound).invariant_basis(n)


def phi_fixed_space(gbar: Digraph, fbar: MorseFunction, n: int, max_dim: int | None = None) -> list[Chain]:
    bound = max(n, default_max_dim(gbar) if max_dim is None else max_dim)
    return discrete_gradient(gbar, fbar, bound).fixed_space(n)
