"""Morse inequalities comparing critical counts with Betti numbers."""
from __future__ import annotations

from dataclasses import dataclass

from ..graph import Digraph
from ..homology import build_complex, betti
from ..paths import default_max_dim
from .complex import HypothesisReport, morse_complex
from .function import MorseFunction, critical_paths


def alternating_partial_sums(xs) -> list[int]:
    """``s_m = x_m - x_{m-1} + ... ± x_0`` for each ``m``."""
    out, s = [], 0
    for x in xs:
        s = x - s
        out.append(s)
    return out


def euler_sum(xs) -> int:
    return sum((-1) ** m * x for m, x in enumerate(xs))


@dataclass(frozen=True)
class InequalityReport:
    l: tuple[int, ...]
    L: tuple[int, ...]
    b: tuple[int, ...]
    bound: int
    truncated: bool
    hypotheses: HypothesisReport

    @property
    def crit_bound(self) -> bool:
        return all(big >= small for big, small in zip(self.L, self.l))

    @property
    def weak_inequalities(self) -> bool:
        return all(x >= y for x, y in zip(self.l, self.b))

    @property
    def strong_inequalities(self) -> list[bool]:
        return [x >= y for x, y in zip(alternating_partial_sums(self.l), alternating_partial_sums(self.b))]

    @property
    def euler_l(self) -> int:
        return euler_sum(self.l)

    @property
    def euler_b(self) -> int:
        return euler_sum(self.b)

    @property
    def euler_equality(self) -> bool:
        return self.euler_l == self.euler_b

    @property
    def all_hold(self) -> bool:
        return self.crit_bound and self.weak_inequalities and all(self.strong_inequalities) and self.euler_equality


def morse_inequalities(g: Digraph, f: MorseFunction, max_dim: int | None = None) -> InequalityReport:
    """Collect ``l``, ``L`` and ``b`` up to the bound.

    A nonzero layer just above the bound is reported through ``truncated``
    rather than raised, since the partial sums are still informative.
    """
    bound = default_max_dim(g) if max_dim is None else max_dim
    rep = morse_complex(g, f, bound)
    cx = build_complex(g, bound)
    crit_g = critical_paths(g, f, bound + 1, check=False)
    truncated = bool(rep.above_bound or cx.above_bound or crit_g[bound + 1])
    return InequalityReport(
        l=tuple(rep.dims()),
        L=tuple(crit_g.counts()[: bound + 1]),
        b=betti(cx).values,
        bound=bound,
        truncated=truncated,
        hypotheses=rep.hypotheses,
    )
