"""Hypothesis checks, the reduced (Morse) complex and its homology."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ExtensionNotMorse
from ..graph import Digraph, transitive_closure
from ..homology import BettiVector, betti_from_boundaries
from ..linalg import RationalMatrix, intersect_spans, sparse_solve
from ..paths import Chain, Path, boundary, default_max_dim, is_allowed, omega_basis
from .flow import DiscreteGradient, discrete_gradient
from .function import MorseFunction, Violation, require_morse, validate_morse


def _in_span(c: Chain, basis: list[Chain]) -> bool:
    if not c:
        return True
    return sparse_solve([b.terms for b in basis], c.terms) is not None


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the three preconditions of the reduced complex.

    ``v_counterexamples`` holds pairs ``(x, V x)`` with ``x`` in the invariant
    basis and ``V x`` outside the invariant space one dimension up;
    ``phi_counterexamples`` holds pairs ``(α, Φ α)`` with ``Φ α`` outside it.
    Both checks are ``None`` when the closure extension already failed.
    """

    verified_up_to: int
    extends_to_closure: bool
    extension_violations: tuple[Violation, ...]
    omega_v_invariant: bool | None
    v_counterexamples: tuple[tuple[Chain, Chain], ...]
    phi_crit_in_omega: bool | None
    phi_counterexamples: tuple[tuple[Path, Chain], ...]

    @property
    def holds(self) -> bool:
        return bool(self.extends_to_closure and self.omega_v_invariant and self.phi_crit_in_omega)


def check_hypotheses(g: Digraph, gbar: Digraph, f: MorseFunction, max_dim: int | None = None) -> HypothesisReport:
    bound = default_max_dim(g) if max_dim is None else max_dim
    ext = validate_morse(gbar, f, bound + 1)
    if not ext.is_morse:
        return HypothesisReport(bound, False, ext.violations, None, (), None, ())
    grad = discrete_gradient(gbar, f, bound + 1)
    omega = [omega_basis(g, n, max_dim=bound + 1) for n in range(bound + 2)]

    v_bad = []
    for n in range(bound + 1):
        for x in omega[n]:
            vx = grad.V(x)
            if not _in_span(vx, omega[n + 1]):
                v_bad.append((x, vx))

    phi_bad = []
    for n in range(bound + 1):
        for alpha in grad.critical(n):
            if not is_allowed(g, alpha):
                continue
            img = grad.flow(Chain.of(alpha))
            if not _in_span(img, omega[n]):
                phi_bad.append((alpha, img))
    return HypothesisReport(bound, True, (), not v_bad, tuple(v_bad), not phi_bad, tuple(phi_bad))


@dataclass(frozen=True)
class MorseComplexRep:
    """Reduced complex on ``Crit_n(closure) ∩ P_n(g)``.

    Like the path-homology complex it carries one extra layer at
    ``max_dim + 1`` so Betti numbers up to the bound are exact.
    ``boundaries[n]`` is the reduced boundary from layer ``n`` to ``n - 1``.
    """

    max_dim: int
    bases: tuple[tuple[Path, ...], ...]
    boundaries: tuple[RationalMatrix, ...]
    stabilized: dict[Path, Chain]
    hypotheses: HypothesisReport
    d_squared_zero: bool

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases[: self.max_dim + 1]]

    @property
    def above_bound(self) -> int:
        return len(self.bases[self.max_dim + 1])

    def reduced_boundary(self, alpha: Path) -> Chain:
        n = len(alpha) - 1
        if n == 0:
            return Chain.zero(0)
        j = self.bases[n].index(alpha)
        m = self.boundaries[n]
        return Chain(n - 1, {beta: m[i, j] for i, beta in enumerate(self.bases[n - 1])})


def _closure_and_gradient(g: Digraph, f: MorseFunction, bound: int) -> tuple[Digraph, DiscreteGradient]:
    require_morse(g, f, bound + 1)
    gbar = transitive_closure(g)
    require_morse(gbar, f, bound + 1, exc=ExtensionNotMorse)
    return gbar, discrete_gradient(gbar, f, bound + 1)


def morse_complex(g: Digraph, f: MorseFunction, max_dim: int | None = None) -> MorseComplexRep:
    bound = default_max_dim(g) if max_dim is None else max_dim
    gbar, grad = _closure_and_gradient(g, f, bound)
    bases = tuple(tuple(a for a in grad.critical(n) if is_allowed(g, a)) for n in range(bound + 2))
    stabilized = {a: grad.stabilize(Chain.of(a)) for layer in bases for a in layer}

    mats = [RationalMatrix.zeros(0, len(bases[0]))]
    for n in range(1, bound + 2):
        cols = []
        for a in bases[n]:
            d = boundary(stabilized[a])
            cols.append([d.coeff(b) for b in bases[n - 1]])
        mats.append(RationalMatrix.from_columns(cols, len(bases[n - 1])))

    square_zero = all((mats[n - 1] @ mats[n]).is_zero() for n in range(2, bound + 2))
    hyp = check_hypotheses(g, gbar, f, bound)
    return MorseComplexRep(bound, bases, tuple(mats), stabilized, hyp, square_zero)


def reduced_boundary_by_solve(rep: MorseComplexRep, alpha: Path) -> Chain | None:
    """Reduced boundary found by expressing ``∂Φ^∞α`` in the stabilized lower basis.

    Returns ``None`` when that chain is outside the span (possible only when
    the hypotheses fail).
    """
    n = len(alpha) - 1
    if n == 0:
        return Chain.zero(0)
    lower = rep.bases[n - 1]
    coeffs = sparse_solve([rep.stabilized[b].terms for b in lower], boundary(rep.stabilized[alpha]).terms)
    if coeffs is None:
        return None
    return Chain(n - 1, dict(zip(lower, coeffs)))


def morse_homology(rep: MorseComplexRep) -> BettiVector:
    dims = [len(b) for b in rep.bases]
    return betti_from_boundaries(rep.max_dim, dims, rep.boundaries, rep.above_bound)


def crit_cap_omega(g: Digraph, f: MorseFunction, n: int, max_dim: int | None = None) -> list[Path]:
    """Single critical paths of the closure that are themselves invariant chains of ``g``."""
    bound = max(n, default_max_dim(g) if max_dim is None else max_dim)
    _, grad = _closure_and_gradient(g, f, bound)
    omega = omega_basis(g, n, max_dim=bound + 1)
    return [a for a in grad.critical(n) if is_allowed(g, a) and _in_span(Chain.of(a), omega)]


def phi_fixed_cap_omega(g: Digraph, f: MorseFunction, n: int, max_dim: int | None = None) -> list[Chain]:
    """Basis of (flow-fixed chains of the closure) ∩ (invariant chains of ``g``), by direct solve."""
    bound = max(n, default_max_dim(g) if max_dim is None else max_dim)
    _, grad = _closure_and_gradient(g, f, bound)
    fixed = grad.fixed_space(n)
    omega = omega_basis(g, n, max_dim=bound + 1)
    return [Chain(n, v) for v in intersect_spans([c.terms for c in fixed], [c.terms for c in omega])]
