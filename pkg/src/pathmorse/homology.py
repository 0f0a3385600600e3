"""Path homology: the complex (Ω_n, ∂_n), Betti numbers, Euler characteristic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BasisExpressionFailure, TruncationUnsound
from .graph import Digraph
from .linalg import RationalMatrix, rank, sparse_solve
from .paths import Chain, boundary, omega_basis


@dataclass(frozen=True)
class ChainComplexRep:
    """A finite chain complex truncated at ``max_dim``.

    ``bases`` and ``boundaries`` cover dimensions ``0..max_dim + 1``; the
    extra top layer only feeds the rank of ``∂_{max_dim+1}`` so that every
    reported Betti number is exact.  ``boundaries[n]`` maps dimension ``n``
    to ``n - 1`` (``boundaries[0]`` is the empty ``0 x dim_0`` matrix).
    """

    max_dim: int
    bases: tuple[tuple[Chain, ...], ...]
    boundaries: tuple[RationalMatrix, ...]

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases[: self.max_dim + 1]]

    @property
    def above_bound(self) -> int:
        """Dimension of the chain space at ``max_dim + 1``."""
        return len(self.bases[self.max_dim + 1])


@dataclass(frozen=True)
class BettiVector:
    values: tuple[int, ...]
    bound: int
    truncated: bool

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def express_in_basis(target: Chain, basis: list[Chain] | tuple[Chain, ...]) -> list[Fraction]:
    coeffs = sparse_solve([b.terms for b in basis], target.terms)
    if coeffs is None:
        raise BasisExpressionFailure(f"{target!r} is not in the span of the given basis")
    return coeffs


def boundary_matrix(basis_n, basis_lower) -> RationalMatrix:
    """Matrix of ∂ from ``basis_n`` into ``basis_lower`` coordinates."""
    cols = [express_in_basis(boundary(x), basis_lower) for x in basis_n]
    return RationalMatrix.from_columns(cols, len(basis_lower))


def build_complex(g: Digraph, max_dim: int) -> ChainComplexRep:
    bases = [tuple(omega_basis(g, n, max_dim=max_dim + 1)) for n in range(max_dim + 2)]
    mats = [RationalMatrix.zeros(0, len(bases[0]))]
    for n in range(1, max_dim + 2):
        mats.append(boundary_matrix(bases[n], bases[n - 1]))
    return ChainComplexRep(max_dim, tuple(bases), tuple(mats))


def betti_from_boundaries(max_dim: int, dims: list[int], boundaries, above: int) -> BettiVector:
    ranks = [rank(m) for m in boundaries]
    values = tuple(dims[n] - ranks[n] - ranks[n + 1] for n in range(max_dim + 1))
    return BettiVector(values, max_dim, above > 0)


def betti(cx: ChainComplexRep) -> BettiVector:
    dims = [len(b) for b in cx.bases]
    return betti_from_boundaries(cx.max_dim, dims, cx.boundaries, cx.above_bound)


def euler_characteristic(cx: ChainComplexRep) -> int:
    """``Σ (-1)^p dim Ω_p``, checked against ``Σ (-1)^p b_p`` up to the bound."""
    chain_sum = sum((-1) ** p * d for p, d in enumerate(cx.dims()))
    betti_sum = sum((-1) ** p * b for p, b in enumerate(betti(cx).values))
    if chain_sum != betti_sum:
        if cx.above_bound:
            raise TruncationUnsound(
                f"alternating sums disagree ({chain_sum} vs {betti_sum}) because "
                f"dimension {cx.max_dim + 1} is nonzero; raise the dimension bound")
        raise AssertionError("Euler characteristic mismatch on an untruncated complex")
    return chain_sum


def path_homology(g: Digraph, max_dim: int) -> BettiVector:
    return betti(build_complex(g, max_dim))
