"""Witten-deformed boundary and Laplacian spectra on transitive digraphs."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotTransitive, ScaleOverflow
from .graph import Digraph, is_transitive
from .linalg import sym_eigen
from .morse.function import MorseFunction, critical_paths
from .paths import Path, allowed_paths, path_boundary

DEFAULT_T_GRID = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)
KERNEL_REL = 1e-9
LOW_REL = 1e-6
_EXP_LIMIT = 700.0


def _require_transitive(g: Digraph) -> None:
    if not is_transitive(g):
        raise NotTransitive(
            "the deformed boundary needs a transitive digraph: on other digraphs it does not "
            "preserve the invariant paths (a deformed boundary of an invariant 2-chain picks up "
            "a nonzero coefficient on a missing edge); run on the transitive closure instead")


def _basis(g: Digraph, n: int) -> list[Path]:
    if n < 0:
        return []
    return allowed_paths(g, n, max_dim=max(n, g.n_vertices))


def _weights(f: MorseFunction, paths: list[Path]) -> np.ndarray:
    return np.array([float(sum(f.values[v] for v in p)) for p in paths], dtype=float)


def witten_boundary(gbar: Digraph, f: MorseFunction, t: float, n: int) -> np.ndarray:
    """Matrix of the deformed boundary from ``n``-paths (columns) to ``(n-1)``-paths (rows)."""
    _require_transitive(gbar)
    cols = _basis(gbar, n)
    rows = _basis(gbar, n - 1)
    m = np.zeros((len(rows), len(cols)))
    if n == 0 or not cols:
        return m
    pos = {p: i for i, p in enumerate(rows)}
    wr = _weights(f, rows)
    wc = _weights(f, cols)
    for j, alpha in enumerate(cols):
        for beta, s in path_boundary(alpha).items():
            i = pos[beta]
            exponent = t * (wr[i] - wc[j])
            if exponent > _EXP_LIMIT:
                raise ScaleOverflow(f"e^{exponent:.1f} overflows double precision")
            m[i, j] = s * math.exp(exponent)
    return m


def witten_laplacian(gbar: Digraph, f: MorseFunction, t: float, n: int) -> np.ndarray:
    a = witten_boundary(gbar, f, t, n)
    b = witten_boundary(gbar, f, t, n + 1)
    lap = a.T @ a + b @ b.T
    return (lap + lap.T) / 2


def boundary_product_residual(gbar: Digraph, f: MorseFunction, t: float, n: int) -> tuple[float, float]:
    """``(‖∂_t(n) ∂_t(n+1)‖∞, scale)`` with scale ``max(1, ‖∂_t(n)‖∞ ‖∂_t(n+1)‖∞)``."""
    a = witten_boundary(gbar, f, t, n)
    b = witten_boundary(gbar, f, t, n + 1)
    if a.size == 0 or b.size == 0:
        return 0.0, 1.0
    scale = max(1.0, np.linalg.norm(a, np.inf) * np.linalg.norm(b, np.inf))
    return float(np.linalg.norm(a @ b, np.inf)), float(scale)


@dataclass(frozen=True)
class SpectrumRow:
    t: float
    n: int
    eigenvalues: tuple[float, ...]
    kernel_dim: int
    low_dim: int
    basis_size: int


def _inf_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, np.inf)) if m.size else 0.0


def witten_spectrum(gbar: Digraph, f: MorseFunction, t: float, n: int,
                    eps_low: float | None = None) -> SpectrumRow:
    lap = witten_laplacian(gbar, f, t, n)
    scale = max(1.0, _inf_norm(lap))
    eps_ker = KERNEL_REL * scale
    eps_low = LOW_REL * scale if eps_low is None else eps_low
    if lap.size:
        w, _ = sym_eigen(lap)
    else:
        w = np.zeros(0)
    return SpectrumRow(
        t=float(t), n=n, eigenvalues=tuple(float(x) for x in w),
        kernel_dim=int(np.sum(w <= eps_ker)), low_dim=int(np.sum(w <= max(eps_low, eps_ker))),
        basis_size=lap.shape[0])


def diagonal_estimate(gbar: Digraph, f: MorseFunction, t: float, n: int) -> dict[Path, float]:
    """``⟨Δ_n(t) α, α⟩`` for each allowed ``n``-path; it decays in ``t`` only for critical ``α``."""
    lap = witten_laplacian(gbar, f, t, n)
    return {p: float(lap[i, i]) for i, p in enumerate(_basis(gbar, n))}


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[SpectrumRow, ...]
    t_grid: tuple[float, ...]
    crit_counts: tuple[int, ...]
    agreement: tuple[int | None, ...]  # first grid index from which low_dim == crit_n holds to the end

    def rows_for(self, n: int) -> list[SpectrumRow]:
        return [r for r in self.rows if r.n == n]

    def reached(self, n: int) -> bool:
        return self.agreement[n] is not None

    def kernel_constant(self, n: int) -> bool:
        return len({r.kernel_dim for r in self.rows_for(n)}) <= 1


def witten_convergence_scan(gbar: Digraph, f: MorseFunction, t_grid=DEFAULT_T_GRID, max_dim: int | None = None,
                            eps_low: float | None = None) -> ScanResult:
    _require_transitive(gbar)
    grid = tuple(float(t) for t in t_grid)
    if not grid:
        raise ValueError("empty t grid")
    if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] <= 0:
        raise ValueError("t grid must be positive and strictly ascending")
    bound = gbar.n_vertices if max_dim is None else max_dim
    crit = critical_paths(gbar, f, bound)
    rows = [witten_spectrum(gbar, f, t, n, eps_low) for t in grid for n in range(bound + 1)]
    agreement = []
    for n in range(bound + 1):
        lows = [r.low_dim for r in rows if r.n == n]
        first = None
        for i in range(len(lows) - 1, -1, -1):
            if lows[i] != len(crit[n]):
                break
            first = i
        agreement.append(first)
    return ScanResult(tuple(rows), grid, tuple(crit.counts()), tuple(agreement))


def format_float(x: float) -> str:
    return f"{x:.12g}"


def scan_csv(scan: ScanResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "n", "basis_size", "kernel_dim", "low_dim", "crit_n", "eigenvalues"])
    for r in scan.rows:
        w.writerow([format_float(r.t), r.n, r.basis_size, r.kernel_dim, r.low_dim, scan.crit_counts[r.n],
                    ";".join(format_float(x) for x in r.eigenvalues)])
    return buf.getvalue()
