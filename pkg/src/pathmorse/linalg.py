"""Exact rational elimination and a small dense symmetric eigensolver.

Rational routines run Gauss-Jordan elimination over sparse row dicts so the
mostly-empty boundary and flow matrices stay cheap; the public surface is a
plain dense :class:`RationalMatrix`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch

Vector = list  # list[Fraction]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RationalMatrix:
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.entries]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                              tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for r in self.entries:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in other_cols))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return [sum((a * b for a, b in zip(r, x) if a and b), Fraction(0)) for r in self.entries]

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.entries]


class _Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space."""

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = dict(row)
        for col in [c for c in row if c in self.pivots]:
            coef = row.get(col)
            if not coef:
                continue
            for c, x in self.pivots[col].items():
                y = row.get(c, 0) - coef * x
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: x * inv for c, x in row.items()}
        for prow in self.pivots.values():
            coef = prow.get(lead)
            if coef:
                for c, x in row.items():
                    y = prow.get(c, 0) - coef * x
                    if y:
                        prow[c] = y
                    else:
                        prow.pop(c, None)
        self.pivots[lead] = row
        return True

    def rows(self) -> list[dict[int, Fraction]]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def rref_rows(rows: Sequence[dict[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Reduced row-echelon form of sparse rows; zero rows are dropped."""
    ech = _Echelon()
    for r in rows:
        ech.add(r)
    return ech.rows()


def rank(m: RationalMatrix) -> int:
    return len(rref_rows(m.sparse_rows()))


def sparse_kernel(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Right null space of sparse rows, returned in reduced echelon form."""
    reduced = rref_rows(rows)
    pivot_cols = {min(r): r for r in reduced}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = {free: Fraction(1)}
        for pc, r in pivot_cols.items():
            x = r.get(free)
            if x:
                vec[pc] = -x
        basis.append(vec)
    return rref_rows(basis)


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``, normalized to reduced echelon form."""
    return [_densify(v, m.cols) for v in sparse_kernel(m.sparse_rows(), m.cols)]


def solve(m: RationalMatrix, b: Sequence) -> list[Fraction] | None:
    """Some ``x`` with ``m x = b`` (free variables set to zero), or ``None``."""
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length does not match row count")
    aug = []
    for r, bi in zip(m.sparse_rows(), b):
        r = dict(r)
        if bi:
            r[m.cols] = Fraction(bi)
        aug.append(r)
    x = [Fraction(0)] * m.cols
    for r in rref_rows(aug):
        lead = min(r)
        if lead == m.cols:
            return None
        x[lead] = r.get(m.cols, Fraction(0))
    return x


def sparse_solve(columns: Sequence[dict], target: dict) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_j columns[j] == target`` over arbitrary keys, or ``None``."""
    keys = sorted({k for col in columns for k in col} | set(target))
    pos = {k: i for i, k in enumerate(keys)}
    rows: list[dict[int, Fraction]] = [dict() for _ in keys]
    for j, col in enumerate(columns):
        for k, x in col.items():
            if x:
                rows[pos[k]][j] = Fraction(x)
    ncols = len(columns)
    for k, x in target.items():
        if x:
            rows[pos[k]][ncols] = Fraction(x)
    coeffs = [Fraction(0)] * ncols
    for r in rref_rows(rows):
        lead = min(r)
        if lead == ncols:
            return None
        coeffs[lead] = r.get(ncols, Fraction(0))
    return coeffs


def span_rank(vectors: Sequence[dict]) -> int:
    """Dimension of the span of sparse vectors keyed by arbitrary sortable keys."""
    keys = sorted({k for v in vectors for k in v})
    pos = {k: i for i, k in enumerate(keys)}
    return len(rref_rows([{pos[k]: Fraction(x) for k, x in v.items() if x} for v in vectors]))


def intersect_spans(a: Sequence[dict], b: Sequence[dict]) -> list[dict]:
    """Basis of ``span(a) ∩ span(b)`` for sparse vectors over a common key set."""
    keys = sorted({k for v in list(a) + list(b) for k in v})
    pos = {k: i for i, k in enumerate(keys)}
    na = len(a)
    rows: list[dict[int, Fraction]] = [dict() for _ in keys]
    for j, v in enumerate(a):
        for k, x in v.items():
            if x:
                rows[pos[k]][j] = Fraction(x)
    for j, v in enumerate(b):
        for k, x in v.items():
            if x:
                rows[pos[k]][na + j] = -Fraction(x)
    out = []
    for sol in sparse_kernel(rows, na + len(b)):
        vec: dict = {}
        for j, c in sol.items():
            if j < na:
                for k, x in a[j].items():
                    vec[k] = vec.get(k, 0) + c * x
        vec = {k: x for k, x in vec.items() if x}
        if vec:
            out.append(vec)
    reduced = rref_rows([{pos[k]: x for k, x in v.items()} for v in out])
    return [{keys[i]: x for i, x in r.items()} for r in reduced]


def _densify(v: dict[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return out


# -- floating point ---------------------------------------------------------

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def sym_eigen(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and the
    matching orthonormal eigenvectors as columns.  Iterates until the
    off-diagonal Frobenius norm drops below ``tol`` times the matrix norm.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("sym_eigen needs a square matrix")
    if not np.array_equal(a, a.T):
        raise DimensionMismatch("sym_eigen needs a symmetric matrix")
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    target = tol * scale

    def off_norm():
        off = a - np.diag(np.diag(a))
        return float(np.sqrt(np.sum(off * off)))

    sweeps = 0
    while off_norm() > target:
        if sweeps == max_sweeps:
            raise ConvergenceFailure(max_sweeps, off_norm())
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                g = 100.0 * abs(apq)
                if sweeps > 4 and abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
