from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C, P, digraphs
from pathmorse.errors import DimensionBoundExceeded, DimensionMismatch, IndexOutOfRange
from pathmorse.fixtures import load
from pathmorse.graph import is_transitive, transitive_closure
from pathmorse.paths import (Chain, allowed_paths, boundary, boundary_squared_is_zero, face, inner_product,
                             is_allowed, omega_basis, path_boundary, satisfies_interpolation)


def brute_allowed(g, n):
    """Oracle: filter every vertex sequence of length n+1."""
    return sorted(p for p in product(g.vertices, repeat=n + 1)
                  if all(g.has_edge(a, b) for a, b in zip(p, p[1:])))


def brute_omega_dim(g, n):
    """Oracle: dim{x in P_n : ∂x has no component outside P_{n-1}} via sympy rank."""
    paths = brute_allowed(g, n)
    if n == 0:
        return len(paths)
    bad = sorted({q for p in paths for q in (p[:i] + p[i + 1:] for i in range(len(p)))
                  if all(a != b for a, b in zip(q, q[1:])) and not is_allowed(g, q)})
    if not bad or not paths:
        return len(paths)
    m = sympy.zeros(len(bad), len(paths))
    pos = {q: i for i, q in enumerate(bad)}
    for j, p in enumerate(paths):
        for i in range(len(p)):
            q = p[:i] + p[i + 1:]
            if q in pos:
                m[pos[q], j] += (-1) ** i
    return len(paths) - m.rank()


def labels(g, paths):
    return ["".join(g.labels[v] for v in p) for p in paths]


def test_allowed_paths_of_square_closure():
    g, _ = load("square")
    gbar = transitive_closure(g)
    assert labels(gbar, allowed_paths(gbar, 0)) == ["v0", "v1", "v2", "v3"]
    assert labels(gbar, allowed_paths(gbar, 1)) == ["v0v1", "v0v2", "v0v3", "v1v3", "v2v3"]
    assert labels(gbar, allowed_paths(gbar, 2)) == ["v0v1v3", "v0v2v3"]
    assert allowed_paths(gbar, 3) == []


def test_allowed_two_paths_of_four_cycle():
    g, _ = load("exh17")
    assert labels(g, allowed_paths(g, 2)) == ["v0v1v2", "v1v2v3"]
    assert allowed_paths(g, 2) == brute_allowed(g, 2)


def test_allowed_paths_respects_bound():
    g, _ = load("square")
    with pytest.raises(DimensionBoundExceeded):
        allowed_paths(g, 3, max_dim=2)
    with pytest.raises(IndexOutOfRange):
        allowed_paths(g, -1)


@pytest.mark.parametrize("path,i,expected", [("v0v1v3", 1, "v0v3"), ("v0v1", 0, "v1"), ("v0v2v3", 2, "v0v2")])
def test_face(path, i, expected):
    g, _ = load("square")
    assert face(P(g, path), i) == P(g, expected)


def test_face_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        face((0, 1), 2)
    with pytest.raises(IndexOutOfRange):
        face((0,), 0)


def test_boundary_examples():
    g, _ = load("square")
    assert boundary(C(g, "v0v1")) == C(g, "v1", (-1, "v0"))
    lhs = boundary(C(g, "v0v1v3", (-1, "v0v2v3")))
    assert lhs == C(g, "v0v1", "v1v3", (-1, "v0v2"), (-1, "v2v3"))
    assert boundary(C(g, "v0", (3, "v2"))) == Chain.zero(0)


def test_boundary_drops_degenerate_faces():
    assert path_boundary((0, 1, 0)) == {(1, 0): 1, (0, 1): 1}


def test_boundary_squared_examples():
    g, _ = load("square")
    assert boundary_squared_is_zero(C(g, "v0v1v3"))
    assert boundary_squared_is_zero(C(g, "v0v1v3", (-1, "v0v2v3")))


def test_inner_product():
    g, _ = load("square")
    assert inner_product(C(g, "v0v1"), C(g, "v0v1")) == 1
    assert inner_product(C(g, "v0v1"), C(g, "v0v2")) == 0
    assert inner_product(C(g, (2, "v0v1"), (-3, "v1v3")), C(g, "v1v3")) == -3
    with pytest.raises(DimensionMismatch):
        inner_product(C(g, "v0"), C(g, "v0v1"))


def test_chain_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        Chain(1, {(0, 1, 2): 1})


def test_omega_of_square():
    g, _ = load("square")
    assert [len(omega_basis(g, n, max_dim=3)) for n in range(4)] == [4, 4, 1, 0]
    (top,) = omega_basis(g, 2)
    assert top == C(g, "v0v1v3", (-1, "v0v2v3"))


def test_omega_of_four_cycle_has_no_two_chains():
    g, _ = load("exh17")
    assert omega_basis(g, 2) == []


def test_omega_of_exaa():
    g, _ = load("exaa")
    assert omega_basis(g, 2) == [C(g, "v0v1v3", (-1, "v0v2v3")), C(g, "v0v1v4", (-1, "v0v2v4"))]


def test_omega_equals_allowed_on_transitive():
    g, _ = load("exaa")
    gbar = transitive_closure(g)
    for n in range(4):
        assert omega_basis(gbar, n) == [Chain.of(p) for p in allowed_paths(gbar, n)]


chains = st.dictionaries(st.tuples(*[st.integers(0, 4)] * 4), st.fractions(max_denominator=5),
                         max_size=6).map(lambda d: Chain(3, d))


@settings(max_examples=200, deadline=None)
@given(chains)
def test_boundary_squared_zero_on_arbitrary_chains(c):
    assert boundary_squared_is_zero(c)


@settings(max_examples=200, deadline=None)
@given(digraphs(max_vertices=5))
def test_allowed_paths_match_enumeration(g):
    for n in range(3):
        assert allowed_paths(g, n, max_dim=3) == brute_allowed(g, n)


@settings(max_examples=200, deadline=None)
@given(digraphs(max_vertices=5))
def test_omega_dims_match_sympy(g):
    for n in range(3):
        basis = omega_basis(g, n, max_dim=3)
        assert len(basis) == brute_omega_dim(g, n)
        for x in basis:
            assert all(is_allowed(g, p) for p in x.support())
            assert all(is_allowed(g, q) for q in boundary(x).support())


@settings(max_examples=200, deadline=None)
@given(digraphs(max_vertices=5))
def test_path_level_interpolation_matches_transitivity(g):
    assert satisfies_interpolation(g, 2) == is_transitive(g)
    if is_transitive(g):
        assert satisfies_interpolation(g, 3)


def test_chain_arithmetic():
    g, _ = load("square")
    a = C(g, "v0v1", (Fraction(1, 2), "v0v2"))
    assert a - a == Chain.zero(1)
    assert 2 * a == a + a
    assert -a == a * -1
    assert repr(C(g, "v0v1")) == "Chain[1](1*0-1)"
