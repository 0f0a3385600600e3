"""End-to-end acceptance checks; each prints one PASS/FAIL line with its wall time.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest

import test_linalg
import test_paths
import test_properties
from helpers import C, P
from test_flow import EXAA_FLOW, SQUARE_FLOW
from test_complex import EXAA_REDUCED
from pathmorse.fixtures import load
from pathmorse.graph import transitive_closure
from pathmorse.homology import path_homology
from pathmorse.morse import (crit_cap_omega, critical_paths, discrete_gradient, gradient_field, morse_complex,
                             morse_homology, morse_inequalities, phi_fixed_cap_omega)
from pathmorse.paths import Chain, allowed_paths, is_allowed
from pathmorse.report import chain_text
from pathmorse.witten import DEFAULT_T_GRID, boundary_product_residual, witten_convergence_scan


@contextmanager
def criterion(capsys, number, title, limit):
    start = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        status = "PASS" if elapsed < limit else "FAIL"
        if status == "FAIL":
            detail = f" over the {limit:g}s budget"
    except AssertionError as e:
        detail = f" {str(e).splitlines()[0] if str(e) else 'assertion failed'}"
        raise
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\ncriterion {number} {status}: {title} ({elapsed:.2f}s){detail}")
    assert status == "PASS", f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def flow_table_text(g, f, table):
    gbar = transitive_closure(g)
    grad = discrete_gradient(gbar, f, 3)
    for path, terms in table.items():
        c = Chain.of(P(g, path))
        want = chain_text(g, C(g, *terms)) if terms else "0"
        assert chain_text(g, grad.flow(c)) == want, f"Φ̄({path})"
        assert chain_text(g, grad.stabilize(c)) == want, f"Φ̄∞({path})"


def test_criterion_1_square(capsys):
    with criterion(capsys, 1, "square: homology, critical sets, flow tables, Morse complex, inequalities", 1.0):
        g, f = load("square")
        gbar = transitive_closure(g)
        assert path_homology(g, 3).values[:3] == (1, 0, 0)
        crit = critical_paths(gbar, f, 2)
        cap = [[p for p in layer if is_allowed(g, p)] for layer in crit.by_dim]
        assert cap == [[P(g, "v1"), P(g, "v2")], [P(g, "v0v2"), P(g, "v2v3")], [P(g, "v0v2v3")]]
        field = gradient_field(gbar, f, 3)
        assert {k: v for k, v in field.pairs.items()} == {
            P(g, "v0"): (P(g, "v0v1"), 1), P(g, "v3"): (P(g, "v1v3"), -1), P(g, "v0v3"): (P(g, "v0v1v3"), 1)}
        flow_table_text(g, f, SQUARE_FLOW)
        assert morse_homology(morse_complex(g, f, 3)).values[:3] == (1, 0, 0)
        r = morse_inequalities(g, f, 3)
        assert r.l[:3] == (2, 2, 1) and r.L[:3] == (2, 2, 2) and r.euler_l == r.euler_b == 1 and r.all_hold


def test_criterion_2_six_vertex(capsys):
    with criterion(capsys, 2, "six-vertex example: homology, counts, reduced boundaries, χ", 1.0):
        g, f = load("exaa")
        assert path_homology(g, 3).values[:3] == (1, 1, 0)
        r = morse_inequalities(g, f, 3)
        assert r.l[:3] == (3, 5, 2) and r.L[:3] == (3, 5, 4) and r.euler_l == r.euler_b == 0
        rep = morse_complex(g, f, 3)
        for path, terms in EXAA_REDUCED.items():
            assert rep.reduced_boundary(P(g, path)) == C(g, *terms), f"∂̃({path})"
        assert chain_text(g, rep.reduced_boundary(P(g, "v0v2v3"))) == "v0v2+v2v3"
        assert morse_homology(rep).values[:3] == (1, 1, 0)
        flow_table_text(g, f, EXAA_FLOW)


def test_criterion_3_negative_examples(capsys):
    with criterion(capsys, 3, "negative examples: invariance failure, flow escape, Crit∩Ω too small", 3.0):
        g, f = load("exh17")
        rep = morse_complex(g, f, 3)
        assert rep.hypotheses.omega_v_invariant is False
        witnesses = {chain_text(g, x): chain_text(g, y) for x, y in rep.hypotheses.v_counterexamples}
        assert witnesses["v2v3"] == "−v0v2v3"
        assert morse_homology(rep).values[:2] == (1, 0) and path_homology(g, 3).values[:2] == (1, 1)

        g, f = load("exbb")
        rep = morse_complex(g, f, 3)
        bad = {chain_text(g, Chain.of(a)): chain_text(g, y) for a, y in rep.hypotheses.phi_counterexamples}
        assert bad["v5v3"] == "v5v3−v0v3"
        assert morse_homology(rep).values == path_homology(g, 3).values

        g, f = load("square")
        crit = [crit_cap_omega(g, f, n, 3) for n in range(3)]
        assert crit[0] + crit[1] == [P(g, s) for s in ["v1", "v2", "v0v2", "v2v3"]]
        assert (len(crit[2]), len(phi_fixed_cap_omega(g, f, 2, 3))) == (0, 1)


def test_criterion_4_witten_scan(capsys):
    with criterion(capsys, 4, "Witten scan on the closed square, t = 1..64", 5.0):
        g, f = load("square")
        gbar = transitive_closure(g)
        scan = witten_convergence_scan(gbar, f, DEFAULT_T_GRID, 2)
        b = path_homology(gbar, 2).values
        for n in range(3):
            assert {r.kernel_dim for r in scan.rows_for(n)} == {b[n]}, f"kernel in degree {n}"
        assert [scan.rows_for(n)[-1].low_dim for n in range(3)] == [2, 2, 1]
        assert scan.crit_counts == (2, 2, 1)
        for t in DEFAULT_T_GRID:
            for n in range(1, 3):
                res, scale = boundary_product_residual(gbar, f, t, n)
                assert res <= 1e-8 * scale
        for r in scan.rows:
            lap_scale = max(1.0, max(abs(x) for x in r.eigenvalues))
            assert min(r.eigenvalues) >= -1e-9 * lap_scale


PROPERTY_SUITE = [
    test_paths.test_boundary_squared_zero_on_arbitrary_chains,
    test_linalg.test_rank_nullity_against_sympy,
    test_properties.test_flow_commutes_with_boundary,
    test_properties.test_flow_kills_non_critical_paths,
    test_properties.test_fixed_space_is_spanned_by_corrected_critical_paths,
    test_properties.test_morse_functions_are_flat_witten_morse,
    test_properties.test_at_most_one_zero_vertex_per_path,
    test_properties.test_zero_vertices_avoid_directed_loops,
    test_properties.test_no_path_has_both_equal_weight_face_and_coface,
    test_properties.test_flow_depends_only_on_zero_set,
]


def test_criterion_5_property_suites(capsys):
    with criterion(capsys, 5, f"{len(PROPERTY_SUITE)} randomized property suites, 200 cases each", 60.0):
        for check in PROPERTY_SUITE:
            assert check._hypothesis_internal_use_settings.max_examples >= 200, check.__name__
            check()


def test_criterion_6_morse_equals_path_homology(capsys):
    with criterion(capsys, 6, "Morse homology equals path homology whenever the hypotheses hold", 60.0):
        check = test_properties.test_morse_homology_equals_path_homology_when_hypotheses_hold
        assert check._hypothesis_internal_use_settings.max_examples >= 200
        check()
        test_properties.test_corrected_critical_paths_span_fixed_invariant_chains()
        for name in ["square", "exaa", "exbb", "re1"]:
            g, f = load(name)
            rep = morse_complex(g, f, 3)
            if rep.hypotheses.holds:
                assert morse_homology(rep).values == path_homology(g, 3).values, name


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
