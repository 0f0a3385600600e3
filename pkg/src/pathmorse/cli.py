"""Command-line front end.

Exit codes: 0 success, 2 the input fails a required mathematical condition
(not Morse, not transitive, malformed file contents), 1 internal error,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, PathMorseError, TruncationUnsound, ValidationFailure
from .graph import Digraph, is_transitive, parse_digraph, serialize_digraph, transitive_closure
from .homology import betti, build_complex, euler_characteristic
from .morse import (check_flat_witten_morse, critical_paths, discrete_gradient, extend_to_closure,
                    morse_complex, morse_homology, morse_inequalities, parse_morse_function,
                    validate_morse)
from .morse.inequalities import alternating_partial_sums
from .paths import Chain, allowed_paths, default_max_dim, is_allowed, omega_basis
from .report import (chain_key, chain_text, digraph_summary, fmt_float, layers_text, path_key, path_label,
                     top_nonzero, vector_text, warning)
from .witten import DEFAULT_T_GRID, boundary_product_residual, scan_csv, witten_convergence_scan

EX_OK, EX_INTERNAL, EX_VALIDATION, EX_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _t_grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad t grid {text!r}") from None
    if not grid or grid[0] <= 0 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("t grid must be nonempty, positive and strictly ascending")
    return grid


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("--max-dim must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-g", "--graph", required=True, help="digraph edge-list file")
    common.add_argument("-f", "--function", help="Morse function file")
    common.add_argument("--max-dim", type=_nonneg, help="dimension bound (default: number of vertices)")
    common.add_argument("--t-grid", type=_t_grid, default=DEFAULT_T_GRID, help="comma-separated ascending t values")
    common.add_argument("--eps-low", type=float, help="absolute threshold for the low-eigenvalue count")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = _Parser(prog="pathmorse", description="Path homology and discrete Morse theory on digraphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("closure", parents=[common], help="transitive closure as a digraph file")
    sub.add_parser("paths", parents=[common], help="allowed and invariant path bases")
    sub.add_parser("homology", parents=[common], help="Betti numbers and Euler characteristic")

    morse = sub.add_parser("morse", help="discrete Morse analyses")
    msub = morse.add_subparsers(dest="action", required=True, parser_class=_Parser)
    msub.add_parser("check", parents=[common], help="validate the Morse conditions")
    msub.add_parser("critical", parents=[common], help="critical paths on the digraph and its closure")
    msub.add_parser("flow", parents=[common], help="gradient field and flow tables on the closure")
    msub.add_parser("complex", parents=[common], help="reduced complex and its homology")
    msub.add_parser("inequalities", parents=[common], help="Morse inequalities")

    witten = sub.add_parser("witten", help="Witten deformation")
    wsub = witten.add_subparsers(dest="action", required=True, parser_class=_Parser)
    wsub.add_parser("scan", parents=[common], help="low-eigenvalue convergence scan")
    return parser


# -- handlers: each returns (payload, text lines, warnings, exit code) ---------

def _bound(ns, g: Digraph) -> int:
    return default_max_dim(g) if ns.max_dim is None else ns.max_dim


def _need_function(ns, g: Digraph):
    if not ns.function:
        raise UsageError(f"{ns.command} {ns.action}: -f/--function is required")
    return parse_morse_function(_read(ns.function), g)


def _truncation_warning(bound: int, what: str) -> dict:
    return warning("truncated", f"{what} is nonzero in dimension {bound + 1}; "
                                f"values at dimension {bound} may change with a larger --max-dim")


def cmd_closure(ns, g):
    gbar = transitive_closure(g)
    added = sorted(gbar.edges - g.edges)
    text = serialize_digraph(gbar)
    payload = {"digraph": text, "added_edges": [[g.labels[u], g.labels[v]] for u, v in added]}
    return payload, text.rstrip("\n").splitlines(), [], EX_OK


def cmd_paths(ns, g):
    bound = _bound(ns, g)
    layers, lines = [], []
    for n in range(bound + 1):
        allowed = allowed_paths(g, n, max_dim=bound)
        omega = omega_basis(g, n, max_dim=bound)
        layers.append({"n": n, "allowed": [path_key(g, p) for p in allowed],
                       "omega": [chain_key(g, c) for c in omega]})
        if allowed:
            lines.append(f"n={n}  |P|={len(allowed)}  |Ω|={len(omega)}")
            lines.append("  P: " + " ".join(path_label(g, p) for p in allowed))
            lines.append("  Ω: " + ("  ".join(chain_text(g, c) for c in omega) or "-"))
    return {"max_dim": bound, "layers": layers}, lines, [], EX_OK


def cmd_homology(ns, g):
    bound = _bound(ns, g)
    cx = build_complex(g, bound)
    b = betti(cx)
    warnings = []
    try:
        chi = euler_characteristic(cx)
    except TruncationUnsound as e:
        chi = None
        warnings.append(warning("euler-unsound", str(e)))
    if b.truncated:
        warnings.append(_truncation_warning(bound, "the invariant path space"))
    dims = cx.dims()
    k = max(top_nonzero(dims), top_nonzero(b.values)) + 1
    payload = {"max_dim": bound, "omega_dims": dims, "betti": list(b.values), "truncated": b.truncated,
               "euler": chi}
    lines = ["Ω dims: " + " ".join(map(str, dims[:k])),
             "b: " + " ".join(map(str, b.values[:k])),
             "χ: " + ("unknown" if chi is None else str(chi))]
    return payload, lines, warnings, EX_OK


def _violations(g, vs):
    return [{"path": path_key(g, v.path), "condition": v.condition,
             "witnesses": [path_key(g, w) for w in v.witnesses]} for v in vs]


def cmd_morse_check(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    rep = validate_morse(g, f, bound)
    payload = {"validation": {"is_morse": rep.is_morse, "verified_up_to": rep.verified_up_to,
                              "violations": _violations(g, rep.violations)},
               "flat_witten": None}
    lines = [f"Morse on G: {'yes' if rep.is_morse else 'no'} (verified up to dimension {rep.verified_up_to})"]
    for v in rep.violations:
        lines.append(f"  {path_label(g, v.path)}: condition ({v.condition}) with "
                     + " ".join(path_label(g, w) for w in v.witnesses))
    if not rep.is_morse:
        return payload, lines, [], EX_VALIDATION
    flat = check_flat_witten_morse(g, f, bound)
    payload["flat_witten"] = {"holds": flat.holds, "violations": [
        {"path": path_key(g, v.path), "clause": v.clause, "witnesses": [path_key(g, w) for w in v.witnesses]}
        for v in flat.violations]}
    lines.append(f"flat Witten-Morse: {'yes' if flat.holds else 'no'}")
    warnings = []
    if not flat.holds:
        warnings.append(warning("flat-witten-failed", f"{len(flat.violations)} flat Witten-Morse violations"))
    return payload, lines, warnings, EX_OK


def cmd_morse_critical(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    on_g = critical_paths(g, f, bound)
    gbar, _ = extend_to_closure(g, f, bound)
    on_bar = critical_paths(gbar, f, bound, check=False)
    cap = [[p for p in layer if is_allowed(g, p)] for layer in on_bar.by_dim]
    keys = lambda layers: [[path_key(g, p) for p in layer] for layer in layers]  # noqa: E731
    payload = {"max_dim": bound, "on_graph": keys(on_g.by_dim), "on_closure": keys(on_bar.by_dim),
               "closure_cap_graph": keys(cap)}
    lines = ["Crit(G): " + layers_text(g, on_g.by_dim),
             "Crit(Ḡ): " + layers_text(g, on_bar.by_dim),
             "Crit(Ḡ)∩P(G): " + layers_text(g, cap)]
    return payload, lines, [], EX_OK


def cmd_morse_flow(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    gbar, _ = extend_to_closure(g, f, bound)
    grad = discrete_gradient(gbar, f, bound)
    rows, lines = [], []
    for n in range(bound + 1):
        for p in allowed_paths(gbar, n, max_dim=bound):
            c = Chain.of(p)
            v, phi, inf = grad.V(c), grad.flow(c), grad.stabilize(c)
            rows.append({"path": path_key(g, p), "V": chain_key(g, v), "phi": chain_key(g, phi),
                         "phi_inf": chain_key(g, inf)})
            lines.append(f"{path_label(g, p)}  V̄={chain_text(g, v)}  Φ̄={chain_text(g, phi)}  "
                         f"Φ̄∞={chain_text(g, inf)}")
    stable = all(r["phi"] == r["phi_inf"] for r in rows)
    lines.append(f"Φ̄∞ = Φ̄: {'yes' if stable else 'no'}")
    return {"max_dim": bound, "rows": rows, "stabilizes_in_one_step": stable}, lines, [], EX_OK


def _hypothesis_payload(g, h) -> dict:
    return {
        "verified_up_to": h.verified_up_to,
        "extends_to_closure": h.extends_to_closure,
        "extension_violations": _violations(g, h.extension_violations),
        "omega_v_invariant": h.omega_v_invariant,
        "v_counterexamples": [{"chain": chain_key(g, x), "image": chain_key(g, y)} for x, y in h.v_counterexamples],
        "phi_crit_in_omega": h.phi_crit_in_omega,
        "phi_counterexamples": [{"path": path_key(g, a), "image": chain_key(g, y)} for a, y in h.phi_counterexamples],
        "holds": h.holds,
    }


def _hypothesis_lines(g, h) -> list[str]:
    ok = lambda b: "ok" if b else ("FAILED" if b is not None else "not checked")  # noqa: E731
    lines = [f"closure extension: {ok(h.extends_to_closure)}",
             f"V̄-invariance of Ω(G): {ok(h.omega_v_invariant)}"]
    lines += [f"  V̄({chain_text(g, x)})={chain_text(g, y)} ∉ Ω(G)" for x, y in h.v_counterexamples]
    lines.append(f"Φ̄(Crit(Ḡ)∩P(G)) ⊆ Ω(G): {ok(h.phi_crit_in_omega)}")
    lines += [f"  Φ̄({path_label(g, a)})={chain_text(g, y)} ∉ Ω(G)" for a, y in h.phi_counterexamples]
    return lines


def cmd_morse_complex(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    rep = morse_complex(g, f, bound)
    mh = morse_homology(rep)
    ph = betti(build_complex(g, bound))
    boundaries = []
    lines = ["basis: " + layers_text(g, rep.bases[: bound + 1])]
    for n in range(1, bound + 1):
        for a in rep.bases[n]:
            d = rep.reduced_boundary(a)
            boundaries.append({"path": path_key(g, a), "boundary": chain_key(g, d)})
            lines.append(f"∂̃({path_label(g, a)})={chain_text(g, d)}")
    agrees = mh.values == ph.values
    lines.append(f"Morse homology: {vector_text(mh.values)}")
    lines.append(f"path homology: {vector_text(ph.values)}")
    lines += _hypothesis_lines(g, rep.hypotheses)
    warnings = []
    if not rep.hypotheses.holds:
        rel = "=" if agrees else "≠"
        warnings.append(warning("hypotheses-not-satisfied",
                                f"hypotheses not satisfied; Morse homology {vector_text(mh.values)} {rel} "
                                f"path homology {vector_text(ph.values)}"))
    if not rep.d_squared_zero:
        warnings.append(warning("reduced-boundary-not-nilpotent", "the reduced boundary does not square to zero"))
    if mh.truncated or ph.truncated:
        warnings.append(_truncation_warning(bound, "a chain space"))
    payload = {"max_dim": bound, "basis": [[path_key(g, p) for p in layer] for layer in rep.bases[: bound + 1]],
               "reduced_boundaries": boundaries, "morse_betti": list(mh.values), "path_betti": list(ph.values),
               "agrees": agrees, "d_squared_zero": rep.d_squared_zero,
               "hypotheses": _hypothesis_payload(g, rep.hypotheses)}
    return payload, lines, warnings, EX_OK


def cmd_morse_inequalities(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    r = morse_inequalities(g, f, bound)
    k = max(top_nonzero(r.l), top_nonzero(r.L), top_nonzero(r.b)) + 1
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    payload = {"max_dim": bound, "l": list(r.l), "L": list(r.L), "b": list(r.b),
               "alternating_l": alternating_partial_sums(r.l), "alternating_b": alternating_partial_sums(r.b),
               "strong": r.strong_inequalities, "weak": r.weak_inequalities, "crit_bound": r.crit_bound,
               "euler_l": r.euler_l, "euler_b": r.euler_b, "euler_equality": r.euler_equality,
               "truncated": r.truncated, "hypotheses_hold": r.hypotheses.holds}
    lines = ["l: " + " ".join(map(str, r.l[:k])),
             "L: " + " ".join(map(str, r.L[:k])),
             "b: " + " ".join(map(str, r.b[:k])),
             f"L ≥ l: {yn(r.crit_bound)}",
             f"l ≥ b: {yn(r.weak_inequalities)}",
             "alternating sums: " + " ".join(yn(x) for x in r.strong_inequalities[:k]),
             f"χ: {r.euler_l} {'=' if r.euler_equality else '≠'} {r.euler_b}"]
    warnings = []
    if r.truncated:
        warnings.append(_truncation_warning(bound, "a chain or critical set"))
    if not r.hypotheses.holds:
        warnings.append(warning("hypotheses-not-satisfied", "hypotheses not satisfied; the inequalities may fail"))
    return payload, lines, warnings, EX_OK


def cmd_witten_scan(ns, g):
    f = _need_function(ns, g)
    bound = _bound(ns, g)
    scan = witten_convergence_scan(g, f, ns.t_grid, bound, ns.eps_low)
    residual = max((r / s for r, s in (boundary_product_residual(g, f, t, n)
                                       for t in scan.t_grid for n in range(1, bound + 1))), default=0.0)
    rows = [{"t": r.t, "n": r.n, "basis_size": r.basis_size, "kernel_dim": r.kernel_dim, "low_dim": r.low_dim,
             "crit_n": scan.crit_counts[r.n], "eigenvalues": list(r.eigenvalues)} for r in scan.rows]
    payload = {"max_dim": bound, "t_grid": list(scan.t_grid), "crit_counts": list(scan.crit_counts),
               "agreement_index": list(scan.agreement), "max_boundary_residual": residual, "rows": rows}
    lines = ["t n basis kernel low crit eigenvalues"]
    for r in scan.rows:
        lines.append(f"{fmt_float(r.t)} {r.n} {r.basis_size} {r.kernel_dim} {r.low_dim} "
                     f"{scan.crit_counts[r.n]} " + ";".join(fmt_float(x) for x in r.eigenvalues))
    for n, idx in enumerate(scan.agreement):
        reached = f"from t={fmt_float(scan.t_grid[idx])}" if idx is not None else "not reached"
        lines.append(f"n={n}: low dimension matches |Crit_{n}|={scan.crit_counts[n]} {reached}")
    warnings = [warning("not-converged", f"low dimension in degree {n} never settles on |Crit_{n}|")
                for n, idx in enumerate(scan.agreement) if idx is None]
    return payload, lines, warnings, EX_OK, scan


HANDLERS = {
    ("closure", None): cmd_closure,
    ("paths", None): cmd_paths,
    ("homology", None): cmd_homology,
    ("morse", "check"): cmd_morse_check,
    ("morse", "critical"): cmd_morse_critical,
    ("morse", "flow"): cmd_morse_flow,
    ("morse", "complex"): cmd_morse_complex,
    ("morse", "inequalities"): cmd_morse_inequalities,
    ("witten", "scan"): cmd_witten_scan,
}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(command: str, summary: dict, lines: list[str], warnings: list[dict]) -> str:
    head = (f"# {command}: {summary['vertices']} vertices, {summary['edges']} edges, "
            f"{'transitive' if summary['transitive'] else 'not transitive'}")
    body = [head] + lines + [f"warning [{w['code']}]: {w['message']}" for w in warnings]
    return "\n".join(body) + "\n"


def run(args: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EX_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EX_OK
    action = getattr(ns, "action", None)
    command = ns.command + (f" {action}" if action else "")
    try:
        if ns.format == "csv" and command != "witten scan":
            raise UsageError("--format csv is only available for 'witten scan'")
        g = parse_digraph(_read(ns.graph))
        result = HANDLERS[(ns.command, action)](ns, g)
        payload, lines, warnings, code = result[:4]
    except UsageError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EX_USAGE
    except (ValidationFailure, InputError) as e:
        print(f"{parser.prog}: {type(e).__name__}: {e}", file=sys.stderr)
        if ns.format == "json":
            _emit(json.dumps({"command": command, "error": {"type": type(e).__name__, "message": str(e)}},
                             indent=2) + "\n", ns.out)
        return EX_VALIDATION
    except PathMorseError as e:
        print(f"{parser.prog}: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_INTERNAL
    except Exception as e:  # noqa: BLE001
        print(f"{parser.prog}: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_INTERNAL

    summary = digraph_summary(g, is_transitive(g))
    if ns.format == "csv":
        _emit(scan_csv(result[4]), ns.out)
    elif ns.format == "json":
        report = {"command": command, "digraph": summary, "payload": payload, "warnings": warnings}
        _emit(json.dumps(report, indent=2, ensure_ascii=False) + "\n", ns.out)
    else:
        _emit(_render_text(command, summary, lines, warnings), ns.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
