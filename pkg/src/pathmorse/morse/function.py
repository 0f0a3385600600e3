"""Discrete Morse functions on digraphs: weights, validation, critical paths."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from ..errors import BadToken, ExtensionNotMorse, InputError, NotMorse, UnknownVertex
from ..graph import Digraph, transitive_closure
from ..paths import Path, allowed_paths, default_max_dim, is_allowed


@dataclass(frozen=True)
class MorseFunction:
    """Nonnegative rational vertex weights, indexed like the digraph's vertices."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        for x in self.values:
            if x < 0:
                raise InputError(f"negative vertex value {x}")

    @classmethod
    def from_labels(cls, g: Digraph, mapping: Mapping[str, object]) -> MorseFunction:
        missing = [lab for lab in g.labels if lab not in mapping]
        if missing:
            raise UnknownVertex(f"no value for vertices {missing}")
        extra = [lab for lab in mapping if lab not in g.labels]
        if extra:
            raise UnknownVertex(f"values given for unknown vertices {extra}")
        return cls(tuple(Fraction(mapping[lab]) for lab in g.labels))

    def __call__(self, v: int) -> Fraction:
        return self.values[v]

    def is_zero(self, v: int) -> bool:
        return self.values[v] == 0


def parse_morse_function(text: str, g: Digraph) -> MorseFunction:
    """Parse ``<label> <value>`` lines; values are decimals or ``p/q``."""
    mapping: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise BadToken(f"line {lineno}: expected '<label> <value>'")
        label, value = tokens
        if label in mapping:
            raise BadToken(f"line {lineno}: vertex {label} given twice")
        try:
            x = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise BadToken(f"line {lineno}: bad value {value!r}") from None
        if x < 0:
            raise BadToken(f"line {lineno}: negative value for {label}")
        mapping[label] = x
    return MorseFunction.from_labels(g, mapping)


def serialize_morse_function(f: MorseFunction, g: Digraph) -> str:
    return "".join(f"{lab} {x}\n" for lab, x in zip(g.labels, f.values))


def path_weight(f: MorseFunction, p: Path) -> Fraction:
    try:
        return sum((f.values[v] for v in p), Fraction(0))
    except IndexError:
        raise UnknownVertex(f"path {p} leaves the domain of f") from None


def zero_point_set(f: MorseFunction) -> frozenset[int]:
    return frozenset(v for v, x in enumerate(f.values) if x == 0)


# Because weights are nonnegative, γ > α has f(γ) = f(α) exactly when the
# inserted vertex is a zero of f, and likewise for faces.

def insertions(g: Digraph, p: Path, v: int) -> list[Path]:
    """Allowed paths obtained by inserting ``v`` somewhere into ``p``."""
    out = []
    for k in range(len(p) + 1):
        if k > 0 and not g.has_edge(p[k - 1], v):
            continue
        if k < len(p) and not g.has_edge(v, p[k]):
            continue
        out.append(p[:k] + (v,) + p[k:])
    return out


def equal_weight_cofaces(g: Digraph, f: MorseFunction, p: Path) -> list[Path]:
    found = set()
    for z in zero_point_set(f):
        found.update(insertions(g, p, z))
    return sorted(found)


def equal_weight_faces(g: Digraph, f: MorseFunction, p: Path) -> list[Path]:
    if len(p) < 2:
        return []
    found = {p[:i] + p[i + 1:] for i, v in enumerate(p) if f.is_zero(v)}
    return sorted(q for q in found if is_allowed(g, q))


def all_cofaces(g: Digraph, p: Path) -> list[Path]:
    found = set()
    for v in g.vertices:
        found.update(insertions(g, p, v))
    return sorted(found)


def all_faces(g: Digraph, p: Path) -> list[Path]:
    if len(p) < 2:
        return []
    return sorted({q for q in (p[:i] + p[i + 1:] for i in range(len(p))) if is_allowed(g, q)})


@dataclass(frozen=True)
class Violation:
    path: Path
    condition: str  # "i" (cofaces) or "ii" (faces)
    witnesses: tuple[Path, ...]


@dataclass(frozen=True)
class ValidationReport:
    is_morse: bool
    verified_up_to: int
    violations: tuple[Violation, ...]


def validate_morse(g: Digraph, f: MorseFunction, max_dim: int | None = None) -> ValidationReport:
    """Check both counting conditions on every allowed path up to ``max_dim``."""
    if len(f.values) != g.n_vertices:
        raise UnknownVertex("Morse function and digraph have different vertex sets")
    bound = default_max_dim(g) if max_dim is None else max_dim
    violations = []
    for n in range(bound + 1):
        for p in allowed_paths(g, n, max_dim=bound):
            up = equal_weight_cofaces(g, f, p)
            if len(up) > 1:
                violations.append(Violation(p, "i", tuple(up)))
            down = equal_weight_faces(g, f, p)
            if len(down) > 1:
                violations.append(Violation(p, "ii", tuple(down)))
    return ValidationReport(not violations, bound, tuple(violations))


def require_morse(g: Digraph, f: MorseFunction, max_dim: int | None = None,
                  exc: type[NotMorse] = NotMorse) -> ValidationReport:
    report = validate_morse(g, f, max_dim)
    if not report.is_morse:
        v = report.violations[0]
        raise exc(f"not a discrete Morse function: path {v.path} violates condition ({v.condition}) "
                  f"with {len(v.witnesses)} equal-weight incidences", report.violations)
    return report


@dataclass(frozen=True)
class FlatWittenViolation:
    path: Path
    clause: str
    witnesses: tuple[Path, Path]


@dataclass(frozen=True)
class FlatWittenReport:
    holds: bool
    verified_up_to: int
    violations: tuple[FlatWittenViolation, ...]


def check_flat_witten_morse(g: Digraph, f: MorseFunction, max_dim: int | None = None) -> FlatWittenReport:
    """Pairwise coface/face bounds: flat (min/max) and strict Witten (average) clauses."""
    bound = default_max_dim(g) if max_dim is None else max_dim
    require_morse(g, f, bound)
    bad = []
    for n in range(bound + 1):
        for p in allowed_paths(g, n, max_dim=bound):
            w = path_weight(f, p)
            ups = [(q, path_weight(f, q)) for q in all_cofaces(g, p)]
            for (q1, w1), (q2, w2) in combinations(ups, 2):
                if not w <= min(w1, w2):
                    bad.append(FlatWittenViolation(p, "flat-coface", (q1, q2)))
                if not 2 * w < w1 + w2:
                    bad.append(FlatWittenViolation(p, "witten-coface", (q1, q2)))
            downs = [(q, path_weight(f, q)) for q in all_faces(g, p)]
            for (q1, w1), (q2, w2) in combinations(downs, 2):
                if not w >= max(w1, w2):
                    bad.append(FlatWittenViolation(p, "flat-face", (q1, q2)))
                if not 2 * w > w1 + w2:
                    bad.append(FlatWittenViolation(p, "witten-face", (q1, q2)))
    return FlatWittenReport(not bad, bound, tuple(bad))


@dataclass(frozen=True)
class CriticalSet:
    by_dim: tuple[tuple[Path, ...], ...]

    def __getitem__(self, n: int) -> tuple[Path, ...]:
        return self.by_dim[n] if n < len(self.by_dim) else ()

    def counts(self) -> list[int]:
        return [len(c) for c in self.by_dim]

    def all(self) -> list[Path]:
        return [p for layer in self.by_dim for p in layer]

    def __contains__(self, p: Path) -> bool:
        return p in self[len(p) - 1]


def is_critical(g: Digraph, f: MorseFunction, p: Path) -> bool:
    return not equal_weight_cofaces(g, f, p) and not equal_weight_faces(g, f, p)


def critical_paths(g: Digraph, f: MorseFunction, max_dim: int | None = None, *,
                   check: bool = True) -> CriticalSet:
    bound = default_max_dim(g) if max_dim is None else max_dim
    if check:
        require_morse(g, f, bound)
    return CriticalSet(tuple(
        tuple(p for p in allowed_paths(g, n, max_dim=bound) if is_critical(g, f, p))
        for n in range(bound + 1)))


def extend_to_closure(g: Digraph, f: MorseFunction, max_dim: int | None = None
                      ) -> tuple[Digraph, MorseFunction]:
    """Closure of ``g`` with the same vertex values, validated there."""
    bound = default_max_dim(g) if max_dim is None else max_dim
    require_morse(g, f, bound)
    gbar = transitive_closure(g)
    require_morse(gbar, f, bound, exc=ExtensionNotMorse)
    return gbar, f
