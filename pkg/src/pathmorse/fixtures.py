"""Bundled example digraphs and Morse functions."""
from __future__ import annotations

from importlib import resources

from .graph import Digraph, parse_digraph
from .morse.function import MorseFunction, parse_morse_function

# fixture name -> (digraph file, Morse function file or None)
FIXTURES = {
    "square": ("square.dg", "exw1.mf"),
    "exaa": ("exaa.dg", "exaa.mf"),
    "exbb": ("exaa.dg", "exbb.mf"),
    "exh17": ("exh17.dg", "exh17.mf"),
    "re1": ("re1.dg", "re1.mf"),
}


def data_path(name: str):
    return resources.files("pathmorse") / "data" / name


def read_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")


def load(name: str) -> tuple[Digraph, MorseFunction | None]:
    dg, mf = FIXTURES[name]
    g = parse_digraph(read_text(dg))
    f = parse_morse_function(read_text(mf), g) if mf else None
    return g, f
