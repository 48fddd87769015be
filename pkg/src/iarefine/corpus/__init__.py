"""Bundled example automata."""

from importlib import resources

from ..automaton import InterfaceAutomaton
from ..formats import parse

NAMES = ("s_A", "s_B", "s_C", "s_D", "s_E", "s_F", "s_G", "s_H", "s_I", "s_J", "s_M", "s_N", "s_P", "s_Q")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.ia")


def load(name: str) -> InterfaceAutomaton:
    return parse(path(name).read_text(encoding="utf-8"))
