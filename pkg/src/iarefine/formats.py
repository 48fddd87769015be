"""The ``.ia`` text format, Graphviz export and JSON rendering of verdicts.

Format, one statement per line::

    # comment
    inputs a b
    outputs x y
    initial q0
    states q9          (optional: declares states without transitions)
    q0 a q1

Declarations may appear anywhere and ``inputs``/``outputs``/``states`` lines
accumulate. The keywords are reserved and cannot name a source state.
"""

from __future__ import annotations

import json

from .automaton import IDENT, InterfaceAutomaton, validate
from .errors import (
    AlphabetOverlap,
    DuplicateInitial,
    FormatError,
    MissingInitial,
    UndeclaredLabel,
)
from .transforms import DEFAULT_DELTA


def parse(text: str) -> InterfaceAutomaton:
    inputs: list[str] = []
    outputs: list[str] = []
    states: list[str] = []
    initial: tuple[str, int] | None = None
    edges: list[tuple[int, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        for tok in tokens:
            if not IDENT.fullmatch(tok):
                raise FormatError(f"bad identifier {tok!r}", lineno)
        head, rest = tokens[0], tokens[1:]
        if head == "inputs":
            inputs.extend(rest)
        elif head == "outputs":
            outputs.extend(rest)
        elif head == "states":
            states.extend(rest)
        elif head == "initial":
            if len(rest) != 1:
                raise FormatError("'initial' takes exactly one state", lineno)
            if initial is not None:
                raise DuplicateInitial(f"initial already given on line {initial[1]}", lineno)
            initial = (rest[0], lineno)
        elif len(tokens) == 3:
            edges.append((lineno, *tokens))
        else:
            raise FormatError(f"expected 'src label dst', got {len(tokens)} tokens", lineno)

    if initial is None:
        raise MissingInitial("no 'initial' line")
    overlap = sorted(set(inputs) & set(outputs))
    if overlap:
        raise AlphabetOverlap([f"labels both input and output: {overlap}"])
    alphabet = set(inputs) | set(outputs)
    for lineno, src, label, dst in edges:
        if label not in alphabet:
            err = UndeclaredLabel([f"line {lineno}: label {label!r} is not declared"])
            err.line = lineno
            raise err
    # the initial line declares its state
    return validate(states + [initial[0]], inputs, outputs, [e[1:] for e in edges], initial[0])


def load(path) -> InterfaceAutomaton:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def serialize(s: InterfaceAutomaton) -> str:
    """Canonical text: fixed declaration order, everything sorted."""
    used = {s.initial}
    for src, _, dst in s.transitions:
        used.update((src, dst))
    lines = [
        " ".join(["inputs", *sorted(s.inputs)]),
        " ".join(["outputs", *sorted(s.outputs)]),
        f"initial {s.initial}",
    ]
    isolated = sorted(s.states - used)
    if isolated:
        lines.append(" ".join(["states", *isolated]))
    lines.extend(f"{a} {l} {b}" for a, l, b in sorted(s.transitions))
    return "\n".join(lines) + "\n"


def export_dot(s: InterfaceAutomaton, delta: str = DEFAULT_DELTA, name: str = "ia") -> str:
    """Graphviz digraph. Inputs render as ``a?``, outputs as ``x!``, quiescence dashed."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;", "  node [shape=circle];"]
    for q in sorted(s.states):
        shape = " [shape=doublecircle]" if q == s.initial else ""
        lines.append(f'  "{q}"{shape};')
    for src, label, dst in sorted(s.transitions):
        mark = "?" if label in s.inputs else "!"
        style = ", style=dashed" if label == delta else ""
        lines.append(f'  "{src}" -> "{dst}" [label="{label}{mark}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def verdict_to_json(verdict) -> str:
    return json.dumps(verdict.to_dict(), ensure_ascii=False, separators=(",", ":"))
