"""Quiescence closure and the two subset constructions."""

from __future__ import annotations

from collections import deque

from .automaton import IDENT, InterfaceAutomaton
from .errors import DeltaNameClash, InvalidAutomaton
from .semantics import in_universal, out_set, step

DEFAULT_DELTA = "delta"


def delta_closure(s: InterfaceAutomaton, delta: str = DEFAULT_DELTA) -> InterfaceAutomaton:
    """Add ``delta`` as an output looping on every state that enables no output."""
    if not IDENT.fullmatch(delta):
        raise InvalidAutomaton([f"bad quiescence label {delta!r}"])
    if delta in s.labels:
        raise DeltaNameClash(f"quiescence label {delta!r} already belongs to the alphabet")
    loops = {(q, delta, q) for q in s.states if not s.enabled_outputs(q)}
    return InterfaceAutomaton(
        s.states,
        s.inputs,
        s.outputs | {delta},
        s.transitions | loops,
        s.initial,
    )


def subset_name(members: frozenset[str]) -> str:
    return ".".join(sorted(members))


def _subset_construction(s: InterfaceAutomaton, universal_inputs: bool):
    names: dict[frozenset[str], str] = {}
    taken: set[str] = set()

    def name_of(members: frozenset[str]) -> str:
        if members not in names:
            base = subset_name(members)
            candidate, n = base, 1
            while candidate in taken:
                n += 1
                candidate = f"{base}-{n}"
            taken.add(candidate)
            names[members] = candidate
        return names[members]

    start = frozenset([s.initial])
    name_of(start)
    queue = deque([start])
    seen = {start}
    transitions = set()
    labels = sorted(s.labels)
    while queue:
        members = queue.popleft()
        if universal_inputs:
            allowed = in_universal(s, members) | out_set(s, members)
        else:
            allowed = s.labels
        for label in labels:
            if label not in allowed:
                continue
            target = step(s, members, label)
            if not target:
                continue
            if target not in seen:
                seen.add(target)
                queue.append(target)
            transitions.add((name_of(members), label, name_of(target)))
    det = InterfaceAutomaton(
        frozenset(names.values()),
        s.inputs,
        s.outputs,
        frozenset(transitions),
        names[start],
    )
    return det, {v: k for k, v in names.items()}


def determinize(s: InterfaceAutomaton) -> InterfaceAutomaton:
    return _subset_construction(s, universal_inputs=False)[0]


def determinize_iu(s: InterfaceAutomaton) -> InterfaceAutomaton:
    """Subset construction where an input is kept only if every member enables it."""
    return _subset_construction(s, universal_inputs=True)[0]


def determinize_with_members(s: InterfaceAutomaton, universal_inputs: bool = False):
    """Like :func:`determinize` but also return the map from state name to members."""
    return _subset_construction(s, universal_inputs)
