"""Finite interface automata as immutable values."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import AlphabetOverlap, DanglingState, InvalidAutomaton, UndeclaredLabel

IDENT = re.compile(r"[A-Za-z0-9_.'-]+")

Transition = tuple[str, str, str]


@dataclass(frozen=True)
class InterfaceAutomaton:
    """A finite automaton whose labels are split into inputs and outputs.

    Build instances with :func:`validate`; the raw constructor does not check
    anything. Transitions are a set, so each (state, label) pair has finitely
    many successors by construction.
    """

    states: frozenset[str]
    inputs: frozenset[str]
    outputs: frozenset[str]
    transitions: frozenset[Transition]
    initial: str

    @property
    def labels(self) -> frozenset[str]:
        return self.inputs | self.outputs

    def kind(self, label: str) -> str:
        if label in self.inputs:
            return "input"
        if label in self.outputs:
            return "output"
        raise KeyError(label)

    @cached_property
    def successor_map(self) -> dict[str, dict[str, frozenset[str]]]:
        table: dict[str, dict[str, set[str]]] = {q: {} for q in self.states}
        for src, label, dst in self.transitions:
            table[src].setdefault(label, set()).add(dst)
        return {q: {l: frozenset(d) for l, d in row.items()} for q, row in table.items()}

    def successors(self, state: str, label: str) -> frozenset[str]:
        return self.successor_map[state].get(label, frozenset())

    def enabled(self, state: str) -> frozenset[str]:
        return frozenset(self.successor_map[state])

    def enabled_inputs(self, state: str) -> frozenset[str]:
        return self.enabled(state) & self.inputs

    def enabled_outputs(self, state: str) -> frozenset[str]:
        return self.enabled(state) & self.outputs

    @cached_property
    def reachable_states(self) -> frozenset[str]:
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for targets in self.successor_map[q].values():
                for t in targets:
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return frozenset(seen)

    def __str__(self):
        return (
            f"IA(|Q|={len(self.states)}, I={sorted(self.inputs)}, "
            f"O={sorted(self.outputs)}, |T|={len(self.transitions)}, q0={self.initial})"
        )


def validate(
    states: Iterable[str],
    inputs: Iterable[str],
    outputs: Iterable[str],
    transitions: Iterable[Transition],
    initial: str,
) -> InterfaceAutomaton:
    """Check a raw 5-tuple and return the automaton it describes.

    States mentioned only by transitions are declared implicitly. The initial
    state must be declared or used by a transition. Every problem found is
    reported together; the exception type reflects the first one.
    """
    states = set(states)
    inputs = frozenset(inputs)
    outputs = frozenset(outputs)
    transitions = frozenset((str(s), str(l), str(d)) for s, l, d in transitions)

    errors: list[tuple[type, str]] = []
    for name in sorted(states | inputs | outputs | {initial}):
        if not isinstance(name, str) or not IDENT.fullmatch(name):
            errors.append((InvalidAutomaton, f"bad identifier {name!r}"))
    overlap = inputs & outputs
    if overlap:
        errors.append((AlphabetOverlap, f"labels both input and output: {sorted(overlap)}"))
    alphabet = inputs | outputs
    for src, label, dst in sorted(transitions):
        if label not in alphabet:
            errors.append((UndeclaredLabel, f"transition {src} {label} {dst} uses undeclared label {label!r}"))
        for q in (src, dst):
            if not IDENT.fullmatch(q):
                errors.append((InvalidAutomaton, f"bad identifier {q!r}"))
        states.update((src, dst))
    if initial not in states:
        errors.append((DanglingState, f"initial state {initial!r} is not declared"))

    if errors:
        cls = errors[0][0]
        raise cls([msg for _, msg in errors])
    return InterfaceAutomaton(frozenset(states), inputs, outputs, transitions, initial)


def is_deterministic(s: InterfaceAutomaton) -> bool:
    return all(
        len(targets) <= 1
        for q in s.reachable_states
        for targets in s.successor_map[q].values()
    )


def is_input_enabled(s: InterfaceAutomaton, reachable_only: bool = True) -> bool:
    """True iff every state enables every input.

    By default only reachable states are inspected; pass
    ``reachable_only=False`` for the literal all-states reading.
    """
    pool = s.reachable_states if reachable_only else s.states
    return all(s.inputs <= s.enabled(q) for q in pool)


def reachable_part(s: InterfaceAutomaton) -> InterfaceAutomaton:
    keep = s.reachable_states
    if keep == s.states:
        return s
    return InterfaceAutomaton(
        keep,
        s.inputs,
        s.outputs,
        frozenset(t for t in s.transitions if t[0] in keep),
        s.initial,
    )


def is_image_finite(s: InterfaceAutomaton) -> bool:
    # Always true: transitions form a finite set. Kept so callers can state
    # the assumption they rely on instead of leaving it implicit.
    return True


def is_acyclic(s: InterfaceAutomaton) -> bool:
    return longest_path(s) is not None


def longest_path(s: InterfaceAutomaton) -> int | None:
    """Length of the longest path from the initial state, or None on a reachable cycle."""
    memo: dict[str, int] = {}
    on_stack: set[str] = set()

    # Explicit stack: random automata are tiny but corpus users may not be.
    stack: list[tuple[str, Iterable[str]]] = [(s.initial, iter(_succ_all(s, s.initial)))]
    on_stack.add(s.initial)
    while stack:
        q, it = stack[-1]
        advanced = False
        for t in it:
            if t in on_stack:
                return None
            if t not in memo:
                on_stack.add(t)
                stack.append((t, iter(_succ_all(s, t))))
                advanced = True
                break
        if not advanced:
            stack.pop()
            on_stack.discard(q)
            memo[q] = max((1 + memo[t] for t in _succ_all(s, q)), default=0)
    return memo[s.initial]


def _succ_all(s: InterfaceAutomaton, q: str) -> list[str]:
    out: set[str] = set()
    for targets in s.successor_map[q].values():
        out |= targets
    return sorted(out)
