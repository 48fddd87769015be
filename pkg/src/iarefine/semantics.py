"""After-sets, enabled labels and the trace-based observations of an automaton.

Traces are tuples of label names. Failure traces are a body plus an optional
refused input; a refused input does not count towards enumeration depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .automaton import InterfaceAutomaton
from .errors import ForeignLabel

Trace = tuple[str, ...]
StateSet = frozenset[str]


@dataclass(frozen=True)
class FailureTrace:
    body: Trace
    refusal: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def __len__(self):
        return len(self.body)

    def sort_key(self):
        # length-lex on the body, plain trace before its refusals
        return (len(self.body), self.body, self.refusal is not None, self.refusal or "")

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def render(self) -> str:
        return format_trace(self.body, self.refusal)


def format_trace(body: Sequence[str], refusal: str | None = None) -> str:
    parts = list(body)
    if refusal is not None:
        parts.append("!" + refusal)
    return " ".join(parts) if parts else "ε"


def _check_labels(s: InterfaceAutomaton, trace: Iterable[str]) -> None:
    for label in trace:
        if label not in s.inputs and label not in s.outputs:
            raise ForeignLabel(f"label {label!r} is not in the alphabet")


def step(s: InterfaceAutomaton, states: Iterable[str], label: str) -> StateSet:
    result: set[str] = set()
    for q in states:
        result |= s.successors(q, label)
    return frozenset(result)


def after(s: InterfaceAutomaton, start: Iterable[str] | None, trace: Sequence[str]) -> StateSet:
    """States reachable from ``start`` along ``trace``; ``None`` means the initial state."""
    _check_labels(s, trace)
    current = frozenset([s.initial]) if start is None else frozenset(start)
    for label in trace:
        if not current:
            break
        current = step(s, current, label)
    return current


def out_set(s: InterfaceAutomaton, states: Iterable[str]) -> frozenset[str]:
    result: set[str] = set()
    for q in states:
        result |= s.enabled_outputs(q)
    return frozenset(result)


def in_universal(s: InterfaceAutomaton, states: Iterable[str]) -> frozenset[str]:
    """Inputs enabled in every state of the set; all inputs for the empty set."""
    result = s.inputs
    for q in states:
        result = result & s.enabled_inputs(q)
    return result


def is_trace(s: InterfaceAutomaton, trace: Sequence[str]) -> bool:
    return bool(after(s, None, trace))


def _walk(s: InterfaceAutomaton, k: int):
    """Yield (trace, after-set) for every trace of length at most k, length-lex order."""
    level = [((), frozenset([s.initial]))]
    labels = sorted(s.labels)
    for depth in range(k + 1):
        nxt = []
        for trace, states in level:
            yield trace, states
            if depth == k:
                continue
            for label in labels:
                succ = step(s, states, label)
                if succ:
                    nxt.append((trace + (label,), succ))
        level = nxt


def enumerate_traces(s: InterfaceAutomaton, k: int) -> set[Trace]:
    return {trace for trace, _ in _walk(s, k)}


def is_ftrace(s: InterfaceAutomaton, ft: FailureTrace) -> bool:
    if ft.refusal is not None and ft.refusal not in s.inputs:
        raise ForeignLabel(f"refusal {ft.refusal!r} is not an input")
    states = after(s, None, ft.body)
    if not states:
        return False
    return ft.refusal is None or ft.refusal not in in_universal(s, states)


def enumerate_ftraces(s: InterfaceAutomaton, k: int) -> set[FailureTrace]:
    result: set[FailureTrace] = set()
    for trace, states in _walk(s, k):
        result.add(FailureTrace(trace))
        for a in s.inputs - in_universal(s, states):
            result.add(FailureTrace(trace, a))
    return result


def fcl_member(s: InterfaceAutomaton, ft: FailureTrace) -> bool:
    """Membership in the input-failure closure of the failure traces of ``s``.

    Walks the body once. As soon as some prefix ends in an input that is not
    universally enabled, everything after it is allowed.
    """
    if ft.refusal is not None and ft.refusal not in s.inputs:
        raise ForeignLabel(f"refusal {ft.refusal!r} is not an input")
    _check_labels(s, ft.body)
    current = frozenset([s.initial])
    for label in ft.body:
        if label in s.inputs and label not in in_universal(s, current):
            return True
        current = step(s, current, label)
        if not current:
            return False
    return ft.refusal is None or ft.refusal not in in_universal(s, current)


def oe_member(s: InterfaceAutomaton, trace: Sequence[str]) -> bool:
    """Every output along the trace is enabled in some state reached so far."""
    _check_labels(s, trace)
    current = frozenset([s.initial])
    for label in trace:
        if label in s.outputs and label not in out_set(s, current):
            return False
        current = step(s, current, label)
    return True


def iu_member(s: InterfaceAutomaton, trace: Sequence[str]) -> bool:
    """Every input along the trace is enabled in all states reached so far."""
    _check_labels(s, trace)
    current = frozenset([s.initial])
    for label in trace:
        if label in s.inputs and label not in in_universal(s, current):
            return False
        current = step(s, current, label)
    return True


def utraces(s: InterfaceAutomaton, k: int) -> set[Trace]:
    return {trace for trace, _ in _walk(s, k) if iu_member(s, trace)}
