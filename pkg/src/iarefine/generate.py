"""Random small interface automata for property tests and benchmarks."""

from __future__ import annotations

import random

from .automaton import InterfaceAutomaton, validate

INPUT_NAMES = ("a", "b")
OUTPUT_NAMES = ("x", "y")


def random_alphabet(rng: random.Random, max_inputs: int = 2, max_outputs: int = 2):
    n_in = rng.randint(0, max_inputs)
    n_out = rng.randint(1, max_outputs)
    return INPUT_NAMES[:n_in], OUTPUT_NAMES[:n_out]


def random_automaton(
    rng: random.Random,
    inputs=None,
    outputs=None,
    max_states: int = 5,
    density: float | None = None,
    acyclic: bool = False,
    input_enabled: bool = False,
    branching: float = 0.25,
) -> InterfaceAutomaton:
    """Draw an automaton with states ``q0..q{n-1}``.

    Each (state, label) pair is enabled with probability ``density`` (drawn
    from [0.3, 0.8] when not given) and then gets one random successor, plus a
    second one with probability ``branching``. Acyclic automata only move to
    higher-numbered states.
    """
    if inputs is None or outputs is None:
        inputs, outputs = random_alphabet(rng)
    n = rng.randint(1, max_states)
    if density is None:
        density = rng.uniform(0.3, 0.8)
    states = [f"q{i}" for i in range(n)]
    transitions = set()
    for i, q in enumerate(states):
        targets = states[i + 1:] if acyclic else states
        if not targets:
            continue
        for label in list(inputs) + list(outputs):
            forced = input_enabled and label in inputs and not acyclic
            if not forced and rng.random() >= density:
                continue
            transitions.add((q, label, rng.choice(targets)))
            if rng.random() < branching:
                transitions.add((q, label, rng.choice(targets)))
    return validate(states, inputs, outputs, transitions, "q0")


def random_pair(rng: random.Random, **kwargs):
    inputs, outputs = random_alphabet(rng)
    left_kwargs = dict(kwargs)
    right_kwargs = dict(kwargs)
    right_kwargs.pop("input_enabled", None)
    return (
        random_automaton(rng, inputs, outputs, **left_kwargs),
        random_automaton(rng, inputs, outputs, **right_kwargs),
    )


def mutate(s: InterfaceAutomaton, rng: random.Random, drop_output: float = 0.3,
           drop_input: float = 0.05) -> InterfaceAutomaton:
    """Delete random transitions. Removing only outputs always yields a refinement."""
    kept = [
        t for t in sorted(s.transitions)
        if rng.random() >= (drop_input if t[1] in s.inputs else drop_output)
    ]
    return validate(s.states, s.inputs, s.outputs, kept, s.initial)
