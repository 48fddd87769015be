import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iarefine import corpus
from iarefine.automaton import validate
from iarefine.errors import (
    AlphabetOverlap,
    DuplicateInitial,
    FormatError,
    MissingInitial,
    UndeclaredLabel,
)
from iarefine.formats import export_dot, parse, serialize, verdict_to_json
from iarefine.relations import check_if
from iarefine.transforms import delta_closure, determinize


def test_parse_with_comments_and_split_declarations():
    s = parse("# demo\ninputs a\noutputs x\ninputs b  # more\ninitial p\np a q\nq x p\n")
    assert s.inputs == {"a", "b"} and s.initial == "p"
    assert s.transitions == {("p", "a", "q"), ("q", "x", "p")}


@pytest.mark.parametrize("text,error,line", [
    ("inputs a\np a q\n", MissingInitial, None),
    ("inputs a\ninitial p\ninitial q\n", DuplicateInitial, 3),
    ("inputs a\ninitial p\np a\n", FormatError, 3),
    ("inputs a\ninitial p q\n", FormatError, 2),
    ("inputs a\ninitial p\np a q$\n", FormatError, 3),
])
def test_format_errors(text, error, line):
    with pytest.raises(error) as info:
        parse(text)
    assert info.value.line == line


def test_initial_line_declares_its_state():
    s = parse("inputs a\ninitial p\n")
    assert s.states == {"p"} and not s.transitions


def test_overlap_and_undeclared_labels():
    with pytest.raises(AlphabetOverlap):
        parse("inputs a\noutputs a\ninitial p\n")
    with pytest.raises(UndeclaredLabel) as info:
        parse("inputs a\ninitial p\np a q\np z q\n")
    assert info.value.line == 4


@pytest.mark.parametrize("name", corpus.NAMES)
def test_corpus_round_trip(name):
    s = corpus.load(name)
    assert parse(serialize(s)) == s
    assert serialize(parse(serialize(s))) == serialize(s)


def test_isolated_states_survive_round_trip():
    s = validate(["q0", "lonely"], ["a"], [], [], "q0")
    text = serialize(s)
    assert "states lonely" in text
    assert parse(text) == s


def test_determinized_output_parses(load):
    det = determinize(load("s_A"))
    assert parse(serialize(det)) == det
    assert check_if(parse(serialize(det)), det).holds


def test_dot_export(load):
    dot = export_dot(delta_closure(load("s_E")))
    assert dot.startswith('digraph "ia" {\n  rankdir=LR;\n')
    assert '"q0" [shape=doublecircle];' in dot
    assert '[label="a?"]' in dot
    assert dot.count("style=dashed") == 2


def test_verdict_json(load):
    d = json.loads(verdict_to_json(check_if(load("s_B"), load("s_A"))))
    assert d["witness"]["trace"] == ["a", "x", "a"]


names = st.sampled_from(["q0", "q1", "q2", "p'", "r.s", "t-1"])


@st.composite
def automata(draw):
    inputs = draw(st.sets(st.sampled_from(["a", "b", "in_1"]), max_size=3))
    outputs = draw(st.sets(st.sampled_from(["x", "y", "out.2"]), max_size=3))
    labels = sorted(inputs | outputs)
    transitions = []
    if labels:
        transitions = draw(st.lists(st.tuples(names, st.sampled_from(labels), names), max_size=10))
    initial = draw(names)
    states = draw(st.sets(names, max_size=3)) | {initial}
    return validate(states, inputs, outputs, transitions, initial)


@settings(max_examples=200, deadline=None)
@given(automata())
def test_round_trip_property(s):
    assert parse(serialize(s)) == s
