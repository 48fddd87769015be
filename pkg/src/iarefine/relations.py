"""Exact decision procedures for the refinement and conformance relations.

Everything except ioco funnels through :func:`check_as`: input-failure
refinement is alternating simulation against the input-universal subset
construction of the right-hand side, and uioco is input-failure refinement
of the quiescence closures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .automaton import InterfaceAutomaton, is_input_enabled
from .errors import AlphabetMismatch, InternalError, NotInputEnabled
from .semantics import (
    FailureTrace,
    Trace,
    after,
    fcl_member,
    in_universal,
    is_ftrace,
    iu_member,
    oe_member,
    out_set,
    step,
)
from .transforms import DEFAULT_DELTA, delta_closure, determinize_iu

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped"

OUTPUT_EXTENSION = "output-extension"
INPUT_REFUSAL = "input-refusal"
IOCO_OUTPUT = "ioco-output"
UIOCO_INPUT = "uioco-input"


@dataclass(frozen=True)
class Witness:
    """A trace plus the single action after it that breaks the relation.

    ``output-extension`` and ``ioco-output``: the left side can produce
    ``action`` after ``trace``, the right side cannot. ``input-refusal`` and
    ``uioco-input``: the right side guarantees input ``action`` after
    ``trace``, the left side may refuse it.
    """

    kind: str
    trace: Trace
    action: str

    def __len__(self):
        return len(self.trace) + 1

    @property
    def word(self) -> Trace:
        return tuple(self.trace) + (self.action,)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "trace": list(self.trace), "action": self.action}


@dataclass
class Verdict:
    relation: str
    status: str
    method: str
    witness: Witness | None = None
    depth: int | None = None
    side: str | None = None
    note: str | None = None
    simulation: frozenset[tuple[str, str]] | None = None
    counterexample: FailureTrace | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"relation": self.relation, "status": self.status, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.counterexample is not None:
            trace: list[Any] = list(self.counterexample.body)
            if self.counterexample.refusal is not None:
                trace.append({"refuse": self.counterexample.refusal})
            out["counterexample"] = trace
        if self.side is not None:
            out["side"] = self.side
        if self.depth is not None:
            out["depth"] = self.depth
        if self.simulation is not None:
            out["simulation"] = [list(p) for p in sorted(self.simulation)]
        if self.note is not None:
            out["note"] = self.note
        return out


def require_same_alphabet(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> None:
    if s1.inputs != s2.inputs or s1.outputs != s2.outputs:
        raise AlphabetMismatch(
            f"alphabets differ: inputs {sorted(s1.inputs)} vs {sorted(s2.inputs)}, "
            f"outputs {sorted(s1.outputs)} vs {sorted(s2.outputs)}"
        )


# -- alternating simulation ---------------------------------------------------


@dataclass
class _Deletion:
    round: int
    clause: str  # "out", "in" or "transfer"
    label: str | None = None


def _local_violation(s1, s2, q1, q2):
    bad_out = sorted(s1.enabled_outputs(q1) - s2.enabled_outputs(q2))
    if bad_out:
        return "out", bad_out[0]
    bad_in = sorted(s2.enabled_inputs(q2) - s1.enabled_inputs(q1))
    if bad_in:
        return "in", bad_in[0]
    return None


def _moves(s1, s2, q1, q2):
    """Transfer obligations of a pair: (label, successor in s1, successors in s2)."""
    labels = sorted(s1.enabled_outputs(q1) | s2.enabled_inputs(q2))
    for label in labels:
        targets2 = s2.successors(q2, label)
        for q1n in sorted(s1.successors(q1, label)):
            yield label, q1n, targets2


def _greatest_simulation(s1, s2):
    """Round-based greatest fixpoint over reachable pairs.

    Returns the surviving pairs and, for every deleted pair, the round and
    clause that removed it. Round 0 removes local violations; round r removes
    pairs whose transfer obligations hit only pairs deleted before round r.
    """
    pairs = {(q1, q2) for q1 in s1.reachable_states for q2 in s2.reachable_states}
    deleted: dict[tuple[str, str], _Deletion] = {}
    for pair in pairs:
        bad = _local_violation(s1, s2, *pair)
        if bad:
            deleted[pair] = _Deletion(0, *bad)
    alive = pairs - deleted.keys()
    rnd = 0
    while True:
        rnd += 1
        doomed = {}
        for q1, q2 in alive:
            for label, q1n, targets2 in _moves(s1, s2, q1, q2):
                if not any((q1n, q2n) in alive for q2n in targets2):
                    doomed[(q1, q2)] = _Deletion(rnd, "transfer", label)
                    break
        if not doomed:
            return alive, deleted
        deleted.update(doomed)
        alive -= doomed.keys()


def _reachable_relation(s1, s2, alive):
    start = (s1.initial, s2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        q1, q2 = queue.popleft()
        for _, q1n, targets2 in _moves(s1, s2, q1, q2):
            for q2n in targets2:
                pair = (q1n, q2n)
                if pair in alive and pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return frozenset(seen)


def _failure_path(s1, s2, deleted):
    """Follow the deletion reasons from the initial pair down to a local violation.

    Each step takes the successor obligation deleted earliest (ties by label,
    then state names), so the round number strictly decreases and the trace
    is a shortest one when ``s2`` is deterministic.
    """
    q1, q2 = s1.initial, s2.initial
    trace: list[str] = []
    while True:
        info = deleted[(q1, q2)]
        if info.clause != "transfer":
            return tuple(trace), info.clause, info.label, (q1, q2)
        best = None
        for label, q1n, targets2 in _moves(s1, s2, q1, q2):
            infos = [deleted.get((q1n, q2n)) for q2n in targets2]
            if any(d is None or d.round >= info.round for d in infos):
                continue  # some partner survives this round, not the cause
            # follow the latest-dying partner; it still died before this pair
            q2n = max(sorted(targets2), key=lambda t: deleted[(q1n, t)].round)
            key = (deleted[(q1n, q2n)].round, label, q1n)
            if best is None or key < best[0]:
                best = (key, label, q1n, q2n)
        if best is None:  # pragma: no cover - deletion bookkeeping guarantees a cause
            raise InternalError(f"no recorded cause for deleting pair {(q1, q2)}")
        _, label, q1n, q2n = best
        trace.append(label)
        q1, q2 = q1n, q2n


def check_as(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> Verdict:
    require_same_alphabet(s1, s2)
    alive, deleted = _greatest_simulation(s1, s2)
    if (s1.initial, s2.initial) in alive:
        return Verdict("as", HOLDS, "greatest-fixpoint", simulation=_reachable_relation(s1, s2, alive))
    trace, clause, label, pair = _failure_path(s1, s2, deleted)
    kind = OUTPUT_EXTENSION if clause == "out" else INPUT_REFUSAL
    note = f"pair ({pair[0]}, {pair[1]}) violates the {clause} clause on {label}"
    return Verdict("as", FAILS, "greatest-fixpoint", witness=Witness(kind, trace, label), note=note)


# -- input-failure refinement and friends --------------------------------------


def _validate_if_witness(s1, s2, w: Witness) -> None:
    if w.kind == OUTPUT_EXTENSION:
        ft = FailureTrace(w.word)
    else:
        ft = FailureTrace(w.trace, w.action)
    if not is_ftrace(s1, ft) or fcl_member(s2, ft):
        raise InternalError(f"witness {ft.render()} does not separate the failure traces")


def check_if(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> Verdict:
    require_same_alphabet(s1, s2)
    sim = check_as(s1, determinize_iu(s2))
    if sim.holds:
        return Verdict("if", HOLDS, "detiu+as")
    _validate_if_witness(s1, s2, sim.witness)
    return Verdict("if", FAILS, "detiu+as", witness=sim.witness)


def check_iuoe(s1: InterfaceAutomaton, s2: InterfaceAutomaton, relation: str = "iuoe",
               method: str = "detiu+as") -> Verdict:
    verdict = check_if(s1, s2)
    if verdict.holds:
        return Verdict(relation, HOLDS, method)
    w = verdict.witness
    word = w.word
    if not (oe_member(s1, word) and iu_member(s2, word)):
        raise InternalError(f"{word} is not in OE(left) and IU(right)")
    if w.kind == INPUT_REFUSAL:
        side = "input"
        ok = not iu_member(s1, word)
    else:
        side = "output"
        ok = not oe_member(s2, word)
    if not ok:
        raise InternalError(f"{word} does not fail on the {side} side")
    return Verdict(relation, FAILS, method, witness=w, side=side)


def check_tb(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> Verdict:
    v = check_iuoe(s1, s2, relation="tb", method="tb-via-iuoe")
    v.note = "exact: finite automata are image-finite, so the trace-based game equals iuoe"
    return v


def check_equiv_if(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> Verdict:
    forward = check_if(s1, s2)
    if forward.fails:
        return Verdict("equiv-if", FAILS, "detiu+as", witness=forward.witness, note="left does not refine right")
    backward = check_if(s2, s1)
    if backward.fails:
        return Verdict("equiv-if", FAILS, "detiu+as", witness=backward.witness, note="right does not refine left")
    return Verdict("equiv-if", HOLDS, "detiu+as")


# -- quiescence-based conformance ----------------------------------------------


def _validate_ioco_witness(di, ds, w: Witness, universal: bool) -> None:
    if universal and not iu_member(ds, w.trace):
        raise InternalError(f"{w.trace} is not input-universal for the specification")
    i_states = after(di, None, w.trace)
    s_states = after(ds, None, w.trace)
    if not s_states:
        raise InternalError(f"{w.trace} is not a specification trace")
    if w.kind == IOCO_OUTPUT:
        ok = w.action in out_set(di, i_states) and w.action not in out_set(ds, s_states)
    else:
        ok = w.action in in_universal(ds, s_states) and w.action not in in_universal(di, i_states)
    if not ok:
        raise InternalError(f"witness {w} does not violate its clause")


def _product_uioco(di, ds):
    """Breadth-first walk over (implementation after-set, specification after-set) along the specification's Utraces."""
    labels = sorted(di.labels)
    start = (frozenset([di.initial]), frozenset([ds.initial]))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (p, s), trace = queue.popleft()
        bad_out = sorted(out_set(di, p) - out_set(ds, s))
        if bad_out:
            return Witness(IOCO_OUTPUT, trace, bad_out[0])
        bad_in = sorted(in_universal(ds, s) - in_universal(di, p))
        if bad_in:
            return Witness(UIOCO_INPUT, trace, bad_in[0])
        spec_inputs = in_universal(ds, s)
        for label in labels:
            if label in ds.inputs and label not in spec_inputs:
                continue
            s2 = step(ds, s, label)
            p2 = step(di, p, label)
            if not s2 or not p2:
                continue
            node = (p2, s2)
            if node not in seen:
                seen.add(node)
                queue.append((node, trace + (label,)))
    return None


def check_uioco(i: InterfaceAutomaton, s: InterfaceAutomaton, delta: str = DEFAULT_DELTA,
                verify: bool = False) -> Verdict:
    require_same_alphabet(i, s)
    di, ds = delta_closure(i, delta), delta_closure(s, delta)
    inner = check_if(di, ds)
    witness = None
    if inner.fails:
        w = inner.witness
        kind = IOCO_OUTPUT if w.kind == OUTPUT_EXTENSION else UIOCO_INPUT
        witness = Witness(kind, w.trace, w.action)
        _validate_ioco_witness(di, ds, witness, universal=True)
    if verify:
        other = _product_uioco(di, ds)
        if (other is None) != (witness is None) or (
            other is not None and len(other) != len(witness)
        ):
            raise InternalError(f"uioco routes disagree: {witness} vs {other}")
    if witness is None:
        return Verdict("uioco", HOLDS, "delta+detiu+as")
    return Verdict("uioco", FAILS, "delta+detiu+as", witness=witness)


def check_ioco(i: InterfaceAutomaton, s: InterfaceAutomaton, delta: str = DEFAULT_DELTA) -> Verdict:
    require_same_alphabet(i, s)
    if not is_input_enabled(i):
        raise NotInputEnabled("ioco needs an implementation that accepts every input in every reachable state")
    di, ds = delta_closure(i, delta), delta_closure(s, delta)
    labels = sorted(di.labels)
    start = (frozenset([di.initial]), frozenset([ds.initial]))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (p, q), trace = queue.popleft()
        bad = sorted(out_set(di, p) - out_set(ds, q))
        if bad:
            w = Witness(IOCO_OUTPUT, trace, bad[0])
            _validate_ioco_witness(di, ds, w, universal=False)
            return Verdict("ioco", FAILS, "delta+subset-product", witness=w)
        for label in labels:
            q2 = step(ds, q, label)
            p2 = step(di, p, label)
            if not q2 or not p2:
                continue
            node = (p2, q2)
            if node not in seen:
                seen.add(node)
                queue.append((node, trace + (label,)))
    return Verdict("ioco", HOLDS, "delta+subset-product")


# -- everything at once --------------------------------------------------------

LATTICE = ("as", "atc", "tb", "iuoe", "if", "uioco", "ioco")


def check_all(s1: InterfaceAutomaton, s2: InterfaceAutomaton, delta: str = DEFAULT_DELTA,
              depth: int = 6, budget: int | None = None) -> dict[str, Any]:
    """Run every relation and check the results against the known implications."""
    from .games import refute_atc  # games imports this module

    require_same_alphabet(s1, s2)
    report: dict[str, Any] = {
        "as": check_as(s1, s2),
        "if": check_if(s1, s2),
        "iuoe": check_iuoe(s1, s2),
        "tb": check_tb(s1, s2),
        "uioco": check_uioco(s1, s2, delta),
    }
    if is_input_enabled(s1):
        report["ioco"] = check_ioco(s1, s2, delta)
    else:
        report["ioco"] = Verdict("ioco", SKIPPED, "delta+subset-product",
                                 note="implementation is not input-enabled")
    kwargs = {} if budget is None else {"budget": budget}
    report["atc"] = refute_atc(s1, s2, depth, **kwargs)
    check_lattice(report)
    return {name: report[name] for name in LATTICE}


def check_lattice(report: dict[str, Any]) -> None:
    problems = []
    atc = report["atc"]
    if report["as"].holds:
        if atc.refuted:
            problems.append("as holds but atc is refuted")
        if not report["if"].holds:
            problems.append("as holds but if fails")
    if atc.holds_exact and not report["tb"].holds:
        problems.append("atc holds but tb fails")
    if atc.refuted and report["as"].holds:
        problems.append("atc refuted but as holds")
    if not (report["tb"].status == report["iuoe"].status == report["if"].status):
        problems.append("tb, iuoe and if disagree")
    if report["ioco"].holds and not report["uioco"].holds:
        problems.append("ioco holds but uioco fails")
    if problems:
        raise InternalError("; ".join(problems))
