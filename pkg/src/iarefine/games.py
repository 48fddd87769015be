"""Strategy games on interface automata.

A play is driven by four choice functions over paths: which input the
environment offers, which output the system offers, which successor the
system picks for a label, and who wins when both an input and an output are
offered (race bit 0: the input, 1: the output).

The alternating-trace game asks: for every system strategy of the left
automaton, is there a system strategy of the right automaton whose outcome
traces (over all environment behaviours) are among the left's? Fixing the
system side turns the environment's freedom into a set of traces, so the
question becomes containment between trace sets. Those sets are computed up
to a depth bound; a failed containment at any depth is a genuine disproof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .automaton import InterfaceAutomaton, longest_path
from .errors import BudgetExceeded
from .relations import require_same_alphabet
from .semantics import Trace, format_trace, in_universal, out_set, step as set_step

Path = tuple[str, ...]  # q0, l1, q1, ..., ln, qn

HOLDS_EXACT = "holds-exact"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
DEFAULT_BUDGET = 10**6


@dataclass
class StrategyProfile:
    """Choice tables keyed by paths. Missing race entries mean 0."""

    input_choice: dict[Path, str] = field(default_factory=dict)
    output_choice: dict[Path, str] = field(default_factory=dict)
    det_choice: dict[tuple[Path, str], str] = field(default_factory=dict)
    race_choice: dict[Path, int] = field(default_factory=dict)

    def successor(self, s: InterfaceAutomaton, path: Path, label: str) -> str:
        options = s.successors(path[-1], label)
        if not options:
            raise ValueError(f"{label!r} is not enabled in {path[-1]!r}")
        chosen = self.det_choice.get((path, label))
        if chosen is None:
            if len(options) > 1:
                raise ValueError(f"no successor chosen for {label!r} after path {path}")
            (chosen,) = options
        elif chosen not in options:
            raise ValueError(f"{chosen!r} is not a {label!r}-successor of {path[-1]!r}")
        return chosen

    def with_inputs(self, input_choice: dict[Path, str]) -> StrategyProfile:
        return StrategyProfile(dict(input_choice), self.output_choice, self.det_choice, self.race_choice)

    def to_dict(self) -> dict[str, Any]:
        def key(path):
            return " ".join(path)

        return {
            "output": {key(p): l for p, l in sorted(self.output_choice.items())},
            "race": {key(p): r for p, r in sorted(self.race_choice.items())},
            "successor": {f"{key(p)} {l}": q for (p, l), q in sorted(self.det_choice.items())},
        }


def path_trace(path: Path) -> Trace:
    return tuple(path[1::2])


def step(s: InterfaceAutomaton, path: Path, f: StrategyProfile) -> Path:
    """Advance a play by one move, or return it unchanged when nobody moves."""
    q = path[-1]
    inp = f.input_choice.get(path)
    out = f.output_choice.get(path)
    if inp is not None and inp not in s.enabled_inputs(q):
        raise ValueError(f"input {inp!r} is not enabled in {q!r}")
    if out is not None and out not in s.enabled_outputs(q):
        raise ValueError(f"output {out!r} is not enabled in {q!r}")
    race = f.race_choice.get(path, 0)
    if inp is not None and (out is None or race == 0):
        label = inp
    elif out is not None and (inp is None or race == 1):
        label = out
    else:
        return path
    return path + (label, f.successor(s, path, label))


def outcome(s: InterfaceAutomaton, f: StrategyProfile, k: int) -> tuple[Path, bool]:
    """Play from the initial state until nobody moves or k moves were made.

    Returns the path and whether the play ended on its own.
    """
    path: Path = (s.initial,)
    while len(path) // 2 < k:
        nxt = step(s, path, f)
        if nxt == path:
            return path, True
        path = nxt
    return path, step(s, path, f) == path


@dataclass(frozen=True)
class OutcomeTree:
    """The traces one system strategy admits, cut off at ``depth`` moves.

    ``traces`` holds every trace where the environment may end the play,
    plus every trace of exactly ``depth`` labels.
    """

    traces: frozenset[Trace]
    depth: int

    @cached_property
    def prefixes(self) -> frozenset[Trace]:
        return frozenset(t[:i] for t in self.traces for i in range(len(t) + 1))

    def stoppable(self, t: Trace) -> bool:
        return len(t) < self.depth and t in self.traces

    def frontier(self, t: Trace) -> bool:
        return len(t) == self.depth and t in self.traces


def outcome_set(s: InterfaceAutomaton, system_part: StrategyProfile, k: int) -> OutcomeTree:
    """All outcome traces of ``system_part`` as the environment varies its inputs."""
    traces: set[Trace] = set()

    def visit(path: Path):
        t = path_trace(path)
        if len(t) == k:
            traces.add(t)
            return
        q = path[-1]
        out = system_part.output_choice.get(path)
        race = system_part.race_choice.get(path, 0)
        if out is None:
            traces.add(t)
        else:
            visit(path + (out, system_part.successor(s, path, out)))
        if out is None or race == 0:
            for a in sorted(s.enabled_inputs(q)):
                visit(path + (a, system_part.successor(s, path, a)))

    visit((s.initial,))
    return OutcomeTree(frozenset(traces), k)


def inner_containment(s2: InterfaceAutomaton, target: OutcomeTree, k: int | None = None) -> bool:
    """Is there a system strategy for ``s2`` whose outcome traces all lie in ``target``?

    Only two local options matter: offer no output, or offer an output and
    win every race. Racing for the input only adds plays, so it never helps.
    """
    k = target.depth if k is None else k
    prefixes = target.prefixes
    memo: dict[tuple[str, Trace], bool] = {}

    def win(q: str, t: Trace) -> bool:
        if len(t) >= k:
            return t in target.traces
        key = (q, t)
        if key in memo:
            return memo[key]
        memo[key] = False  # plays only grow, so no cycles; this is just a guard
        result = False
        if t in target.traces:
            result = all(
                t + (a,) in prefixes and any(win(q2, t + (a,)) for q2 in sorted(s2.successors(q, a)))
                for a in sorted(s2.enabled_inputs(q))
            )
        if not result:
            for x in sorted(s2.enabled_outputs(q)):
                tx = t + (x,)
                if tx in prefixes and any(win(q2, tx) for q2 in sorted(s2.successors(q, x))):
                    result = True
                    break
        memo[key] = result
        return result

    return win(s2.initial, ())


# -- bounded refutation of alternating-trace containment ------------------------
#
# Fixing a left-side strategy C, the right side can match it from state q iff
# q is in W(C), computed bottom-up:
#   frontier:           every state
#   stop, inputs C_a:   q enables only inputs a the left accepts, and some
#                       a-successor of q lies in W(C_a)
#   forced output x, C: q enables x and some x-successor lies in W(C)
# W is monotone in the W of the children, so per (left state, moves left) it
# suffices to keep strategies whose W is inclusion-minimal. That antichain
# lives over subsets of right-side states, which keeps the search small even
# where the raw number of strategies explodes.


@dataclass(frozen=True, eq=False)
class _Plan:
    """Left-side strategy below one state: stop-and-accept-inputs, or force ``output``."""

    output: str | None = None
    moves: tuple[tuple[str, str, "_Plan"], ...] = ()  # (label, successor, sub-plan)


_FRONTIER = _Plan()


def _plan_traces(plan: _Plan) -> frozenset[Trace]:
    if plan is _FRONTIER:
        return frozenset([()])
    out = {()} if plan.output is None else set()
    for label, _, sub in plan.moves:
        out.update((label,) + t for t in _plan_traces(sub))
    return frozenset(out)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"more than {self.limit} candidate strategies")


def _minimal(options):
    """Drop options whose matching set is a superset of another's; keep the first per set."""
    by_set: dict[frozenset[str], Any] = {}
    for w, payload in options:
        by_set.setdefault(w, payload)
    ordered = sorted(by_set.items(), key=lambda item: (len(item[0]), sorted(item[0])))
    kept: list[tuple[frozenset[str], Any]] = []
    for w, payload in ordered:
        if not any(k <= w for k, _ in kept):
            kept.append((w, payload))
    return kept


class _Refuter:
    def __init__(self, s1: InterfaceAutomaton, s2: InterfaceAutomaton, budget: _Budget):
        self.s1, self.s2, self.budget = s1, s2, budget
        self.all2 = frozenset(s2.reachable_states)
        self.memo: dict[tuple[str, int], list[tuple[frozenset[str], _Plan]]] = {}

    def family(self, q1: str, rem: int):
        if rem == 0:
            return [(self.all2, _FRONTIER)]
        key = (q1, rem)
        if key in self.memo:
            return self.memo[key]
        s1, s2 = self.s1, self.s2
        options = []

        inputs = sorted(s1.enabled_inputs(q1))
        branches = []
        for a in inputs:
            sub = [(w, (q1n, plan)) for q1n in sorted(s1.successors(q1, a)) for w, plan in self.family(q1n, rem - 1)]
            branches.append(_minimal(sub))
        for combo in itertools.product(*branches):
            self.budget.spend()
            chosen = dict(zip(inputs, combo))
            w = frozenset(
                q2 for q2 in self.all2
                if all(
                    a in chosen and not chosen[a][0].isdisjoint(s2.successors(q2, a))
                    for a in s2.enabled_inputs(q2)
                )
            )
            plan = _Plan(None, tuple((a, q1n, p) for a, (_, (q1n, p)) in chosen.items()))
            options.append((w, plan))

        for x in sorted(s1.enabled_outputs(q1)):
            for q1n in sorted(s1.successors(q1, x)):
                for wc, p in self.family(q1n, rem - 1):
                    self.budget.spend()
                    w = frozenset(
                        q2 for q2 in self.all2
                        if not wc.isdisjoint(s2.successors(q2, x))
                    )
                    options.append((w, _Plan(x, ((x, q1n, p),))))

        result = _minimal(options)
        self.memo[key] = result
        return result


def _plan_profile(s: InterfaceAutomaton, plan: _Plan) -> StrategyProfile:
    prof = StrategyProfile()

    def fill(path: Path, p: _Plan):
        if p.output is not None:
            prof.output_choice[path] = p.output
            prof.race_choice[path] = 1
        for label, q2, sub in p.moves:
            prof.det_choice[(path, label)] = q2
            fill(path + (label, q2), sub)

    fill((s.initial,), plan)
    return prof


def _plan_lines(s: InterfaceAutomaton, plan: _Plan, level: int = 1) -> list[str]:
    """Indented play tree: one line per move, ``(may stop)`` where the play can end."""
    lines = []
    for label, q2, sub in plan.moves:
        mark = "?" if label in s.inputs else "!"
        lines.append(f"{'  ' * level}{label}{mark} -> {q2}{_node_suffix(sub)}")
        lines.extend(_plan_lines(s, sub, level + 1))
    return lines


def _node_suffix(plan: _Plan) -> str:
    if plan is _FRONTIER:
        return " ..."
    return " (may stop)" if plan.output is None else ""


def _plan_json(s: InterfaceAutomaton, state: str, plan: _Plan) -> dict[str, Any]:
    node: dict[str, Any] = {"state": state}
    if plan is _FRONTIER:
        node["frontier"] = True
        return node
    node["stop"] = plan.output is None
    node["moves"] = [
        {"label": label, "kind": s.kind(label), "child": _plan_json(s, q2, sub)}
        for label, q2, sub in plan.moves
    ]
    return node


@dataclass
class AtcVerdict:
    relation: str
    status: str
    depth: int
    method: str = "bounded-game"
    refuted_at: int | None = None
    refuting_profile: StrategyProfile | None = None
    narrative: list[str] = field(default_factory=list)
    play_tree: dict[str, Any] | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def holds_exact(self) -> bool:
        return self.status == HOLDS_EXACT

    # uniform with Verdict so reports can treat both alike
    @property
    def holds(self) -> bool:
        return self.holds_exact

    @property
    def fails(self) -> bool:
        return self.refuted

    @property
    def witness(self):
        return None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "relation": self.relation,
            "status": self.status,
            "method": self.method,
            "depth": self.depth,
        }
        if self.refuted_at is not None:
            out["refuted_at"] = self.refuted_at
        if self.play_tree is not None:
            out["strategy"] = self.play_tree
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def _exact_depth(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> int | None:
    """Depth beyond which no play can continue, or None if either side has a cycle."""
    l1, l2 = longest_path(s1), longest_path(s2)
    if l1 is None or l2 is None:
        return None
    return max(l1, l2) + 1


def refute_atc(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int,
               budget: int = DEFAULT_BUDGET) -> AtcVerdict:
    """Search for a left-side strategy that the right side cannot match within k moves.

    Depths 1..k are tried in turn so a refutation is reported at the smallest
    depth that shows it.
    """
    require_same_alphabet(s1, s2)
    if k < 1:
        raise ValueError("depth must be at least 1")
    tracker = _Budget(budget)
    search = _Refuter(s1, s2, tracker)
    try:
        for j in range(1, k + 1):
            for w, plan in search.family(s1.initial, j):
                if s2.initial in w:
                    continue
                traces = _plan_traces(plan)
                return AtcVerdict(
                    "atc",
                    REFUTED,
                    k,
                    refuted_at=j,
                    refuting_profile=_plan_profile(s1, plan),
                    narrative=[
                        f"left-side strategy, depth {j} (no right-side strategy stays inside its traces):",
                        f"  {s1.initial}{_node_suffix(plan)}",
                        *_plan_lines(s1, plan, 2),
                        "its outcome traces: " + ", ".join(format_trace(t) for t in sorted(traces, key=_lenlex)),
                    ],
                    play_tree=_plan_json(s1, s1.initial, plan),
                    diagnostics={"strategies_tried": tracker.used},
                )
    except BudgetExceeded as exc:
        return AtcVerdict("atc", INCONCLUSIVE, k, diagnostics={"reason": str(exc), "strategies_tried": tracker.used})
    exact = _exact_depth(s1, s2)
    if exact is not None and k >= exact:
        return AtcVerdict("atc", HOLDS_EXACT, k, diagnostics={"strategies_tried": tracker.used})
    return AtcVerdict("atc", INCONCLUSIVE, k, diagnostics={"strategies_tried": tracker.used})


def _lenlex(t: Trace):
    return (len(t), t)


# -- trace-based game ------------------------------------------------------------


def refute_tb(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int) -> AtcVerdict:
    """Bounded search for a winning play of the antagonist in the trace-based game.

    The right side's state is tracked as the set reachable by the trace so
    far, since a trace-based input choice cannot see more. The antagonist wins
    by making the left side produce an output the right side cannot follow,
    or by offering an input that all right-side states accept but the left
    state refuses. The authoritative verdict is :func:`relations.check_tb`;
    this search exists to explain it.
    """
    require_same_alphabet(s1, s2)
    memo: dict[tuple[str, frozenset[str], int], tuple | None] = {}

    def attack(q1: str, S2: frozenset[str], d: int):
        """Shortest antagonist plan from here as (moves, final complaint), or None."""
        if d >= k:
            return None
        key = (q1, S2, d)
        if key in memo:
            return memo[key]
        best = None
        for x in sorted(s1.enabled_outputs(q1)):
            if x not in out_set(s2, S2):
                best = _shorter(best, ((), ("output", x, q1)))
        for a in sorted(in_universal(s2, S2)):
            if a not in s1.enabled_inputs(q1):
                best = _shorter(best, ((), ("refuse", a, q1)))
        if best is None:
            labels = sorted(s1.enabled_outputs(q1) | in_universal(s2, S2))
            for label in labels:
                S2n = set_step(s2, S2, label)
                for q1n in sorted(s1.successors(q1, label)):
                    sub = attack(q1n, S2n, d + 1)
                    if sub is not None:
                        best = _shorter(best, (((label, q1n),) + sub[0], sub[1]))
        memo[key] = best
        return best

    found = attack(s1.initial, frozenset([s2.initial]), 0)
    if found is not None:
        moves, (what, label, q) = found
        trace = tuple(l for l, _ in moves)
        lines = ["antagonist play:"]
        state = s1.initial
        for i, (l, q1n) in enumerate(moves):
            who = "left system outputs" if l in s1.outputs else "environment offers input"
            lines.append(f"  {i + 1}. {who} {l}: left {state} -> {q1n}")
            state = q1n
        if what == "output":
            lines.append(f"  {len(moves) + 1}. left system outputs {label} in {q}; right side cannot after {format_trace(trace)}")
        else:
            lines.append(f"  {len(moves) + 1}. environment offers {label}; right side must accept it, left {q} refuses")
        lines.append(f"trace: {format_trace(trace + (label,))}")
        return AtcVerdict("tb", REFUTED, k, method="bounded-tb-game", refuted_at=len(trace) + 1,
                          narrative=lines,
                          diagnostics={"trace": list(trace), "action": label, "kind": what})
    exact = _exact_depth(s1, s2)
    if exact is not None and k >= exact:
        return AtcVerdict("tb", HOLDS_EXACT, k, method="bounded-tb-game")
    return AtcVerdict("tb", INCONCLUSIVE, k, method="bounded-tb-game")


def _shorter(a, b):
    if a is None:
        return b
    ka = (len(a[0]), [l for l, _ in a[0]], a[1][1])
    kb = (len(b[0]), [l for l, _ in b[0]], b[1][1])
    return b if kb < ka else a

