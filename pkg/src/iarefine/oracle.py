"""Brute-force, depth-bounded reference implementations of the relations.

Each oracle walks words in length-lexicographic order and asks the trace
semantics directly whether a word is a counterexample. It never builds a
determinization or a simulation. Words that reach the same pair of after-sets
as a shorter word are not extended again: both have identical futures, so
this prunes nothing a shortest counterexample could need.

Verdicts are exact once ``k`` reaches :func:`exhaustive_depth`. A shortest
counterexample walks through distinct (left state, right after-set) pairs,
and there are at most ``|Q1| * 2**|Q2|`` of those.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .automaton import InterfaceAutomaton, is_input_enabled
from .errors import NotInputEnabled
from .relations import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    INPUT_REFUSAL,
    IOCO_OUTPUT,
    OUTPUT_EXTENSION,
    UIOCO_INPUT,
    Verdict,
    Witness,
    require_same_alphabet,
)
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
)
from .transforms import DEFAULT_DELTA, delta_closure


@dataclass(frozen=True)
class DepthBound:
    k: int
    exhaustive: bool


def exhaustive_depth(s1: InterfaceAutomaton, s2: InterfaceAutomaton) -> int:
    return len(s1.states) * 2 ** len(s2.states)


def depth_bound(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int) -> DepthBound:
    return DepthBound(k, k >= exhaustive_depth(s1, s2))


def _levels(s1, s2, k: int, keep: Callable[[Trace], bool]) -> Iterator[list[Trace]]:
    """Yield the candidate words of each length 0..k.

    Only words accepted by ``keep`` are extended, and of those only the first
    to reach a given pair of after-sets.
    """
    labels = sorted(s1.labels)
    seen = set()
    level: list[Trace] = [()]
    for n in range(k + 1):
        yield level
        nxt = []
        for w in level:
            if n == k or not keep(w):
                continue
            sig = (after(s1, None, w), after(s2, None, w))
            if sig not in seen:
                seen.add(sig)
                nxt.extend(w + (l,) for l in labels)
        if not nxt:
            return
        level = nxt


def _finish(relation: str, method: str, s1, s2, k: int, witness=None, counterexample=None) -> Verdict:
    bound = depth_bound(s1, s2, k)
    if witness is not None:
        return Verdict(relation, FAILS, method, witness=witness, depth=k, counterexample=counterexample)
    status = HOLDS if bound.exhaustive else INCONCLUSIVE
    return Verdict(relation, status, method, depth=k)


def oracle_if(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int) -> Verdict:
    """Look for a failure trace of ``s1`` (body length at most k) outside the closure of ``s2``'s."""
    require_same_alphabet(s1, s2)
    pending: list[FailureTrace] = []  # refusals wait one level: they are one event longer

    def report(candidates):
        for ft in sorted(candidates):
            if is_ftrace(s1, ft) and not fcl_member(s2, ft):
                if ft.refusal is not None:
                    w = Witness(INPUT_REFUSAL, ft.body, ft.refusal)
                else:
                    w = Witness(OUTPUT_EXTENSION, ft.body[:-1], ft.body[-1])
                return _finish("if", "oracle", s1, s2, k, witness=w, counterexample=ft)
        return None

    def extendable(w):
        # after a refusable input of s2 every extension is in the closure
        return bool(after(s1, None, w)) and not _closed_off(s2, w)

    for words in _levels(s1, s2, k, keep=extendable):
        plain = [FailureTrace(w) for w in words if after(s1, None, w)]
        found = report(pending + plain)
        if found:
            return found
        pending = [
            FailureTrace(w, a)
            for w in words
            if after(s1, None, w)
            for a in sorted(s1.inputs)
        ]
    return report(pending) or _finish("if", "oracle", s1, s2, k)


def _closed_off(s: InterfaceAutomaton, w: Sequence[str]) -> bool:
    """True when some prefix of ``w`` ends in an input ``s`` may refuse there."""
    return any(
        w[i] in s.inputs and w[i] not in in_universal(s, after(s, None, w[:i]))
        for i in range(len(w))
    )


def oracle_iuoe(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int) -> Verdict:
    """Look for a word in OE(s1) and IU(s2) that is not in both IU(s1) and OE(s2)."""
    require_same_alphabet(s1, s2)

    def relevant(w):
        return oe_member(s1, w) and iu_member(s2, w)

    def good(w):
        return iu_member(s1, w) and oe_member(s2, w)

    for words in _levels(s1, s2, k, keep=lambda w: relevant(w) and good(w)):
        for w in words:
            if relevant(w) and not good(w):
                # the prefix was fine, so the last letter is what breaks
                kind = INPUT_REFUSAL if w[-1] in s1.inputs else OUTPUT_EXTENSION
                side = "input" if kind == INPUT_REFUSAL else "output"
                v = _finish("iuoe", "oracle", s1, s2, k, witness=Witness(kind, w[:-1], w[-1]))
                v.side = side
                return v
    return _finish("iuoe", "oracle", s1, s2, k)


def _conformance(relation, di, ds, k, universal: bool, orig1, orig2) -> Verdict:
    def admissible(w):
        return bool(after(ds, None, w)) and (not universal or iu_member(ds, w))

    for words in _levels(di, ds, k, keep=admissible):
        for w in words:
            if not admissible(w):
                continue
            p, s = after(di, None, w), after(ds, None, w)
            bad_out = sorted(out_set(di, p) - out_set(ds, s))
            if bad_out:
                return _finish(relation, "oracle", orig1, orig2, k, witness=Witness(IOCO_OUTPUT, w, bad_out[0]))
            if universal:
                bad_in = sorted(in_universal(ds, s) - in_universal(di, p))
                if bad_in:
                    return _finish(relation, "oracle", orig1, orig2, k, witness=Witness(UIOCO_INPUT, w, bad_in[0]))
    return _finish(relation, "oracle", orig1, orig2, k)


def oracle_uioco(i: InterfaceAutomaton, s: InterfaceAutomaton, k: int, delta: str = DEFAULT_DELTA) -> Verdict:
    require_same_alphabet(i, s)
    return _conformance("uioco", delta_closure(i, delta), delta_closure(s, delta), k, True, i, s)


def oracle_ioco(i: InterfaceAutomaton, s: InterfaceAutomaton, k: int, delta: str = DEFAULT_DELTA) -> Verdict:
    require_same_alphabet(i, s)
    if not is_input_enabled(i):
        raise NotInputEnabled("ioco needs an implementation that accepts every input in every reachable state")
    return _conformance("ioco", delta_closure(i, delta), delta_closure(s, delta), k, False, i, s)


def words(alphabet, k: int) -> Iterator[Trace]:
    """Every word over ``alphabet`` of length at most k, length-lex order. Exponential."""
    letters = sorted(alphabet)
    for n in range(k + 1):
        yield from itertools.product(letters, repeat=n)


def oe_iu_words(s1: InterfaceAutomaton, s2: InterfaceAutomaton, k: int) -> set[Trace]:
    """OE(s1) ∩ IU(s2) restricted to words of length at most k, by plain enumeration."""
    return {w for w in words(s1.labels, k) if oe_member(s1, w) and iu_member(s2, w)}


ORACLES = {"if": oracle_if, "iuoe": oracle_iuoe, "uioco": oracle_uioco, "ioco": oracle_ioco}
