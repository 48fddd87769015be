"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary. Running this file directly prints the same lines.
"""

import json
import random
import sys
import time

from cli_cases import GOLDEN, cases, run
from helpers import brute_atc
from iarefine import corpus
from iarefine.automaton import is_deterministic, is_input_enabled
from iarefine.games import HOLDS_EXACT, REFUTED, refute_atc
from iarefine.generate import mutate, random_alphabet, random_automaton, random_pair
from iarefine.oracle import exhaustive_depth, oracle_if, oracle_ioco, oracle_iuoe, oracle_uioco
from iarefine.relations import (
    IOCO_OUTPUT,
    check_as,
    check_equiv_if,
    check_if,
    check_ioco,
    check_iuoe,
    check_tb,
    check_uioco,
)
from iarefine.transforms import delta_closure, determinize, determinize_iu

RESULTS = []


def record(name, failures, detail):
    line = f"{'PASS' if not failures else 'FAIL'}  {name}: {detail}"
    if failures:
        line += f"; {len(failures)} violation(s), first: {failures[0]}"
    RESULTS.append(line)
    return line


# -- 1 -------------------------------------------------------------------------


def corpus_claims():
    L = corpus.load
    a = L("s_A")
    iu, det = determinize_iu(a), determinize(a)
    ioco_ef = check_ioco(L("s_E"), L("s_F"))
    ioco_pq = check_ioco(L("s_P"), L("s_Q"))
    as_pq = check_as(delta_closure(L("s_P")), delta_closure(L("s_Q")))
    g, h = L("s_G"), L("s_H")
    return {
        "s_B not if s_A": check_if(L("s_B"), a).fails,
        "s_C not if s_A": check_if(L("s_C"), a).fails,
        "s_D if s_A": check_if(L("s_D"), a).holds,
        "s_E uioco s_F": check_uioco(L("s_E"), L("s_F")).holds,
        "s_E not ioco s_F, witness a a / y": ioco_ef.fails
        and ioco_ef.witness.kind == IOCO_OUTPUT
        and ioco_ef.witness.trace == ("a", "a") and ioco_ef.witness.action == "y",
        "s_G ioco/uioco/if/iuoe s_H": all(f(g, h).holds for f in (check_ioco, check_uioco, check_if, check_iuoe)),
        "s_G atc refuted at depth 4": refute_atc(g, h, 4).status == REFUTED,
        "s_I if/uioco s_J": check_if(L("s_I"), L("s_J")).holds and check_uioco(L("s_I"), L("s_J")).holds,
        "s_I atc refuted": refute_atc(L("s_I"), L("s_J"), 4).status == REFUTED,
        "s_M atc holds-exact": refute_atc(L("s_M"), L("s_N"), 4).status == HOLDS_EXACT,
        "s_M not as s_N": check_as(L("s_M"), L("s_N")).fails,
        "delta(s_P) as delta(s_Q) with 3 pairs": as_pq.holds
        and as_pq.simulation == {("q0", "q0"), ("q1", "q1"), ("q2", "q2")},
        "s_P not ioco s_Q, witness a b / x": ioco_pq.fails
        and ioco_pq.witness.trace == ("a", "b") and ioco_pq.witness.action == "x",
        "detiu(s_A) lacks a from q1.q2": not iu.successors("q1.q2", "a"),
        "det(s_A) has a from q1.q2": bool(det.successors("q1.q2", "a")),
        "s_A equiv-if detiu(s_A)": check_equiv_if(a, iu).holds,
        "s_A not equiv-if det(s_A)": check_equiv_if(a, det).fails,
    }


def test_c1_corpus_regression():
    claims = corpus_claims()
    failures = [name for name, ok in claims.items() if not ok]
    line = record("C1 corpus regression", failures, f"{len(claims)} claims checked")
    assert not failures, line


# -- 2 -------------------------------------------------------------------------


def law_violations(s1, s2):
    out = []
    vi, vu, va = check_if(s1, s2), check_iuoe(s1, s2), check_as(s1, s2)
    if vi.status != vu.status:
        out.append("if <=> iuoe")
    # verify=True also runs the independent product search and compares
    vq = check_uioco(s1, s2, verify=True)
    if vq.status != check_if(delta_closure(s1), delta_closure(s2)).status:
        out.append("uioco <=> if on delta closures")
    if is_input_enabled(s1) and check_ioco(s1, s2).holds and not vq.holds:
        out.append("ioco => uioco")
    if va.holds and not vi.holds:
        out.append("as => if")
    if is_deterministic(s2) and len({va.status, vi.status, vu.status, check_tb(s1, s2).status}) != 1:
        out.append("deterministic right side collapse")
    if not check_equiv_if(s1, determinize_iu(s1)).holds:
        out.append("s equiv-if detiu(s)")
    return out


def test_c2_relation_laws():
    rng = random.Random(2002)
    failures, det_right, ie_left = [], 0, 0
    n = 600
    for i in range(n):
        s1, s2 = random_pair(rng, input_enabled=i % 3 == 0)
        if i % 4 == 3:
            s2 = determinize(s2)  # keep the deterministic case well covered
        det_right += is_deterministic(s2)
        ie_left += is_input_enabled(s1)
        failures += [(i, v) for v in law_violations(s1, s2)]
    line = record("C2 relation laws", failures,
                  f"{n} pairs, {det_right} deterministic right sides, {ie_left} input-enabled left sides")
    assert not failures, line


# -- 3 -------------------------------------------------------------------------


def test_c3_oracle_equivalence():
    rng = random.Random(3003)
    failures, n, ioco_pairs, fails = [], 0, 0, 0
    while n < 250:
        s1, s2 = random_pair(rng, input_enabled=n % 2 == 0)
        k = exhaustive_depth(s1, s2)
        if k > 200:
            continue
        n += 1
        pairs = [("if", oracle_if(s1, s2, k), check_if(s1, s2)),
                 ("iuoe", oracle_iuoe(s1, s2, k), check_iuoe(s1, s2)),
                 ("uioco", oracle_uioco(s1, s2, k), check_uioco(s1, s2))]
        if is_input_enabled(s1):
            ioco_pairs += 1
            pairs.append(("ioco", oracle_ioco(s1, s2, k), check_ioco(s1, s2)))
        for rel, ref, exact in pairs:
            fails += exact.fails
            if ref.status != exact.status:
                failures.append((n, rel, ref.status, exact.status))
            elif exact.fails and len(ref.witness) != len(exact.witness):
                failures.append((n, rel, "witness length", len(ref.witness), len(exact.witness)))
    line = record("C3 oracle equivalence", failures,
                  f"{n} pairs ({ioco_pairs} with ioco), {fails} failing verdicts compared by witness length")
    assert not failures, line


# -- 4 -------------------------------------------------------------------------


def test_c4_preorder_laws():
    rng = random.Random(4004)
    failures = []
    for i in range(500):
        s = random_automaton(rng)
        if not check_if(s, s).holds:
            failures.append(("reflexivity", i))
    triples = attempts = 0
    while triples < 200:
        attempts += 1
        parent = random_automaton(rng)
        child = mutate(parent, rng)
        grandchild = mutate(child, rng)
        if not (check_if(grandchild, child).holds and check_if(child, parent).holds):
            continue
        triples += 1
        if not check_if(grandchild, parent).holds:
            failures.append(("transitivity", attempts))
    line = record("C4 preorder laws", failures,
                  f"reflexivity on 500 automata, transitivity on {triples} triples ({attempts} drawn)")
    assert not failures, line


# -- 5 -------------------------------------------------------------------------


def test_c5_game_soundness():
    rng = random.Random(5005)
    failures, counts, brute = [], {}, 0
    for i in range(400):
        inputs, outputs = random_alphabet(rng)
        small = i % 2 == 0
        s1 = random_automaton(rng, inputs, outputs, max_states=3 if small else 5, acyclic=True)
        s2 = random_automaton(rng, inputs, outputs, max_states=3 if small else 5, acyclic=True)
        k = max(len(s1.states), len(s2.states))
        v = refute_atc(s1, s2, k)
        va = check_as(s1, s2)
        counts[v.status] = counts.get(v.status, 0) + 1
        if v.status not in (REFUTED, HOLDS_EXACT):
            failures.append((i, "not exact on an acyclic pair", v.status))
        if v.refuted and not va.fails:
            failures.append((i, "refuted but as holds"))
        if va.holds and v.status != HOLDS_EXACT:
            failures.append((i, "as holds but atc is", v.status))
        if small:
            brute += 1
            if v.refuted == brute_atc(s1, s2, k):
                failures.append((i, "disagrees with strategy enumeration"))
    summary = ", ".join(f"{c} {s}" for s, c in sorted(counts.items()))
    line = record("C5 game soundness", failures,
                  f"400 acyclic pairs at k = max states ({summary}); {brute} also brute-forced")
    assert not failures, line


# -- 6 -------------------------------------------------------------------------

EXPECTED_EXIT = {"holds": 0, "holds-exact": 0, "fails": 1, "refuted": 1, "inconclusive": 3}


def test_c6_cli_golden_files():
    failures, checked = [], 0
    for stem, argv in cases():
        got = run(argv)
        if got != (GOLDEN / stem).read_text(encoding="utf-8"):
            failures.append(f"{stem} differs")
            continue
        if stem.startswith("check-") and stem.endswith(".json"):
            checked += 1
            code = int(got.split("\n", 1)[0].split()[1])
            body = got.split("--- stdout\n", 1)[1].split("--- stderr\n", 1)[0]
            if not body:
                if code != 2:
                    failures.append(f"{stem}: empty output with exit {code}")
                continue
            data = json.loads(body)
            statuses = [r["status"] for r in data["relations"]] if "relations" in data else [data["status"]]
            codes = {EXPECTED_EXIT[s] for s in statuses if s != "skipped"}
            want = 1 if 1 in codes else 3 if 3 in codes else 0
            if code != want:
                failures.append(f"{stem}: exit {code}, expected {want}")
    line = record("C6 CLI golden files", failures, f"{len(cases())} transcripts, {checked} exit codes checked against status")
    assert not failures, line


if __name__ == "__main__":
    ok = True
    for name, fn in list(globals().items()):
        if name.startswith("test_c"):
            start = time.time()
            try:
                fn()
            except AssertionError:
                ok = False
            print(f"{RESULTS[-1]}  [{time.time() - start:.1f}s]")
    sys.exit(0 if ok else 1)
