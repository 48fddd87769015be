"""Brute-force references shared by the game tests and the acceptance suite."""

import itertools

from iarefine.games import StrategyProfile, outcome_set


def system_profiles(s, k):
    """Every system-side profile on plays shorter than k.

    A profile fixes, at each reachable path, an output to offer (or none),
    the race outcome and a successor for every label that can fire.
    """

    def expand(path, depth):
        if depth == k:
            return [({}, {}, {})]
        q = path[-1]
        results = []
        options = [(None, 0)] + [(x, r) for x in sorted(s.enabled_outputs(q)) for r in (0, 1)]
        for out, race in options:
            fire = [a for a in sorted(s.enabled_inputs(q)) if out is None or race == 0]
            if out:
                fire.append(out)
            per_label = []
            for label in fire:
                per_label.append([
                    (label, q2, sub)
                    for q2 in sorted(s.successors(q, label))
                    for sub in expand(path + (label, q2), depth + 1)
                ])
            for combo in itertools.product(*per_label):
                outs, races, succ = {}, {}, {}
                if out:
                    outs[path], races[path] = out, race
                for label, q2, (o, r, d) in combo:
                    succ[(path, label)] = q2
                    outs.update(o)
                    races.update(r)
                    succ.update(d)
                results.append((outs, races, succ))
        return results

    for outs, races, succ in expand((s.initial,), 0):
        yield StrategyProfile({}, outs, succ, races)


def brute_atc(s1, s2, k):
    """Bounded containment by enumerating all strategies on both sides."""
    right = {outcome_set(s2, p, k).traces for p in system_profiles(s2, k)}
    for p in system_profiles(s1, k):
        left = outcome_set(s1, p, k).traces
        if not any(r <= left for r in right):
            return False
    return True
