"""Refinement and conformance checking for finite interface automata."""

from .automaton import (
    InterfaceAutomaton,
    is_acyclic,
    is_deterministic,
    is_image_finite,
    is_input_enabled,
    reachable_part,
    validate,
)
from .formats import export_dot, load, parse, serialize, verdict_to_json
from .games import AtcVerdict, OutcomeTree, StrategyProfile, inner_containment, outcome, outcome_set, refute_atc, refute_tb
from .relations import (
    Verdict,
    Witness,
    check_all,
    check_as,
    check_equiv_if,
    check_if,
    check_ioco,
    check_iuoe,
    check_tb,
    check_uioco,
)
from .semantics import FailureTrace, after, in_universal, out_set
from .transforms import delta_closure, determinize, determinize_iu

__version__ = "0.1.0"
