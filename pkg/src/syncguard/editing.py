"""Edit sets and deterministic repair choices.

For every accepting location the *safe inputs* are the input events from
which some output keeps the run out of the trap; given a location and an
already-fixed input, the *safe outputs* are the outputs that do so.  When
an observed event fails the transition test the enforcer replaces it with
an element of the corresponding set, picked by one of three policies:

``nearest``
    Minimal Hamming distance from the observed event; ties prefer
    agreement with the observed event on earlier-declared variables, then
    the numerically smallest bit string.  Observed-dependent, computed per
    event.
``lexicographic``
    Numerically smallest element.  Observed-independent, precomputable.
``seeded-random``
    Reproducible pseudo-random pick keyed by (seed, candidate set), via
    SHA-256.  Observed-independent, precomputable.

The observed-independent policies are materialized once per automaton into
:class:`EditTables` (one entry per accepting location, and one per
(location, safe input) pair).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional

from .analysis import NotEnforceableError
from .automata import InputAutomaton, SafetyAutomaton, project_inputs
from .bits import BitVector, Word

NEAREST = "nearest"
LEXICOGRAPHIC = "lexicographic"
SEEDED_RANDOM = "seeded-random"
POLICIES = (NEAREST, LEXICOGRAPHIC, SEEDED_RANDOM)

_POLICY_ALIASES = {
    "nearest": NEAREST,
    "lex": LEXICOGRAPHIC,
    "lexicographic": LEXICOGRAPHIC,
    "random": SEEDED_RANDOM,
    "seeded-random": SEEDED_RANDOM,
}


def canonical_policy(name: str) -> str:
    try:
        return _POLICY_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown repair policy {name!r}; choose from {POLICIES}") from None


@dataclass(frozen=True)
class EditSets:
    """Safe-event sets per location (inputs) and per location+input (outputs)."""

    safe_inputs: dict[str, frozenset[BitVector]]
    safe_outputs: dict[tuple[str, BitVector], frozenset[BitVector]]


@dataclass(frozen=True)
class EditTables:
    """Precomputed repair choices for an observed-independent policy."""

    input_choice: dict[str, BitVector]
    output_choice: dict[tuple[str, BitVector], BitVector]
    policy: str
    seed: Optional[int]


def compute_edit_sets(
    automaton: SafetyAutomaton, input_automaton: Optional[InputAutomaton] = None
) -> EditSets:
    """Safe-input and safe-output sets for every accepting location.

    ``safe_inputs[q]`` is empty exactly when q is a dead location; under an
    enforceable automaton every ``safe_outputs[(q, x)]`` with x safe is
    non-empty (that is what makes output repair always possible).
    """
    if input_automaton is None:
        input_automaton = project_inputs(automaton)
    trap = automaton.violating
    safe_inputs: dict[str, frozenset[BitVector]] = {}
    safe_outputs: dict[tuple[str, BitVector], frozenset[BitVector]] = {}
    for q in automaton.accepting_locations:
        safe_inputs[q] = frozenset(
            x
            for x in automaton.alphabet.input_events
            if input_automaton.safe_successor_exists(q, x)
        )
        for x in automaton.alphabet.input_events:
            safe_outputs[(q, x)] = frozenset(
                y
                for y in automaton.alphabet.output_events
                if automaton.delta[(q, automaton.alphabet.event(x, y))] != trap
            )
    return EditSets(safe_inputs, safe_outputs)


def word_edit_sets(
    automaton: SafetyAutomaton,
    prior: Word,
    inputs: Optional[BitVector] = None,
) -> frozenset[BitVector]:
    """Safe events after an accepted word.

    With ``inputs`` absent, returns the safe inputs at the location the
    word reaches; with ``inputs`` given, the safe outputs for that input.
    The word forms of these sets coincide with the location-indexed ones
    because the automaton is deterministic.
    """
    location = automaton.run(prior)
    if location == automaton.violating:
        raise ValueError("edit sets are undefined past a violation")
    trap = automaton.violating
    if inputs is None:
        input_automaton = project_inputs(automaton)
        return frozenset(
            x
            for x in automaton.alphabet.input_events
            if input_automaton.safe_successor_exists(location, x)
        )
    return frozenset(
        y
        for y in automaton.alphabet.output_events
        if automaton.delta[(location, automaton.alphabet.event(inputs, y))] != trap
    )


# -- selection --


def choose_nearest(candidates: Iterable[BitVector], observed: BitVector) -> BitVector:
    """Candidate at minimal Hamming distance from the observed vector.

    Ties prefer candidates agreeing with the observed vector on the
    earliest-declared variables (mismatch positions compared left to
    right), then the numerically smallest bit string.
    """

    def key(c: BitVector):
        mismatches = tuple(int(a != b) for a, b in zip(c.bits, observed.bits))
        return (sum(mismatches), mismatches, c.bits)

    return min(candidates, key=key)


def choose_lexicographic(candidates: Iterable[BitVector]) -> BitVector:
    return min(candidates)


def choose_seeded(candidates: Iterable[BitVector], seed: Optional[int]) -> BitVector:
    """Stable pseudo-random pick: a pure function of the seed and the set."""
    ranked = sorted(candidates)
    material = f"{0 if seed is None else seed}:" + ",".join(str(c) for c in ranked)
    digest = hashlib.sha256(material.encode("ascii")).digest()
    return ranked[int.from_bytes(digest[:8], "big") % len(ranked)]


def select(
    candidates: frozenset[BitVector],
    observed: BitVector,
    policy: str,
    seed: Optional[int] = None,
) -> BitVector:
    if policy == NEAREST:
        return choose_nearest(candidates, observed)
    if policy == LEXICOGRAPHIC:
        return choose_lexicographic(candidates)
    if policy == SEEDED_RANDOM:
        return choose_seeded(candidates, seed)
    raise ValueError(f"unknown repair policy {policy!r}")


def build_edit_tables(
    sets: EditSets, policy: str, seed: Optional[int] = None
) -> EditTables:
    """Materialize per-location choices for an observed-independent policy.

    Total over accepting locations and their safe inputs.  An empty safe
    set means the automaton violates the enforceability condition.
    """
    policy = canonical_policy(policy)
    if policy == NEAREST:
        raise ValueError("the nearest policy is observed-dependent; no static table exists")
    chooser = (
        choose_lexicographic
        if policy == LEXICOGRAPHIC
        else (lambda cs: choose_seeded(cs, seed))
    )
    input_choice: dict[str, BitVector] = {}
    output_choice: dict[tuple[str, BitVector], BitVector] = {}
    for q, candidates in sets.safe_inputs.items():
        if not candidates:
            raise NotEnforceableError(f"automaton not enforceable: location {q} is dead")
        input_choice[q] = chooser(candidates)
        for x in candidates:
            outputs = sets.safe_outputs[(q, x)]
            if not outputs:
                raise NotEnforceableError(
                    f"automaton not enforceable: no safe output at ({q}, {x})"
                )
            output_choice[(q, x)] = chooser(outputs)
    return EditTables(input_choice, output_choice, policy, seed)


def repair_event(
    sets: EditSets,
    location: str,
    observed: BitVector,
    kind: str,
    context: Optional[BitVector] = None,
    policy: str = NEAREST,
    seed: Optional[int] = None,
) -> BitVector:
    """Replace an unsafe observed vector with a safe one.

    ``kind`` is ``"input"`` or ``"output"``; output repair needs the
    already-fixed input as ``context``.  Only called on violation: the
    observed vector must not itself be safe.
    """
    if kind == "input":
        candidates = sets.safe_inputs[location]
    elif kind == "output":
        if context is None:
            raise ValueError("output repair requires the fixed input as context")
        candidates = sets.safe_outputs[(location, context)]
    else:
        raise ValueError(f"kind must be 'input' or 'output', got {kind!r}")
    if not candidates:
        raise NotEnforceableError(
            f"not enforceable at runtime: empty {kind} edit set at {location}"
        )
    if observed in candidates:
        raise ValueError(f"observed {kind} {observed} is already safe; repair not needed")
    return select(candidates, observed, canonical_policy(policy), seed)
