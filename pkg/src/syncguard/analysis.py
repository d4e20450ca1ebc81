"""Enforceability analysis and repair of non-enforceable properties.

A normalized safety automaton is enforceable iff every accepting location
has at least one outgoing transition to an accepting location.  Accepting
locations that fail this ("dead" locations: every event falls into the
trap) make instantaneous correction impossible once reached.  Some
properties become enforceable after iteratively merging dead locations
into the trap; others (those where the merging reaches the initial
location) cannot be repaired at all.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .automata import SafetyAutomaton, normalize
from .bits import Word


@dataclass(frozen=True)
class EnforceabilityReport:
    enforceable: bool
    dead_locations: tuple[str, ...]

    def __str__(self) -> str:
        if self.enforceable:
            return "enforceable"
        return "not enforceable; dead locations: " + " ".join(self.dead_locations)


class NotEnforceableError(ValueError):
    """Construction of an enforcer was attempted for a dead property."""

    def __init__(self, message: str, report: Optional[EnforceabilityReport] = None):
        super().__init__(message)
        self.report = report


def check_enforceability(automaton: SafetyAutomaton) -> EnforceabilityReport:
    """Report the accepting locations whose every event falls into the trap."""
    trap = automaton.violating
    dead = tuple(
        q
        for q in automaton.accepting_locations
        if all(automaton.delta[(q, e)] == trap for e in automaton.alphabet.events)
    )
    return EnforceabilityReport(enforceable=not dead, dead_locations=dead)


def non_enforceability_witness(automaton: SafetyAutomaton, dead_location: str) -> Word:
    """Shortest accepted word reaching the given dead location.

    Past this word no event can be released without violating: from the
    location reached, every event falls into the trap, so any extension
    defeats instantaneous enforcement.  For a dead initial location the
    witness is the empty word.
    """
    if dead_location == automaton.violating:
        raise ValueError("the violating trap is not a dead accepting location")
    paths: dict[str, Word] = {automaton.initial: ()}
    queue: deque[str] = deque((automaton.initial,))
    while queue:
        location = queue.popleft()
        if location == dead_location:
            return paths[location]
        for event in automaton.alphabet.events:
            target = automaton.delta[(location, event)]
            if target == automaton.violating or target in paths:
                continue
            paths[target] = paths[location] + (event,)
            queue.append(target)
    raise ValueError(f"location {dead_location!r} is unreachable")


def transform_non_enforceable(automaton: SafetyAutomaton) -> Optional[SafetyAutomaton]:
    """Shrink the property until every remaining location is live.

    Sweeps accepting locations in name order, merging each dead one into
    the trap (it is removed and all its incoming transitions are
    redirected), and repeats until a fixpoint.  Returns ``None`` when the
    initial location itself becomes dead (the property cannot be made
    enforceable); otherwise the merged automaton, renormalized, whose
    language is contained in the original's.  Already-enforceable automata
    come back unchanged.
    """
    trap = automaton.violating
    events = automaton.alphabet.events
    merged: set[str] = set()

    def is_dead(location: str) -> bool:
        return all(
            automaton.delta[(location, e)] == trap or automaton.delta[(location, e)] in merged
            for e in events
        )

    changed = True
    while changed:
        changed = False
        for location in automaton.accepting_locations:
            if location in merged or not is_dead(location):
                continue
            if location == automaton.initial:
                return None
            merged.add(location)
            changed = True

    if not merged:
        return normalize(automaton)

    delta = {
        (src, event): (trap if dst in merged else dst)
        for (src, event), dst in automaton.delta.items()
        if src not in merged
    }
    locations = tuple(q for q in automaton.locations if q not in merged)
    shrunk = SafetyAutomaton(
        alphabet=automaton.alphabet,
        locations=locations,
        initial=automaton.initial,
        violating=trap,
        delta=delta,
    )
    return normalize(shrunk)
