"""Automaton families for exhaustive and randomized test corpora."""

from __future__ import annotations

import itertools
import random

from .analysis import check_enforceability
from .automata import SafetyAutomaton, normalize, render_automaton
from .bits import Alphabet


def all_normalized_automata(alphabet: Alphabet, max_accepting: int) -> list[SafetyAutomaton]:
    """Every structurally distinct normalized automaton with at most
    ``max_accepting`` accepting locations (plus the trap) over the alphabet.

    Enumerates all total transition maps, normalizes, and deduplicates up
    to isomorphism.  Feasible at desk scale only; the count grows as
    (n+1)^(n*|events|).
    """
    events = alphabet.events
    distinct: dict[str, SafetyAutomaton] = {}
    for n in range(1, max_accepting + 1):
        accepting = tuple(f"s{i}" for i in range(n))
        targets = accepting + ("bad",)
        for assignment in itertools.product(targets, repeat=n * len(events)):
            delta = {}
            flat = iter(assignment)
            for src in accepting:
                for event in events:
                    delta[(src, event)] = next(flat)
            for event in events:
                delta[("bad", event)] = "bad"
            candidate = SafetyAutomaton(
                alphabet=alphabet,
                locations=accepting + ("bad",),
                initial="s0",
                violating="bad",
                delta=delta,
            )
            canonical = normalize(candidate)
            distinct.setdefault(render_automaton(canonical), canonical)
    return list(distinct.values())


def random_enforceable_automata(
    alphabet: Alphabet, count: int, max_accepting: int, seed: int
) -> list[SafetyAutomaton]:
    """Seeded stream of normalized automata satisfying the enforceability
    condition, rejection-sampled from uniformly random transition maps."""
    rng = random.Random(seed)
    events = alphabet.events
    found: list[SafetyAutomaton] = []
    while len(found) < count:
        n = rng.randint(1, max_accepting)
        accepting = tuple(f"s{i}" for i in range(n))
        targets = accepting + ("bad",)
        delta = {}
        for src in accepting:
            for event in events:
                delta[(src, event)] = targets[rng.randrange(len(targets))]
        for event in events:
            delta[("bad", event)] = "bad"
        candidate = normalize(
            SafetyAutomaton(
                alphabet=alphabet,
                locations=accepting + ("bad",),
                initial="s0",
                violating="bad",
                delta=delta,
            )
        )
        if check_enforceability(candidate).enforceable:
            found.append(candidate)
    return found
