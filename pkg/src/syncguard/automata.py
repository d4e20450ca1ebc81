"""Safety automata: parsing, normalization, input projection, membership.

A safety automaton is deterministic and complete, has a unique initial
location and a unique violating trap location, and accepts exactly the
prefix-closed words that never visit the trap.  User-supplied automata may
be nondeterministic, incomplete, or carry unreachable locations; they are
parsed into a :class:`RawAutomaton` and brought into shape by
:func:`normalize` (subset construction + completion + pruning + canonical
renaming).

Document format (line-oriented, UTF-8, ``#`` starts a comment)::

    inputs: A B
    outputs: R
    states: ok qv
    initial: ok
    violating: qv
    ok -> ok : 00/-
    ok -> qv : 11/-

Transition labels are ``input-pattern / output-pattern`` with one character
per declared variable, over ``0``, ``1`` and the wildcard ``-``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .bits import Alphabet, BitVector, Event

VIOLATING_NAME = "qv"

_TRANSITION_RE = re.compile(r"^(\S+)\s*->\s*(\S+)\s*:\s*([01-]*)\s*/\s*([01-]*)$")
_HEADER_KEYS = ("inputs", "outputs", "states", "initial", "violating")


class ParseError(ValueError):
    """Raised for malformed automaton or program documents."""


class EmptyPropertyError(ValueError):
    """The property rejects the empty word, so no prefix-closed run exists."""


@dataclass(frozen=True)
class RawAutomaton:
    """Parsed but not yet normalized automaton.

    ``transitions`` is a relation: it may be nondeterministic and
    incomplete, and states may be unreachable.  The violating state is
    already guaranteed to be a trap (parse-time check).
    """

    alphabet: Alphabet
    states: tuple[str, ...]
    initial: str
    violating: str
    transitions: frozenset[tuple[str, Event, str]]

    @cached_property
    def _successors(self) -> dict[tuple[str, Event], frozenset[str]]:
        index: dict[tuple[str, Event], set[str]] = {}
        for src, event, dst in self.transitions:
            index.setdefault((src, event), set()).add(dst)
        return {key: frozenset(targets) for key, targets in index.items()}

    def successors(self, state: str, event: Event) -> frozenset[str]:
        return self._successors.get((state, event), frozenset())

    def accepts(self, word: Sequence[Event]) -> bool:
        """Relation semantics: some run over the word ends non-violating."""
        frontier = {self.initial}
        for event in word:
            frontier = {d for s in frontier for d in self.successors(s, event)}
            if not frontier:
                return False
        return any(s != self.violating for s in frontier)


@dataclass(frozen=True)
class SafetyAutomaton:
    """Deterministic, complete safety automaton with a unique violating trap.

    Instances produced by :func:`normalize` carry canonical location names
    ``q0, q1, ...`` in breadth-first discovery order, with the violating
    trap named last; two normalized automata are isomorphic iff equal.
    """

    alphabet: Alphabet
    locations: tuple[str, ...]
    initial: str
    violating: str
    delta: dict[tuple[str, Event], str]

    def __post_init__(self):
        locs = set(self.locations)
        if len(locs) != len(self.locations):
            raise ValueError("duplicate location names")
        if self.initial not in locs or self.violating not in locs:
            raise ValueError("initial and violating locations must be declared")
        if self.initial == self.violating:
            raise EmptyPropertyError("empty property: the initial location is violating")
        events = set(self.alphabet.events)
        if len(self.delta) != len(self.locations) * len(events):
            raise ValueError("transition map must be total and deterministic")
        for (src, event), dst in self.delta.items():
            if src not in locs or dst not in locs:
                raise ValueError(f"transition {src}->{dst} uses undeclared location")
            if event not in events:
                raise ValueError(f"transition label {event} is not in the alphabet")
            if src == self.violating and dst != self.violating:
                raise ValueError("violating location must be a trap")

    @property
    def accepting_locations(self) -> tuple[str, ...]:
        return tuple(q for q in self.locations if q != self.violating)

    def step(self, location: str, event: Event) -> str:
        try:
            return self.delta[(location, event)]
        except KeyError:
            raise ValueError(f"event width mismatch: {event} not in the alphabet") from None

    def run(self, word: Sequence[Event]) -> str:
        """Location reached from the initial location over the word."""
        location = self.initial
        for event in word:
            location = self.step(location, event)
        return location

    def accepts(self, word: Sequence[Event]) -> bool:
        return self.run(word) != self.violating

    def as_raw(self) -> RawAutomaton:
        return RawAutomaton(
            alphabet=self.alphabet,
            states=self.locations,
            initial=self.initial,
            violating=self.violating,
            transitions=frozenset(
                (src, event, dst) for (src, event), dst in self.delta.items()
            ),
        )


@dataclass(frozen=True)
class InputAutomaton:
    """Safety automaton with outputs erased from transition labels.

    Shares its location set with the source automaton.  The transition
    relation may be nondeterministic: ``delta[(q, x)]`` is the set of
    locations some output can reach.
    """

    alphabet: Alphabet
    locations: tuple[str, ...]
    initial: str
    violating: str
    delta: dict[tuple[str, BitVector], frozenset[str]]

    def successors(self, location: str, inputs: BitVector) -> frozenset[str]:
        try:
            return self.delta[(location, inputs)]
        except KeyError:
            raise ValueError(f"input width mismatch: {inputs}") from None

    def accepts_inputs(self, input_word: Sequence[BitVector]) -> bool:
        """Some run over the input word ends in a non-violating location."""
        frontier = {self.initial}
        for x in input_word:
            frontier = {d for s in frontier for d in self.successors(s, x)}
        return any(s != self.violating for s in frontier)

    def safe_successor_exists(self, location: str, inputs: BitVector) -> bool:
        return any(d != self.violating for d in self.successors(location, inputs))


def membership(automaton: SafetyAutomaton, word: Sequence[Event]) -> bool:
    """True iff running the word from the initial location avoids the trap."""
    return automaton.accepts(word)


def parse_automaton(text: str) -> RawAutomaton:
    """Parse an automaton document; see the module docstring for the format.

    Nondeterminism and incompleteness are allowed here (``normalize``
    resolves them), but the violating state must already be a trap.
    """
    headers, transition_lines = _split_document(text)
    for key in _HEADER_KEYS:
        if key not in headers:
            raise ParseError(f"missing '{key}:' declaration")

    alphabet = _parse_interface(headers)
    states = tuple(headers["states"].split())
    if not states:
        raise ParseError("'states:' declares no states")
    if len(set(states)) != len(states):
        dup = next(s for s in states if states.count(s) > 1)
        raise ParseError(f"duplicate state name {dup!r}")
    initial = _single_state(headers, "initial", states)
    violating = _single_state(headers, "violating", states)

    transitions: set[tuple[str, Event, str]] = set()
    for lineno, line in transition_lines:
        match = _TRANSITION_RE.match(line)
        if match is None:
            raise ParseError(f"line {lineno}: cannot parse transition {line!r}")
        src, dst, in_pat, out_pat = match.groups()
        for name in (src, dst):
            if name not in states:
                raise ParseError(f"line {lineno}: unknown state {name!r}")
        try:
            events = alphabet.expand_event_pattern(f"{in_pat}/{out_pat}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if src == violating and dst != violating:
            raise ParseError(f"line {lineno}: violating state must be a trap")
        for event in events:
            transitions.add((src, event, dst))

    return RawAutomaton(alphabet, states, initial, violating, frozenset(transitions))


def _split_document(text: str) -> tuple[dict[str, str], list[tuple[int, str]]]:
    headers: dict[str, str] = {}
    transition_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key in _HEADER_KEYS and "->" not in key:
            if key in headers:
                raise ParseError(f"line {lineno}: duplicate '{key}:' declaration")
            headers[key] = rest.strip()
        else:
            transition_lines.append((lineno, line))
    return headers, transition_lines


def _parse_interface(headers: dict[str, str]) -> Alphabet:
    inputs = tuple(headers["inputs"].split())
    outputs = tuple(headers["outputs"].split())
    null = not inputs or not outputs
    try:
        return Alphabet(inputs, outputs, null_interface=null)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _single_state(headers: dict[str, str], key: str, states: tuple[str, ...]) -> str:
    tokens = headers[key].split()
    if len(tokens) != 1:
        raise ParseError(f"'{key}:' must declare exactly one state")
    if tokens[0] not in states:
        raise ParseError(f"'{key}:' names undeclared state {tokens[0]!r}")
    return tokens[0]


def normalize(automaton: Union[RawAutomaton, SafetyAutomaton]) -> SafetyAutomaton:
    """Determinize, complete, prune, and canonically rename an automaton.

    Subset construction: a macro-state is accepting iff it contains at least
    one non-violating location; every non-accepting macro-state is collapsed
    into the single trap, and missing transitions are directed there.
    Locations unreachable from the initial one disappear (the trap is always
    retained as the completion target).  Accepting locations are named
    ``q0, q1, ...`` in breadth-first discovery order; the trap is named
    last.  Raises :class:`EmptyPropertyError` if the initial state is
    violating (the property would reject the empty word).
    """
    raw = automaton.as_raw() if isinstance(automaton, SafetyAutomaton) else automaton
    if raw.initial == raw.violating:
        raise EmptyPropertyError("empty property: the initial state is violating")

    alphabet = raw.alphabet
    events = alphabet.events
    start = frozenset((raw.initial,))
    names: dict[frozenset[str], str] = {start: "q0"}
    queue: deque[frozenset[str]] = deque((start,))
    moves: dict[tuple[str, Event], str] = {}

    while queue:
        macro = queue.popleft()
        src = names[macro]
        for event in events:
            target = frozenset(
                d for s in macro for d in raw.successors(s, event)
            )
            if not any(s != raw.violating for s in target):
                moves[(src, event)] = VIOLATING_NAME
                continue
            if target not in names:
                names[target] = f"q{len(names)}"
                queue.append(target)
            moves[(src, event)] = names[target]

    locations = tuple(f"q{i}" for i in range(len(names))) + (VIOLATING_NAME,)
    for event in events:
        moves[(VIOLATING_NAME, event)] = VIOLATING_NAME
    return SafetyAutomaton(alphabet, locations, "q0", VIOLATING_NAME, moves)


def project_inputs(automaton: SafetyAutomaton) -> InputAutomaton:
    """Erase outputs from transition labels, keeping the location set."""
    relation: dict[tuple[str, BitVector], set[str]] = {
        (q, x): set()
        for q in automaton.locations
        for x in automaton.alphabet.input_events
    }
    for (src, event), dst in automaton.delta.items():
        relation[(src, event.input)].add(dst)
    return InputAutomaton(
        alphabet=automaton.alphabet,
        locations=automaton.locations,
        initial=automaton.initial,
        violating=automaton.violating,
        delta={key: frozenset(val) for key, val in relation.items()},
    )


def isomorphic(a: SafetyAutomaton, b: SafetyAutomaton) -> bool:
    """Structural equality up to location renaming (alphabets must match)."""
    if a.alphabet != b.alphabet:
        return False
    return normalize(a) == normalize(b)


def render_automaton(automaton: SafetyAutomaton) -> str:
    """Serialize in the document format; ``parse`` + ``normalize`` round-trips.

    Transitions are grouped per (source, target) pair and compressed with
    wildcards where a full input or output cube is covered.  The trap's
    self-loops are implied and omitted.
    """
    alphabet = automaton.alphabet
    lines = [
        "inputs: " + " ".join(alphabet.inputs),
        "outputs: " + " ".join(alphabet.outputs),
        "states: " + " ".join(automaton.locations),
        f"initial: {automaton.initial}",
        f"violating: {automaton.violating}",
    ]
    all_inputs = alphabet.input_events
    all_outputs = alphabet.output_events
    full_output_pattern = "-" * len(alphabet.outputs)
    full_input_pattern = "-" * len(alphabet.inputs)

    for src in automaton.locations:
        if src == automaton.violating:
            continue
        by_target: dict[str, set[Event]] = {}
        for event in alphabet.events:
            by_target.setdefault(automaton.delta[(src, event)], set()).add(event)
        for dst in automaton.locations:
            events = by_target.get(dst)
            if not events:
                continue
            if len(events) == len(alphabet.events):
                lines.append(f"{src} -> {dst} : {full_input_pattern}/{full_output_pattern}")
                continue
            for x in all_inputs:
                outputs = [y for y in all_outputs if alphabet.event(x, y) in events]
                if not outputs:
                    continue
                if len(outputs) == len(all_outputs):
                    lines.append(f"{src} -> {dst} : {x}/{full_output_pattern}")
                else:
                    for y in outputs:
                        lines.append(f"{src} -> {dst} : {x}/{y}")
    return "\n".join(lines) + "\n"


def render_input_automaton(automaton: InputAutomaton) -> str:
    """Report form of an input automaton, one line per transition triple."""
    lines = [
        "inputs: " + " ".join(automaton.alphabet.inputs),
        "outputs: " + " ".join(automaton.alphabet.outputs) + "  # erased from labels",
        "states: " + " ".join(automaton.locations),
        f"initial: {automaton.initial}",
        f"violating: {automaton.violating}",
    ]
    for src in automaton.locations:
        for x in automaton.alphabet.input_events:
            for dst in automaton.locations:
                if dst in automaton.delta[(src, x)]:
                    lines.append(f"{src} -> {dst} : {x}")
    return "\n".join(lines) + "\n"
