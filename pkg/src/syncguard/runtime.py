"""Online bi-directional enforcer wrapping a black-box tick function.

Per tick: read the environment input, replace it if no output could keep
the run safe from the current location, call the program with the (possibly
fixed) input, replace the program's output if the resulting event would
fall into the trap, release the event, and advance the tracked location.
The tracked location always equals the state reached by the released word
in the property automaton (and by its input projection in the input
automaton), and it never becomes the trap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .analysis import NotEnforceableError, check_enforceability
from .automata import SafetyAutomaton, project_inputs
from .bits import BitVector, Event, Word
from .editing import (
    NEAREST,
    build_edit_tables,
    canonical_policy,
    choose_nearest,
    compute_edit_sets,
)
from .programs import ScriptedProgram, TickFunction


@dataclass(frozen=True)
class TickRecord:
    """What one enforcement step observed and released."""

    t: int
    observed: Event
    released: Event
    input_edited: bool
    output_edited: bool
    state_after: str


class Enforcer:
    """Stateful enforcer for one enforceable safety automaton.

    Construction precomputes the input projection, the safe-event sets,
    and (for observed-independent policies) the repair tables; it fails
    with the enforceability report if the automaton has dead locations.
    A single instance is single-owner: only ``tick`` mutates it.
    """

    def __init__(
        self,
        automaton: SafetyAutomaton,
        policy: str = NEAREST,
        seed: Optional[int] = None,
        program: Optional[TickFunction] = None,
    ):
        report = check_enforceability(automaton)
        if not report.enforceable:
            raise NotEnforceableError(str(report), report)
        self.automaton = automaton
        self.input_automaton = project_inputs(automaton)
        self.edit_sets = compute_edit_sets(automaton, self.input_automaton)
        self.policy = canonical_policy(policy)
        self.seed = seed
        self.tables = (
            None
            if self.policy == NEAREST
            else build_edit_tables(self.edit_sets, self.policy, seed)
        )
        self.program = program
        self.location = automaton.initial
        self.ticks = 0
        self._out_width = len(automaton.alphabet.outputs)

    def reset(self) -> None:
        self.location = self.automaton.initial
        self.ticks = 0

    def snapshot(self) -> tuple[str, int]:
        return (self.location, self.ticks)

    def restore(self, snapshot: tuple[str, int]) -> None:
        self.location, self.ticks = snapshot

    def tick(self, inputs: BitVector, program: Optional[TickFunction] = None) -> TickRecord:
        """Run one enforcement step and return what happened.

        The program sees the fixed input, so the recorded observed event
        pairs the raw environment input with the program's response to the
        fixed one (a response to the raw input never exists).
        """
        program = program or self.program
        if program is None:
            raise ValueError("no program bound and none passed to tick()")
        q = self.location
        sets = self.edit_sets

        input_ok = inputs in sets.safe_inputs[q]
        if input_ok:
            fixed_input = inputs
        elif self.tables is not None:
            fixed_input = self.tables.input_choice[q]
        else:
            fixed_input = choose_nearest(sets.safe_inputs[q], inputs)

        outputs = program(fixed_input)
        if len(outputs) != self._out_width:
            raise ValueError(f"program output width mismatch: {outputs}")

        output_ok = outputs in sets.safe_outputs[(q, fixed_input)]
        if output_ok:
            fixed_output = outputs
        elif self.tables is not None:
            fixed_output = self.tables.output_choice[(q, fixed_input)]
        else:
            fixed_output = choose_nearest(sets.safe_outputs[(q, fixed_input)], outputs)

        released = self.automaton.alphabet.event(fixed_input, fixed_output)
        self.location = self.automaton.delta[(q, released)]
        record = TickRecord(
            t=self.ticks,
            observed=self.automaton.alphabet.event(inputs, outputs),
            released=released,
            input_edited=not input_ok,
            output_edited=not output_ok,
            state_after=self.location,
        )
        self.ticks += 1
        return record

    def run(
        self,
        env: Iterable[BitVector],
        program: Optional[TickFunction] = None,
    ) -> list[TickRecord]:
        """Fold ``tick`` over an input sequence."""
        return [self.tick(x, program) for x in env]


def enforce_word(
    enforcer_or_automaton: Union[Enforcer, SafetyAutomaton],
    observed: Word,
    policy: str = NEAREST,
    seed: Optional[int] = None,
) -> Word:
    """Released word for an observed input/output word.

    The observed outputs play the program: a scripted stand-in returns
    them tick by tick, so the result is the enforcement function applied
    to the word.  Passing an existing :class:`Enforcer` resets it first
    (its policy wins over the arguments).
    """
    if isinstance(enforcer_or_automaton, Enforcer):
        enforcer = enforcer_or_automaton
        enforcer.reset()
    else:
        enforcer = Enforcer(enforcer_or_automaton, policy, seed)
    script = ScriptedProgram([e.output for e in observed])
    return tuple(
        record.released
        for record in enforcer.run((e.input for e in observed), script)
    )
