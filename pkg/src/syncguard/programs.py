"""Black-box tick functions the enforcer wraps.

A program is anything callable from an input bit vector to an output bit
vector, invoked exactly once per tick; internal state is allowed.
Programs used in replay comparisons and benchmarks must also offer
``reset()``.

The document format for Mealy programs mirrors the automaton format minus
the ``violating:`` line; transitions read ``src -> dst : inpat / outbits``
where the output must be concrete (a Mealy machine is a function)::

    inputs: A B
    outputs: O
    states: wait done
    initial: wait
    wait -> done : 11 / 1
    wait -> wait : 0- / 0
    wait -> wait : 10 / 0
    done -> done : -- / 0
"""

from __future__ import annotations

import random
from typing import Protocol, Sequence

from .automata import ParseError, _split_document, _parse_interface, _single_state
from .bits import Alphabet, BitVector

_MEALY_HEADER_KEYS = ("inputs", "outputs", "states", "initial")


class TickFunction(Protocol):
    def __call__(self, inputs: BitVector) -> BitVector: ...


class MealyProgram:
    """Table-driven synchronous program: (state, input) -> (state, output)."""

    def __init__(
        self,
        alphabet: Alphabet,
        states: Sequence[str],
        initial: str,
        transitions: dict[tuple[str, BitVector], tuple[str, BitVector]],
    ):
        self.alphabet = alphabet
        self.states = tuple(states)
        self.initial = initial
        self.transitions = transitions
        if initial not in self.states:
            raise ValueError(f"initial state {initial!r} not declared")
        for state in self.states:
            for x in alphabet.input_events:
                if (state, x) not in transitions:
                    raise ValueError(f"missing transition from {state!r} on input {x}")
        self.state = initial

    def __call__(self, inputs: BitVector) -> BitVector:
        self.state, outputs = self.transitions[(self.state, inputs)]
        return outputs

    def reset(self) -> None:
        self.state = self.initial


def parse_program(text: str) -> MealyProgram:
    """Parse a Mealy program document (format in the module docstring)."""
    headers, transition_lines = _split_document(text)
    for key in _MEALY_HEADER_KEYS:
        if key not in headers:
            raise ParseError(f"missing '{key}:' declaration")
    alphabet = _parse_interface(headers)
    states = tuple(headers["states"].split())
    if not states:
        raise ParseError("'states:' declares no states")
    if len(set(states)) != len(states):
        raise ParseError("duplicate state name")
    initial = _single_state(headers, "initial", states)

    transitions: dict[tuple[str, BitVector], tuple[str, BitVector]] = {}
    for lineno, line in transition_lines:
        head, sep, label = line.partition(":")
        parts = head.split("->")
        if not sep or len(parts) != 2:
            raise ParseError(f"line {lineno}: cannot parse transition {line!r}")
        src, dst = parts[0].strip(), parts[1].strip()
        for name in (src, dst):
            if name not in states:
                raise ParseError(f"line {lineno}: unknown state {name!r}")
        in_pat, slash, out_bits = label.partition("/")
        if not slash:
            raise ParseError(f"line {lineno}: expected 'inpat / outbits'")
        try:
            xs = alphabet.expand_input_pattern(in_pat.strip())
            y = alphabet.output_vector(out_bits.strip())
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        for x in xs:
            if (src, x) in transitions and transitions[(src, x)] != (dst, y):
                raise ParseError(
                    f"line {lineno}: conflicting transition from {src!r} on input {x}"
                )
            transitions[(src, x)] = (dst, y)

    return MealyProgram(alphabet, states, initial, transitions)


class ConstantProgram:
    """Emits the same output vector every tick."""

    def __init__(self, alphabet: Alphabet, outputs: BitVector):
        if len(outputs) != len(alphabet.outputs):
            raise ValueError("output width mismatch")
        self.alphabet = alphabet
        self.outputs = outputs

    def __call__(self, inputs: BitVector) -> BitVector:
        return self.outputs

    def reset(self) -> None:
        pass


class ScriptedProgram:
    """Replays a fixed output sequence, ignoring inputs.

    Stands in for the program when enforcing an already-observed
    input/output word: the t-th call returns the t-th observed output.
    """

    def __init__(self, outputs: Sequence[BitVector]):
        self.script = tuple(outputs)
        self.position = 0

    def __call__(self, inputs: BitVector) -> BitVector:
        if self.position >= len(self.script):
            raise IndexError("scripted program ran out of outputs")
        out = self.script[self.position]
        self.position += 1
        return out

    def reset(self) -> None:
        self.position = 0


class SyntheticProgram:
    """Shift-register network whose per-tick cost grows linearly with width.

    Semantically a finite Mealy machine (the register is the state), but
    evaluated gate by gate so that larger widths model larger reaction
    functions.  Used to benchmark how enforcement overhead scales with
    program size.
    """

    def __init__(self, alphabet: Alphabet, width: int, seed: int = 0):
        if width < 8:
            raise ValueError("width must be at least 8")
        self.alphabet = alphabet
        self.width = width
        self.seed = seed
        self._taps = random.Random(seed).sample(range(width), k=4)
        self._initial = tuple(random.Random(seed + 1).getrandbits(1) for _ in range(width))
        self.register = list(self._initial)

    def __call__(self, inputs: BitVector) -> BitVector:
        reg = self.register
        width = self.width
        feed = sum(inputs.bits) & 1
        for t in self._taps:
            feed ^= reg[t]
        prev = reg[width - 1]
        for i in range(width):
            cur = reg[i]
            reg[i] = prev ^ (cur & feed)
            prev = cur
        reg[0] ^= feed
        n_out = len(self.alphabet.outputs)
        return BitVector(
            reg[(13 * k + 7) % width] ^ reg[(29 * k + 3) % width] for k in range(n_out)
        )

    def reset(self) -> None:
        self.register = list(self._initial)


def null_program() -> ConstantProgram:
    """Program over the null interface: no inputs, no outputs."""
    return ConstantProgram(Alphabet.null(), BitVector(()))


_ABO_DOC = """
inputs: A B
outputs: O
states: wait sawA sawB done
initial: wait
wait -> done : 11 / 1
wait -> sawA : 10 / 0
wait -> sawB : 01 / 0
wait -> wait : 00 / 0
sawA -> done : -1 / 1
sawA -> sawA : -0 / 0
sawB -> done : 1- / 1
sawB -> sawB : 0- / 0
done -> done : -- / 0
"""


def abo_program() -> MealyProgram:
    """Awaits A and B (in any order), emits O once when both have arrived."""
    return parse_program(_ABO_DOC)
