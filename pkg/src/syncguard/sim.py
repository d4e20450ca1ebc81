"""Seeded simulation and per-tick overhead benchmarking.

The random environment draws inputs uniformly from the input alphabet
using CPython's Mersenne Twister: ``random.Random(seed).getrandbits(32) %
len(input_events)``.  The modulus is a power of two, so the draw is
unbiased, and the sequence is reproducible across platforms.

Benchmarks time the same program over the same environment twice (bare,
then wrapped in an enforcer) with a monotonic clock; the reported per-tick
means are medians over the configured runs after a discarded warm-up run.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import SafetyAutomaton
from .bits import Alphabet, BitVector
from .editing import NEAREST
from .programs import TickFunction
from .runtime import Enforcer, TickRecord


@dataclass
class SimConfig:
    ticks: int = 1000
    runs: int = 5
    seed: int = 0
    policy: str = NEAREST

    def __post_init__(self):
        if self.ticks < 0:
            raise ValueError("ticks must be non-negative")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")


def random_inputs(alphabet: Alphabet, ticks: int, seed: int) -> list[BitVector]:
    """Uniform seeded input sequence (generator fixed in the module docstring)."""
    rng = random.Random(seed)
    choices = alphabet.input_events
    return [choices[rng.getrandbits(32) % len(choices)] for _ in range(ticks)]


def simulate(
    automaton: SafetyAutomaton,
    program: TickFunction,
    config: SimConfig,
    env: Optional[Sequence[BitVector]] = None,
) -> list[TickRecord]:
    """Run the enforcer for the configured ticks over a seeded random
    environment (or an explicit one) and return the per-tick records."""
    if env is None:
        env = random_inputs(automaton.alphabet, config.ticks, config.seed)
    enforcer = Enforcer(automaton, config.policy, config.seed)
    return enforcer.run(env, program)


def count_edits(records: Sequence[TickRecord]) -> tuple[int, int]:
    return (
        sum(r.input_edited for r in records),
        sum(r.output_edited for r in records),
    )


@dataclass(frozen=True)
class BenchResult:
    """Per-tick means in seconds for the bare and the enforced loop."""

    mean_tick_plain: float
    mean_tick_enforced: float

    @property
    def overhead(self) -> float:
        return self.mean_tick_enforced - self.mean_tick_plain

    @property
    def increase_percent(self) -> float:
        return 100.0 * self.overhead / self.mean_tick_plain

    def __str__(self) -> str:
        return (
            f"plain {self.mean_tick_plain * 1e6:.3f} us/tick, "
            f"enforced {self.mean_tick_enforced * 1e6:.3f} us/tick, "
            f"increase {self.increase_percent:.2f}%"
        )


def bench(
    automaton: SafetyAutomaton,
    program: TickFunction,
    config: SimConfig,
) -> BenchResult:
    """Median per-tick time over ``config.runs`` runs of ``config.ticks``
    ticks, bare versus enforced, same seeded environment for both.

    The program must expose ``reset()``; it is reset before every run so
    both sides see identical program-state evolution.
    """
    if config.ticks < 1:
        raise ValueError("benchmarking needs at least one tick")
    env = random_inputs(automaton.alphabet, config.ticks, config.seed)
    enforcer = Enforcer(automaton, config.policy, config.seed)

    def plain_run() -> float:
        program.reset()
        start = time.perf_counter()
        for x in env:
            program(x)
        return (time.perf_counter() - start) / len(env)

    def enforced_run() -> float:
        program.reset()
        enforcer.reset()
        start = time.perf_counter()
        for x in env:
            enforcer.tick(x, program)
        return (time.perf_counter() - start) / len(env)

    plain_run()  # warm-up, discarded
    enforced_run()
    plain_times = []
    enforced_times = []
    for _ in range(config.runs):
        plain_times.append(plain_run())
        enforced_times.append(enforced_run())
    return BenchResult(
        mean_tick_plain=statistics.median(plain_times),
        mean_tick_enforced=statistics.median(enforced_times),
    )
