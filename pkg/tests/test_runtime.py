import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncguard import (
    LEXICOGRAPHIC,
    NEAREST,
    SEEDED_RANDOM,
    BitVector,
    Enforcer,
    Event,
    ScriptedProgram,
    enforce_word,
    membership,
    mutual_exclusion,
    parse_program,
    project_inputs,
    random_inputs,
)

from .strategies import mealy_programs, words


def bv(text):
    return BitVector.from_text(text)


def ev(text):
    return Event.from_text(text)


CONSTANT_ONE = """
inputs: A B
outputs: R
states: s
initial: s
s -> s : -- / 1
"""


class TestTick:
    def test_input_repair_keeps_program_output(self):
        # x=11 must be repaired to 10; the program's 1 then passes
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        record = enforcer.tick(bv("11"), parse_program(CONSTANT_ONE))
        assert record.released == ev("10/1")
        assert record.input_edited and not record.output_edited
        assert record.observed == ev("11/1")
        assert record.t == 0

    def test_output_repair_on_forbidden_conjunction(self):
        # input 01 is kept; the program answers 1, which with B violates
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        record = enforcer.tick(bv("01"), parse_program(CONSTANT_ONE))
        assert record.released == ev("01/0")
        assert not record.input_edited and record.output_edited

    def test_compliant_event_untouched(self):
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        record = enforcer.tick(bv("10"), parse_program(CONSTANT_ONE))
        assert record.released == ev("10/1")
        assert not record.input_edited and not record.output_edited

    def test_bound_program(self):
        enforcer = Enforcer(
            mutual_exclusion(), NEAREST, program=parse_program(CONSTANT_ONE)
        )
        assert enforcer.tick(bv("10")).released == ev("10/1")

    def test_tick_requires_a_program(self):
        enforcer = Enforcer(mutual_exclusion())
        with pytest.raises(ValueError, match="program"):
            enforcer.tick(bv("10"))

    def test_repaired_property_constructs(self):
        from syncguard import dead_end_branch_repaired

        enforcer = Enforcer(dead_end_branch_repaired())
        assert enforcer.location == "q0" and enforcer.ticks == 0

    def test_program_width_checked(self):
        enforcer = Enforcer(mutual_exclusion())
        with pytest.raises(ValueError, match="width"):
            enforcer.tick(bv("10"), lambda x: bv("10"))


class TestRun:
    def test_three_tick_trace(self):
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        script = ScriptedProgram([bv("1"), bv("1"), bv("0")])
        records = enforcer.run([bv("10"), bv("11"), bv("01")], script)
        assert [r.released for r in records] == [ev("10/1"), ev("10/1"), ev("01/0")]

    def test_empty_environment(self):
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        assert enforcer.run([], ScriptedProgram([])) == []

    @settings(max_examples=25, deadline=None)
    @given(data=st.data(), seed=st.integers(0, 2**16))
    def test_long_random_run_never_violates(self, data, seed):
        a = mutual_exclusion()
        program = data.draw(mealy_programs(a.alphabet))
        env = random_inputs(a.alphabet, 200, seed)
        enforcer = Enforcer(a, NEAREST)
        records = enforcer.run(env, program)
        released = tuple(r.released for r in records)
        assert len(released) == len(env)
        for k in range(len(released) + 1):
            assert membership(a, released[:k])

    def test_thousand_tick_run_every_prefix_sound(self):
        a = mutual_exclusion()
        env = random_inputs(a.alphabet, 1000, seed=9)
        records = Enforcer(a, NEAREST).run(env, parse_program(CONSTANT_ONE))
        released = tuple(r.released for r in records)
        location = a.initial
        for event in released:
            location = a.delta[(location, event)]
            assert location != a.violating


class TestStateTracking:
    def test_location_matches_released_word(self):
        a = mutual_exclusion()
        ai = project_inputs(a)
        enforcer = Enforcer(a, NEAREST)
        program = parse_program(CONSTANT_ONE)
        released = []
        for x in random_inputs(a.alphabet, 64, seed=1):
            record = enforcer.tick(x, program)
            released.append(record.released)
            # synchronized with the property automaton
            assert enforcer.location == a.run(released)
            assert enforcer.location != a.violating
            # and consistent with the input projection (some run reaches it)
            frontier = {ai.initial}
            for e in released:
                frontier = {d for s in frontier for d in ai.successors(s, e.input)}
            assert enforcer.location in frontier

    def test_edit_flags_match_event_comparison(self):
        enforcer = Enforcer(mutual_exclusion(), NEAREST)
        program = parse_program(CONSTANT_ONE)
        for x in random_inputs(enforcer.automaton.alphabet, 64, seed=2):
            record = enforcer.tick(x, program)
            assert record.input_edited == (record.released.input != record.observed.input)
            assert record.output_edited == (record.released.output != record.observed.output)

    def test_input_edited_only_without_safe_successor(self):
        a = mutual_exclusion()
        ai = project_inputs(a)
        enforcer = Enforcer(a, NEAREST)
        program = parse_program(CONSTANT_ONE)
        for x in random_inputs(a.alphabet, 64, seed=3):
            before = enforcer.location
            record = enforcer.tick(x, program)
            assert record.input_edited == (not ai.safe_successor_exists(before, x))

    def test_snapshot_restore_replays_identically(self):
        a = mutual_exclusion()
        enforcer = Enforcer(a, NEAREST)
        program = parse_program(CONSTANT_ONE)
        enforcer.tick(bv("10"), program)
        snap = enforcer.snapshot()
        first = enforcer.tick(bv("11"), program)
        enforcer.restore(snap)
        again = enforcer.tick(bv("11"), program)
        assert first == again


class TestReplayMonotonicity:
    @settings(max_examples=25, deadline=None)
    @given(data=st.data())
    def test_released_prefix_is_stable_under_extension(self, data):
        a = mutual_exclusion()
        program = data.draw(mealy_programs(a.alphabet))
        env = data.draw(words(a.alphabet, max_len=4))
        extension = data.draw(words(a.alphabet, max_len=3))
        inputs = [e.input for e in env]
        extra = [e.input for e in extension]

        program.reset()
        short = Enforcer(a, NEAREST).run(inputs, program)
        program.reset()
        long = Enforcer(a, NEAREST).run(inputs + extra, program)
        assert [r.released for r in long[: len(short)]] == [r.released for r in short]


class TestEnforceWord:
    def test_matches_scripted_run(self):
        a = mutual_exclusion()
        observed = (ev("10/1"), ev("11/1"), ev("01/0"))
        direct = enforce_word(a, observed, NEAREST)
        enforcer = Enforcer(a, NEAREST)
        script = ScriptedProgram([e.output for e in observed])
        via_run = tuple(
            r.released for r in enforcer.run([e.input for e in observed], script)
        )
        assert direct == via_run == (ev("10/1"), ev("10/1"), ev("01/0"))

    def test_accepts_existing_enforcer_and_resets_it(self):
        a = mutual_exclusion()
        enforcer = Enforcer(a, NEAREST)
        enforcer.tick(bv("10"), parse_program(CONSTANT_ONE))
        assert enforce_word(enforcer, (ev("11/1"),)) == (ev("10/1"),)
        assert enforcer.ticks == 1  # reset happened before the word

    def test_observed_word_satisfying_property_is_untouched(self):
        a = mutual_exclusion()
        observed = (ev("10/1"), ev("01/0"), ev("00/1"))
        assert membership(a, observed)
        for policy in (NEAREST, LEXICOGRAPHIC, SEEDED_RANDOM):
            assert enforce_word(a, observed, policy, seed=4) == observed

    def test_seeded_policy_is_reproducible(self):
        a = mutual_exclusion()
        observed = (ev("11/1"), ev("11/0"), ev("01/1"))
        first = enforce_word(a, observed, SEEDED_RANDOM, seed=21)
        second = enforce_word(a, observed, SEEDED_RANDOM, seed=21)
        assert first == second
