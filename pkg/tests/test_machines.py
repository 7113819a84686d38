import random

import pytest
from hypothesis import given, settings, strategies as st

from revcousin.machines import (Enumeration, Halted, StillRunning, constant_program,
                                decode_instr, decode_program, encode_instr, encode_program,
                                format_program, parse_program, run_machine, run_program, settle)

instr = st.one_of(
    st.just(("HALT",)),
    st.builds(lambda r: ("INC", r), st.integers(0, 3)),
    st.builds(lambda r, a: ("DECJZ", r, a), st.integers(0, 3), st.integers(0, 5)),
    st.builds(lambda r, a: ("QJ", r, a), st.integers(0, 3), st.integers(0, 5)),
)


def test_examples():
    assert run_program([("HALT",)], 7, 1) == Halted(7, 1)
    assert run_program([("INC", 0), ("HALT",)], 5, 2) == Halted(6, 2)
    loop = [("DECJZ", 1, 0), ("HALT",)]
    assert run_program(loop, 3, 1000) == StillRunning(1000)
    assert settle(loop, 3, 50)[0] == "loops"
    assert run_program([], 4, 1) == Halted(0, 1)
    assert run_machine(0, 9, 5) == Halted(0, 1)


@given(st.integers(0, 10**6))
def test_instruction_codes(j):
    # every number names an instruction; INC ignores the high bits
    ins = decode_instr(j)
    assert decode_instr(encode_instr(ins)) == ins
    assert encode_instr(ins) <= j


@given(st.lists(instr, min_size=1, max_size=6))
def test_program_codes(prog):
    prog = tuple(p if p[0] in ("HALT", "INC") else (p[0], p[1], p[2] % len(prog)) for p in prog)
    e = encode_program(prog)
    assert decode_program(e) == prog
    assert parse_program(format_program(prog)) == prog


def test_invalid_codes_halt_at_once():
    bad = 0
    for e in range(2000):
        prog = decode_program(e)
        if prog == ():
            bad += 1
            assert run_machine(e, 3, 1) == Halted(0, 1)
    assert bad > 0


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_program("INC 7\nHALT")
    with pytest.raises(ValueError):
        parse_program("DECJZ 0 9\nHALT")
    with pytest.raises(ValueError):
        parse_program("JMP 2")
    assert parse_program("# comment\nINC 1  # bump\nHALT\n") == (("INC", 1), ("HALT",))


def test_constant_programs():
    for v in (0, 1, 5, 17):
        for inp in (0, 3, 12):
            res = run_program(constant_program(v), inp, 10**4)
            assert isinstance(res, Halted) and res.value == v


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 8), st.integers(1, 200), st.integers(0, 200))
def test_monotone_in_steps(e, inp, s, extra):
    a = Enumeration().run(e, inp, s)
    b = Enumeration().run(e, inp, s + extra)
    if isinstance(a, Halted):
        assert a == b
    else:
        assert a == StillRunning(s)


def test_resumed_runs_match_fresh_runs():
    rng = random.Random(11)
    enum = Enumeration()
    for _ in range(300):
        e, s = rng.randrange(3000), rng.randrange(1, 60)
        assert enum.run(e, e, s) == Enumeration().run(e, e, s)


def test_oracle_jumps():
    prog = [("QJ", 0, 2), ("HALT",), ("INC", 0), ("HALT",)]
    assert run_program(prog, 4, 10) == Halted(4, 2)
    assert run_program(prog, 4, 10, oracle=lambda n: n == 4) == Halted(5, 3)


def test_seeded_enumeration():
    enum = Enumeration({5: constant_program(2)})
    assert enum.run(5, 0, 100).value == 2
    assert enum.program(6) == decode_program(6)
