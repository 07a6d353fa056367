import numpy as np
import pytest
from hypothesis import given
from strategies import rng, seeds

from qwire.corpus import builtin, builtin_corpus
from qwire.denote import denote_box, superop_distance
from qwire.gen import random_box
from qwire.ir import Control, H
from qwire.surface import (
    Branch,
    Halt,
    InitReg,
    MeasReg,
    RegisterError,
    RegisterProgram,
    UnitaryReg,
    denote_register,
    format_register,
    lower,
    parse_register,
)


def test_lower_coin_flip():
    rp = lower(builtin("coin_flip"))
    assert rp.num_wires_in == 0
    assert rp.instructions == (InitReg(0, 0), UnitaryReg(H, (0,)), MeasReg(0), Halt((0,)))
    assert format_register(rp) == "init 0 0\nu H 0\nmeas 0\nhalt 0\n"


def test_lower_identity():
    assert format_register(lower(builtin("id@Qubit"))) == "halt 0\n"
    assert format_register(lower(builtin("id@One"))) == "halt\n"


def test_lower_lift_meas():
    assert format_register(lower(builtin("lift_meas"))) == (
        "meas 0\nbranch 0 {\n  init 1 1\n  halt 1\n} else {\n  init 1 0\n  halt 1\n}\n"
    )


def test_registers_never_reused():
    rp = lower(builtin("coin_flips@2"))
    inits = []

    def walk(instrs):
        for ins in instrs:
            if isinstance(ins, InitReg):
                inits.append(ins.reg)
            if isinstance(ins, Branch):
                walk(ins.then)
                walk(ins.orelse)

    walk(rp.instructions)
    assert inits == sorted(set(inits))


def test_two_wire_gate_names():
    text = format_register(lower(builtin("boxed_gate@ctrl.H")))
    assert text == "u ctrl.H 0 1\nhalt 0 1\n"
    assert parse_register(text).instructions[0] == UnitaryReg(Control(H), (0, 1))


def test_parse_register_round_trip_corpus():
    for name, b in builtin_corpus().items():
        rp = lower(b)
        assert parse_register(format_register(rp)) == rp, name


@pytest.mark.parametrize(
    "text",
    [
        "halt 0\nmeas 0\n",  # after halt
        "meas 0\n",  # no halt
        "halt 0 0\n",  # repeated register
        "init 0 0\nhalt\n",  # live register left out
        "u H 0\nhalt 1\n",
    ],
)
def test_bad_programs(text):
    with pytest.raises(RegisterError):
        denote_register(parse_register(text))


def test_parse_errors():
    for text in ["jump 3\n", "branch 0 {\nhalt 0\n", "branch 0 {\nhalt 0\n}\n", "}\n"]:
        with pytest.raises(RegisterError):
            parse_register(text)


def test_inputs_must_be_contiguous():
    with pytest.raises(RegisterError):
        parse_register("halt 1\n")


def test_register_semantics_by_hand():
    rp = RegisterProgram(0, (InitReg(0, 1), InitReg(1, 0), Halt((1, 0))))
    out = denote_register(rp)(np.eye(1))
    # |0> (x) |1> in halt order
    assert out[1, 1] == 1


def test_preservation_on_corpus():
    for name, b in builtin_corpus(max_n=4).items():
        assert superop_distance(denote_register(lower(b)), denote_box(b)) <= 1e-9, name


@given(seeds)
def test_preservation_random(seed):
    b = random_box(rng(seed), max_lifts=2)
    assert superop_distance(denote_register(lower(b)), denote_box(b)) <= 1e-9
