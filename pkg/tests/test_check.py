import pytest
from hypothesis import given
from strategies import rng, seeds

from qwire.build import box, gate_, id_circ, lift_, output
from qwire.check import (
    ErrorKind,
    WireTypeError,
    box_type,
    check_box,
    check_circuit,
    context_of_pattern,
    is_well_typed,
    output_type,
)
from qwire.corpus import builtin_corpus, source_files
from qwire.gen import random_box
from qwire.ir import (
    UNIT,
    Apply,
    Bit,
    BitVar,
    Box,
    Discard,
    GateApp,
    H,
    Init0,
    Lift,
    Meas,
    New0,
    New1,
    One,
    Output,
    Pair,
    Qubit,
    QubitVar,
    Tensor,
)
from qwire.surface import elaborate_each, parse


def kind(b: Box) -> ErrorKind:
    with pytest.raises(WireTypeError) as e:
        check_box(b)
    return e.value.kind


def test_clone_is_duplicate_var():
    b = Box(Qubit, QubitVar(0), Output(Pair(QubitVar(0), QubitVar(0))))
    assert kind(b) is ErrorKind.DUPLICATE_VAR


def test_dropped_wire_is_unused_var():
    b = Box(Tensor(Qubit, Qubit), Pair(QubitVar(0), QubitVar(1)), Output(QubitVar(0)))
    assert kind(b) is ErrorKind.UNUSED_VAR


def test_unbound_var():
    b = Box(One, UNIT, Output(QubitVar(3)))
    assert kind(b) is ErrorKind.UNBOUND_VAR


def test_gate_on_wrong_type():
    b = Box(Bit, BitVar(0), GateApp(Apply(H), BitVar(0), BitVar(0), Output(BitVar(0))))
    assert kind(b) is ErrorKind.TYPE_MISMATCH


def test_variable_used_at_wrong_type():
    b = Box(Qubit, QubitVar(0), GateApp(Discard, BitVar(0), UNIT, Output(UNIT)))
    assert kind(b) is ErrorKind.TYPE_MISMATCH


def test_gate_output_shape_mismatch():
    b = Box(One, UNIT, GateApp(Init0, UNIT, BitVar(0), Output(BitVar(0))))
    assert kind(b) is ErrorKind.TYPE_MISMATCH


def test_rebinding_live_variable_is_invalid_merge():
    body = GateApp(Init0, UNIT, QubitVar(0), Output(QubitVar(0)))
    b = Box(Qubit, QubitVar(0), body)
    assert kind(b) is ErrorKind.INVALID_MERGE


def test_duplicate_in_input_pattern():
    b = Box(Tensor(Qubit, Qubit), Pair(QubitVar(0), QubitVar(0)), Output(Pair(QubitVar(0), QubitVar(0))))
    assert kind(b) is ErrorKind.DUPLICATE_VAR


def test_input_pattern_type_mismatch():
    b = Box(Qubit, BitVar(0), Output(BitVar(0)))
    assert kind(b) is ErrorKind.TYPE_MISMATCH


def test_lift_branches_must_agree():
    body = Lift(
        QubitVar(0),
        (
            (False, GateApp(New0, UNIT, BitVar(0), Output(BitVar(0)))),
            (True, GateApp(Init0, UNIT, QubitVar(0), Output(QubitVar(0)))),
        ),
    )
    assert kind(Box(Qubit, QubitVar(0), body)) is ErrorKind.TYPE_MISMATCH


def test_lift_must_be_total():
    body = Lift(QubitVar(0), ((False, GateApp(New0, UNIT, BitVar(0), Output(BitVar(0)))),))
    assert kind(Box(Qubit, QubitVar(0), body)) is ErrorKind.TYPE_MISMATCH


def test_lift_consumes_its_wires():
    body = Lift(QubitVar(0), tuple((v, Output(QubitVar(0))) for v in (False, True)))
    assert kind(Box(Qubit, QubitVar(0), body)) is ErrorKind.UNBOUND_VAR


def test_error_path_points_at_gate():
    body = GateApp(
        Init0, UNIT, QubitVar(1), GateApp(Meas, QubitVar(1), BitVar(1), Output(Pair(QubitVar(0), QubitVar(0))))
    )
    with pytest.raises(WireTypeError) as e:
        check_box(Box(Qubit, QubitVar(0), body))
    assert e.value.kind is ErrorKind.DUPLICATE_VAR
    assert e.value.path[-1] == "gate[1]"


def test_error_message_names_kind():
    e = WireTypeError(ErrorKind.UNUSED_VAR, "x", ("a", "b"))
    assert str(e) == "UnusedVar at a/b: x"
    assert e.at("top").path == ("top", "a", "b")


def test_context_of_pattern():
    assert context_of_pattern(Pair(QubitVar(2), BitVar(0))) == (Bit, None, Qubit)
    with pytest.raises(WireTypeError):
        context_of_pattern(Pair(QubitVar(1), BitVar(1)))


def test_check_circuit_with_context():
    c = GateApp(Meas, QubitVar(1), BitVar(1), Output(Pair(BitVar(1), QubitVar(0))))
    check_circuit(c, (Qubit, Qubit))
    with pytest.raises(WireTypeError):
        check_circuit(c, (None, Qubit))


def test_output_type_and_box_type():
    lm = builtin_corpus()["lift_meas"]
    assert output_type(lm.body) is Bit
    assert box_type(lm) == (Qubit, Bit)


def test_builder_boxes_check():
    box(Qubit, lambda q: lift_(q, lambda x: gate_(New1 if x else New0, UNIT, output)))
    assert is_well_typed(id_circ(Tensor(Qubit, Tensor(Bit, One))))
    assert not is_well_typed(Box(Qubit, QubitVar(0), Output(UNIT)))


def test_builder_rejects_ill_typed():
    with pytest.raises(WireTypeError):
        box(Qubit, lambda q: output(Pair(q, q)))


def test_corpus_is_well_typed():
    for b in builtin_corpus(max_n=4).values():
        check_box(b)


def test_bundled_sources():
    results = {}
    for text in source_files().values():
        for name, r in elaborate_each(parse(text)):
            results[name] = r
    assert results["clone"].kind is ErrorKind.DUPLICATE_VAR
    assert results["drop"].kind is ErrorKind.UNUSED_VAR
    ok = [n for n, r in results.items() if isinstance(r, Box)]
    assert len(ok) == len(results) - 2


@given(seeds)
def test_random_boxes_check(seed):
    b = random_box(rng(seed), max_lifts=2)
    check_box(b)
