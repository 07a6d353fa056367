"""A linear quantum circuit language with a density-matrix semantics.

Circuits are built with :mod:`qwire.build` or parsed from ``.qw`` text
(:mod:`qwire.surface`), checked for linear use of wires
(:mod:`qwire.check`), interpreted as superoperators (:mod:`qwire.denote`)
and lowered to register programs.
"""

from .build import box, boxed_gate, gate_, id_circ, let_, lift_, output, unbox_
from .check import ErrorKind, WireTypeError, check_box, check_circuit, output_type
from .denote import Superoperator, choi, denote_box, denote_circuit, superop_eq
from .ir import (
    UNIT,
    Apply,
    Bit,
    BitControl,
    BitVar,
    Box,
    Control,
    Discard,
    GateApp,
    H,
    Init0,
    Init1,
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
    Transpose,
    X,
    Y,
    Z,
    compose,
    enumerate_values,
    fresh_pat,
    merge,
    unbox,
    wire_count,
)

__version__ = "0.1.0"

__all__ = [
    "Apply",
    "Bit",
    "BitControl",
    "BitVar",
    "Box",
    "box",
    "boxed_gate",
    "check_box",
    "check_circuit",
    "choi",
    "compose",
    "Control",
    "denote_box",
    "denote_circuit",
    "Discard",
    "enumerate_values",
    "ErrorKind",
    "fresh_pat",
    "gate_",
    "GateApp",
    "H",
    "id_circ",
    "Init0",
    "Init1",
    "let_",
    "Lift",
    "lift_",
    "Meas",
    "merge",
    "New0",
    "New1",
    "One",
    "Output",
    "output",
    "output_type",
    "Pair",
    "Qubit",
    "QubitVar",
    "superop_eq",
    "Superoperator",
    "Tensor",
    "Transpose",
    "unbox",
    "unbox_",
    "UNIT",
    "wire_count",
    "WireTypeError",
    "X",
    "Y",
    "Z",
]
