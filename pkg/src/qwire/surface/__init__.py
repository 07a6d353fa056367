"""Surface syntax, elaboration, printing and lowering."""

from .elaborate import ElaborationError, elaborate, elaborate_each, load
from .lower import (
    Branch,
    DiscardReg,
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
from .printer import print_box, print_program
from .syntax import ParseError, SourceProgram, parse, parse_gate, parse_wtype

__all__ = [
    "Branch",
    "DiscardReg",
    "ElaborationError",
    "Halt",
    "InitReg",
    "MeasReg",
    "ParseError",
    "RegisterError",
    "RegisterProgram",
    "SourceProgram",
    "UnitaryReg",
    "denote_register",
    "elaborate",
    "elaborate_each",
    "format_register",
    "load",
    "lower",
    "parse",
    "parse_gate",
    "parse_register",
    "parse_wtype",
    "print_box",
    "print_program",
]
