"""Canonical surface text for boxes.

Variables are named by type and index (``q``, ``q1``, ``b``, ``b2`` ...);
lifted values by nesting depth (``x``, ``x1`` ...).  A lift over a
compound pattern is printed as nested single-wire lifts, which elaborates
to an equivalent (but differently shaped) circuit.
"""

from __future__ import annotations

import re

from ..check import output_type
from ..ir import (
    Apply,
    BitControl,
    BitVar,
    Box,
    Circuit,
    Control,
    Gate,
    GateApp,
    Lift,
    Output,
    Pair,
    Pattern,
    QubitVar,
    Tensor,
    Transpose,
    Unitary,
    WireType,
    One,
    format_wtype,
    pattern_leaves,
    pattern_type,
)

INDENT = "  "


def var_name(leaf) -> str:
    letter = "q" if isinstance(leaf, QubitVar) else "b"
    return letter if leaf.var == 0 else f"{letter}{leaf.var}"


def format_pattern(p: Pattern) -> str:
    if isinstance(p, Pair):
        return f"({format_pattern(p.left)}, {format_pattern(p.right)})"
    if isinstance(p, (BitVar, QubitVar)):
        return var_name(p)
    return "()"


def format_unitary(u: Unitary, sep: str = " ") -> str:
    if isinstance(u, Control):
        return f"ctrl{sep}{format_unitary(u.u, sep)}"
    if isinstance(u, BitControl):
        return f"bit_ctrl{sep}{format_unitary(u.u, sep)}"
    if isinstance(u, Transpose):
        return f"transpose{sep}{format_unitary(u.u, sep)}"
    return u.value


def format_gate(g: Gate, sep: str = " ") -> str:
    if isinstance(g, Apply):
        return format_unitary(g.u, sep)
    return g.value


def _value_from_bits(w: WireType, bits: list[bool]):
    # consumes ``bits`` from the front
    if isinstance(w, Tensor):
        left = _value_from_bits(w.left, bits)
        return (left, _value_from_bits(w.right, bits))
    if w is One:
        return ()
    return bits.pop(0)


def _circuit(c: Circuit, depth: int, lifts: int, out: list[str]) -> None:
    pad = INDENT * depth
    if isinstance(c, Output):
        out.append(f"{pad}output {format_pattern(c.pat)};")
    elif isinstance(c, GateApp):
        out.append(f"{pad}gate {format_pattern(c.out)} = {format_gate(c.gate)}({format_pattern(c.inp)});")
        _circuit(c.rest, depth, lifts, out)
    else:
        _lift(c, pattern_leaves(c.pat), [], depth, lifts, out)


def _lift(c: Lift, leaves: list, bits: list[bool], depth: int, lifts: int, out: list[str]) -> None:
    pad = INDENT * depth
    if not leaves:
        v = _value_from_bits(pattern_type(c.pat), list(bits))
        if not bits:
            # nothing measured: keep the unit lift explicit
            out.append(f"{pad}lift {_lift_name(lifts)} = {format_pattern(c.pat)};")
            lifts += 1
        _circuit(c.branch(v), depth, lifts, out)
        return
    name = _lift_name(lifts)
    out.append(f"{pad}lift {name} = {var_name(leaves[0])};")
    out.append(f"{pad}if {name} {{")
    _lift(c, leaves[1:], bits + [True], depth + 1, lifts + 1, out)
    out.append(f"{pad}}} else {{")
    _lift(c, leaves[1:], bits + [False], depth + 1, lifts + 1, out)
    out.append(f"{pad}}}")


def _lift_name(k: int) -> str:
    return "x" if k == 0 else f"x{k}"


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


def box_ident(name: str) -> str:
    """Coerce a corpus name such as ``coin_flips@3`` into an identifier."""
    if _IDENT.match(name):
        return name
    s = re.sub(r"[^A-Za-z0-9_']", "_", name)
    return s if re.match(r"[A-Za-z_]", s) else f"_{s}"


def print_box(b: Box, name: str) -> str:
    lines = [
        f"box {box_ident(name)} ({format_pattern(b.input_pat)} : {format_wtype(b.input_type)})"
        f" -> {format_wtype(output_type(b.body))} {{"
    ]
    _circuit(b.body, 1, 0, lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_program(boxes: dict[str, Box]) -> str:
    return "\n".join(print_box(b, n) for n, b in boxes.items())

