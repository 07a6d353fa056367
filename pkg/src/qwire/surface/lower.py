"""Lowering to register programs over concrete, never-renamed registers.

Input wires occupy registers ``0 .. k-1`` in input-pattern order.  Every
initialisation takes the next unused register, so a register is never
reused after a discard or a branch consumes it.  A lift becomes a
measurement (for qubit wires) followed by one ``branch`` per lifted wire;
a branch consumes its register.

Text form, one instruction per line::

    init r b | u NAME r1 [r2 ...] | meas r | discard r | halt [r1 ...]
    branch r {
      ...
    } else {
      ...
    }

``NAME`` joins a gate name with dots (``ctrl.H``).  The ``branch`` arm
runs when the register holds 1, the ``else`` arm when it holds 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .. import matrix as M
from ..denote import Superoperator, denote_gate_pad, permutation_matrix, super_, super_sum
from ..ir import (
    Apply,
    Box,
    Circuit,
    Discard,
    GateApp,
    Init1,
    Meas,
    New1,
    Output,
    Prim,
    Qubit,
    Unitary,
    pattern_leaves,
    pattern_type,
    pattern_vars,
    Tensor,
    One,
)
from .printer import format_unitary
from .syntax import parse_gate


@dataclass(frozen=True)
class InitReg:
    reg: int
    bit: int


@dataclass(frozen=True)
class UnitaryReg:
    u: Unitary
    regs: tuple


@dataclass(frozen=True)
class MeasReg:
    reg: int


@dataclass(frozen=True)
class DiscardReg:
    reg: int


@dataclass(frozen=True)
class Halt:
    regs: tuple


@dataclass(frozen=True)
class Branch:
    reg: int
    then: tuple
    orelse: tuple


Instr = Union[InitReg, UnitaryReg, MeasReg, DiscardReg, Halt, Branch]


@dataclass(frozen=True)
class RegisterProgram:
    num_wires_in: int
    instructions: tuple


class RegisterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lowering


def lower(b: Box) -> RegisterProgram:
    leaves = pattern_vars(b.input_pat)
    regs = {x: r for r, x in enumerate(leaves)}
    return RegisterProgram(len(leaves), tuple(_lower(b.body, regs, len(leaves))))


def _lower(c: Circuit, regs: dict[int, int], nxt: int) -> list:
    if isinstance(c, Output):
        return [Halt(tuple(regs[x] for x in pattern_vars(c.pat)))]
    if isinstance(c, GateApp):
        g = c.gate
        ins = [regs[x] for x in pattern_vars(c.inp)]
        regs = {x: r for x, r in regs.items() if x not in pattern_vars(c.inp)}
        outs = pattern_vars(c.out)
        if isinstance(g, Apply):
            instr = UnitaryReg(g.u, tuple(ins))
            regs.update(zip(outs, ins))
        elif g is Meas:
            instr = MeasReg(ins[0])
            regs[outs[0]] = ins[0]
        elif g is Discard:
            instr = DiscardReg(ins[0])
        else:
            instr = InitReg(nxt, 1 if g in (Init1, New1) else 0)
            regs[outs[0]] = nxt
            nxt += 1
        return [instr] + _lower(c.rest, regs, nxt)

    leaves = pattern_leaves(c.pat)
    lifted = [regs[leaf.var] for leaf in leaves]
    regs = {x: r for x, r in regs.items() if x not in pattern_vars(c.pat)}
    pre = [MeasReg(regs_r) for leaf, regs_r in zip(leaves, lifted) if pattern_type(leaf) is Qubit]

    def branch(k: int, bits: list[bool]) -> list:
        if k == len(lifted):
            v = _value(pattern_type(c.pat), list(bits))
            return _lower(c.branch(v), regs, nxt)
        return [Branch(lifted[k], tuple(branch(k + 1, bits + [True])), tuple(branch(k + 1, bits + [False])))]

    return pre + branch(0, [])


def _value(w, bits: list[bool]):
    if isinstance(w, Tensor):
        left = _value(w.left, bits)
        return (left, _value(w.right, bits))
    if w is One:
        return ()
    return bits.pop(0)


# ---------------------------------------------------------------------------
# Semantics


def denote_register(rp: RegisterProgram) -> Superoperator:
    """Superoperator of a register program.

    The state is kept in a running register order; each instruction first
    permutes its registers to the front and then applies the padded gate.
    """
    order = list(range(rp.num_wires_in))
    return _denote_seq(list(rp.instructions), order)


def _front(order: list[int], regs: list[int]) -> tuple[Superoperator, list[int]]:
    for r in regs:
        if r not in order:
            raise RegisterError(f"register {r} is not live")
    if len(set(regs)) != len(regs):
        raise RegisterError(f"registers {regs} repeat")
    pos = {r: i for i, r in enumerate(order)}
    new = list(regs) + [r for r in order if r not in regs]
    return super_(permutation_matrix([pos[r] for r in new])), new


def _denote_seq(instrs: list, order: list[int]) -> Superoperator:
    dim = 2 ** len(order)
    if not instrs:
        raise RegisterError("program ends without halt")
    ins, rest = instrs[0], instrs[1:]
    if isinstance(ins, Halt):
        if rest:
            raise RegisterError("instructions after halt")
        if sorted(ins.regs) != sorted(order):
            raise RegisterError(f"halt {list(ins.regs)} does not list the live registers {sorted(order)}")
        perm, _ = _front(order, list(ins.regs))
        return perm
    if isinstance(ins, Branch):
        if rest:
            raise RegisterError("instructions after branch")
        perm, new = _front(order, [ins.reg])
        remaining = new[1:]
        pad = M.identity(2 ** len(remaining))
        terms = []
        for bit, arm in ((1, ins.then), (0, ins.orelse)):
            project = super_(M.kron(M.adjoint(M.ket(bool(bit))), pad))
            terms.append(_denote_seq(list(arm), remaining) @ project @ perm)
        return super_sum(terms, dim, terms[0].out_dim)
    if isinstance(ins, InitReg):
        if ins.reg in order:
            raise RegisterError(f"register {ins.reg} already live")
        step = denote_gate_pad(len(order), Init1 if ins.bit else Prim.INIT0)
        return _denote_seq(rest, [ins.reg] + order) @ step
    if isinstance(ins, UnitaryReg):
        perm, new = _front(order, list(ins.regs))
        step = denote_gate_pad(len(order) - len(ins.regs), Apply(ins.u))
        return _denote_seq(rest, new) @ step @ perm
    if isinstance(ins, MeasReg):
        perm, new = _front(order, [ins.reg])
        return _denote_seq(rest, new) @ denote_gate_pad(len(order) - 1, Meas) @ perm
    if isinstance(ins, DiscardReg):
        perm, new = _front(order, [ins.reg])
        return _denote_seq(rest, new[1:]) @ denote_gate_pad(len(order) - 1, Discard) @ perm
    raise RegisterError(f"unknown instruction {ins!r}")


# ---------------------------------------------------------------------------
# Text form


def format_register(rp: RegisterProgram) -> str:
    lines: list[str] = []
    _fmt(rp.instructions, 0, lines)
    return "\n".join(lines) + "\n"


def _fmt(instrs, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    for ins in instrs:
        if isinstance(ins, InitReg):
            lines.append(f"{pad}init {ins.reg} {ins.bit}")
        elif isinstance(ins, UnitaryReg):
            lines.append(f"{pad}u {format_unitary(ins.u, '.')} " + " ".join(map(str, ins.regs)))
        elif isinstance(ins, MeasReg):
            lines.append(f"{pad}meas {ins.reg}")
        elif isinstance(ins, DiscardReg):
            lines.append(f"{pad}discard {ins.reg}")
        elif isinstance(ins, Halt):
            lines.append(" ".join([f"{pad}halt", *map(str, ins.regs)]))
        else:
            lines.append(f"{pad}branch {ins.reg} {{")
            _fmt(ins.then, depth + 1, lines)
            lines.append(f"{pad}}} else {{")
            _fmt(ins.orelse, depth + 1, lines)
            lines.append(f"{pad}}}")


_LINE = re.compile(r"^(init|u|meas|discard|halt|branch)\b(.*)$")


def parse_register(text: str) -> RegisterProgram:
    """Inverse of :func:`format_register`.

    Input registers are those read before any ``init``; they must be
    ``0 .. k-1``.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    pos = 0

    def block(closing: bool) -> list:
        nonlocal pos
        out = []
        while pos < len(lines):
            ln = lines[pos]
            if ln in ("}", "} else {"):
                if not closing:
                    raise RegisterError(f"unexpected {ln!r}")
                return out
            pos += 1
            m = _LINE.match(ln)
            if not m:
                raise RegisterError(f"bad instruction {ln!r}")
            op, args = m.group(1), m.group(2).split()
            if op == "init":
                out.append(InitReg(int(args[0]), int(args[1])))
            elif op == "u":
                g = parse_gate(args[0])
                out.append(UnitaryReg(g.u, tuple(int(a) for a in args[1:])))
            elif op == "meas":
                out.append(MeasReg(int(args[0])))
            elif op == "discard":
                out.append(DiscardReg(int(args[0])))
            elif op == "halt":
                out.append(Halt(tuple(int(a) for a in args)))
            else:
                if args[-1:] != ["{"]:
                    raise RegisterError(f"bad branch {ln!r}")
                then = block(True)
                if pos >= len(lines) or lines[pos] != "} else {":
                    raise RegisterError("branch without else")
                pos += 1
                orelse = block(True)
                if pos >= len(lines) or lines[pos] != "}":
                    raise RegisterError("unterminated branch")
                pos += 1
                out.append(Branch(int(args[0]), tuple(then), tuple(orelse)))
        if closing:
            raise RegisterError("unterminated block")
        return out

    instrs = block(False)
    return RegisterProgram(_inputs(instrs), tuple(instrs))


def _inputs(instrs) -> int:
    seen_init: set[int] = set()
    inputs: set[int] = set()

    def walk(instrs) -> None:
        for ins in instrs:
            if isinstance(ins, InitReg):
                seen_init.add(ins.reg)
                continue
            regs = (
                ins.regs if isinstance(ins, (UnitaryReg, Halt)) else (ins.reg,)
            )
            inputs.update(r for r in regs if r not in seen_init)
            if isinstance(ins, Branch):
                walk(ins.then)
                walk(ins.orelse)

    walk(instrs)
    k = len(inputs)
    if inputs != set(range(k)):
        raise RegisterError(f"input registers {sorted(inputs)} are not 0..{k - 1}")
    return k

