"""Elaboration of surface programs into checked boxes."""

from __future__ import annotations

from typing import Iterator, Optional, Union

from ..build import box, gate_, let_, lift_, output
from ..check import ErrorKind, WireTypeError, check_box, output_type
from ..ir import (
    UNIT,
    Box,
    Pair,
    Pattern,
    UnitPat,
    format_wtype,
    gate_types,
    pattern_type,
    unbox,
)
from .syntax import PPair, PUnit, PVar, SGate, SIf, SLet, SLift, SOutput, SourceProgram, SPat, parse


class ElaborationError(Exception):
    """A surface-level error outside the linear type system (unknown box)."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


def _error(kind: ErrorKind, line: int, detail: str) -> WireTypeError:
    return WireTypeError(kind, detail, (f"line {line}",))


def _resolve(sp: SPat, env: dict[str, Pattern]) -> Pattern:
    if isinstance(sp, PUnit):
        return UNIT
    if isinstance(sp, PPair):
        return Pair(_resolve(sp.left, env), _resolve(sp.right, env))
    if sp.name not in env:
        raise _error(ErrorKind.UNBOUND_VAR, sp.line, f"{sp.name!r} is not in scope")
    return env[sp.name]


def _names(sp: SPat) -> list[str]:
    if isinstance(sp, PVar):
        return [sp.name]
    if isinstance(sp, PPair):
        return _names(sp.left) + _names(sp.right)
    return []


def _consume(sp: SPat, env: dict[str, Pattern]) -> tuple[Pattern, dict[str, Pattern]]:
    p = _resolve(sp, env)
    env = dict(env)
    for n in _names(sp):
        env.pop(n, None)
    return p, env


def _bind(sp: SPat, p: Pattern, env: dict[str, Pattern], line: int) -> dict[str, Pattern]:
    names = _names(sp)
    dup = {n for n in names if names.count(n) > 1}
    if dup:
        raise _error(ErrorKind.DUPLICATE_VAR, line, f"{sorted(dup)[0]!r} bound twice")
    env = dict(env)

    def go(sp: SPat, p: Pattern) -> None:
        if isinstance(sp, PVar):
            env[sp.name] = p
        elif isinstance(sp, PUnit):
            if not isinstance(p, UnitPat):
                raise _error(ErrorKind.TYPE_MISMATCH, line, f"'()' cannot bind {format_wtype(pattern_type(p))}")
        elif isinstance(p, Pair):
            go(sp.left, p.left)
            go(sp.right, p.right)
        else:
            raise _error(
                ErrorKind.TYPE_MISMATCH, line, f"pair pattern cannot bind {format_wtype(pattern_type(p))}"
            )

    go(sp, p)
    return env


def _stmts(stmts: tuple, env: dict, cenv: dict, boxes: dict[str, Box]):
    s, rest = stmts[0], stmts[1:]
    if isinstance(s, SOutput):
        p, _ = _consume(s.pat, env)
        return output(p)
    if isinstance(s, SGate):
        p, env2 = _consume(s.arg, env)
        w_in, _ = gate_types(s.gate)
        if pattern_type(p) != w_in:
            raise _error(
                ErrorKind.TYPE_MISMATCH,
                s.line,
                f"{s.gate!r} expects {format_wtype(w_in)}, got {format_wtype(pattern_type(p))}",
            )
        return gate_(s.gate, p, lambda q: _stmts(rest, _bind(s.out, q, env2, s.line), cenv, boxes))
    if isinstance(s, SLet):
        if s.box not in boxes:
            raise ElaborationError(s.line, f"unknown box {s.box!r}")
        p, env2 = _consume(s.arg, env)
        try:
            c = unbox(boxes[s.box], p)
        except WireTypeError as e:
            raise e.at(f"line {s.line}") from None
        return let_(c, lambda q: _stmts(rest, _bind(s.out, q, env2, s.line), cenv, boxes))
    if isinstance(s, SLift):
        p, env2 = _consume(s.pat, env)
        return lift_(p, lambda v: _stmts(rest, env2, {**cenv, s.name: v}, boxes))
    if isinstance(s, SIf):
        if s.name not in cenv:
            raise _error(ErrorKind.UNBOUND_VAR, s.line, f"{s.name!r} is not a lifted value")
        v = cenv[s.name]
        if not isinstance(v, bool):
            raise _error(ErrorKind.TYPE_MISMATCH, s.line, f"{s.name!r} is not a single bit")
        return _stmts(s.then if v else s.orelse, env, cenv, boxes)
    raise TypeError(f"unknown statement {s!r}")


def _elaborate_one(name: str, bd, boxes: dict[str, Box]) -> Box:
    def body(p: Pattern):
        env = _bind(bd.param, p, {}, bd.line)
        return _stmts(bd.body, env, {}, boxes)

    try:
        b = box(bd.in_type, body, check=False)
        check_box(b)
        actual = output_type(b.body)
        if actual != bd.out_type:
            raise WireTypeError(
                ErrorKind.TYPE_MISMATCH,
                f"declared output {format_wtype(bd.out_type)}, body produces {format_wtype(actual)}",
            )
    except WireTypeError as e:
        raise e.at(f"box {name}") from None
    return b


def elaborate_each(
    prog: SourceProgram, externs: Optional[dict[str, Box]] = None
) -> Iterator[tuple[str, Union[Box, WireTypeError, ElaborationError]]]:
    """Yield ``(name, box_or_error)`` for every box, continuing past failures.

    A box that fails is not visible to later boxes.
    """
    boxes: dict[str, Box] = dict(externs or {})
    for name, bd in prog.boxes.items():
        try:
            b = _elaborate_one(name, bd, boxes)
        except (WireTypeError, ElaborationError) as e:
            yield name, e
            continue
        boxes[name] = b
        yield name, b


def elaborate(prog: SourceProgram, externs: Optional[dict[str, Box]] = None) -> dict[str, Box]:
    """Elaborate every box in order; each may unbox earlier ones (or ``externs``).

    Raises the first error met.
    """
    out: dict[str, Box] = {}
    for name, r in elaborate_each(prog, externs):
        if isinstance(r, Exception):
            raise r
        out[name] = r
    return out


def load(text: str, externs: Optional[dict[str, Box]] = None) -> dict[str, Box]:
    return elaborate(parse(text), externs)
