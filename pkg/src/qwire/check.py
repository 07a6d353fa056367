"""Linear type checking of flat circuits.

Checking is syntax directed: each constructor splits the free context
between the pattern it consumes and what remains, so no constraint solving
is needed.  The first failed judgment raises :class:`WireTypeError`, which
carries a path into the circuit tree (``gate[i]`` for the i-th gate along
the path, ``lift[v]`` for the branch taken on value ``v``).
"""

from __future__ import annotations

import enum

from .ir import (
    BitVar,
    Pair,
    QubitVar,
    Box,
    Circuit,
    Context,
    GateApp,
    Lift,
    Output,
    Pattern,
    WireType,
    context_remove,
    context_vars,
    enumerate_values,
    format_wtype,
    gate_types,
    merge,
    pattern_leaves,
    pattern_type,
    singleton,
    trim,
    INVALID,
)


class ErrorKind(enum.Enum):
    DUPLICATE_VAR = "DuplicateVar"
    UNUSED_VAR = "UnusedVar"
    UNBOUND_VAR = "UnboundVar"
    TYPE_MISMATCH = "TypeMismatch"
    INVALID_MERGE = "InvalidMerge"


class WireTypeError(Exception):
    def __init__(self, kind: ErrorKind, detail: str, path: tuple[str, ...] = ()):
        self.kind = kind
        self.detail = detail
        self.path = tuple(path)
        super().__init__(str(self))

    def at(self, step: str) -> "WireTypeError":
        return WireTypeError(self.kind, self.detail, (step,) + self.path)

    def __str__(self) -> str:
        where = "/".join(self.path) or "<root>"
        return f"{self.kind.value} at {where}: {self.detail}"


def context_of_pattern(p: Pattern) -> Context:
    """Minimal context typing ``p``; raises DuplicateVar on repeated variables."""
    g: Context = ()
    for leaf in pattern_leaves(p):
        w = pattern_type(leaf)
        g2 = merge(g, singleton(leaf.var, w))
        if g2 is INVALID:
            raise WireTypeError(ErrorKind.DUPLICATE_VAR, f"variable {leaf.var} occurs twice in {_fmt_pat(p)}")
        g = g2
    return trim(g)


def _consume(p: Pattern, g: Context) -> Context:
    """Check ``p`` against ``g`` and return the leftover context."""
    ctx = context_of_pattern(p)
    avail = context_vars(g)
    for x, w in context_vars(ctx).items():
        if x not in avail:
            raise WireTypeError(ErrorKind.UNBOUND_VAR, f"variable {x} is not in scope")
        if avail[x] != w:
            raise WireTypeError(
                ErrorKind.TYPE_MISMATCH,
                f"variable {x} has type {format_wtype(avail[x])}, used as {format_wtype(w)}",
            )
    return context_remove(g, context_vars(ctx))


def _expect(actual: WireType, expected: WireType, what: str) -> None:
    if actual != expected:
        raise WireTypeError(
            ErrorKind.TYPE_MISMATCH,
            f"{what} has type {format_wtype(actual)}, expected {format_wtype(expected)}",
        )


def check_circuit(c: Circuit, g: Context) -> None:
    """Raise :class:`WireTypeError` unless ``c`` is well typed with free context exactly ``g``."""
    _check(c, trim(g), 0)


def _check(c: Circuit, g: Context, depth: int) -> None:
    if isinstance(c, Output):
        rest = _consume(c.pat, g)
        if rest:
            left = sorted(context_vars(rest))
            raise WireTypeError(ErrorKind.UNUSED_VAR, f"variables {left} are never consumed")
        return
    if isinstance(c, GateApp):
        step = f"gate[{depth}]"
        try:
            w_in, w_out = gate_types(c.gate)
            rest = _consume(c.inp, g)
            _expect(pattern_type(c.inp), w_in, f"input of {c.gate!r}")
            _expect(pattern_type(c.out), w_out, f"output of {c.gate!r}")
            out_ctx = context_of_pattern(c.out)
            g2 = merge(rest, out_ctx)
            if g2 is INVALID:
                raise WireTypeError(
                    ErrorKind.INVALID_MERGE, f"output pattern {_fmt_pat(c.out)} rebinds a live variable"
                )
        except WireTypeError as e:
            raise e.at(step) from None
        try:
            _check(c.rest, trim(g2), depth + 1)
        except WireTypeError as e:
            raise e.at(step) from None
        return
    if isinstance(c, Lift):
        try:
            rest = _consume(c.pat, g)
            keys = [v for v, _ in c.branches]
            expected = enumerate_values(pattern_type(c.pat))
            if keys != expected:
                raise WireTypeError(
                    ErrorKind.TYPE_MISMATCH, f"lift branches {keys} do not cover {expected}"
                )
        except WireTypeError as e:
            raise e.at(f"lift@{depth}") from None
        for v, b in c.branches:
            try:
                _check(b, rest, depth + 1)
            except WireTypeError as e:
                raise e.at(f"lift[{_fmt_value(v)}]") from None
        try:
            output_type(c)
        except WireTypeError as e:
            raise e.at(f"lift@{depth}") from None
        return
    raise WireTypeError(ErrorKind.TYPE_MISMATCH, f"not a circuit: {c!r}")


def _fmt_pat(p: Pattern) -> str:
    if isinstance(p, Pair):
        return f"({_fmt_pat(p.left)}, {_fmt_pat(p.right)})"
    if isinstance(p, (BitVar, QubitVar)):
        letter = "q" if isinstance(p, QubitVar) else "b"
        return f"{letter}{p.var or ''}"
    return "()"


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if v == ():
        return "()"
    return f"({_fmt_value(v[0])},{_fmt_value(v[1])})"


def check_box(b: Box) -> None:
    """Raise unless the input pattern has the box's input type and the body checks."""
    try:
        _expect(pattern_type(b.input_pat), b.input_type, "input pattern")
        ctx = context_of_pattern(b.input_pat)
    except WireTypeError as e:
        raise e.at("input") from None
    check_circuit(b.body, ctx)


def output_type(c: Circuit) -> WireType:
    if isinstance(c, Output):
        return pattern_type(c.pat)
    if isinstance(c, GateApp):
        return output_type(c.rest)
    types = [output_type(b) for _, b in c.branches]
    first = types[0]
    for v, w in zip((v for v, _ in c.branches), types):
        if w != first:
            raise WireTypeError(
                ErrorKind.TYPE_MISMATCH,
                f"branch {_fmt_value(v)} outputs {format_wtype(w)}, another {format_wtype(first)}",
            )
    return first


def box_type(b: Box) -> tuple[WireType, WireType]:
    return b.input_type, output_type(b.body)


def is_well_typed(b: Box) -> bool:
    try:
        check_box(b)
    except WireTypeError:
        return False
    return True

