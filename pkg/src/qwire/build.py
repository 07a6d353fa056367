"""Builder API: circuits written with host-language binders.

Continuations are ordinary Python callables receiving patterns (for gates and
``let_``) or classical values (for ``lift_``).  :func:`box` turns such a
description into a flat, checked :class:`~qwire.ir.Box`, allocating each
bound pattern at the lowest free variable indices.

    coin_flip = box(One, lambda _: gate_(Init0, UNIT, lambda x:
                                   gate_(H, x, lambda y:
                                   gate_(Meas, y, output))))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Union

from .check import check_box
from .ir import (
    Box,
    Circuit,
    Context,
    GateApp,
    Lift,
    Output,
    Pattern,
    WireType,
    as_gate,
    context_remove,
    enumerate_values,
    fresh_pat,
    gate_types,
    merge,
    pattern_type,
    pattern_vars,
    rename_pattern,
    trim,
    unbox,
)


@dataclass(frozen=True)
class GateB:
    gate: Any
    pat: Pattern
    k: Callable[[Pattern], "Term"]


@dataclass(frozen=True)
class LiftB:
    pat: Pattern
    k: Callable[[Any], "Term"]


@dataclass(frozen=True)
class LetB:
    c: "Term"
    k: Callable[[Pattern], "Term"]


Term = Union[Circuit, GateB, LiftB, LetB]


def output(p: Pattern) -> Output:
    return Output(p)


def gate_(g, p: Pattern, k: Callable[[Pattern], Term]) -> GateB:
    """Apply ``g`` (a gate or bare unitary) to ``p`` and continue with ``k(out)``."""
    return GateB(as_gate(g), p, k)


def lift_(p: Pattern, k: Callable[[Any], Term]) -> LiftB:
    return LiftB(p, k)


def let_(c: Term, k: Callable[[Pattern], Term]) -> LetB:
    """Run ``c`` and bind its output pattern in ``k``."""
    return LetB(c, k)


def unbox_(b: Box, p: Pattern) -> Circuit:
    return unbox(b, p)


def flatten(t: Term, g: Context) -> Circuit:
    """Flatten a builder term whose free context is ``g``."""
    return _flatten(t, trim(g), {}, ())


def _flatten(t: Term, live: Context, ren: dict, conts: tuple) -> Circuit:
    # ``ren`` maps names inside a flat circuit being replayed to live names;
    # builder terms already speak live names.  ``conts`` are pending let
    # continuations, innermost first.
    def r(p: Pattern) -> Pattern:
        return rename_pattern(p, lambda x: ren.get(x, x))

    if isinstance(t, Output):
        p = r(t.pat)
        if not conts:
            return Output(p)
        return _flatten(conts[0](p), live, {}, conts[1:])

    if isinstance(t, (GateApp, GateB)):
        g = t.gate
        inp = r(t.inp) if isinstance(t, GateApp) else t.pat
        rest_ctx = context_remove(live, pattern_vars(inp))
        _, w_out = gate_types(g)
        out, out_ctx = fresh_pat(rest_ctx, w_out)
        live2 = trim(merge(rest_ctx, out_ctx))
        if isinstance(t, GateApp):
            ren2 = dict(ren)
            ren2.update(zip(pattern_vars(t.out), pattern_vars(out)))
            rest = _flatten(t.rest, live2, ren2, conts)
        else:
            rest = _flatten(t.k(out), live2, {}, conts)
        return GateApp(g, inp, out, rest)

    if isinstance(t, (Lift, LiftB)):
        pat = r(t.pat)
        rest_ctx = context_remove(live, pattern_vars(pat))
        if isinstance(t, Lift):
            branches = tuple((v, _flatten(b, rest_ctx, dict(ren), conts)) for v, b in t.branches)
        else:
            branches = tuple(
                (v, _flatten(t.k(v), rest_ctx, {}, conts))
                for v in enumerate_values(pattern_type(pat))
            )
        return Lift(pat, branches)

    if isinstance(t, LetB):
        return _flatten(t.c, live, {}, (t.k,) + conts)

    raise TypeError(f"not a circuit term: {t!r}")


def box(w: WireType, f: Callable[[Pattern], Term], check: bool = True) -> Box:
    """Build a box with input type ``w`` from ``f(input pattern)``."""
    p, g = fresh_pat((), w)
    b = Box(w, p, flatten(f(p), g))
    if check:
        check_box(b)
    return b


def boxed_gate(g) -> Box:
    g = as_gate(g)
    w_in, _ = gate_types(g)
    return box(w_in, lambda p: gate_(g, p, output))


def id_circ(w: WireType) -> Box:
    return box(w, output)
