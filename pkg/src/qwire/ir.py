"""Circuit intermediate representation.

Wire types, linear typing contexts, patterns, gates, flat circuits and
boxed circuits, together with the meta-operations on them (disjoint merge,
fresh pattern allocation, composition, unboxing and alpha-normalisation).

Variables are natural numbers.  A context is a tuple indexed by variable,
holding the variable's wire type or ``None`` when it is out of scope.
Classical values use plain Python data: ``()`` for unit, ``bool`` for a bit
and 2-tuples for pairs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Union


# ---------------------------------------------------------------------------
# Wire types


class Base(enum.Enum):
    ONE = "One"
    BIT = "Bit"
    QUBIT = "Qubit"

    def __repr__(self) -> str:
        return self.value


One = Base.ONE
Bit = Base.BIT
Qubit = Base.QUBIT


@dataclass(frozen=True)
class Tensor:
    left: "WireType"
    right: "WireType"

    def __repr__(self) -> str:
        return f"Tensor({self.left!r}, {self.right!r})"


WireType = Union[Base, Tensor]


def tensor(*ws: WireType) -> WireType:
    """Right-nested tensor of the given types; ``tensor()`` is ``One``."""
    if not ws:
        return One
    out = ws[-1]
    for w in reversed(ws[:-1]):
        out = Tensor(w, out)
    return out


def wire_count(w: WireType) -> int:
    if isinstance(w, Tensor):
        return wire_count(w.left) + wire_count(w.right)
    return 0 if w is One else 1


def format_wtype(w: WireType) -> str:
    if isinstance(w, Tensor):
        left = format_wtype(w.left)
        if isinstance(w.left, Tensor):
            left = f"({left})"
        return f"{left} * {format_wtype(w.right)}"
    return w.value


Value = Union[tuple, bool]


def enumerate_values(w: WireType) -> list:
    """All classical values of shape ``w``.

    Ordered big-endian over the leaves, left to right, ``False`` before
    ``True``; so ``Bit * Bit`` gives (F,F), (F,T), (T,F), (T,T).
    """
    if isinstance(w, Tensor):
        return [(a, b) for a in enumerate_values(w.left) for b in enumerate_values(w.right)]
    if w is One:
        return [()]
    return [False, True]


def value_bits(v: Value) -> list[bool]:
    """Leaf booleans of a classical value, left to right."""
    if isinstance(v, bool):
        return [v]
    if v == ():
        return []
    a, b = v
    return value_bits(a) + value_bits(b)


# ---------------------------------------------------------------------------
# Contexts


class _Invalid:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Invalid"

    def __reduce__(self):
        return (_Invalid, ())


INVALID = _Invalid()

Context = tuple  # tuple[Optional[WireType], ...]
OContext = Union[Context, _Invalid]


def is_valid(g: OContext) -> bool:
    return g is not INVALID


def merge(g1: OContext, g2: OContext) -> OContext:
    """Disjoint merge; ``INVALID`` when either side is invalid or they overlap."""
    if g1 is INVALID or g2 is INVALID:
        return INVALID
    out = []
    for a, b in itertools.zip_longest(g1, g2):
        if a is not None and b is not None:
            return INVALID
        out.append(a if a is not None else b)
    return tuple(out)


def merge_all(*gs: OContext) -> OContext:
    out: OContext = ()
    for g in gs:
        out = merge(out, g)
    return out


def singleton(x: int, w: WireType) -> Context:
    if w is not Bit and w is not Qubit:
        raise ValueError(f"only Bit or Qubit variables exist, got {format_wtype(w)}")
    if x < 0:
        raise ValueError(f"negative variable {x}")
    return (None,) * x + (w,)


def trim(g: Context) -> Context:
    """Drop trailing absent slots; contexts equal after trimming are the same."""
    n = len(g)
    while n and g[n - 1] is None:
        n -= 1
    return tuple(g[:n])


def context_vars(g: Context) -> dict[int, WireType]:
    return {i: w for i, w in enumerate(g) if w is not None}


def context_size(g: Context) -> int:
    return sum(w is not None for w in g)


def context_remove(g: Context, xs) -> Context:
    xs = set(xs)
    return trim(tuple(None if i in xs else w for i, w in enumerate(g)))


# ---------------------------------------------------------------------------
# Gates


class UnitaryBase(enum.Enum):
    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"

    def __repr__(self) -> str:
        return self.value


H = UnitaryBase.H
X = UnitaryBase.X
Y = UnitaryBase.Y
Z = UnitaryBase.Z


@dataclass(frozen=True)
class Control:
    """Quantum-controlled ``u``: input ``Qubit * input_type(u)``."""

    u: "Unitary"


@dataclass(frozen=True)
class BitControl:
    """Classically controlled ``u``: input ``Bit * input_type(u)``."""

    u: "Unitary"


@dataclass(frozen=True)
class Transpose:
    """Conjugate transpose of ``u``."""

    u: "Unitary"


Unitary = Union[UnitaryBase, Control, BitControl, Transpose]


def unitary_type(u: Unitary) -> WireType:
    if isinstance(u, Control):
        return Tensor(Qubit, unitary_type(u.u))
    if isinstance(u, BitControl):
        return Tensor(Bit, unitary_type(u.u))
    if isinstance(u, Transpose):
        return unitary_type(u.u)
    return Qubit


class Prim(enum.Enum):
    INIT0 = "init0"
    INIT1 = "init1"
    NEW0 = "new0"
    NEW1 = "new1"
    MEAS = "meas"
    DISCARD = "discard"

    def __repr__(self) -> str:
        return self.value


Init0 = Prim.INIT0
Init1 = Prim.INIT1
New0 = Prim.NEW0
New1 = Prim.NEW1
Meas = Prim.MEAS
Discard = Prim.DISCARD


@dataclass(frozen=True)
class Apply:
    u: Unitary


Gate = Union[Apply, Prim]

_PRIM_TYPES = {
    Init0: (One, Qubit),
    Init1: (One, Qubit),
    New0: (One, Bit),
    New1: (One, Bit),
    Meas: (Qubit, Bit),
    Discard: (Bit, One),
}


def as_gate(g: Union[Gate, Unitary]) -> Gate:
    """Coerce a bare unitary into a gate."""
    if isinstance(g, (Apply, Prim)):
        return g
    return Apply(g)


def gate_types(g: Gate) -> tuple[WireType, WireType]:
    """``(input type, output type)`` of a gate."""
    if isinstance(g, Apply):
        w = unitary_type(g.u)
        return w, w
    return _PRIM_TYPES[g]


# ---------------------------------------------------------------------------
# Patterns


@dataclass(frozen=True)
class UnitPat:
    def __repr__(self) -> str:
        return "()"


UNIT = UnitPat()


@dataclass(frozen=True)
class BitVar:
    var: int

    def __repr__(self) -> str:
        return f"BitVar({self.var})"


@dataclass(frozen=True)
class QubitVar:
    var: int

    def __repr__(self) -> str:
        return f"QubitVar({self.var})"


@dataclass(frozen=True)
class Pair:
    left: "Pattern"
    right: "Pattern"

    def __repr__(self) -> str:
        return f"({self.left!r}, {self.right!r})"


Pattern = Union[UnitPat, BitVar, QubitVar, Pair]


def pair(*ps: Pattern) -> Pattern:
    """Right-nested pair pattern; mirrors :func:`tensor`."""
    if not ps:
        return UNIT
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = Pair(p, out)
    return out


def pattern_type(p: Pattern) -> WireType:
    if isinstance(p, Pair):
        return Tensor(pattern_type(p.left), pattern_type(p.right))
    if isinstance(p, BitVar):
        return Bit
    if isinstance(p, QubitVar):
        return Qubit
    return One


def pattern_leaves(p: Pattern) -> list[Union[BitVar, QubitVar]]:
    """Variable leaves left to right (unit leaves are skipped)."""
    if isinstance(p, Pair):
        return pattern_leaves(p.left) + pattern_leaves(p.right)
    if isinstance(p, (BitVar, QubitVar)):
        return [p]
    return []


def pattern_vars(p: Pattern) -> list[int]:
    return [leaf.var for leaf in pattern_leaves(p)]


def rename_pattern(p: Pattern, f: Callable[[int], int]) -> Pattern:
    if isinstance(p, Pair):
        return Pair(rename_pattern(p.left, f), rename_pattern(p.right, f))
    if isinstance(p, BitVar):
        return BitVar(f(p.var))
    if isinstance(p, QubitVar):
        return QubitVar(f(p.var))
    return p


def fresh_pat(g: OContext, w: WireType) -> tuple[Pattern, Context]:
    """Pattern of type ``w`` over the lowest indices absent from ``g``.

    Returns the pattern and its own context (the pattern's domain).
    """
    if g is INVALID:
        raise ValueError("fresh_pat needs a valid context")
    used = {i for i, s in enumerate(g) if s is not None}
    free = (i for i in itertools.count() if i not in used)
    slots: dict[int, WireType] = {}

    def build(w: WireType) -> Pattern:
        if isinstance(w, Tensor):
            left = build(w.left)
            return Pair(left, build(w.right))
        if w is One:
            return UNIT
        x = next(free)
        slots[x] = w
        return QubitVar(x) if w is Qubit else BitVar(x)

    p = build(w)
    size = max(slots) + 1 if slots else 0
    return p, tuple(slots.get(i) for i in range(size))


# ---------------------------------------------------------------------------
# Circuits


@dataclass(frozen=True)
class Output:
    pat: Pattern


@dataclass(frozen=True)
class GateApp:
    gate: Gate
    inp: Pattern
    out: Pattern
    rest: "Circuit"


@dataclass(frozen=True)
class Lift:
    """Measure ``pat`` and continue with the branch for the observed value.

    ``branches`` is a tuple of ``(value, circuit)`` pairs, total over
    :func:`enumerate_values` of the pattern's type and kept in that order.
    """

    pat: Pattern
    branches: tuple

    def branch(self, value: Value) -> "Circuit":
        for v, c in self.branches:
            if v == value:
                return c
        raise KeyError(value)


Circuit = Union[Output, GateApp, Lift]


@dataclass(frozen=True)
class Box:
    input_type: WireType
    input_pat: Pattern
    body: Circuit


def make_lift(p: Pattern, f: Callable[[Value], Circuit]) -> Lift:
    """Tabulate a branch function into a :class:`Lift` node."""
    return Lift(p, tuple((v, f(v)) for v in enumerate_values(pattern_type(p))))


def circuit_vars(c: Circuit) -> Iterator[int]:
    """Every variable occurrence in ``c``, bound or free."""
    if isinstance(c, Output):
        yield from pattern_vars(c.pat)
    elif isinstance(c, GateApp):
        yield from pattern_vars(c.inp)
        yield from pattern_vars(c.out)
        yield from circuit_vars(c.rest)
    else:
        yield from pattern_vars(c.pat)
        for _, b in c.branches:
            yield from circuit_vars(b)


def free_vars(c: Circuit) -> set[int]:
    if isinstance(c, Output):
        return set(pattern_vars(c.pat))
    if isinstance(c, GateApp):
        return set(pattern_vars(c.inp)) | (free_vars(c.rest) - set(pattern_vars(c.out)))
    out = set(pattern_vars(c.pat))
    for _, b in c.branches:
        out |= free_vars(b)
    return out


def compose(c: Circuit, k: Callable[[Pattern], Circuit]) -> Circuit:
    """Plug ``k`` into every output of ``c``.

    No renaming happens; ``k`` must avoid the variables live at each output.
    """
    if isinstance(c, Output):
        return k(c.pat)
    if isinstance(c, GateApp):
        return GateApp(c.gate, c.inp, c.out, compose(c.rest, k))
    return Lift(c.pat, tuple((v, compose(b, k)) for v, b in c.branches))


def _replay(c: Circuit, ren: dict[int, int], bind: Callable[..., Pattern]) -> Circuit:
    # ``bind`` maps a binder pattern (already in source names) to its new
    # pattern and records the renaming in ``ren`` (a private copy).
    def r(p: Pattern) -> Pattern:
        return rename_pattern(p, lambda x: ren.get(x, x))

    if isinstance(c, Output):
        return Output(r(c.pat))
    if isinstance(c, GateApp):
        inp = r(c.inp)
        ren2 = dict(ren)
        out = bind(c.out, ren2, consumed=pattern_vars(inp))
        return GateApp(c.gate, inp, out, _replay(c.rest, ren2, bind))
    pat = r(c.pat)
    return Lift(pat, tuple((v, _replay(b, dict(ren), bind)) for v, b in c.branches))


def unbox(b: Box, p: Pattern, avoid: Context = ()) -> Circuit:
    """Instantiate a box at pattern ``p``.

    Input variables of the box are substituted by those of ``p``.  Internal
    binders colliding with ``p`` or with ``avoid`` are renamed above every
    index in use; others keep their names.
    """
    from .check import ErrorKind, WireTypeError

    if pattern_type(p) != b.input_type:
        raise WireTypeError(
            ErrorKind.TYPE_MISMATCH,
            f"unbox expects {format_wtype(b.input_type)}, got {format_wtype(pattern_type(p))}",
        )
    ren = dict(zip(pattern_vars(b.input_pat), pattern_vars(p)))
    clash = set(pattern_vars(p)) | set(context_vars(avoid))
    top = max([*circuit_vars(b.body), *pattern_vars(b.input_pat), *clash], default=-1)
    counter = itertools.count(top + 1)

    def bind(q: Pattern, ren2: dict, consumed) -> Pattern:
        def f(x: int) -> int:
            ren2[x] = next(counter) if x in clash else x
            return ren2[x]

        return rename_pattern(q, f)

    return _replay(b.body, ren, bind)


def normalize_circuit(c: Circuit, g: Context) -> Circuit:
    """Rename binders of ``c`` (free context ``g``) by first-free allocation."""

    def go(c: Circuit, live: Context, ren: dict[int, int]) -> Circuit:
        def r(p: Pattern) -> Pattern:
            return rename_pattern(p, lambda x: ren.get(x, x))

        if isinstance(c, Output):
            return Output(r(c.pat))
        if isinstance(c, GateApp):
            inp = r(c.inp)
            rest_ctx = context_remove(live, pattern_vars(inp))
            out, out_ctx = fresh_pat(rest_ctx, pattern_type(c.out))
            ren2 = dict(ren)
            ren2.update(zip(pattern_vars(c.out), pattern_vars(out)))
            return GateApp(c.gate, inp, out, go(c.rest, merge(rest_ctx, out_ctx), ren2))
        pat = r(c.pat)
        rest_ctx = context_remove(live, pattern_vars(pat))
        return Lift(pat, tuple((v, go(b, rest_ctx, dict(ren))) for v, b in c.branches))

    return go(c, trim(g), {})


def normalize_box(b: Box) -> Box:
    """Alpha-normal form: every binder allocated at the lowest free index."""
    p, g = fresh_pat((), b.input_type)
    ren = dict(zip(pattern_vars(b.input_pat), pattern_vars(p)))
    body = normalize_circuit(_rename_free(b.body, ren), g)
    return Box(b.input_type, p, body)


def _rename_free(c: Circuit, ren: dict[int, int]) -> Circuit:
    # Simultaneous renaming of free variables; binders are moved out of the
    # way first so the renaming cannot capture.
    if not ren:
        return c
    top = max([*circuit_vars(c), *ren.values()], default=-1)
    counter = itertools.count(top + 1)

    def bind(q: Pattern, ren2: dict, consumed) -> Pattern:
        def f(x: int) -> int:
            ren2[x] = next(counter)
            return ren2[x]

        return rename_pattern(q, f)

    return _replay(c, dict(ren), bind)


def alpha_equal(a: Box, b: Box) -> bool:
    return normalize_box(a) == normalize_box(b)


def circuit_size(c: Circuit) -> int:
    """Number of gate and lift nodes."""
    if isinstance(c, Output):
        return 0
    if isinstance(c, GateApp):
        return 1 + circuit_size(c.rest)
    return 1 + sum(circuit_size(b) for _, b in c.branches)

