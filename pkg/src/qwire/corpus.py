"""Built-in example circuits.

Parameterised families are addressed as ``name@param``: ``coin_flips@3``,
``unitary_trans@ctrl.H``, ``id@Qubit*Bit``, ``boxed_gate@meas``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .build import box, boxed_gate, gate_, id_circ, let_, lift_, output
from .ir import (
    UNIT,
    Apply,
    BitControl,
    Box,
    Control,
    Discard,
    H,
    Init0,
    Meas,
    New0,
    New1,
    One,
    Pair,
    Qubit,
    Transpose,
    X,
    Y,
    Z,
    unbox,
    unitary_type,
)


class UnknownBox(LookupError):
    pass


def coin_flip() -> Box:
    return box(One, lambda _: gate_(Init0, UNIT, lambda x: gate_(H, x, lambda y: gate_(Meas, y, output))))


@lru_cache(maxsize=None)
def coin_flips(n: int) -> Box:
    """1 with probability 2**-n: every one of n coin flips lands heads."""
    if n < 0:
        raise ValueError("coin_flips needs n >= 0")
    if n == 0:
        return box(One, lambda _: gate_(New1, UNIT, output))
    prev = coin_flips(n - 1)

    def body(_):
        return let_(
            unbox(prev, UNIT),
            lambda c: gate_(
                Init0,
                UNIT,
                lambda q: gate_(
                    BitControl(H),
                    Pair(c, q),
                    lambda cq: gate_(Discard, cq.left, lambda _: gate_(Meas, cq.right, output)),
                ),
            ),
        )

    return box(One, body)


@lru_cache(maxsize=None)
def coin_flips_lift(n: int) -> Box:
    """Same distribution as :func:`coin_flips`, branching on each outcome."""
    if n < 0:
        raise ValueError("coin_flips' needs n >= 0")
    if n == 0:
        return box(One, lambda _: gate_(New1, UNIT, output))
    prev = coin_flips_lift(n - 1)
    flip = coin_flip()

    def body(_):
        return let_(
            unbox(prev, UNIT),
            lambda q: lift_(q, lambda x: unbox(flip, UNIT) if x else gate_(New0, UNIT, output)),
        )

    return box(One, body)


def unitary_trans(u) -> Box:
    """``u`` followed by its conjugate transpose."""
    return box(unitary_type(u), lambda p: gate_(u, p, lambda p: gate_(Transpose(u), p, output)))


def lift_meas() -> Box:
    return box(Qubit, lambda q: lift_(q, lambda x: gate_(New1 if x else New0, UNIT, output)))


def bell() -> Box:
    """Prepare (|00> + |11>)/sqrt 2."""
    return box(
        One,
        lambda _: gate_(
            Init0,
            UNIT,
            lambda a: gate_(
                Init0, UNIT, lambda b: gate_(H, a, lambda a: gate_(Control(X), Pair(a, b), output))
            ),
        ),
    )


def _nat(param: str, name: str) -> int:
    try:
        n = int(param)
    except ValueError:
        raise UnknownBox(f"{name} needs a natural number, got {param!r}") from None
    if n < 0:
        raise UnknownBox(f"{name} needs a natural number, got {n}")
    return n


def _gate(param: str):
    from .surface.syntax import ParseError, parse_gate

    try:
        return parse_gate(param)
    except ParseError as e:
        raise UnknownBox(f"bad gate name {param!r}: {e.message}") from None


def builtin(name: str) -> Box:
    base, sep, param = name.partition("@")
    if not sep:
        if base in FIXED:
            return FIXED[base]()
        if base in FAMILIES:
            raise UnknownBox(f"{base} needs a parameter: {base}@{FAMILIES[base]}")
        raise UnknownBox(f"no built-in box {name!r}")
    if base == "coin_flips":
        return coin_flips(_nat(param, base))
    if base == "coin_flips'":
        return coin_flips_lift(_nat(param, base))
    if base == "unitary_trans":
        g = _gate(param)
        if not isinstance(g, Apply):
            raise UnknownBox(f"unitary_trans needs a unitary, got {param!r}")
        return unitary_trans(g.u)
    if base == "boxed_gate":
        return boxed_gate(_gate(param))
    if base == "id":
        from .surface.syntax import ParseError, parse_wtype

        try:
            return id_circ(parse_wtype(param))
        except ParseError as e:
            raise UnknownBox(f"bad wire type {param!r}: {e.message}") from None
    raise UnknownBox(f"no built-in family {base!r}")


FIXED = {"coin_flip": coin_flip, "lift_meas": lift_meas, "bell": bell}
FAMILIES = {
    "coin_flips": "n",
    "coin_flips'": "n",
    "unitary_trans": "U",
    "id": "W",
    "boxed_gate": "G",
}

SAMPLE_UNITARIES = [H, X, Y, Z, Control(H), Control(X), BitControl(Z), Transpose(H), Transpose(Control(Y))]


def builtin_corpus(max_n: int = 3) -> dict[str, Box]:
    """Concrete instances of every built-in entry."""
    from .surface.printer import format_gate, format_unitary

    out = {name: make() for name, make in FIXED.items()}
    for n in range(max_n + 1):
        out[f"coin_flips@{n}"] = coin_flips(n)
        out[f"coin_flips'@{n}"] = coin_flips_lift(n)
    for u in SAMPLE_UNITARIES:
        out[f"unitary_trans@{format_unitary(u, '.')}"] = unitary_trans(u)
    for w in ["One", "Bit", "Qubit", "Qubit*Bit"]:
        out[f"id@{w}"] = builtin(f"id@{w}")
    for g in [Meas, Discard, Init0, Apply(Control(H))]:
        out[f"boxed_gate@{format_gate(g, '.')}"] = boxed_gate(g)
    return out


def source_files() -> dict[str, str]:
    """The bundled ``.qw`` sources, by file name."""
    root = resources.files("qwire") / "sources"
    return {p.name: p.read_text() for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".qw")}
