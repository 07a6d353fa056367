"""Random well-typed circuits and density matrices for property checks.

Everything is driven by a ``numpy.random.Generator`` so instances are
reproducible from a seed.  Circuits are produced through the builder, so
they are checked and in alpha-normal form.
"""

from __future__ import annotations

import numpy as np

from .build import box, gate_, lift_, output
from .ir import (
    UNIT,
    Bit,
    BitControl,
    BitVar,
    Box,
    Control,
    Discard,
    Init0,
    Init1,
    Meas,
    New0,
    New1,
    One,
    Pair,
    Pattern,
    Qubit,
    QubitVar,
    Tensor,
    Transpose,
    UnitaryBase,
    WireType,
    pattern_leaves,
    unitary_type,
)

BASES = list(UnitaryBase)


def _tree(rng: np.random.Generator, items: list, unit, join):
    """Random binary tree over ``items`` in order, sometimes padded with a unit."""
    if not items:
        return unit
    if len(items) == 1:
        if rng.random() < 0.15:
            return join(unit, items[0]) if rng.random() < 0.5 else join(items[0], unit)
        return items[0]
    cut = int(rng.integers(1, len(items)))
    return join(_tree(rng, items[:cut], unit, join), _tree(rng, items[cut:], unit, join))


def random_wtype(rng: np.random.Generator, max_wires: int = 3, min_wires: int = 0) -> WireType:
    n = int(rng.integers(min_wires, max_wires + 1))
    leaves = [Qubit if rng.random() < 0.7 else Bit for _ in range(n)]
    return _tree(rng, leaves, One, Tensor)


def random_unitary(rng: np.random.Generator, qubits: int, bits: int, depth: int = 2, base_rng=None):
    """A unitary whose input needs at most ``qubits`` qubits and ``bits`` bits.

    ``base_rng`` (default ``rng``) picks the innermost base gate only, so the
    wire type of the result depends on ``rng`` alone.
    """
    if qubits < 1:
        return None
    brng = rng if base_rng is None else base_rng
    u = BASES[int(brng.integers(len(BASES)))]
    q, b = qubits - 1, bits
    for _ in range(int(rng.integers(0, depth + 1))):
        options = ["t"] + (["c"] if q else []) + (["b"] if b else [])
        pick = options[int(rng.integers(len(options)))]
        if pick == "c":
            u, q = Control(u), q - 1
        elif pick == "b":
            u, b = BitControl(u), b - 1
        else:
            u = Transpose(u)
    return u


def _fill(w: WireType, pool: dict[str, list]) -> Pattern:
    if isinstance(w, Tensor):
        left = _fill(w.left, pool)
        return Pair(left, _fill(w.right, pool))
    if w is One:
        return UNIT
    return pool["q" if w is Qubit else "b"].pop()


def _bits(v) -> list[int]:
    if isinstance(v, tuple):
        return [b for x in v for b in _bits(x)]
    return [int(v)]


def _body(srng, vrng, live: list, steps: int, lifts: int, max_wires: int):
    # srng drives every choice that affects wire types; vrng only picks gate
    # bases and init values.  Replaying srng in each lift branch keeps the
    # branches' output types equal.
    qubits = [x for x in live if isinstance(x, QubitVar)]
    bits = [x for x in live if isinstance(x, BitVar)]
    moves = []
    if steps > 0:
        if qubits:
            moves += ["unitary", "unitary", "meas"]
        if bits:
            moves.append("discard")
        if len(live) < max_wires:
            moves.append("init")
        if lifts > 0 and live:
            moves.append("lift")
    if not moves or srng.random() < 0.12:
        order = [live[i] for i in srng.permutation(len(live))]
        return output(_tree(srng, order, UNIT, Pair))

    move = moves[int(srng.integers(len(moves)))]

    def without(used):
        ids = {id(u) for u in used}
        return [x for x in live if id(x) not in ids]

    def then(rest_live):
        return lambda p: _body(srng, vrng, rest_live + pattern_leaves(p), steps - 1, lifts, max_wires)

    if move == "unitary":
        u = random_unitary(srng, len(qubits), len(bits), base_rng=vrng)
        pool = {
            "q": [qubits[i] for i in srng.permutation(len(qubits))],
            "b": [bits[i] for i in srng.permutation(len(bits))],
        }
        p = _fill(unitary_type(u), pool)
        return gate_(u, p, then(without(pattern_leaves(p))))
    if move == "meas":
        q = qubits[int(srng.integers(len(qubits)))]
        return gate_(Meas, q, then(without([q])))
    if move == "discard":
        b = bits[int(srng.integers(len(bits)))]
        return gate_(Discard, b, then(without([b])))
    if move == "init":
        pair = [(Init0, Init1), (New0, New1)][int(srng.integers(2))]
        g = pair[int(vrng.integers(2))]
        return gate_(g, UNIT, then(live))
    k = int(srng.integers(1, min(2, len(live)) + 1))
    chosen = [live[i] for i in srng.choice(len(live), size=k, replace=False)]
    p = _tree(srng, chosen, UNIT, Pair)
    rest = without(chosen)
    sseed = int(srng.integers(2**32))
    vseed = int(vrng.integers(2**32))
    return lift_(
        p,
        lambda v: _body(
            np.random.default_rng(sseed),
            np.random.default_rng([vseed, *_bits(v)]),
            list(rest),
            steps - 1,
            lifts - 1,
            max_wires,
        ),
    )


def random_box(
    rng: np.random.Generator,
    input_type: WireType | None = None,
    max_wires: int = 3,
    max_steps: int = 6,
    max_lifts: int = 1,
) -> Box:
    """A random checked box on at most ``max_wires`` live wires."""
    w = random_wtype(rng, max_wires) if input_type is None else input_type
    steps = int(rng.integers(0, max_steps + 1))
    lifts = int(rng.integers(0, max_lifts + 1))
    srng = np.random.default_rng(int(rng.integers(2**32)))
    vrng = np.random.default_rng(int(rng.integers(2**32)))
    return box(w, lambda p: _body(srng, vrng, pattern_leaves(p), steps, lifts, max_wires))


def random_pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_density(rng: np.random.Generator, dim: int, terms: int = 3) -> np.ndarray:
    """Random convex combination of random pure states."""
    weights = rng.dirichlet(np.ones(terms))
    return sum(w * random_pure_state(rng, dim) for w in weights)


def random_matrix(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    return rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
