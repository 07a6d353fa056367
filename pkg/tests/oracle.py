"""Reference simulator used only by the tests.

Shares no code with ``qwire.denote``: gate matrices are written out here,
and wires are routed by transposing tensor axes rather than by permutation
matrices.  The state is a density matrix plus the list of variables that
label its wires, most significant first.
"""

from __future__ import annotations

import math

import numpy as np

from qwire.ir import (
    Apply,
    BitControl,
    Box,
    Control,
    GateApp,
    Lift,
    Output,
    Prim,
    Transpose,
    UnitaryBase,
    pattern_vars,
)

_r = 1 / math.sqrt(2)
BASE = {
    UnitaryBase.H: np.array([[_r, _r], [_r, -_r]], dtype=complex),
    UnitaryBase.X: np.array([[0, 1], [1, 0]], dtype=complex),
    UnitaryBase.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    UnitaryBase.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def unitary(u) -> np.ndarray:
    if isinstance(u, (Control, BitControl)):
        inner = unitary(u.u)
        n = inner.shape[0]
        out = np.eye(2 * n, dtype=complex)
        out[n:, n:] = inner
        return out
    if isinstance(u, Transpose):
        return unitary(u.u).conj().T
    return BASE[u]


def kraus(g) -> list[np.ndarray]:
    if isinstance(g, Apply):
        return [unitary(g.u)]
    e0 = np.array([[1], [0]], dtype=complex)
    e1 = np.array([[0], [1]], dtype=complex)
    return {
        Prim.INIT0: [e0],
        Prim.INIT1: [e1],
        Prim.NEW0: [e0],
        Prim.NEW1: [e1],
        Prim.MEAS: [e0 @ e0.T, e1 @ e1.T],
        Prim.DISCARD: [e0.T, e1.T],
    }[g]


def _to_front(rho: np.ndarray, order: list, front: list) -> tuple[np.ndarray, list]:
    n = len(order)
    pos = [order.index(x) for x in front] + [i for i, x in enumerate(order) if x not in front]
    t = rho.reshape((2,) * (2 * n)).transpose(pos + [n + p for p in pos])
    return t.reshape(2**n, 2**n), [order[p] for p in pos]


def apply(rho: np.ndarray, order: list, wires: list, ops: list[np.ndarray], new: list):
    """Apply Kraus ``ops`` to ``wires``; the results are labelled ``new``."""
    rho, order = _to_front(rho, order, wires)
    rest = 2 ** (len(order) - len(wires))
    out = sum(np.kron(k, np.eye(rest)) @ rho @ np.kron(k, np.eye(rest)).conj().T for k in ops)
    return out, list(new) + order[len(wires):]


def _bits(v) -> list[int]:
    if isinstance(v, tuple):
        return [b for x in v for b in _bits(x)]
    return [int(v)]


def run(c, rho: np.ndarray, order: list) -> np.ndarray:
    if isinstance(c, Output):
        rho, _ = _to_front(rho, order, pattern_vars(c.pat))
        return rho
    if isinstance(c, GateApp):
        rho, order = apply(rho, order, pattern_vars(c.inp), kraus(c.gate), pattern_vars(c.out))
        return run(c.rest, rho, order)
    assert isinstance(c, Lift)
    wires = pattern_vars(c.pat)
    total = None
    for v, branch in c.branches:
        bra = np.ones((1, 1), dtype=complex)
        for b in _bits(v):
            bra = np.kron(bra, np.eye(2, dtype=complex)[[b]])
        sub, rest = apply(rho, order, wires, [bra], [])
        out = run(branch, sub, rest)
        total = out if total is None else total + out
    return total


def simulate(b: Box, rho: np.ndarray) -> np.ndarray:
    return run(b.body, np.asarray(rho, dtype=complex), pattern_vars(b.input_pat))
