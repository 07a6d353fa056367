"""Circuits as superoperators on density matrices.

Wire ordering: the wires of a context are its present variables in
ascending order, and wire 0 is the leftmost Kronecker factor (most
significant bit of a basis index).  A bit with value ``b`` is the basis
state ``|b><b|``.

Pattern matrices act on state vectors: ``denote_pat_in(gext, p, g)`` sends
a context-ordered basis vector of ``g (+) gext`` to the vector with ``p``'s
wires first, in pattern order, followed by the wires of ``gext``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import matrix as M
from .check import check_box, check_circuit, context_of_pattern
from .ir import (
    Apply,
    BitControl,
    Box,
    Circuit,
    Context,
    Control,
    Discard,
    Gate,
    GateApp,
    Init0,
    Init1,
    Meas,
    New0,
    New1,
    Output,
    Pattern,
    Transpose,
    Unitary,
    UnitaryBase,
    context_remove,
    context_size,
    context_vars,
    merge,
    pattern_vars,
    trim,
    wire_count,
    INVALID,
)


@dataclass(frozen=True)
class Superoperator:
    """Linear map from ``in_dim x in_dim`` to ``out_dim x out_dim`` matrices."""

    in_dim: int
    out_dim: int
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.in_dim, self.in_dim):
            raise M.DimensionError(
                f"superoperator expects {self.in_dim}x{self.in_dim}, got {rho.shape[0]}x{rho.shape[1]}"
            )
        out = self.fn(rho)
        assert out.shape == (self.out_dim, self.out_dim), (out.shape, self.out_dim)
        return out

    def __matmul__(self, other: "Superoperator") -> "Superoperator":
        """``self @ other`` applies ``other`` first."""
        if other.out_dim != self.in_dim:
            raise M.DimensionError(f"cannot compose {other.out_dim} into {self.in_dim}")
        f, g = self.fn, other.fn
        return Superoperator(other.in_dim, self.out_dim, lambda rho: f(g(rho)))


def super_(a) -> Superoperator:
    """``rho -> A rho A^dagger`` for an ``m x n`` matrix ``A``."""
    a = np.asarray(a, dtype=complex)
    ad = a.conj().T
    return Superoperator(a.shape[1], a.shape[0], lambda rho: a @ rho @ ad)


def kraus(ops) -> Superoperator:
    """``rho -> sum_k K rho K^dagger``."""
    ops = [np.asarray(k, dtype=complex) for k in ops]
    pairs = [(k, k.conj().T) for k in ops]
    m, n = ops[0].shape
    return Superoperator(n, m, lambda rho: sum(k @ rho @ kd for k, kd in pairs))


def super_plus(s1: Superoperator, s2: Superoperator) -> Superoperator:
    if (s1.in_dim, s1.out_dim) != (s2.in_dim, s2.out_dim):
        raise M.DimensionError("super_plus needs equal dimensions")
    f, g = s1.fn, s2.fn
    return Superoperator(s1.in_dim, s1.out_dim, lambda rho: f(rho) + g(rho))


def super_zero(m: int, n: int) -> Superoperator:
    return Superoperator(m, n, lambda rho: M.zero(n, n))


def super_id(n: int) -> Superoperator:
    return Superoperator(n, n, lambda rho: rho)


def super_sum(ss, m: int, n: int) -> Superoperator:
    """Left fold of :func:`super_plus` starting from :func:`super_zero`."""
    ss = list(ss)
    for s in ss:
        if (s.in_dim, s.out_dim) != (m, n):
            raise M.DimensionError("super_sum needs equal dimensions")
    fns = [s.fn for s in ss]

    def apply(rho):
        out = M.zero(n, n)
        for f in fns:
            out = out + f(rho)
        return out

    return Superoperator(m, n, apply)


# ---------------------------------------------------------------------------
# Gates

_S = 1 / math.sqrt(2)
_BASE = {
    UnitaryBase.H: M.matrix([[_S, _S], [_S, -_S]]),
    UnitaryBase.X: M.matrix([[0, 1], [1, 0]]),
    UnitaryBase.Y: M.matrix([[0, -1j], [1j, 0]]),
    UnitaryBase.Z: M.matrix([[1, 0], [0, -1]]),
}


def denote_unitary(u: Unitary) -> np.ndarray:
    if isinstance(u, (Control, BitControl)):
        inner = denote_unitary(u.u)
        n = inner.shape[0]
        return M.kron(M.PROJ0, M.identity(n)) + M.kron(M.PROJ1, inner)
    if isinstance(u, Transpose):
        return M.adjoint(denote_unitary(u.u))
    return _BASE[u].copy()


def gate_kraus(g: Gate) -> list[np.ndarray]:
    if isinstance(g, Apply):
        return [denote_unitary(g.u)]
    if g in (Init0, New0):
        return [M.KET0]
    if g in (Init1, New1):
        return [M.KET1]
    if g is Meas:
        return [M.PROJ0, M.PROJ1]
    if g is Discard:
        return [M.BRA0, M.BRA1]
    raise ValueError(f"unknown gate {g!r}")


def denote_gate(g: Gate) -> Superoperator:
    return denote_gate_pad(0, g)


def denote_gate_pad(n: int, g: Gate) -> Superoperator:
    """``g`` on the leading wires, identity on ``n`` trailing wires."""
    pad = M.identity(2**n)
    return kraus([M.kron(k, pad) for k in gate_kraus(g)])


# ---------------------------------------------------------------------------
# Permutations


SWAP = M.matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def _adjacent_swap(i: int, n: int) -> np.ndarray:
    return M.kron_all(M.identity(2**i), SWAP, M.identity(2 ** (n - i - 2)))


def swap2(i: int, j: int, n: int) -> np.ndarray:
    """Exchange wires ``i`` and ``j`` of an ``n``-wire system.

    Built as ``S_{j-1} ... S_{i+1} S_i S_{i+1} ... S_{j-1}`` from adjacent
    swaps ``S_k``, e.g. ``swap2(0, 2, 3) = (I (x) S)(S (x) I)(I (x) S)``.
    """
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"wires {i}, {j} out of range for {n} wires")
    if i == j:
        return M.identity(2**n)
    i, j = min(i, j), max(i, j)
    outer = [_adjacent_swap(k, n) for k in range(i + 1, j)]
    out = M.identity(2**n)
    for m in outer[::-1] + [_adjacent_swap(i, n)] + outer:
        out = out @ m
    return out


def permutation_matrix(order: list[int]) -> np.ndarray:
    """Basis permutation sending wire ``order[t]`` to position ``t``."""
    n = len(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"not a permutation: {order}")
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        bits = [(src >> (n - 1 - w)) & 1 for w in range(n)]
        dst = 0
        for w in order:
            dst = (dst << 1) | bits[w]
        out[dst, src] = 1
    return out


def permutation_by_swaps(order: list[int]) -> np.ndarray:
    """Same permutation as :func:`permutation_matrix`, as a product of ``swap2``."""
    n = len(order)
    cur = list(range(n))  # cur[t] = original wire now at position t
    out = M.identity(2**n)
    for t, w in enumerate(order):
        s = cur.index(w)
        if s != t:
            out = swap2(t, s, n) @ out
            cur[t], cur[s] = cur[s], cur[t]
    return out


def pattern_indices(p: Pattern, g: Context) -> list[int]:
    wires = {x: k for k, x in enumerate(sorted(context_vars(g)))}
    try:
        return [wires[x] for x in pattern_vars(p)]
    except KeyError as e:
        raise ValueError(f"variable {e.args[0]} of {p!r} is not in the context") from None


def _pat_order(gext: Context, p: Pattern, g: Context) -> list[int]:
    full = merge(g, gext)
    if full is INVALID:
        raise ValueError("pattern context overlaps the extra context")
    wires = {x: k for k, x in enumerate(sorted(context_vars(full)))}
    ext = [wires[x] for x in sorted(context_vars(gext))]
    return pattern_indices(p, full) + ext


def denote_pat_in(gext: Context, p: Pattern, g: Context) -> np.ndarray:
    return permutation_matrix(_pat_order(gext, p, g))


def denote_pat(p: Pattern) -> np.ndarray:
    return denote_pat_in((), p, context_of_pattern(p))


# ---------------------------------------------------------------------------
# Circuits


def denote_circuit(c: Circuit, g: Context, check: bool = True) -> Superoperator:
    """Superoperator of ``c`` with free context ``g``."""
    g = trim(g)
    if check:
        check_circuit(c, g)
    return _denote(c, g)


def _denote(c: Circuit, g: Context) -> Superoperator:
    if isinstance(c, Output):
        return super_(denote_pat_in((), c.pat, g))
    if isinstance(c, GateApp):
        g1 = context_of_pattern(c.inp)
        rest = context_remove(g, pattern_vars(c.inp))
        g2 = context_of_pattern(c.out)
        n = context_size(rest)
        into = super_(denote_pat_in(rest, c.inp, g1))
        gate = denote_gate_pad(n, c.gate)
        back = super_(M.adjoint(denote_pat_in(rest, c.out, g2)))
        return _denote(c.rest, trim(merge(g2, rest))) @ back @ gate @ into
    g1 = context_of_pattern(c.pat)
    rest = context_remove(g, pattern_vars(c.pat))
    pad = M.identity(2 ** context_size(rest))
    arrange = super_(denote_pat_in(rest, c.pat, g1))
    terms = []
    for v, b in c.branches:
        project = super_(M.kron(M.adjoint(M.ket(v)), pad))
        terms.append(_denote(b, rest) @ project @ arrange)
    out_dim = terms[0].out_dim
    return super_sum(terms, 2 ** context_size(g), out_dim)


def denote_box(b: Box, check: bool = True) -> Superoperator:
    if check:
        check_box(b)
    g = context_of_pattern(b.input_pat)
    return _denote(b.body, g) @ super_(M.adjoint(denote_pat(b.input_pat)))


def box_dims(b: Box) -> tuple[int, int]:
    from .check import output_type

    return 2 ** wire_count(b.input_type), 2 ** wire_count(output_type(b.body))


# ---------------------------------------------------------------------------
# Equality


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    e = M.zero(n, n)
    e[i, j] = 1
    return e


def choi(s: Superoperator) -> np.ndarray:
    """Block matrix whose ``(i, j)`` block is ``s(E_ij)``."""
    n, m = s.in_dim, s.out_dim
    out = M.zero(n * m, n * m)
    for i in range(n):
        for j in range(n):
            out[i * m : (i + 1) * m, j * m : (j + 1) * m] = s(matrix_unit(n, i, j))
    return out


def superop_distance(s1: Superoperator, s2: Superoperator) -> float:
    """Largest entrywise deviation between the Choi matrices."""
    if (s1.in_dim, s1.out_dim) != (s2.in_dim, s2.out_dim):
        raise M.DimensionError(
            f"superoperators {s1.in_dim}->{s1.out_dim} and {s2.in_dim}->{s2.out_dim} differ in shape"
        )
    return M.max_abs_diff(choi(s1), choi(s2))


def superop_eq(s1: Superoperator, s2: Superoperator, eps: float = M.DEFAULT_EPS) -> bool:
    return superop_distance(s1, s2) <= eps

