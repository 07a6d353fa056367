import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracle import simulate, unitary
from strategies import cmat, rng, seeds, unitaries

from qwire import matrix as M
from qwire.build import box, boxed_gate, gate_, id_circ, output
from qwire.corpus import builtin, builtin_corpus
from qwire.denote import (
    SWAP,
    box_dims,
    choi,
    denote_box,
    denote_gate,
    denote_gate_pad,
    denote_pat,
    denote_pat_in,
    denote_unitary,
    kraus,
    permutation_by_swaps,
    permutation_matrix,
    super_,
    super_id,
    super_plus,
    super_sum,
    super_zero,
    superop_distance,
    superop_eq,
    swap2,
)
from qwire.gen import random_box, random_density
from qwire.ir import (
    UNIT,
    Apply,
    Bit,
    BitControl,
    Control,
    Discard,
    H,
    Init0,
    Init1,
    Meas,
    Pair,
    Qubit,
    QubitVar,
    Tensor,
    Transpose,
    X,
    Y,
    Z,
)

R = 1 / math.sqrt(2)


def perm_oracle(order):
    """Permutation matrix by transposing tensor axes of each basis vector."""
    n = len(order)
    cols = []
    for k in range(2**n):
        e = np.zeros(2**n)
        e[k] = 1
        cols.append(e.reshape((2,) * n).transpose(order).reshape(-1) if n else e)
    return np.array(cols, dtype=complex).T


permutations = st.integers(0, 5).flatmap(lambda n: st.permutations(list(range(n))))


# -- unitaries and gates ------------------------------------------------------


def test_base_unitaries():
    assert np.allclose(denote_unitary(H), [[R, R], [R, -R]])
    assert np.array_equal(denote_unitary(X), [[0, 1], [1, 0]])
    assert np.array_equal(denote_unitary(Y), [[0, -1j], [1j, 0]])
    assert np.array_equal(denote_unitary(Z), [[1, 0], [0, -1]])


def test_cnot_and_bit_control():
    cnot = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert np.array_equal(denote_unitary(Control(X)), cnot)
    assert np.array_equal(denote_unitary(BitControl(X)), cnot)


def test_transpose_is_adjoint():
    s = denote_unitary(Transpose(Control(Y)))
    assert np.array_equal(s, denote_unitary(Control(Y)).conj().T)


@given(unitaries)
def test_unitaries_match_oracle(u):
    assert M.approx_eq(denote_unitary(u), unitary(u), 1e-12)


def test_prim_gates():
    rho = M.matrix([[0.25, 0.1j], [-0.1j, 0.75]])
    assert np.array_equal(denote_gate(Init0)(M.identity(1)), M.PROJ0)
    assert np.array_equal(denote_gate(Init1)(M.identity(1)), M.PROJ1)
    assert np.array_equal(denote_gate(Meas)(rho), np.diag([0.25, 0.75]))
    assert np.allclose(denote_gate(Discard)(rho), [[1.0]])


def test_gate_pad_acts_on_leading_wire():
    # X on wire 0 of |0><0| (x) |1><1| flips the most significant bit
    rho = M.kron(M.PROJ0, M.PROJ1)
    out = denote_gate_pad(1, Apply(X))(rho)
    assert np.array_equal(out, M.kron(M.PROJ1, M.PROJ1))
    assert denote_gate_pad(2, Init0).out_dim == 8


# -- superoperator plumbing ---------------------------------------------------


def test_compose_applies_right_first():
    a = super_(denote_unitary(H))
    b = denote_gate(Meas)
    rho = M.PROJ0
    assert np.array_equal((b @ a)(rho), b(a(rho)))
    with pytest.raises(M.DimensionError):
        denote_gate(Discard) @ denote_gate(Discard)


def test_sums():
    a, b = super_(denote_unitary(X)), super_id(2)
    rho = M.PROJ0
    assert np.array_equal(super_plus(a, b)(rho), M.PROJ1 + M.PROJ0)
    assert np.array_equal(super_zero(2, 3)(rho), M.zero(3, 3))
    assert np.array_equal(super_sum([a, b], 2, 2)(rho), M.identity(2))
    with pytest.raises(M.DimensionError):
        super_sum([denote_gate(Meas), denote_gate(Discard)], 2, 2)


def test_call_checks_dimension():
    with pytest.raises(M.DimensionError):
        super_id(2)(M.identity(3))


def test_choi_of_identity():
    c = choi(super_id(2))
    v = np.array([1, 0, 0, 1], dtype=complex)
    assert np.array_equal(c, np.outer(v, v))


def test_superop_eq_distinguishes():
    assert superop_eq(kraus([denote_unitary(Z)]), super_(-denote_unitary(Z)))
    assert not superop_eq(super_(denote_unitary(X)), super_(denote_unitary(Z)))
    with pytest.raises(M.DimensionError):
        superop_distance(denote_gate(Meas), denote_gate(Discard))


# -- permutations -------------------------------------------------------------


def test_swap2_examples():
    assert np.array_equal(swap2(0, 1, 2), SWAP)
    assert np.array_equal(swap2(1, 0, 2), SWAP)
    assert np.array_equal(swap2(1, 1, 3), M.identity(8))
    # |100> -> |001> when wires 0 and 2 trade places
    e = np.zeros(8)
    e[0b100] = 1
    assert np.array_equal(swap2(0, 2, 3) @ e, np.eye(8)[0b001])
    with pytest.raises(IndexError):
        swap2(0, 3, 3)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_swap2_matches_axis_transpose(nij):
    n, i, j = nij
    order = list(range(n))
    order[i], order[j] = order[j], order[i]
    assert np.array_equal(swap2(i, j, n), perm_oracle(order))


def test_permutation_matrix_examples():
    assert np.array_equal(permutation_matrix([1, 0]), SWAP)
    assert np.array_equal(permutation_matrix([]), M.identity(1))
    with pytest.raises(ValueError):
        permutation_matrix([0, 0])


@given(permutations)
def test_permutation_matrix_oracles(order):
    p = permutation_matrix(order)
    assert np.array_equal(p, perm_oracle(order))
    assert np.array_equal(p, permutation_by_swaps(order))


def test_denote_pat_reversed_pair():
    # the pattern (1, 0) over context [0, 1] swaps the two wires
    p = Pair(QubitVar(1), QubitVar(0))
    assert np.array_equal(denote_pat(p), SWAP)
    assert np.array_equal(denote_pat(Pair(QubitVar(0), QubitVar(1))), M.identity(4))


def test_denote_pat_in_puts_extras_last():
    # pattern (2) inside context {0, 1, 2}: wire 2 moves to the front
    m = denote_pat_in((Qubit, Bit), QubitVar(2), (None, None, Qubit))
    assert np.array_equal(m, permutation_matrix([2, 0, 1]))


# -- circuits -----------------------------------------------------------------


def test_coin_flip_gives_even_toss():
    assert np.allclose(denote_box(builtin("coin_flip"))(M.identity(1)), np.diag([0.5, 0.5]), atol=1e-12)


def test_bell_state():
    v = np.array([R, 0, 0, R])
    assert np.allclose(denote_box(builtin("bell"))(M.identity(1)), np.outer(v, v), atol=1e-12)


def test_output_order_permutes():
    swap = box(Tensor(Qubit, Bit), lambda p: output(Pair(p.right, p.left)))
    rho = M.kron(M.PROJ1, M.PROJ0)
    assert np.array_equal(denote_box(swap)(rho), M.kron(M.PROJ0, M.PROJ1))


def test_gate_on_second_wire():
    b = box(Tensor(Qubit, Qubit), lambda p: gate_(X, p.right, lambda r: output(Pair(p.left, r))))
    rho = M.kron(M.PROJ0, M.PROJ0)
    assert np.array_equal(denote_box(b)(rho), M.kron(M.PROJ0, M.PROJ1))


def test_bit_control_on_classical_bit():
    b = box(
        Bit,
        lambda c: gate_(Init0, UNIT, lambda q: gate_(BitControl(X), Pair(c, q), output)),
    )
    out = denote_box(b)(M.PROJ1)
    assert np.array_equal(out, M.kron(M.PROJ1, M.PROJ1))


def test_box_dims():
    assert box_dims(builtin("coin_flip")) == (1, 2)
    assert box_dims(builtin("bell")) == (1, 4)
    assert box_dims(boxed_gate(Discard)) == (2, 1)


def test_corpus_matches_oracle():
    r = np.random.default_rng(7)
    for b in builtin_corpus().values():
        d, _ = box_dims(b)
        rho = random_density(r, d)
        assert M.approx_eq(denote_box(b)(rho), simulate(b, rho), 1e-12)


@given(seeds)
def test_random_boxes_match_oracle(seed):
    r = rng(seed)
    b = random_box(r, max_lifts=2)
    d, _ = box_dims(b)
    rho = random_density(r, d)
    assert M.approx_eq(denote_box(b)(rho), simulate(b, rho), 1e-12)


@given(seeds)
def test_trace_preserved(seed):
    r = rng(seed)
    b = random_box(r)
    d, _ = box_dims(b)
    x = cmat(seed, d, d)
    assert abs(M.trace(denote_box(b)(x)) - M.trace(x)) < 1e-10


@given(seeds)
def test_linearity(seed):
    r = rng(seed)
    s = denote_box(random_box(r))
    d = s.in_dim
    x, y = cmat(seed, d, d), cmat(seed + 1, d, d)
    a, b = complex(*r.normal(size=2)), complex(*r.normal(size=2))
    assert M.approx_eq(s(a * x + b * y), a * s(x) + b * s(y), 1e-10)


def test_identity_boxes_are_identity():
    for w in [Qubit, Bit, Tensor(Qubit, Bit)]:
        s = denote_box(id_circ(w))
        assert superop_eq(s, super_id(s.in_dim))


def test_lift_on_bit_is_classical_branch():
    from qwire.build import lift_

    # flip a fresh qubit exactly when the input bit is 1
    b = box(Bit, lambda c: lift_(c, lambda x: gate_(Init1 if x else Init0, UNIT, output)))
    rho = M.matrix([[0.3, 0.2], [0.2, 0.7]])
    assert np.allclose(denote_box(b)(rho), np.diag([0.3, 0.7]), atol=1e-15)
