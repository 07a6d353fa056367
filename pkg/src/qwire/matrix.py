"""Dense complex matrices.

Matrices are 2-D ``complex128`` numpy arrays; the array shape is the
dimension annotation, so an entry outside ``rows x cols`` cannot exist.
Comparisons use an absolute, entrywise tolerance (``DEFAULT_EPS``).

The text format used by the command line is::

    2 2
    0.500000000+0.000000000i 0.000000000+0.000000000i
    0.000000000+0.000000000i 0.500000000+0.000000000i
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9


class DimensionError(ValueError):
    pass


def matrix(rows: Iterable[Sequence[complex]]) -> np.ndarray:
    rows = [list(r) for r in rows]
    if len({len(r) for r in rows}) > 1:
        raise DimensionError("matrix rows must have equal length")
    a = np.array(rows, dtype=complex)
    if a.ndim != 2:
        raise DimensionError("matrix rows must have equal length")
    return a


def column(entries: Sequence[complex]) -> np.ndarray:
    return np.array(entries, dtype=complex).reshape(-1, 1)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def zero(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=complex)


def _as2d(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    a, b = _as2d(a), _as2d(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def mul(*ms) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m)
    return _as2d(out)


def add(a, b) -> np.ndarray:
    a, b = _as2d(a), _as2d(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def scale(c: complex, a) -> np.ndarray:
    return complex(c) * _as2d(a)


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``(m x n) (x) (o x p)`` is ``(m*o) x (n*p)``."""
    return np.kron(_as2d(a), _as2d(b))


def kron_all(*ms) -> np.ndarray:
    out = identity(1)
    for m in ms:
        out = kron(out, m)
    return out


def adjoint(a) -> np.ndarray:
    return _as2d(a).conj().T.copy()


def trace(a) -> complex:
    a = _as2d(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"trace of non-square {a.shape}")
    return complex(np.trace(a))


def _square(a) -> np.ndarray:
    a = _as2d(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got {a.shape[0]}x{a.shape[1]}")
    return a


def max_abs_diff(a, b) -> float:
    a, b = _as2d(a), _as2d(b)
    if a.shape != b.shape:
        return math.inf
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def approx_eq(a, b, eps: float = DEFAULT_EPS) -> bool:
    return max_abs_diff(a, b) <= eps


def is_hermitian(a, eps: float = DEFAULT_EPS) -> bool:
    a = _square(a)
    return approx_eq(a, a.conj().T, eps)


def is_unitary(a, eps: float = DEFAULT_EPS) -> bool:
    a = _square(a)
    return approx_eq(adjoint(a) @ a, identity(a.shape[0]), eps)


def is_pure(rho, eps: float = DEFAULT_EPS) -> bool:
    """Idempotent density matrix."""
    rho = _square(rho)
    return approx_eq(rho, rho @ rho, eps) and is_density(rho, eps)


def is_density(rho, eps: float = DEFAULT_EPS) -> bool:
    """Hermitian, unit trace and positive semidefinite, each within ``eps``."""
    rho = _square(rho)
    if not is_hermitian(rho, eps):
        return False
    if abs(trace(rho) - 1) > eps:
        return False
    return min(eig_hermitian(rho, eps), default=0.0) >= -eps


def eig_hermitian(a, eps: float = DEFAULT_EPS, tol: float = 1e-14, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returned in descending order.  Each rotation first turns the pivot
    ``a[p, q]`` real with a phase on column ``q`` and then applies the real
    symmetric Jacobi rotation.  Stops once the off-diagonal Frobenius norm
    drops below ``tol * ||a||``.
    """
    a = _square(a).copy()
    if not is_hermitian(a, eps):
        raise ValueError("eig_hermitian needs a Hermitian matrix")
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    norm = np.linalg.norm(a)
    if n == 0:
        return []
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * norm or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag <= tol * norm * 1e-3:
                    continue
                phase = g / mag
                theta = (a[q, q].real - a[p, p].real) / (2 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(1 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) on (p, q) followed by [[c, s], [-s, c]]
                j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=complex)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    return sorted((float(x.real) for x in np.diag(a)), reverse=True)


# ---------------------------------------------------------------------------
# Basis states

KET0 = column([1, 0])
KET1 = column([0, 1])
BRA0 = adjoint(KET0)
BRA1 = adjoint(KET1)
PROJ0 = KET0 @ BRA0
PROJ1 = KET1 @ BRA1


def ket(v) -> np.ndarray:
    """Basis column for a classical value (``()``, ``bool`` or a pair)."""
    if isinstance(v, bool):
        return KET1.copy() if v else KET0.copy()
    if v == ():
        return identity(1)
    left, right = v
    return kron(ket(left), ket(right))


def density(v) -> np.ndarray:
    k = ket(v)
    return k @ adjoint(k)


# ---------------------------------------------------------------------------
# Text format


def _fmt(x: float) -> str:
    if abs(x) < 5e-10:
        x = 0.0
    return f"{x:.9f}"


def format_entry(z: complex) -> str:
    re_s = _fmt(z.real)
    im = z.imag
    if abs(im) < 5e-10:
        im = 0.0
    sign = "-" if im < 0 else "+"
    return f"{re_s}{sign}{abs(im):.9f}i"


def format_matrix(a) -> str:
    a = _as2d(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(format_entry(complex(z)) for z in row))
    return "\n".join(lines) + "\n"


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"^(?:([+-]?{_NUM})(?:([+-]{_NUM})i)?|([+-]?{_NUM})i)$")


def parse_entry(tok: str) -> complex:
    """Parse ``re``, ``re±imi`` or ``±imi``."""
    m = _ENTRY.match(tok)
    if not m:
        raise ValueError(f"bad matrix entry {tok!r}")
    if m.group(3) is not None:
        return complex(0.0, float(m.group(3)))
    return complex(float(m.group(1)), float(m.group(2)) if m.group(2) else 0.0)


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        m, n = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad matrix header {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, got {len(rows)}")
    out = zero(m, n)
    for i, line in enumerate(rows):
        toks = line.split()
        if len(toks) != n:
            raise ValueError(f"row {i} has {len(toks)} entries, expected {n}")
        for j, tok in enumerate(toks):
            out[i, j] = parse_entry(tok)
    return out
