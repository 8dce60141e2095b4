"""Classical matrix families used as raw material by the constructions:
Hadamard matrices (Sylvester doubling and quadratic-residue borders),
Paley conference matrices, and signed-permutation weighing matrices.
"""

from __future__ import annotations

import numpy as np

from .algebra import IntMatrix
from .errors import ParameterError
from .gf import gf_from_order, is_prime


def is_hadamard(h: IntMatrix) -> bool:
    if not h.is_square:
        return False
    if not bool(((h.a == 1) | (h.a == -1)).all()):
        return False
    return h @ h.T == IntMatrix.identity(h.rows).scalar_mul(h.rows)


def normalize_hadamard(h: IntMatrix) -> IntMatrix:
    """Negate columns, then rows, so the first row and column are all-ones."""
    arr = h.a.copy()
    arr = arr * arr[0:1, :]          # column signs from row 0
    arr = arr * arr[:, 0:1]          # row signs from column 0
    return IntMatrix(arr)


def _jacobsthal(q: int) -> np.ndarray:
    ctx = gf_from_order(q)
    sq = ctx.squares()
    els = ctx.elements
    arr = np.zeros((q, q), dtype=np.int64)
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            if i == j:
                continue
            arr[i, j] = 1 if ctx.sub(x, y) in sq else -1
    return arr


def paley_conference_matrix(order: int) -> IntMatrix:
    """Symmetric conference matrix of the given order (q = order-1 a prime
    power with q = 1 mod 4), bordered quadratic-residue construction."""
    if order == 2:
        return IntMatrix([[0, 1], [1, 0]])
    q = order - 1
    if q % 4 != 1:
        raise ParameterError(f"no Paley conference matrix of order {order}: {q} != 1 mod 4")
    qm = _jacobsthal(q)
    arr = np.zeros((order, order), dtype=np.int64)
    arr[0, 1:] = 1
    arr[1:, 0] = 1
    arr[1:, 1:] = qm
    c = IntMatrix(arr)
    if not (c @ c.T == IntMatrix.identity(order).scalar_mul(order - 1)):
        raise RuntimeError("conference construction failed self-check")  # pragma: no cover
    return c


def _paley_hadamard(order: int) -> IntMatrix:
    q = order - 1
    arr = np.zeros((order, order), dtype=np.int64)
    arr[0, 1:] = 1
    arr[1:, 0] = -1
    arr[1:, 1:] = _jacobsthal(q)
    return IntMatrix(arr + np.eye(order, dtype=np.int64))


def hadamard_matrix(order: int) -> IntMatrix:
    """A normalized Hadamard matrix from the small catalog (Sylvester
    doubling plus quadratic-residue orders).  Raises if the catalog has no
    recipe; externally supplied matrices can be used instead."""
    if order == 1:
        return IntMatrix([[1]])
    if order == 2:
        return IntMatrix([[1, 1], [1, -1]])
    if order % 4 != 0:
        raise ParameterError(f"no Hadamard matrix of order {order}")
    q = order - 1
    if is_prime(q) and q % 4 == 3:
        return normalize_hadamard(_paley_hadamard(order))
    if order % 2 == 0:
        half = hadamard_matrix(order // 2)
        h = IntMatrix([[1, 1], [1, -1]]).kron(half)
        return normalize_hadamard(h)
    raise ParameterError(f"no catalog construction for Hadamard order {order}")


def is_weighing(w: IntMatrix, weight: int | None = None) -> bool:
    if not w.is_square:
        return False
    if not bool(((w.a == 0) | (w.a == 1) | (w.a == -1)).all()):
        return False
    prod = w @ w.T
    if weight is None:
        weight = prod[0, 0]
    return prod == IntMatrix.identity(w.rows).scalar_mul(weight)


def signed_permutation_weighing_set(order: int) -> list[IntMatrix]:
    """order-1 disjoint weight-1 weighing matrices summing (in absolute
    value) to J - I: the nonzero powers of the full cycle."""
    if order < 2:
        raise ParameterError("need order >= 2")
    base = np.roll(np.eye(order, dtype=np.int64), 1, axis=1)
    out = []
    cur = np.eye(order, dtype=np.int64)
    for _ in range(order - 1):
        cur = cur @ base
        out.append(IntMatrix(cur.copy()))
    return out
