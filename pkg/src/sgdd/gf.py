"""Finite fields GF(p^d) with a reproducible element enumeration.

Elements are coefficient tuples ``(c0, c1, ..., c_{d-1})`` over Z_p
(c0 = constant term).  The modulus is the lexicographically smallest
irreducible monic polynomial of degree d, found by trial factorisation, and
elements are enumerated in lexicographic order of their coefficient tuples,
so the zero element always comes first and the order is identical across
runs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import ParameterError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1 if f == 2 else 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, d) with q = p**d, or raise if q is not a prime power."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            d = 0
            r = q
            while r % p == 0:
                r //= p
                d += 1
            if r != 1:
                raise ParameterError(f"{q} is not a prime power")
            return p, d
    raise ParameterError(f"{q} is not a prime power")


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, x in enumerate(m):
            a[shift + i] = (a[shift + i] - c * x) % p
        a = list(_poly_trim(a))
    return _poly_trim(a)


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial factorisation: no monic divisor of degree 1..deg/2."""
    deg = len(m) - 1
    for e in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=e):
            cand = tuple(tail) + (1,)
            if not _poly_mod(m, cand, p):
                return False
    return True


class GFContext:
    """Arithmetic context for GF(p^d)."""

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise ParameterError(f"{p} is not prime")
        if d < 1:
            raise ParameterError("extension degree must be at least 1")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = self._find_modulus(p, d)
        # lexicographic order on coefficient tuples puts 0 first
        self.elements: list[tuple[int, ...]] = [tuple(c) for c in product(range(p), repeat=d)]
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.zero = self.elements[0]
        self.one = tuple([1] + [0] * (d - 1))

    @staticmethod
    def _find_modulus(p: int, d: int) -> tuple[int, ...]:
        if d == 1:
            return (0, 1)
        for tail in product(range(p), repeat=d):
            cand = tuple(tail) + (1,)
            if _is_irreducible(cand, p):
                return cand
        raise RuntimeError(f"no irreducible polynomial of degree {d} over GF({p})")  # pragma: no cover

    # -- element plumbing --------------------------------------------------
    def index(self, x: tuple[int, ...]) -> int:
        return self._index[x]

    def element(self, i: int) -> tuple[int, ...]:
        return self.elements[i]

    def _pad(self, c: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(list(c) + [0] * (self.d - len(c)))

    # -- field operations ---------------------------------------------------
    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple((-a) % self.p for a in x)

    def sub(self, x, y):
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def mul(self, x, y):
        prod = _poly_mul(_poly_trim(list(x)), _poly_trim(list(y)), self.p)
        return self._pad(_poly_mod(prod, self.modulus, self.p))

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inv(x), -e)
        out, base = self.one, x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(x, self.q - 2)

    def enumerate(self) -> list[tuple[int, ...]]:
        return list(self.elements)

    def nonzero(self) -> list[tuple[int, ...]]:
        return [e for e in self.elements if e != self.zero]

    def primitive_element(self) -> tuple[int, ...]:
        """First element (enumeration order) generating the multiplicative group."""
        target = self.q - 1
        for x in self.nonzero():
            y, order = x, 1
            while y != self.one:
                y = self.mul(y, x)
                order += 1
            if order == target:
                return x
        raise RuntimeError("multiplicative group is not cyclic")  # pragma: no cover

    def discrete_log_table(self, base) -> dict[tuple[int, ...], int]:
        table = {}
        y = self.one
        for t in range(self.q - 1):
            table[y] = t
            y = self.mul(y, base)
        if len(table) != self.q - 1:
            raise ParameterError("base does not generate the multiplicative group")
        return table

    def squares(self) -> set[tuple[int, ...]]:
        return {self.mul(x, x) for x in self.nonzero()}

    def __repr__(self):
        return f"GF({self.p}^{self.d})" if self.d > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def gf_make(p: int, d: int = 1) -> GFContext:
    return GFContext(p, d)


def gf_from_order(q: int) -> GFContext:
    p, d = factor_prime_power(q)
    return gf_make(p, d)
