"""Latin squares with the row-superimposition notion of orthogonality.

Two squares are orthogonal here when superimposing any row of the first on
any row of the second matches in exactly one position; the matched value is
then a function of the two row indices and fills a new Latin square (the
composition).  A family {L_{i,j}} over ordered index pairs is *linked* when
for all distinct i, j, k the squares L_{i,k}, L_{j,k} are orthogonal and
compose to L_{i,j}.

This differs from the classical cell-superimposition notion of MOLS: there,
two squares are orthogonal if all ordered symbol pairs appear once when the
squares are overlaid cell by cell.  Row-superimposition orthogonality is the
variant needed by the block constructions in this package; squares obtained
from finite fields satisfy both.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, CertificationError, ParameterError
from .gf import GFContext

SEARCH_MAX_ORDER = 8


@dataclass(frozen=True)
class LatinSquare:
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.grid)
        symbols = set(range(n))
        for row in self.grid:
            if len(row) != n or set(row) != symbols:
                raise ParameterError("each row must contain every symbol exactly once")
        for j in range(n):
            if {row[j] for row in self.grid} != symbols:
                raise ParameterError("each column must contain every symbol exactly once")

    @staticmethod
    def of(rows) -> "LatinSquare":
        return LatinSquare(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def order(self) -> int:
        return len(self.grid)

    @property
    def zero_diagonal(self) -> bool:
        return all(self.grid[i][i] == 0 for i in range(self.order))

    def positions(self) -> tuple[tuple[int, ...], ...]:
        """positions()[i][s] = the column of symbol s in row i."""
        n = self.order
        out = []
        for row in self.grid:
            pos = [0] * n
            for a, s in enumerate(row):
                pos[s] = a
            out.append(tuple(pos))
        return tuple(out)

    def transpose(self) -> "LatinSquare":
        return LatinSquare(tuple(zip(*self.grid)))


def is_orthogonal(l1: LatinSquare, l2: LatinSquare) -> bool:
    """Every row of l1 superimposed on every row of l2 agrees in exactly one
    position."""
    if l1.order != l2.order:
        raise ParameterError("orders differ")
    n = l1.order
    for r1 in l1.grid:
        for r2 in l2.grid:
            hits = sum(1 for a in range(n) if r1[a] == r2[a])
            if hits != 1:
                return False
    return True


def compose(l1: LatinSquare, l2: LatinSquare) -> LatinSquare:
    """(i, j) entry = the unique common value of row i of l1 and row j of l2."""
    if l1.order != l2.order:
        raise ParameterError("orders differ")
    n = l1.order
    grid = []
    for r1 in l1.grid:
        row = []
        for r2 in l2.grid:
            common = [r1[a] for a in range(n) if r1[a] == r2[a]]
            if len(common) != 1:
                raise ParameterError("rows do not share exactly one common value; squares not orthogonal")
            row.append(common[0])
        grid.append(tuple(row))
    return LatinSquare(tuple(grid))


def mols_from_gf(ctx: GFContext) -> list[LatinSquare]:
    """The q-1 squares with (i, j) entry c*(a_i - a_j), one per nonzero
    scalar c, on symbols = element indices (zero element = symbol 0)."""
    els = ctx.elements
    out = []
    for c in els[1:] if els[0] == ctx.zero else els:
        grid = tuple(
            tuple(ctx.index(ctx.mul(c, ctx.sub(x, y))) for y in els) for x in els
        )
        out.append(LatinSquare(grid))
    return out


@dataclass(frozen=True)
class LinkedMolsFamily:
    f: int
    order: int
    squares: dict[tuple[int, int], LatinSquare]

    def __post_init__(self):
        if self.f < 3:
            raise ParameterError("a linked family needs at least three indices")
        expected = {(i, j) for i in range(1, self.f + 1) for j in range(1, self.f + 1) if i != j}
        if set(self.squares) != expected:
            raise ParameterError("family must contain one square per ordered index pair")
        for sq in self.squares.values():
            if sq.order != self.order:
                raise ParameterError("all squares must share one order")

    @property
    def zero_diagonal(self) -> bool:
        return all(sq.zero_diagonal for sq in self.squares.values())

    def __hash__(self):
        return hash((self.f, self.order))


@dataclass
class LinkedViolation:
    triple: tuple[int, int, int]
    kind: str

    def __str__(self):
        return f"triple {self.triple}: {self.kind}"


@dataclass
class LinkedCertificate:
    violations: list[LinkedViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_linked(fam: LinkedMolsFamily) -> LinkedCertificate:
    """Check orthogonality and composition closure on every ordered triple."""
    bad = []
    idx = range(1, fam.f + 1)
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) != 3:
                    continue
                lik, ljk = fam.squares[(i, k)], fam.squares[(j, k)]
                if not is_orthogonal(lik, ljk):
                    bad.append(LinkedViolation((i, j, k), "squares sharing the third index are not orthogonal"))
                    continue
                if compose(lik, ljk) != fam.squares[(i, j)]:
                    bad.append(LinkedViolation((i, j, k), "composition does not reproduce the pair square"))
    return LinkedCertificate(bad)


def linked_mols_from_gf2n(ctx: GFContext) -> LinkedMolsFamily:
    """Linked family of all pairwise compositions of the field squares;
    restricted to characteristic 2, where the composition identities of the
    field construction are available."""
    if ctx.p != 2:
        raise ParameterError("construction requires characteristic 2")
    base = mols_from_gf(ctx)
    f = len(base)  # q - 1
    if f < 3:
        raise ParameterError(f"field with {ctx.q} elements yields only f = {f} < 3")
    squares = {}
    for i in range(1, f + 1):
        for j in range(1, f + 1):
            if i != j:
                squares[(i, j)] = compose(base[i - 1], base[j - 1])
    fam = LinkedMolsFamily(f=f, order=ctx.q, squares=squares)
    cert = verify_linked(fam)
    if not cert.ok:
        raise CertificationError("field-derived family fails the linked property", cert)
    return fam


# -- search oracle ---------------------------------------------------------

def _latin_candidates(n: int, zero_diagonal: bool, first_row=None):
    """Yield Latin squares row by row in lexicographic order."""
    rows: list[tuple[int, ...]] = []
    col_used = [0] * n  # bitmask of used symbols per column

    def place(r: int):
        if r == n:
            yield tuple(rows)
            return
        if r == 0 and first_row is not None:
            row = first_row
            if zero_diagonal and row[0] != 0:
                return
            rows.append(row)
            for j, s in enumerate(row):
                col_used[j] |= 1 << s
            yield from place(1)
            rows.pop()
            for j, s in enumerate(row):
                col_used[j] &= ~(1 << s)
            return
        row = [0] * n
        row_used = 0

        def cell(c: int):
            nonlocal row_used
            if c == n:
                rows.append(tuple(row))
                for j, s in enumerate(row):
                    col_used[j] |= 1 << s
                yield from place(r + 1)
                rows.pop()
                for j, s in enumerate(row):
                    col_used[j] &= ~(1 << s)
                return
            options = (0,) if (zero_diagonal and c == r) else range(n)
            for s in options:
                bit = 1 << s
                if row_used & bit or col_used[c] & bit:
                    continue
                row[c] = s
                row_used |= bit
                yield from cell(c + 1)
                row_used &= ~bit

        yield from cell(0)

    yield from place(0)


def _solve_second(l1: LatinSquare, target: LatinSquare) -> LatinSquare | None:
    """X with compose(l1, X) = target, or None if no consistent X exists."""
    n = l1.order
    pos = l1.positions()
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            b = target.grid[i][j]
            a = pos[i][b]
            if grid[j][a] is None:
                grid[j][a] = b
            elif grid[j][a] != b:
                return None
    if any(x is None for row in grid for x in row):
        return None
    try:
        x = LatinSquare(tuple(tuple(row) for row in grid))
    except ParameterError:
        return None
    if not is_orthogonal(l1, x) or compose(l1, x) != target:
        return None
    return x


def _solve_first(l2: LatinSquare, target: LatinSquare) -> LatinSquare | None:
    """Y with compose(Y, l2) = target, or None."""
    n = l2.order
    pos = l2.positions()
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            b = target.grid[i][j]
            a = pos[j][b]
            if grid[i][a] is None:
                grid[i][a] = b
            elif grid[i][a] != b:
                return None
    if any(x is None for row in grid for x in row):
        return None
    try:
        y = LatinSquare(tuple(tuple(row) for row in grid))
    except ParameterError:
        return None
    if not is_orthogonal(y, l2) or compose(y, l2) != target:
        return None
    return y


def _extend_family(squares: dict, t: int, u: int, l1u: LatinSquare, zero_diagonal: bool) -> dict | None:
    """Given a complete family on {1..t} and a candidate L_{1,u} (u = t+1),
    derive every square touching u; None when the constraints clash."""
    new = dict(squares)
    new[(1, u)] = l1u
    # L_{s,u} from: compose(L_{1,u}, L_{s,u}) = L_{1,s}
    for s in range(2, t + 1):
        x = _solve_second(l1u, new[(1, s)])
        if x is None or (zero_diagonal and not x.zero_diagonal):
            return None
        new[(s, u)] = x
    if t == 2:
        # first triple: L_{2,1} = compose(L_{2,3}, L_{1,3})
        try:
            new[(2, 1)] = compose(new[(2, u)], new[(1, u)])
        except ParameterError:
            return None
        if zero_diagonal and not new[(2, 1)].zero_diagonal:
            return None
    # L_{u,1} from: compose(L_{2,1}, L_{u,1}) = L_{2,u}
    x = _solve_second(new[(2, 1)], new[(2, u)])
    if x is None or (zero_diagonal and not x.zero_diagonal):
        return None
    new[(u, 1)] = x
    # L_{u,s} from: compose(L_{u,s}, L_{1,s}) = L_{u,1}
    for s in range(2, t + 1):
        y = _solve_first(new[(1, s)], new[(u, 1)])
        if y is None or (zero_diagonal and not y.zero_diagonal):
            return None
        new[(u, s)] = y
    return new


def _triples_hold(squares: dict, top: int) -> bool:
    """All composition-closure triples on {1..top} that involve index top."""
    idx = range(1, top + 1)
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) != 3 or top not in (i, j, k):
                    continue
                lik, ljk = squares[(i, k)], squares[(j, k)]
                try:
                    if compose(lik, ljk) != squares[(i, j)]:
                        return False
                except ParameterError:
                    return False
    return True


def search_linked_mols(order: int, f: int, zero_diagonal: bool = True) -> LinkedMolsFamily | None:
    """Depth-first search for a linked family; deterministic lexicographic
    exploration, first square's first row pinned to identity order.

    Only L_{1,2..f} are free: every other square is forced cell by cell by
    composition closure, so each stage propagates the forced squares and
    verifies the closure triples of the newly joined index before branching
    deeper.  Returns None when the search space is exhausted (a reportable
    result); raises BudgetExceededError above the desk-scale order limit.
    """
    if order > SEARCH_MAX_ORDER:
        raise BudgetExceededError(f"search limited to order <= {SEARCH_MAX_ORDER}")
    if f < 3:
        raise ParameterError("a linked family needs f >= 3")
    if order < 2:
        return None
    identity = tuple(range(order))

    def extend_to(squares: dict, t: int):
        if t == f:
            fam = LinkedMolsFamily(f=f, order=order, squares=squares)
            if verify_linked(fam).ok and (not zero_diagonal or fam.zero_diagonal):
                return fam
            return None
        u = t + 1
        for cand in _latin_candidates(order, zero_diagonal):
            l1u = LatinSquare(cand)
            new = _extend_family(squares, t, u, l1u, zero_diagonal)
            if new is None or not _triples_hold(new, u):
                continue
            found = extend_to(new, u)
            if found is not None:
                return found
        return None

    for first in _latin_candidates(order, zero_diagonal, first_row=identity):
        l12 = LatinSquare(first)
        found = extend_to({(1, 2): l12}, 2)
        if found is not None:
            return found
    return None
