"""Symmetric group divisible designs: parameter containers, exact
certification of the defining matrix identity, partial complements, and the
closed-form lambda parameters forced on designs whose group-blown-up
companion is again a design.

A symmetric GDD with parameters (v, k, m, n, lambda1, lambda2) is a square
0/1 matrix A of order v = m*n with

    A A^T = A^T A = k I + lambda1 (K - I) + lambda2 (J - K),

where K = I_m (x) J_n marks the m groups of n points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import IntMatrix
from .errors import DegenerateDesignError, InfeasibleParameterError, ParameterError


@dataclass(frozen=True)
class GddParams:
    v: int
    k: int
    m: int
    n: int
    lambda1: int
    lambda2: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ParameterError("need at least two groups of at least two points")
        if self.v != self.m * self.n:
            raise ParameterError(f"v = {self.v} != m*n = {self.m * self.n}")
        if min(self.k, self.lambda1, self.lambda2) < 0:
            raise ParameterError("parameters must be non-negative")
        if self.k == self.lambda1:
            raise DegenerateDesignError(
                "k = lambda1: the design is a symmetric design blown up by groups"
            )
        if self.k < self.lambda1:
            raise ParameterError("k must exceed lambda1")
        lhs = self.k * self.k
        rhs = self.k + self.lambda1 * (self.n - 1) + self.lambda2 * (self.v - self.n)
        if lhs != rhs:
            raise ParameterError(
                f"row-sum consistency fails: k^2 = {lhs} but "
                f"k + l1(n-1) + l2(v-n) = {rhs}"
            )

    @property
    def is_symmetric_design(self) -> bool:
        return self.lambda1 == self.lambda2

    def expected_gram(self) -> IntMatrix:
        i = IntMatrix.identity(self.v)
        j = IntMatrix.ones(self.v)
        kb = IntMatrix.group_blocks(self.m, self.n)
        return (
            i.scalar_mul(self.k)
            + (kb - i).scalar_mul(self.lambda1)
            + (j - kb).scalar_mul(self.lambda2)
        )


def partial_complement_params(p: GddParams) -> GddParams:
    """Parameters of J - K - A for a design A with the given parameters."""
    twice_k, m1 = 2 * p.k, p.m - 1
    if twice_k % m1:
        raise InfeasibleParameterError(f"2k/(m-1) = {twice_k}/{m1} is not an integer")
    return GddParams(
        v=p.v,
        k=p.v - p.k - p.n,
        m=p.m,
        n=p.n,
        lambda1=p.v - p.n - 2 * p.k + p.lambda1,
        lambda2=p.v - 2 * p.n - 2 * p.k + p.lambda2 + twice_k // m1,
    )


def companion_params(p: GddParams) -> GddParams:
    """Parameters of A + K when A has the given parameters and commutes with
    K as k/(m-1) times the off-group indicator."""
    twice_k, m1 = 2 * p.k, p.m - 1
    if twice_k % m1:
        raise InfeasibleParameterError(f"2k/(m-1) = {twice_k}/{m1} is not an integer")
    return GddParams(
        v=p.v,
        k=p.k + p.n,
        m=p.m,
        n=p.n,
        lambda1=p.lambda1 + p.n,
        lambda2=p.lambda2 + twice_k // m1,
    )


class IncidenceMatrix:
    """A square 0/1 matrix together with its (m, n) group structure."""

    __slots__ = ("mat", "m", "n")

    def __init__(self, mat: IntMatrix, m: int, n: int):
        if not mat.is_square:
            raise ParameterError("incidence matrix must be square")
        if mat.rows != m * n:
            raise ParameterError(f"order {mat.rows} != m*n = {m * n}")
        if not mat.is_zero_one():
            raise ParameterError("incidence matrix entries must be 0 or 1")
        self.mat = mat
        self.m = m
        self.n = n

    @property
    def v(self) -> int:
        return self.mat.rows

    def group_indicator(self) -> IntMatrix:
        return IntMatrix.group_blocks(self.m, self.n)

    def diagonal_blocks_zero(self) -> bool:
        plus = self.mat + self.group_indicator()
        return plus.is_zero_one()

    def __eq__(self, other):
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.mat == other.mat

    def __hash__(self):
        return hash((self.m, self.n, self.mat))

    def __repr__(self):
        return f"IncidenceMatrix(v={self.v}, groups={self.m}x{self.n})"


@dataclass(frozen=True)
class Violation:
    identity: str
    position: tuple[int, int] | None
    expected: int | None = None
    actual: int | None = None

    def __str__(self):
        loc = f" at {self.position}" if self.position is not None else ""
        detail = ""
        if self.expected is not None:
            detail = f" (expected {self.expected}, got {self.actual})"
        return f"{self.identity}{loc}{detail}"


@dataclass
class Certificate:
    subject: str
    checks: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def passed(self, label: str):
        self.checks.append(label)

    def failed(self, identity: str, position=None, expected=None, actual=None):
        self.violations.append(Violation(identity, position, expected, actual))

    def compare(self, label: str, actual: IntMatrix, expected: IntMatrix):
        pos = actual.first_difference(expected)
        if pos is None:
            self.passed(label)
        else:
            self.failed(label, pos, expected[pos], actual[pos])

    def report_lines(self) -> list[str]:
        lines = [f"certificate: {self.subject}: {'OK' if self.ok else 'VIOLATED'}"]
        lines += [f"  ok: {c}" for c in self.checks]
        lines += [f"  note: {n}" for n in self.notes]
        lines += [f"  violation: {v}" for v in self.violations]
        return lines

    def __str__(self):
        return "\n".join(self.report_lines())


def verify_gdd(a: IncidenceMatrix, p: GddParams) -> Certificate:
    """Certify A A^T = A^T A = kI + l1(K-I) + l2(J-K) entrywise."""
    cert = Certificate(f"symmetric GDD {p}")
    if (a.v, a.m, a.n) != (p.v, p.m, p.n):
        cert.failed("dimension/group structure matches parameters", (0, 0))
        return cert
    gram = p.expected_gram()
    cert.compare("A A^T equals k I + l1 (K - I) + l2 (J - K)", a.mat @ a.mat.T, gram)
    cert.compare("A^T A equals k I + l1 (K - I) + l2 (J - K)", a.mat.T @ a.mat, gram)
    return cert


def check_bose(a: IncidenceMatrix, p: GddParams) -> bool:
    """The rank-argument identity for designs with lambda1 != lambda2:
    A K A^T = (n(l1 - l2) + k - l1) K + n l2 J."""
    if p.lambda1 == p.lambda2:
        raise ParameterError("identity only applies when lambda1 != lambda2")
    kb = a.group_indicator()
    lhs = a.mat @ kb @ a.mat.T
    coeff = p.n * (p.lambda1 - p.lambda2) + p.k - p.lambda1
    rhs = kb.scalar_mul(coeff) + IntMatrix.ones(p.v).scalar_mul(p.n * p.lambda2)
    return lhs == rhs


def partial_complement(a: IncidenceMatrix, p: GddParams) -> tuple[IncidenceMatrix, GddParams]:
    """J - K - A, certified with its derived parameters."""
    if not a.diagonal_blocks_zero():
        raise ParameterError("partial complement needs zero diagonal blocks (A + K must be 0/1)")
    cp = partial_complement_params(p)
    comp = IntMatrix.ones(p.v) - a.group_indicator() - a.mat
    out = IncidenceMatrix(comp, p.m, p.n)
    cert = verify_gdd(out, cp)
    if not cert.ok:
        raise ParameterError(
            "input is not a symmetric GDD with the stated parameters: "
            + "; ".join(str(v) for v in cert.violations)
        )
    return out, cp


@dataclass(frozen=True)
class KCommutation:
    kind: str  # "zero" | "multiple_of_J" | "multiple_of_J_minus_K" | "other"
    factor: Fraction | None = None


def check_k_commutation(a: IncidenceMatrix) -> KCommutation:
    """Classify A K = K A against the two canonical right-hand sides."""
    kb = a.group_indicator()
    ak = a.mat @ kb
    ka = kb @ a.mat
    if ak != ka:
        return KCommutation("other")
    if ak == IntMatrix.zeros(a.v):
        return KCommutation("zero", Fraction(0))
    j = IntMatrix.ones(a.v)
    for cand, kind in ((j, "multiple_of_J"), (j - kb, "multiple_of_J_minus_K")):
        nz = cand.a != 0
        vals = ak.a[nz]
        if vals.size and (vals == vals[0]).all():
            c = int(vals[0])
            if ak == cand.scalar_mul(c):
                return KCommutation(kind, Fraction(c))
    return KCommutation("other")


def lambda_formulas(k: int, m: int, n: int) -> tuple[Fraction, Fraction]:
    """The unique (lambda1, lambda2) compatible with A and A + K both being
    designs: l1 = k(k-m+1)/((m-1)(n-1)), l2 = k^2(m-2)/(n(m-1)^2)."""
    if m < 2 or n < 2:
        raise ParameterError("need m, n >= 2")
    l1 = Fraction(k * (k - m + 1), (m - 1) * (n - 1))
    l2 = Fraction(k * k * (m - 2), n * (m - 1) * (m - 1))
    return l1, l2
