"""5-class association schemes attached to linked systems.

Assembly places the block designs in one cross-fiber class A_3 next to the
within-fiber classes (A_1 within group, A_2 across groups), the cross-fiber
group indicator A_5 and the leftover class A_4.  Certification is exact and
layered:

* the scheme axioms and intersection numbers p_{i,j}^k are verified by
  integer matrix arithmetic, entrywise;
* eigenmatrices come from closed forms over Q(sqrt(D)) with
  D = squarefree(k(m-1)(n-1)(mn-k-n)) and are verified against the
  intersection numbers in the 6-dimensional coefficient algebra (exact, and
  equivalent to the dense matrix identities once the p-tensor is certified);
* Krein parameters are evaluated from the idempotents exactly and checked
  non-negative and against their closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import IntMatrix, Surd, SurdMatrix
from .designs import Certificate, GddParams, IncidenceMatrix
from .errors import CertificationError, ParameterError
from .linked import LinkedParams, LinkedSystemII, verify_linked_system

CLASSES = 6


@dataclass(frozen=True)
class SchemeParams:
    k: int
    m: int
    n: int
    f: int

    @property
    def size(self) -> int:
        return self.f * self.m * self.n

    @property
    def block_order(self) -> int:
        return self.m * self.n

    def __post_init__(self):
        if self.m < 2 or self.n < 2 or self.f < 2:
            raise ParameterError("need m, n, f >= 2")
        mn = self.m * self.n
        if not 0 < self.k < (self.m - 1) * self.n:
            raise ParameterError(f"k = {self.k} outside (0, (m-1)n) for v = {mn}")


@dataclass
class Spectra:
    P: SurdMatrix
    Q: SurdMatrix
    multiplicities: list[int]
    radicand: int

    def idempotent_coefficients(self, size: int) -> list[list[Surd]]:
        inv = Fraction(1, size)
        return [
            [self.Q[i, j] * Surd.of(inv) for i in range(CLASSES)]
            for j in range(CLASSES)
        ]


@dataclass
class AssociationScheme:
    matrices: list[IntMatrix]
    p: list[list[list[int]]]
    params: SchemeParams
    spectra: Spectra
    krein: list[list[list[Surd]]]
    certificate: Certificate

    @property
    def size(self) -> int:
        return self.matrices[0].rows

    def valencies(self) -> list[int]:
        return [self.p[i][i][0] for i in range(CLASSES)]

    def idempotent_matrix(self, j: int) -> SurdMatrix:
        """Dense E_j = (1/|X|) sum_i Q_{i,j} A_i."""
        size = self.size
        coeff = [self.spectra.Q[i, j] * Surd.of(Fraction(1, size)) for i in range(CLASSES)]
        data = [[Surd.of(0)] * size for _ in range(size)]
        for i, mat in enumerate(self.matrices):
            arr = mat.a
            ci = coeff[i]
            for r in range(size):
                row = arr[r]
                drow = data[r]
                for c in range(size):
                    if row[c]:
                        drow[c] = drow[c] + ci
        return SurdMatrix(data)


# -- axioms and intersection numbers ------------------------------------------


def compute_intersection_numbers(mats: list[IntMatrix]) -> tuple[list[list[list[int]]] | None, Certificate]:
    """Exhaustive axiom check; p_{i,j}^k read off one representative entry
    per class after verifying constancy of A_i A_j over every class."""
    cert = Certificate("association scheme axioms")
    d1 = len(mats)
    size = mats[0].rows
    if mats[0] != IntMatrix.identity(size):
        cert.failed("A_0 = I", (0, 0))
    else:
        cert.passed("A_0 = I")
    total = IntMatrix.zeros(size)
    for idx, mat in enumerate(mats):
        if not (mat.is_square and mat.rows == size and mat.is_zero_one()):
            cert.failed(f"A_{idx} is a square 0/1 matrix of order {size}")
            return None, cert
        if not mat.is_symmetric():
            cert.failed(f"A_{idx} is symmetric")
        total = total + mat
    cert.compare("sum A_i = J", total, IntMatrix.ones(size))
    if idx_zero := [i for i, mat in enumerate(mats) if mat == IntMatrix.zeros(size)]:
        cert.failed(f"classes {idx_zero} are empty")
    if not cert.ok:
        return None, cert

    masks = [mat.a.astype(bool) for mat in mats]
    p = [[[0] * d1 for _ in range(d1)] for _ in range(d1)]
    for i in range(d1):
        for j in range(d1):
            prod = (mats[i] @ mats[j]).a
            for k in range(d1):
                vals = prod[masks[k]]
                v0 = int(vals[0])
                if not (vals == v0).all():
                    cert.failed(f"A_{i} A_{j} is not constant on class {k}")
                    return None, cert
                p[i][j][k] = v0
    for i in range(d1):
        for j in range(d1):
            for k in range(d1):
                if p[i][j][k] != p[j][i][k]:
                    cert.failed(f"p_{i}{j}^{k} != p_{j}{i}^{k}")
                    return None, cert
    cert.passed("all products A_i A_j decompose with constant class coefficients")
    cert.passed("intersection numbers are symmetric in the lower indices")
    return p, cert


def coeff_mul(p, x: list[Surd], y: list[Surd]) -> list[Surd]:
    """Product in the adjacency algebra, on class-coefficient vectors."""
    d1 = len(x)
    out = [Surd.of(0)] * d1
    for i in range(d1):
        xi = x[i]
        if xi.sign() == 0:
            continue
        for j in range(d1):
            yj = y[j]
            if yj.sign() == 0:
                continue
            prod = xi * yj
            row = p[i][j]
            for k in range(d1):
                if row[k]:
                    out[k] = out[k] + prod * row[k]
    return out


# -- closed-form spectra --------------------------------------------------------


def closed_form_p_matrix(params: SchemeParams) -> SurdMatrix:
    k, m, n, f = params.k, params.m, params.n, params.f
    w = m * n - k - n
    rt = Surd.sqrt(Fraction(k * w, (m - 1) * (n - 1)))
    one = Surd.of(1)
    rows = [
        [one, Surd.of(n - 1), Surd.of((m - 1) * n), Surd.of((f - 1) * k), Surd.of((f - 1) * w), Surd.of((f - 1) * n)],
        [one, Surd.of(-1), Surd.of(0), rt * (f - 1), rt * (-(f - 1)), Surd.of(0)],
        [one, Surd.of(n - 1), Surd.of(-n), Surd.of(Fraction(-(f - 1) * k, m - 1)), Surd.of(Fraction(-(f - 1) * w, m - 1)), Surd.of((f - 1) * n)],
        [one, Surd.of(n - 1), Surd.of(-n), Surd.of(Fraction(k, m - 1)), Surd.of(n - Fraction(k, m - 1)), Surd.of(-n)],
        [one, Surd.of(-1), Surd.of(0), rt * (-1), rt, Surd.of(0)],
        [one, Surd.of(n - 1), Surd.of((m - 1) * n), Surd.of(-k), Surd.of(-w), Surd.of(-n)],
    ]
    return SurdMatrix(rows)


def closed_form_q_matrix(params: SchemeParams) -> SurdMatrix:
    k, m, n, f = params.k, params.m, params.n, params.f
    w = m * n - k - n
    qt3 = Surd.sqrt(Fraction((n - 1) * w, k * (m - 1)))
    qt4 = Surd.sqrt(Fraction(k * (n - 1), (m - 1) * w))
    one = Surd.of(1)
    rows = [
        [one, Surd.of(m * (n - 1)), Surd.of(m - 1), Surd.of((f - 1) * (m - 1)), Surd.of((f - 1) * m * (n - 1)), Surd.of(f - 1)],
        [one, Surd.of(-m), Surd.of(m - 1), Surd.of((f - 1) * (m - 1)), Surd.of(-(f - 1) * m), Surd.of(f - 1)],
        [one, Surd.of(0), Surd.of(-1), Surd.of(-(f - 1)), Surd.of(0), Surd.of(f - 1)],
        [one, qt3 * m, Surd.of(-1), one, qt3 * (-m), Surd.of(-1)],
        [one, qt4 * (-m), Surd.of(-1), one, qt4 * m, Surd.of(-1)],
        [one, Surd.of(0), Surd.of(m - 1), Surd.of(-(m - 1)), Surd.of(0), Surd.of(-1)],
    ]
    return SurdMatrix(rows)


def closed_form_multiplicities(params: SchemeParams) -> list[int]:
    m, n, f = params.m, params.n, params.f
    return [1, m * (n - 1), m - 1, (f - 1) * (m - 1), (f - 1) * m * (n - 1), f - 1]


def closed_form_krein_b2(params: SchemeParams) -> list[list[Surd]]:
    m, f = params.m, params.f
    mf = Fraction(m, f)
    z = Surd.of(0)
    return [
        [z, z, Surd.of(1), z, z, z],
        [z, Surd.of(mf - 1), z, z, Surd.of(mf), z],
        [Surd.of(m - 1), z, Surd.of(m - 2), z, z, z],
        [z, z, z, Surd.of(m - 2), z, Surd.of(m - 1)],
        [z, Surd.of((f - 1) * mf), z, z, Surd.of(m - 1 - mf), z],
        [z, z, z, Surd.of(1), z, z],
    ]


def compute_spectra(p, params: SchemeParams) -> tuple[Spectra, Certificate]:
    """Closed-form P, Q over Q(sqrt(D)), with every defining identity
    (P Q = |X| I, idempotency, orthogonality, eigenvalue equations,
    multiplicity row) verified against the certified intersection numbers."""
    cert = Certificate(f"closed-form spectra at (k,m,n,f)=({params.k},{params.m},{params.n},{params.f})")
    size = params.size
    pm = closed_form_p_matrix(params)
    qm = closed_form_q_matrix(params)
    mult = closed_form_multiplicities(params)
    if sum(mult) != size:
        cert.failed("multiplicities sum to |X|")
        return Spectra(pm, qm, mult, pm.d), cert
    cert.passed("multiplicities sum to |X|")

    prod = pm @ qm
    ident = SurdMatrix.identity(CLASSES).scalar_mul(size)
    if prod == ident:
        cert.passed("P Q = |X| I")
    else:
        cert.failed("P Q = |X| I")

    e = [
        [qm[i, j] * Surd.of(Fraction(1, size)) for i in range(CLASSES)]
        for j in range(CLASSES)
    ]
    total = [Surd.of(0)] * CLASSES
    for j in range(CLASSES):
        for c in range(CLASSES):
            total[c] = total[c] + e[j][c]
    if total == [Surd.of(1)] + [Surd.of(0)] * (CLASSES - 1):
        cert.passed("sum E_j = I")
    else:
        cert.failed("sum E_j = I")

    ok_idem = True
    for j in range(CLASSES):
        for l in range(j, CLASSES):
            got = coeff_mul(p, e[j], e[l])
            want = e[j] if j == l else [Surd.of(0)] * CLASSES
            if got != want:
                ok_idem = False
                cert.failed(f"E_{j} E_{l} = {'E_' + str(j) if j == l else 'O'}")
    if ok_idem:
        cert.passed("E_j are pairwise orthogonal idempotents")

    ok_eig = True
    for i in range(CLASSES):
        delta = [Surd.of(1 if c == i else 0) for c in range(CLASSES)]
        for j in range(CLASSES):
            got = coeff_mul(p, delta, e[j])
            want = [pm[j, i] * e[j][c] for c in range(CLASSES)]
            if got != want:
                ok_eig = False
                cert.failed(f"A_{i} E_{j} = P[{j},{i}] E_{j}")
    if ok_eig:
        cert.passed("A_i E_j = P_{j,i} E_j for all i, j")

    ok_mult = True
    for j in range(CLASSES):
        if qm[0, j] != Surd.of(mult[j]):
            ok_mult = False
            cert.failed(f"m_{j} = Q[0,{j}]")
        # trace E_j = |X| * coefficient of A_0
        if e[j][0] * size != Surd.of(mult[j]):
            ok_mult = False
            cert.failed(f"trace E_{j} = m_{j}")
    if ok_mult:
        cert.passed("multiplicities match Q row 0 and the idempotent traces")

    valencies = [p[i][i][0] for i in range(CLASSES)]
    if all(pm[0, i] == Surd.of(valencies[i]) for i in range(CLASSES)):
        cert.passed("P row 0 equals the valencies")
    else:
        cert.failed("P row 0 equals the valencies")

    return Spectra(pm, qm, mult, pm.d or qm.d), cert


def compute_krein(p, spectra: Spectra, params: SchemeParams) -> tuple[list[list[list[Surd]]], Certificate]:
    """q_{i,j}^k = |X| tr((E_i o E_j) E_k) / m_k in exact arithmetic; the
    entrywise product of class-constant matrices multiplies coefficients
    classwise, and tr of a coefficient vector is |X| times its A_0 part."""
    cert = Certificate("Krein parameters")
    size = params.size
    e = spectra.idempotent_coefficients(size)
    mult = spectra.multiplicities
    q: list[list[list[Surd]]] = [[[Surd.of(0)] * CLASSES for _ in range(CLASSES)] for _ in range(CLASSES)]
    negatives = []
    for i in range(CLASSES):
        for j in range(i, CLASSES):
            had = [e[i][c] * e[j][c] for c in range(CLASSES)]
            for k in range(CLASSES):
                w = coeff_mul(p, had, e[k])
                trace = w[0] * size
                val = trace * Fraction(size, mult[k])
                q[i][j][k] = val
                q[j][i][k] = val
                if val.sign() < 0:
                    negatives.append((i, j, k))
    if negatives:
        for (i, j, k) in sorted(set(negatives)):
            cert.failed(f"Krein parameter q_{i}{j}^{k} is negative")
    else:
        cert.passed("all Krein parameters are non-negative")

    b2 = closed_form_krein_b2(params)
    if all(q[2][j][k] == b2[j][k] for j in range(CLASSES) for k in range(CLASSES)):
        cert.passed("entrywise-product structure constants of E_2 match their closed form")
    else:
        cert.failed("entrywise-product structure constants of E_2 match their closed form")
    expected = Surd.of(Fraction(params.m, params.f) - 1)
    if q[2][1][1] == expected:
        cert.passed(f"q_21^1 = m/f - 1 = {Fraction(params.m, params.f) - 1}")
    else:
        cert.failed("q_21^1 = m/f - 1")
    return q, cert


# -- assembly --------------------------------------------------------------------


def scheme_matrices_from_system(sys: LinkedSystemII) -> list[IntMatrix]:
    base = sys.params.base
    f, m, n = sys.params.f, base.m, base.n
    mn = base.v
    size = f * mn
    eye = np.eye
    ones = np.ones
    a0 = eye(size, dtype=np.int64)
    a1 = np.kron(eye(f * m, dtype=np.int64), ones((n, n), dtype=np.int64) - eye(n, dtype=np.int64))
    a2 = np.kron(
        np.kron(eye(f, dtype=np.int64), ones((m, m), dtype=np.int64) - eye(m, dtype=np.int64)),
        ones((n, n), dtype=np.int64),
    )
    a5 = np.kron(
        ones((f, f), dtype=np.int64) - eye(f, dtype=np.int64),
        np.kron(eye(m, dtype=np.int64), ones((n, n), dtype=np.int64)),
    )
    zero = np.zeros((mn, mn), dtype=np.int64)
    a3 = np.block(
        [
            [zero if i == j else sys.blocks[(i, j)].mat.a for j in range(1, f + 1)]
            for i in range(1, f + 1)
        ]
    )
    a4 = np.kron(ones((f, f), dtype=np.int64) - eye(f, dtype=np.int64), ones((mn, mn), dtype=np.int64)) - a3 - a5
    return [IntMatrix(x) for x in (a0, a1, a2, a3, a4, a5)]


def assemble_scheme(sys: LinkedSystemII) -> AssociationScheme:
    """Build the six classes and certify everything; raises on any failure."""
    sys_cert = verify_linked_system(sys)
    if not sys_cert.ok:
        raise CertificationError("input system fails certification", sys_cert)
    base = sys.params.base
    params = SchemeParams(k=base.k, m=base.m, n=base.n, f=sys.params.f)
    mats = scheme_matrices_from_system(sys)
    p, cert = compute_intersection_numbers(mats)
    if p is None:
        raise CertificationError("assembled matrices fail the scheme axioms", cert)
    spectra, spec_cert = compute_spectra(p, params)
    cert.checks += spec_cert.checks
    cert.violations += spec_cert.violations
    krein, krein_cert = compute_krein(p, spectra, params)
    cert.checks += krein_cert.checks
    cert.violations += krein_cert.violations
    if not cert.ok:
        raise CertificationError("assembled scheme fails certification", cert)
    return AssociationScheme(mats, p, params, spectra, krein, cert)


# -- structure identification and extraction ---------------------------------------


def _equivalence_classes(arr: np.ndarray) -> list[tuple[int, ...]] | None:
    """Classes of a reflexive-symmetric 0/1 relation, or None if it is not a
    uniform equivalence relation."""
    size = arr.shape[0]
    if (np.diagonal(arr) != 1).any() or (arr != arr.T).any():
        return None
    seen = np.zeros(size, dtype=bool)
    classes = []
    width = None
    for x in range(size):
        if seen[x]:
            continue
        members = np.flatnonzero(arr[x])
        key = arr[x]
        for y in members:
            if not (arr[y] == key).all():
                return None
        if width is None:
            width = len(members)
        elif len(members) != width:
            return None
        seen[members] = True
        classes.append(tuple(int(y) for y in members))
    return classes


@dataclass
class ExtractionCandidate:
    labels: tuple[int, ...]          # canonical position -> input class index
    params: SchemeParams
    lambda1: int
    lambda2: int
    triple: tuple[int, int, int] | None
    spectra_match: bool
    system: LinkedSystemII | None
    certificate: Certificate | None

    @property
    def certified(self) -> bool:
        return self.system is not None and self.certificate is not None and self.certificate.ok


@dataclass
class ExtractionReport:
    candidates: list[ExtractionCandidate]

    @property
    def primary(self) -> ExtractionCandidate:
        for cand in self.candidates:
            if cand.spectra_match and cand.certified:
                return cand
        raise CertificationError("no labeling matches the closed-form spectra and certifies")


def _identify_labelings(mats: list[IntMatrix], p) -> list[dict]:
    size = mats[0].rows
    idx = range(CLASSES)
    c0 = next((i for i in idx if mats[i] == IntMatrix.identity(size)), None)
    if c0 is None:
        raise CertificationError("no identity class")
    valency = {i: p[i][i][0] for i in idx}
    out = []
    for c1 in idx:
        if c1 == c0:
            continue
        cls1 = _equivalence_classes(mats[c0].a + mats[c1].a)
        if cls1 is None:
            continue
        n = 1 + valency[c1]
        for c2 in idx:
            if c2 in (c0, c1):
                continue
            fib = _equivalence_classes(mats[c0].a + mats[c1].a + mats[c2].a)
            if fib is None:
                continue
            mn = len(fib[0])
            if mn % n or mn // n < 2 or size % mn:
                continue
            m = mn // n
            f = size // mn
            if f < 2 or valency[c2] != (m - 1) * n:
                continue
            rest = [i for i in idx if i not in (c0, c1, c2)]
            for c5 in rest:
                if valency[c5] != (f - 1) * n:
                    continue
                expected = [0] * CLASSES
                expected[c5] = n - 1
                if p[c1][c5] != expected:
                    continue
                c3c4 = [i for i in rest if i != c5]
                for c3 in c3c4:
                    c4 = next(i for i in c3c4 if i != c3)
                    out.append(
                        {"labels": (c0, c1, c2, c3, c4, c5), "m": m, "n": n, "f": f}
                    )
    return out


def _relabel_p(p, labels):
    return [
        [[p[labels[a]][labels[b]][labels[c]] for c in range(CLASSES)] for b in range(CLASSES)]
        for a in range(CLASSES)
    ]


def _canonical_vertex_order(mats, labels, m: int, n: int, f: int) -> list[int] | None:
    """Vertex permutation sorting into fibers, aligned groups, ascending
    points; identity whenever the input is already canonically ordered."""
    c0, c1, c2, _, _, c5 = labels
    fibers = _equivalence_classes(mats[c0].a + mats[c1].a + mats[c2].a)
    groups = _equivalence_classes(mats[c0].a + mats[c1].a)
    if fibers is None or groups is None:
        return None
    fibers = sorted(fibers, key=min)
    group_of = {}
    for g in groups:
        for x in g:
            group_of[x] = g
    a5 = mats[c5].a
    ref_groups = sorted({group_of[x] for x in fibers[0]}, key=min)
    if len(ref_groups) != m:
        return None
    order = []
    for t, fib in enumerate(fibers):
        fib_groups = {group_of[x] for x in fib}
        if len(fib_groups) != m:
            return None
        if t == 0:
            aligned = ref_groups
        else:
            aligned = []
            for g in ref_groups:
                x = g[0]
                linked = [y for y in fib if a5[x, y]]
                if len(linked) != n:
                    return None
                target = group_of[linked[0]]
                if set(linked) != set(target):
                    return None
                aligned.append(target)
            if len(set(aligned)) != m:
                return None
        for g in aligned:
            order.extend(sorted(g))
    return order


def extract_linked_system(mats: list[IntMatrix]) -> ExtractionReport:
    """Recover the linked system (or the f = 2 pair) from the adjacency
    matrices; every class labeling compatible with the fiber structure is
    attempted, so parameter-symmetric inputs report both readings."""
    if len(mats) != CLASSES:
        raise ParameterError("expected six classes")
    p, cert = compute_intersection_numbers(mats)
    if p is None:
        raise CertificationError("input fails the scheme axioms", cert)
    candidates = []
    for lab in _identify_labelings(mats, p):
        labels = lab["labels"]
        m, n, f = lab["m"], lab["n"], lab["f"]
        pp = _relabel_p(p, labels)
        if pp[3][3][0] % (f - 1):
            continue
        k = pp[3][3][0] // (f - 1)
        if pp[3][3][1] % (f - 1) or pp[3][3][2] % (f - 1):
            continue
        l1 = pp[3][3][1] // (f - 1)
        l2 = pp[3][3][2] // (f - 1)
        if not l1 < k < (m - 1) * n:
            continue
        try:
            params = SchemeParams(k=k, m=m, n=n, f=f)
        except ParameterError:
            continue
        triple = None
        if f >= 3:
            if any(pp[3][3][c] % (f - 2) for c in (3, 4, 5)):
                continue
            triple = (pp[3][3][3] // (f - 2), pp[3][3][4] // (f - 2), pp[3][3][5] // (f - 2))
        _, spec_cert = compute_spectra(pp, params)
        order = _canonical_vertex_order(mats, labels, m, n, f)
        system = None
        sys_cert = None
        if order is not None:
            perm = np.array(order)
            a3 = mats[labels[3]].a[np.ix_(perm, perm)]
            mn = m * n
            try:
                base = GddParams(mn, k, m, n, l1, l2)
                if f >= 3:
                    lp = LinkedParams(base=base, f=f, sigma=triple[0], tau=triple[1], rho=triple[2])
                else:
                    lp = LinkedParams(base=base, f=f, sigma=None, tau=None, rho=None)
                blocks = {}
                for i in range(f):
                    for j in range(f):
                        if i != j:
                            sub = a3[i * mn : (i + 1) * mn, j * mn : (j + 1) * mn]
                            blocks[(i + 1, j + 1)] = IncidenceMatrix(IntMatrix(sub.copy()), m, n)
                system = LinkedSystemII(params=lp, blocks=blocks)
                sys_cert = verify_linked_system(system)
            except ParameterError:
                system, sys_cert = None, None
        candidates.append(
            ExtractionCandidate(
                labels=labels,
                params=params,
                lambda1=l1,
                lambda2=l2,
                triple=triple,
                spectra_match=spec_cert.ok,
                system=system if (sys_cert is not None and sys_cert.ok) else None,
                certificate=sys_cert,
            )
        )
    if not candidates:
        raise CertificationError("no class labeling exhibits the fiber structure")
    candidates.sort(key=lambda c: (not c.spectra_match, c.labels))
    return ExtractionReport(candidates)


# -- fusion ---------------------------------------------------------------------

FUSION_PARTITION = ((0,), (1, 2), (3, 5), (4,))


@dataclass
class FusionReport:
    fusable: bool
    predicted: bool
    partition: tuple[tuple[int, ...], ...]
    fused_matrices: list[IntMatrix] | None
    eigenspace_partition: tuple[tuple[int, ...], ...] | None

    @property
    def consistent(self) -> bool:
        return self.fusable == self.predicted


def fuse_classes(p, partition) -> list[list[list[int]]] | None:
    """Intersection numbers of the merged classes, or None when a product is
    not constant across a merged class (merge leaves the span)."""
    groups = [tuple(g) for g in partition]
    t = len(groups)
    fused = [[[0] * t for _ in range(t)] for _ in range(t)]
    for a in range(t):
        for b in range(t):
            coeff = [0] * len(p)
            for i in groups[a]:
                for j in groups[b]:
                    for k in range(len(p)):
                        coeff[k] += p[i][j][k]
            for c in range(t):
                vals = {coeff[k] for k in groups[c]}
                if len(vals) != 1:
                    return None
                fused[a][b][c] = vals.pop()
    return fused


def check_fusion(scheme: AssociationScheme) -> FusionReport:
    """Merge {A_0, A_1+A_2, A_3+A_5, A_4}; succeed exactly when
    k = (m-1)n(n-1)/(n+m-2), and report the induced idempotent partition."""
    params = scheme.params
    predicted = Fraction(params.k) == Fraction(
        (params.m - 1) * params.n * (params.n - 1), params.n + params.m - 2
    )
    fused_p = fuse_classes(scheme.p, FUSION_PARTITION)
    if fused_p is None:
        return FusionReport(False, predicted, FUSION_PARTITION, None, None)
    fused_mats = []
    for group in FUSION_PARTITION:
        total = IntMatrix.zeros(scheme.size)
        for i in group:
            total = total + scheme.matrices[i]
        fused_mats.append(total)
    check_p, cert = compute_intersection_numbers(fused_mats)
    if check_p is None:
        raise CertificationError("fused classes fail the scheme axioms", cert)
    # merged eigenspaces: group eigenspaces by their fused eigenvalue vectors
    vectors = {}
    for j in range(CLASSES):
        key = tuple(
            sum((scheme.spectra.P[j, i] for i in group), Surd.of(0))
            for group in FUSION_PARTITION
        )
        vectors.setdefault(key, []).append(j)
    eig_part = tuple(tuple(v) for v in sorted(vectors.values()))
    return FusionReport(True, predicted, FUSION_PARTITION, fused_mats, eig_part)
