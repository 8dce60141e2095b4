from fractions import Fraction

import pytest

from sgdd.algebra import IntMatrix
from sgdd.classical import (
    hadamard_matrix,
    paley_conference_matrix,
    signed_permutation_weighing_set,
)
from sgdd.designs import GddParams, check_k_commutation, verify_gdd
from sgdd.errors import InfeasibleParameterError, ParameterError
from sgdd.gf import gf_make
from sgdd.latin import linked_mols_from_gf2n
from sgdd.linked import (
    CyclicGroup,
    GcmMatrix,
    LinkedParams,
    LinkedSystemII,
    bgw_generate,
    build_from_mub_bush,
    build_tilde_l,
    build_twin,
    bush_search,
    conference_to_gdd,
    gcm_to_gdd,
    is_bush_type,
    pair_system,
    sigma_tau_rho,
    symmetric_design_triple,
    tilde_l_block,
    twin_params,
    verify_gcm,
    verify_linked_system,
)
from sgdd.resolvable import aux_from_hadamard


def test_triple_candidates_16():
    cands = sigma_tau_rho(6, 4, 4)
    triples = {c.as_ints() for c in cands if c.integral}
    assert triples == {(3, 1, 3), (1, 3, 3)}
    assert symmetric_design_triple(4, 4) == (3, 1, 3)


def test_triple_candidates_52():
    cands = sigma_tau_rho(24, 13, 4)
    assert {c.as_ints() for c in cands} == {(13, 9, 12), (9, 13, 12)}


def test_triple_candidates_gcm_shape_flagged():
    cands = sigma_tau_rho(5, 6, 4)
    assert all(not c.integral for c in cands)
    assert all(c.rho == Fraction(5, 4) for c in cands)


def test_triple_rejects_out_of_range():
    with pytest.raises(ParameterError):
        sigma_tau_rho(30, 4, 4)  # k > (m-1)n gives a negative discriminant


def test_tilde_l_16(sys16):
    p = sys16.params
    assert (p.base.v, p.base.k, p.base.m, p.base.n) == (16, 6, 4, 4)
    assert (p.base.lambda1, p.base.lambda2) == (2, 2)
    assert (p.sigma, p.tau, p.rho) == (3, 1, 3)
    assert verify_linked_system(sys16).ok


def test_tilde_l_45(sys45):
    p = sys45.params
    assert (p.base.v, p.base.k, p.base.m, p.base.n) == (45, 12, 5, 9)
    assert (p.sigma, p.tau, p.rho) == (5, 2, 4)


def test_tilde_l_64_from_gf8():
    aux8 = aux_from_hadamard(hadamard_matrix(8))
    fam8 = linked_mols_from_gf2n(gf_make(2, 3))
    sys64 = build_tilde_l(aux8, fam8)
    p = sys64.params
    assert (p.base.v, p.base.k, p.base.lambda1) == (64, 28, 12)
    assert (p.sigma, p.tau, p.rho) == (14, 10, 14)
    assert p.f == 7


def test_single_block_is_symmetric_design(aux_had4, fam_gf4):
    mat, params = tilde_l_block(aux_had4, fam_gf4.squares[(2, 3)])
    assert params.is_symmetric_design
    assert verify_gdd(mat, params).ok


def test_verifier_catches_swapped_blocks(sys16):
    blocks = dict(sys16.blocks)
    blocks[(1, 2)], blocks[(1, 3)] = blocks[(1, 3)], blocks[(1, 2)]
    broken = LinkedSystemII(params=sys16.params, blocks=blocks)
    cert = verify_linked_system(broken)
    assert not cert.ok
    assert any("triple product" in str(v) for v in cert.violations)


def test_linked_params_identities_enforced():
    base = GddParams(16, 6, 4, 4, 2, 2)
    with pytest.raises(ParameterError):
        LinkedParams(base=base, f=3, sigma=3, tau=2, rho=3)
    with pytest.raises(ParameterError):
        LinkedParams(base=base, f=3, sigma=3, tau=1, rho=4)
    with pytest.raises(ParameterError):
        LinkedParams(base=base, f=2, sigma=3, tau=1, rho=3)


def test_conference_paley6(conference12):
    mat, params = conference12
    assert (params.v, params.k, params.m, params.n, params.lambda1, params.lambda2) == (12, 5, 6, 2, 0, 2)
    comm = check_k_commutation(mat)
    assert comm.kind == "multiple_of_J_minus_K" and comm.factor == 1


def test_conference_order2_degenerate():
    mat, params = conference_to_gdd(IntMatrix([[0, 1], [1, 0]]))
    assert (params.v, params.k, params.m, params.n, params.lambda1, params.lambda2) == (4, 1, 2, 2, 0, 0)


def test_conference_order10_via_gf9():
    mat, params = conference_to_gdd(paley_conference_matrix(10))
    assert (params.v, params.k, params.m, params.n, params.lambda1, params.lambda2) == (20, 9, 10, 2, 0, 4)


def test_non_conference_rejected():
    with pytest.raises(ParameterError):
        conference_to_gdd(IntMatrix.ones(4))


@pytest.mark.parametrize("q,g", [(3, 2), (4, 3), (5, 4)])
def test_bgw_generate(q, g):
    gcm = bgw_generate(q)
    assert gcm.order == q + 1
    assert gcm.group.order == g
    assert gcm.lam == 1
    assert verify_gcm(gcm).ok


def test_gcm_to_gdd_bgw5(gcm24):
    mat, params = gcm24
    assert (params.v, params.k, params.m, params.n, params.lambda1, params.lambda2) == (24, 5, 6, 4, 0, 1)
    comm = check_k_commutation(mat)
    assert comm.kind == "multiple_of_J_minus_K" and comm.factor == 1


def test_conference_as_c2_gcm_agrees(conference12):
    # entries of a conference matrix, read over the order-2 group
    c = paley_conference_matrix(6)
    entries = [
        [(-1 if c[i, j] == 0 else (0 if c[i, j] == 1 else 1)) for j in range(6)]
        for i in range(6)
    ]
    gcm = GcmMatrix(CyclicGroup(2), entries)
    assert verify_gcm(gcm).ok
    mat, params = gcm_to_gdd(gcm)
    assert params == conference12[1]
    assert mat.mat == conference12[0].mat


def test_gcm_violation_detected():
    entries = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    bad = GcmMatrix(CyclicGroup(2), entries)
    with pytest.raises(ParameterError):
        bad.lam  # order - 2 = 1 not divisible by 2
    gcm = bgw_generate(5)
    gcm.entries[0][1] = gcm.group.mul(gcm.entries[0][1], 1)
    assert not verify_gcm(gcm).ok


def test_twin_16():
    twin = build_twin(hadamard_matrix(4), signed_permutation_weighing_set(4))
    p = twin.params
    assert (p.v, p.k, p.m, p.n, p.lambda1, p.lambda2) == (16, 6, 4, 4, 2, 2)
    k = IntMatrix.group_blocks(4, 4)
    assert twin.plus.mat + twin.minus.mat + k == IntMatrix.ones(16)


def test_twin_112_parameters():
    p = twin_params(4, 9)
    assert (p.v, p.k, p.m, p.n, p.lambda1, p.lambda2) == (112, 54, 28, 4, 18, 26)
    with pytest.raises(InfeasibleParameterError):
        twin_params(3, 1)


def test_twin_rejects_mismatched_weighing_set():
    ws = signed_permutation_weighing_set(4)
    with pytest.raises(ParameterError):
        build_twin(hadamard_matrix(4), ws[:2])
    bad = [IntMatrix(w.a.copy()) for w in ws]
    bad[0].a[0, 1] = 0
    with pytest.raises(ParameterError):
        build_twin(hadamard_matrix(4), bad)


def test_bush_search_trivial_and_pair(bush_pair):
    single = bush_search(2, 1)
    assert single and is_bush_type(single[0])
    h1, h2 = bush_pair
    assert is_bush_type(h1) and is_bush_type(h2)


def test_bush_search_degenerate_n1():
    with pytest.raises(ParameterError):
        bush_search(1, 1)


def test_mub_system_matches_tilde_params(bush_pair, sys16):
    system = build_from_mub_bush(bush_pair)
    assert system.params == sys16.params
    assert system.f == 3


def test_mub_pair_from_single_matrix(bush_pair):
    system = build_from_mub_bush(bush_pair[:1])
    assert system.f == 2
    assert verify_linked_system(system).ok


def test_mub_rejects_biased_input(bush_pair):
    h1, _ = bush_pair
    with pytest.raises(ParameterError):
        build_from_mub_bush([h1, h1])  # H H^T = 16 I is not +-4-valued


def test_pair_system_from_conference(conference12):
    mat, params = conference12
    pair = pair_system(mat, params)
    assert verify_linked_system(pair).ok


def test_parameter_identities_on_certified_systems(sys16, sys45):
    for system in (sys16, sys45):
        p = system.params
        base = p.base
        assert (p.sigma - p.tau) ** 2 == base.k - base.lambda1
        assert (p.sigma - p.tau) * (p.rho - p.tau) + (p.sigma - p.tau + base.k) * p.tau == base.k * base.lambda2
        assert Fraction((p.rho - p.tau - base.lambda1 + base.lambda2) * base.k, base.m - 1) == (
            (p.sigma - p.tau) * (p.rho - p.tau)
        )
        assert Fraction(base.k**2, base.n * (base.m - 1)) == p.rho
        cands = {c.as_ints() for c in sigma_tau_rho(base.k, base.m, base.n) if c.integral}
        assert (p.sigma, p.tau, p.rho) in cands


def test_bush_type_of_symmetric_design_blocks(sys16):
    j = IntMatrix.ones(16)
    for blk in sys16.blocks.values():
        h = j - blk.mat.scalar_mul(2)
        assert is_bush_type(h)


def test_bush_search_deterministic(bush_pair):
    again = bush_search(2, 2)
    assert [h.entries() for h in again] == [h.entries() for h in bush_pair]


def test_search_linked_mols_deterministic(fam_order5):
    from sgdd.latin import search_linked_mols

    again = search_linked_mols(5, 3)
    assert again.squares == fam_order5.squares


def test_bush_search_finds_three_member_family():
    trio = bush_search(2, 3)
    assert trio is not None and len(trio) == 3
    system = build_from_mub_bush(trio)
    # four indices: the Krein bound f <= m is attained
    assert system.params.f == 4
    assert (system.params.sigma, system.params.tau, system.params.rho) == (3, 1, 3)
