import pytest

from sgdd.classical import hadamard_matrix, paley_conference_matrix
from sgdd.gf import gf_make
from sgdd.latin import linked_mols_from_gf2n, search_linked_mols
from sgdd.linked import (
    bgw_generate,
    build_tilde_l,
    bush_search,
    conference_to_gdd,
    gcm_to_gdd,
)
from sgdd.resolvable import aux_from_affine_geometry, aux_from_hadamard
from sgdd.schemes import assemble_scheme


@pytest.fixture(scope="session")
def gf4():
    return gf_make(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return gf_make(5, 1)


@pytest.fixture(scope="session")
def aux_had4():
    return aux_from_hadamard(hadamard_matrix(4))


@pytest.fixture(scope="session")
def aux_ag23():
    return aux_from_affine_geometry(3, 1)


@pytest.fixture(scope="session")
def fam_gf4(gf4):
    return linked_mols_from_gf2n(gf4)


@pytest.fixture(scope="session")
def fam_order5():
    fam = search_linked_mols(5, 3)
    assert fam is not None, "order-5 linked family not found (reportable oracle outcome)"
    return fam


@pytest.fixture(scope="session")
def sys16(aux_had4, fam_gf4):
    return build_tilde_l(aux_had4, fam_gf4)


@pytest.fixture(scope="session")
def sys45(aux_ag23, fam_order5):
    return build_tilde_l(aux_ag23, fam_order5)


@pytest.fixture(scope="session")
def scheme48(sys16):
    return assemble_scheme(sys16)


@pytest.fixture(scope="session")
def scheme135(sys45):
    return assemble_scheme(sys45)


@pytest.fixture(scope="session")
def conference12():
    return conference_to_gdd(paley_conference_matrix(6))


@pytest.fixture(scope="session")
def bgw5():
    return bgw_generate(5)


@pytest.fixture(scope="session")
def gcm24(bgw5):
    return gcm_to_gdd(bgw5)


@pytest.fixture(scope="session")
def bush_pair():
    pair = bush_search(2, 2)
    assert pair is not None
    return pair
