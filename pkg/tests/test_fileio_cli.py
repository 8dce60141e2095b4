import io
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from sgdd import fileio
from sgdd.algebra import IntMatrix
from sgdd.cli import main
from sgdd.errors import FormatError


def run_cli(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_matrix_roundtrip_bit_identical():
    m = IntMatrix([[1, -2, 3], [0, 5, -6]])
    text = fileio.format_matrix(m)
    assert text == "2 3\n1 -2 3\n0 5 -6\n"
    again = fileio.parse_matrix(text)
    assert again == m
    assert fileio.format_matrix(again) == text


def test_matrix_rejects_trailing_junk():
    with pytest.raises(FormatError):
        fileio.parse_matrix("1 1\n5\nextra\n")
    with pytest.raises(FormatError):
        fileio.parse_matrix("2 2\n1 2\n3\n")


def test_params_roundtrip(conference12):
    _, params = conference12
    text = fileio.format_gdd_params(params)
    assert fileio.parse_gdd_params(text) == params
    assert fileio.parse_inline_gdd_params("12 5 6 2 0 2") == params


def test_aux_roundtrip(aux_had4):
    text = fileio.format_auxiliary_set(aux_had4)
    again = fileio.parse_auxiliary_set(text)
    assert fileio.format_auxiliary_set(again) == text


def test_family_roundtrip(fam_gf4):
    text = fileio.format_linked_family(fam_gf4)
    again = fileio.parse_linked_family(text)
    assert fileio.format_linked_family(again) == text
    assert again.squares == fam_gf4.squares


def test_linked_system_roundtrip(sys16):
    text = fileio.format_linked_system(sys16)
    again = fileio.parse_linked_system(text)
    assert fileio.format_linked_system(again) == text
    assert again.params == sys16.params


def test_scheme_roundtrip(scheme48):
    text = fileio.format_scheme_matrices(scheme48.matrices)
    mats = fileio.parse_scheme_matrices(text)
    assert fileio.format_scheme_matrices(mats) == text


def test_gcm_roundtrip(bgw5):
    text = fileio.format_gcm(bgw5)
    again = fileio.parse_gcm(text)
    assert fileio.format_gcm(again) == text


def test_mols_list_roundtrip(gf4):
    from sgdd.latin import mols_from_gf

    squares = mols_from_gf(gf4)
    text = fileio.format_mols_list(squares)
    again = fileio.parse_mols_list(text)
    assert again == squares
    assert fileio.format_mols_list(again) == text


def test_cli_mols_construct(tmp_path: Path):
    out = tmp_path / "gf5.mols"
    assert run_cli("construct", "mols", "--q", "5", "-o", str(out))[0] == 0
    squares = fileio.parse_mols_list(out.read_text())
    assert len(squares) == 4


def test_cli_pipeline_16(tmp_path: Path):
    aux = tmp_path / "had4.aux"
    fam = tmp_path / "gf4.fam"
    lsys = tmp_path / "sys16.lsys"
    scm = tmp_path / "scheme.scm"
    back = tmp_path / "back.lsys"
    assert run_cli("construct", "hadamard-aux", "--order", "4", "-o", str(aux))[0] == 0
    assert run_cli("construct", "linked-mols", "--q", "4", "-o", str(fam))[0] == 0
    assert run_cli("construct", "tilde-l", "--aux", str(aux), "--mols", str(fam), "-o", str(lsys))[0] == 0
    assert run_cli("verify", "linked-system", str(lsys))[0] == 0
    assert run_cli("scheme", "assemble", "--in", str(lsys), "-o", str(scm))[0] == 0
    code, out = run_cli("scheme", "analyze", "--in", str(scm))
    assert code == 0 and "k=6 m=4 n=4 f=3" in out
    assert run_cli("scheme", "extract", "--in", str(scm), "-o", str(back))[0] == 0
    assert back.read_text() == lsys.read_text()
    code, out = run_cli("scheme", "fusion", "--in", str(scm))
    assert code == 0 and "fusable: True" in out


def test_cli_detects_corruption(tmp_path: Path):
    mat = tmp_path / "gdd.mat"
    run_cli("construct", "conference-gdd", "--order", "6", "-o", str(mat), "--params-out", str(tmp_path / "p"))
    lines = mat.read_text().splitlines()
    row = lines[1].split()
    row[0] = "1" if row[0] == "0" else "0"
    lines[1] = " ".join(row)
    bad = tmp_path / "bad.mat"
    bad.write_text("\n".join(lines) + "\n")
    code, out = run_cli("verify", "gdd", str(bad), "--params", "12 5 6 2 0 2")
    assert code == 1
    assert "at (" in out  # first violating coordinate reported


def test_cli_usage_errors(tmp_path: Path):
    code, _ = run_cli("verify", "gdd", str(tmp_path / "missing.mat"), "--params", "12 5 6 2 0 2")
    assert code == 2
    code, _ = run_cli("scan", "nonsense")
    assert code == 2


def test_cli_scan_golden(tmp_path: Path):
    out = tmp_path / "t1.csv"
    assert run_cli("scan", "table1", "--vmax", "1000", "-o", str(out))[0] == 0
    golden = Path(__file__).parent / "golden" / "table1.csv"
    assert out.read_text() == golden.read_text()


def test_cli_oracle_and_mub(tmp_path: Path):
    hset = tmp_path / "bush.hset"
    assert run_cli("oracle", "bush", "--n", "2", "--f", "2", "-o", str(hset))[0] == 0
    lsys = tmp_path / "mub.lsys"
    assert run_cli("construct", "mub-system", "--in", str(hset), "-o", str(lsys))[0] == 0
    assert lsys.read_text().startswith("3 16 4 4 6 2 2 3 1 3")


def test_cli_twin_and_bgw(tmp_path: Path):
    prefix = tmp_path / "twin"
    assert run_cli("construct", "twin", "--order", "4", "-o", str(prefix), "--params-out", str(tmp_path / "tp"))[0] == 0
    assert (tmp_path / "twin.plus.mat").exists() and (tmp_path / "twin.minus.mat").exists()
    gcm = tmp_path / "bgw.gcm"
    assert run_cli("construct", "bgw", "--q", "5", "-o", str(gcm))[0] == 0
    mat = tmp_path / "gdd24.mat"
    assert run_cli("construct", "gcm-gdd", "--in", str(gcm), "-o", str(mat), "--params-out", str(tmp_path / "p24"))[0] == 0
    assert run_cli("verify", "gdd", str(mat), "--params-file", str(tmp_path / "p24"))[0] == 0


def test_cli_latin_verify(tmp_path: Path):
    fam = tmp_path / "fam.fam"
    run_cli("construct", "linked-mols", "--q", "4", "-o", str(fam))
    assert run_cli("verify", "latin", str(fam))[0] == 0
    square = tmp_path / "sq.lat"
    square.write_text("2\n0 1\n1 0\n")
    assert run_cli("verify", "latin", str(square))[0] == 0


def test_pair_system_file_roundtrip(conference12):
    from sgdd.linked import pair_system

    mat, params = conference12
    pair = pair_system(mat, params)
    text = fileio.format_linked_system(pair)
    assert text.splitlines()[0].endswith("- - -")
    again = fileio.parse_linked_system(text)
    assert again.params == pair.params
    assert fileio.format_linked_system(again) == text


def test_cli_assembles_pair_file(tmp_path: Path, conference12):
    from sgdd.linked import pair_system

    mat, params = conference12
    pair = pair_system(mat, params)
    lsys = tmp_path / "pair.lsys"
    lsys.write_text(fileio.format_linked_system(pair))
    assert run_cli("verify", "linked-system", str(lsys))[0] == 0
    scm = tmp_path / "pair.scm"
    assert run_cli("scheme", "assemble", "--in", str(lsys), "-o", str(scm))[0] == 0
    code, out = run_cli("scheme", "analyze", "--in", str(scm))
    assert code == 0 and "f=2" in out


def test_cli_jobs_flag_does_not_change_bytes(tmp_path: Path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("--jobs", "1", "scan", "table2", "--vmax", "300", "-o", str(a))[0] == 0
    assert run_cli("--jobs", "2", "scan", "table2", "--vmax", "300", "-o", str(b))[0] == 0
    assert a.read_text() == b.read_text()


def test_cli_table1_witnesses(tmp_path: Path):
    out = tmp_path / "t1.txt"
    code = run_cli("scan", "table1", "--vmax", "100", "--format", "text", "--witnesses", "-o", str(out))[0]
    assert code == 0
    assert "achieved (block construction)" in out.read_text()


def test_cli_scheme_verify(tmp_path: Path, scheme48):
    scm = tmp_path / "s.scm"
    scm.write_text(fileio.format_scheme_matrices(scheme48.matrices))
    assert run_cli("verify", "scheme", str(scm))[0] == 0


def test_cli_oracle_exhaust_is_violation(tmp_path: Path):
    code, out = run_cli("oracle", "linked-mols", "--order", "2", "--f", "3")
    assert code == 1 and "exhausted" in out


def test_cli_linked_mols_wrong_characteristic():
    code, _ = run_cli("construct", "linked-mols", "--q", "5")
    assert code == 1


def test_cli_matrix_file_inputs(tmp_path: Path):
    from sgdd.classical import hadamard_matrix, paley_conference_matrix

    hmat = tmp_path / "h4.mat"
    hmat.write_text(fileio.format_matrix(hadamard_matrix(4)))
    aux = tmp_path / "h4.aux"
    assert run_cli("construct", "hadamard-aux", "--in", str(hmat), "-o", str(aux))[0] == 0
    cmat = tmp_path / "c6.mat"
    cmat.write_text(fileio.format_matrix(paley_conference_matrix(6)))
    out = tmp_path / "g.mat"
    assert run_cli(
        "construct", "conference-gdd", "--in", str(cmat), "-o", str(out), "--params-out", str(tmp_path / "p")
    )[0] == 0


def test_malformed_files_rejected(tmp_path: Path):
    with pytest.raises(FormatError):
        fileio.parse_matrix("0 2\n")
    with pytest.raises(FormatError):
        fileio.parse_auxiliary_set("4 2\n2 2\n1 1\n1 1\n2 2\n1 1\n1 1\n")
    bad = tmp_path / "bad.mat"
    bad.write_text("not a matrix\n")
    assert run_cli("verify", "gdd", str(bad), "--params", "4 3 2 2 2 2")[0] == 2


def test_cli_twin_with_imported_weighing_file(tmp_path: Path):
    from sgdd.classical import signed_permutation_weighing_set

    wfile = tmp_path / "w.wset"
    wfile.write_text(fileio.format_matrix_set(signed_permutation_weighing_set(4)))
    code = run_cli(
        "construct", "twin", "--order", "4", "--weighing", str(wfile),
        "-o", str(tmp_path / "tw"), "--params-out", str(tmp_path / "tp"),
    )[0]
    assert code == 0
    assert (tmp_path / "tw.plus.mat").exists()


def test_cli_pipeline_45(tmp_path: Path):
    fam = tmp_path / "order5.fam"
    aux = tmp_path / "ag23.aux"
    lsys = tmp_path / "sys45.lsys"
    scm = tmp_path / "s135.scm"
    assert run_cli("oracle", "linked-mols", "--order", "5", "--f", "3", "-o", str(fam))[0] == 0
    assert run_cli("construct", "ag-aux", "--q", "3", "--d", "1", "-o", str(aux))[0] == 0
    assert run_cli("construct", "tilde-l", "--aux", str(aux), "--mols", str(fam), "-o", str(lsys))[0] == 0
    assert lsys.read_text().startswith("3 45 5 9 12 3 3 5 2 4")
    assert run_cli("scheme", "assemble", "--in", str(lsys), "-o", str(scm))[0] == 0
    back = tmp_path / "back.lsys"
    assert run_cli("scheme", "extract", "--in", str(scm), "-o", str(back))[0] == 0
    assert back.read_text() == lsys.read_text()
