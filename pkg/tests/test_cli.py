import json

import pytest

from padic_amoeba.amoeba2d import AmoebaGraph, assemble_amoeba
from padic_amoeba.cli import EXIT_DEGENERATE, EXIT_OK, EXIT_PARSE, JobSpec, main, run
from padic_amoeba.instances import TRINOMIAL_KERNEL, TRINOMIAL_SUPPORT
from padic_amoeba.linalg import format_matrix, matrix_to_json, parse_matrix


@pytest.fixture
def b_file(tmp_path):
    path = tmp_path / "B.txt"
    path.write_text(format_matrix(TRINOMIAL_KERNEL))
    return path


@pytest.fixture
def a_file(tmp_path):
    path = tmp_path / "A.json"
    path.write_text(json.dumps(matrix_to_json(TRINOMIAL_SUPPORT)))
    return path


def test_components_from_b(b_file, capsys):
    assert main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "components"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["bounded"] == 2 and rep["total"] == 8 and rep["n"] == 3


def test_components_from_a_match_b(a_file, b_file, capsys):
    main(["--matrix-a", str(a_file), "--prime", "3"])
    from_a = json.loads(capsys.readouterr().out)
    main(["--matrix-b", str(b_file), "--prime", "3"])
    assert json.loads(capsys.readouterr().out) == from_a


def test_b_wins_over_a(a_file, b_file, tmp_path, caplog):
    junk = tmp_path / "junk.txt"
    junk.write_text("1 4\n1 1 1 1\n")  # would be degenerate if it were used
    code = main(["--matrix-a", str(junk), "--matrix-b", str(b_file), "--prime", "3"])
    assert code == EXIT_OK
    assert "ignoring A" in caplog.text


def test_empty_input_is_a_parse_error(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["--matrix-b", str(empty), "--prime", "3"]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_missing_file_and_bad_prime(b_file, tmp_path):
    assert main(["--matrix-b", str(tmp_path / "nope.txt"), "--prime", "3"]) == EXIT_PARSE
    assert main(["--matrix-b", str(b_file), "--prime", "4"]) == EXIT_PARSE
    assert main(["--matrix-b", str(b_file)]) == EXIT_PARSE


def test_degenerate_support_exit_code(tmp_path, capsys):
    flat = tmp_path / "A.txt"
    flat.write_text("1 4\n1 1 1 1\n")
    assert main(["--matrix-a", str(flat), "--prime", "3"]) == EXIT_DEGENERATE
    assert "rank" in capsys.readouterr().err


def test_repeated_zero_exit_code(tmp_path, capsys):
    B = tmp_path / "B.txt"
    B.write_text("4 2\n1 1\n2 2\n-1 0\n-2 -3\n")
    assert main(["--matrix-b", str(B), "--prime", "3"]) == EXIT_DEGENERATE
    assert "share the zero" in capsys.readouterr().err


def test_amoeba_json_round_trip(b_file, tmp_path, rs_map):
    out = tmp_path / "g.json"
    assert main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "amoeba", "--out", str(out)]) == 0
    G = AmoebaGraph.from_json(out.read_text())
    assert G == assemble_amoeba(rs_map)


def test_json_output_is_byte_identical(b_file):
    spec = JobSpec(mode="amoeba", prime=3, source="B", matrix=parse_matrix(b_file.read_text()))
    assert run(spec).output == run(spec).output


def test_tree_formats(b_file, capsys):
    assert main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "tree"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "tree", "--format", "json"])
    obj = json.loads(capsys.readouterr().out)
    assert obj["digit_range"] == [-1, 2]
    assert obj["digits"]["3"] == [1, 0, 0, 0]


def test_svg_output(b_file, capsys):
    main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "amoeba", "--format", "svg"])
    assert capsys.readouterr().out.count("<line") == 9


def test_extremal_mode_searches_prime(capsys):
    assert main(["--mode", "extremal", "--extremal-k", "3"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["prime"] == 3 and obj["report"]["total"] >= 13
    assert obj["A"]["rows"] == 5 and obj["B"]["cols"] == 2


def test_extremal_mode_with_fixed_prime(capsys):
    assert main(["--mode", "extremal", "--extremal-k", "3", "--prime", "2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["prime"] == 2 and obj["searched"] is None and obj["report"]["total"] == 12


def test_extremal_mode_needs_k():
    assert main(["--mode", "extremal"]) == EXIT_PARSE


def test_oracle_check(b_file, capsys):
    code = main(["--matrix-b", str(b_file), "--prime", "3", "--mode", "oracle-check",
                 "--samples", "100", "--seed", "7"])
    obj = json.loads(capsys.readouterr().out)
    assert code == 0 and obj["ok"] and obj["exact_total"] == obj["grid_total"] == 8


def test_wrong_kernel_width_is_degenerate(tmp_path):
    B = tmp_path / "B3.txt"
    B.write_text("4 3\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n")
    assert main(["--matrix-b", str(B), "--prime", "3"]) == EXIT_DEGENERATE
