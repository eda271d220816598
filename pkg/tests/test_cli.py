import json

import pytest

from podles.cli import EXIT_CONFIG, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hh_both_engines(capsys):
    code, out, _ = run(capsys, "hh", "--n", "0", "--lambda", "q^-2")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["dims"] == {"bar": 2, "resolution": 2}
    assert d["agree"] and all(d["stable"].values())
    assert d["config"]["lambda"] == "q^-2"


def test_hh_output_is_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        assert main(["hh", "--n", "1", "--engine", "resolution", "--lambda", "q^3", "--out", str(p)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_hh_sign_flip(capsys):
    code, out, _ = run(capsys, "hh", "--n", "0", "--c", "1", "--d", "1", "--sign", "-1", "--lambda", "2",
                       "--engine", "resolution")
    assert code == EXIT_OK
    assert json.loads(out)["dims"]["resolution"] == 0


@pytest.mark.parametrize("argv", [
    ["hh", "--n", "0", "--c", "1", "--d", "-1"],
    ["hh", "--n", "0", "--sign", "-1"],
    ["hh", "--n", "7"],
    ["hh", "--n", "0", "--lambda", "0"],
    ["eval", "h", "A^^2"],
    ["verify", "--only", "nothing"],
    ["nonsense"],
])
def test_config_errors(capsys, argv):
    assert main(argv) == EXIT_CONFIG


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "h", "A")
    assert code == 0 and out.strip() == "1/(q^2 + 1)"
    _, out, _ = run(capsys, "eval", "tau", "eta")
    assert out.strip() == "-1"
    _, out, _ = run(capsys, "eval", "tau", "1 | 1 | 1")
    assert out.strip() == "0"
    _, out, _ = run(capsys, "eval", "h_A", "A")
    assert out.strip() == "1"


def test_eval_tau_needs_three_slots(capsys):
    assert main(["eval", "tau", "A | B"]) == EXIT_CONFIG


def test_beta_search(capsys):
    code, out, _ = run(capsys, "beta-search", "--N", "3")
    d = json.loads(out)
    assert code == 0 and d["found"] and d["beta"] == "-q^2/(q^4 - 1)"


def test_hc(capsys):
    code, out, _ = run(capsys, "hc", "--lambda", "q^3")
    d = json.loads(out)
    assert code == 0 and d["hc"] == [2, 0, 2, 0, 2]


def test_export_matrix_roundtrip(capsys):
    from podles import resolution as res
    from podles.algebra import PodlesAlgebra, sigma
    from podles.linalg import import_triplets, rank
    from podles.scalar import q_pow

    code, out, _ = run(capsys, "export-matrix", "--n", "1", "--lambda", "q^-2", "--N", "3")
    assert code == 0
    M = import_triplets(out)
    assert M.nrows == 4 and M.ncols == 7
    alg, sig = PodlesAlgebra((1, 0)), sigma(q_pow(-2))
    src = res.coordinate_basis(alg, 1, 3, 0)
    D, _ = res.differential_matrix(alg, sig, 1, src, res.coordinate_basis(alg, 0, 3, 0))
    assert M.cols == D.cols
    assert rank(M) == rank(D)


def test_verify_selected_checks(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "smoke", "--only", "relations,7", "--no-timing")
    d = json.loads(out)
    assert code == 0
    assert [c["key"] for c in d["checks"]] == ["relations", "modular"]
    assert "seconds" not in d["checks"][0]
