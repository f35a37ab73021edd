import numpy as np
import pytest

from src.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION, build_parser, main
from src.core.gram import GramMatrix, read_gram, write_gram


def test_01_compute_and_check_psd(dataset_path, tmp_path, capsys):
    """
    Test 1: compute a CSI Gram matrix and check it for PSD.
    """
    print("\n--- Test 1: compute + check-psd ---")
    out = tmp_path / "gram.csv"
    code = main(["compute", "--dataset", str(dataset_path), "--kernel", "csi", "--max-size", "3",
                 "--weights", "uniform", "--normalize", "none", "--out", str(out)])
    assert code == EXIT_OK

    gram = read_gram(out)
    assert gram.ids == ["k3_a", "k3_b", "p2", "path3"]
    assert gram.values[0, 1] == 33.0

    assert main(["check-psd", "--gram", str(out)]) == EXIT_OK
    assert "PSD: yes" in capsys.readouterr().out


def test_compute_with_attributed_kernels(dataset_path, tmp_path):
    out = tmp_path / "gram.csv"
    code = main(["compute", "--dataset", str(dataset_path), "--kernel", "csm", "--max-size", "2",
                 "--vertex-kernel", "product(dirac,brownian:c=3)", "--edge-kernel", "triangular:c=0.5",
                 "--d-weight", "0.5", "--weights", "1,0.5", "--normalize", "cosine", "--out", str(out)])
    assert code == EXIT_OK
    assert np.diag(read_gram(out).values) == pytest.approx(np.ones(4))


def test_compute_threads_do_not_change_output(dataset_path, tmp_path):
    outputs = []
    for threads in ("1", "3"):
        out = tmp_path / f"gram{threads}.csv"
        assert main(["compute", "--dataset", str(dataset_path), "--kernel", "subgraph", "--normalize", "per-size",
                     "--threads", threads, "--out", str(out)]) == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_pharmacophore_on_points(points_path, tmp_path):
    out = tmp_path / "gram.csv"
    assert main(["compute", "--dataset", str(points_path), "--kernel", "pharmacophore",
                 "--edge-kernel", "triangular:c=0.25", "--out", str(out)]) == EXIT_OK
    assert read_gram(out).values[0, 1] == pytest.approx(36.0)


def test_check_psd_violation(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    write_gram(GramMatrix(ids=["a", "b"], values=[[1.0, 2.0], [2.0, 1.0]]), path)
    assert main(["check-psd", "--gram", str(path)]) == EXIT_VIOLATION
    assert "PSD: NO" in capsys.readouterr().out


@pytest.mark.parametrize("extra", [
    ["--kernel", "csi", "--max-size", "0"],
    ["--kernel", "csi", "--weights", "1,2"],
    ["--kernel", "sm", "--vertex-kernel", "gauss"],
    ["--kernel", "sm", "--edge-kernel", "triangular:c=-1"],
    ["--kernel", "csi", "--normalize", "per-size", "--weights", "a,b,c"],
])
def test_configuration_errors_exit_2(dataset_path, tmp_path, extra, capsys):
    code = main(["compute", "--dataset", str(dataset_path), "--out", str(tmp_path / "g.csv"), *extra])
    assert code == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_input_errors_exit_2(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["compute", "--dataset", str(empty), "--kernel", "csi", "--out", str(tmp_path / "g.csv")]) == EXIT_INPUT_ERROR
    assert main(["compute", "--dataset", str(tmp_path / "missing.txt"), "--kernel", "csi",
                 "--out", str(tmp_path / "g.csv")]) == EXIT_INPUT_ERROR

    broken = tmp_path / "broken.txt"
    broken.write_text("graph a\nv 0 C\ne 0 5 s\nend\n")
    assert main(["compute", "--dataset", str(broken), "--kernel", "csi", "--out", str(tmp_path / "g.csv")]) == EXIT_INPUT_ERROR

    bad_gram = tmp_path / "bad.csv"
    bad_gram.write_text("# ids: a,b\n1,2\n")
    assert main(["check-psd", "--gram", str(bad_gram)]) == EXIT_INPUT_ERROR


def test_pharmacophore_on_non_complete_graphs_exit_2(dataset_path, tmp_path):
    assert main(["compute", "--dataset", str(dataset_path), "--kernel", "pharmacophore",
                 "--out", str(tmp_path / "g.csv")]) == EXIT_INPUT_ERROR


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["compute", "--kernel", "nope"])
    assert excinfo.value.code == 2


def test_oracle_is_hidden_from_help():
    assert "oracle" not in build_parser().format_help()


def test_oracle_agrees_and_dumps_product_graph(dataset_path, tmp_path, capsys):
    dump = tmp_path / "wpg.txt"
    code = main(["oracle", "--dataset", str(dataset_path), "--kernel", "csm", "--g1", "k3_a", "--g2", "p2",
                 "--dump-wpg", str(dump)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "engine:" in out and "oracle:" in out
    lines = dump.read_text().splitlines()
    assert lines and all(line.split()[3] in ("C", "D") for line in lines)


def test_oracle_subgraph_kernel(dataset_path):
    assert main(["oracle", "--dataset", str(dataset_path), "--kernel", "subgraph", "--g1", "k3_a", "--g2", "k3_b"]) == EXIT_OK


def test_oracle_unknown_graph_id(dataset_path):
    assert main(["oracle", "--dataset", str(dataset_path), "--kernel", "csi", "--g1", "nope"]) == EXIT_INPUT_ERROR


def test_unwritable_ids_fail_before_computing(tmp_path, monkeypatch, capsys):
    dataset = tmp_path / "commas.txt"
    dataset.write_text("graph a,b\nv 0 C\nend\n")

    def fail(*args, **kwargs):
        raise AssertionError("compute_gram should not run")

    monkeypatch.setattr("src.cli.compute_gram", fail)
    code = main(["compute", "--dataset", str(dataset), "--kernel", "csi", "--out", str(tmp_path / "g.csv")])
    assert code == EXIT_INPUT_ERROR
    assert "a,b" in capsys.readouterr().err
    assert not (tmp_path / "g.csv").exists()
