import numpy as np
import pytest
from pydantic import ValidationError

from src.core.gram import GramMatrix, check_gram_ids, is_psd, min_eigenvalue, normalize_gram, read_gram, write_gram
from src.exceptions import ConfigurationError, GramFormatError, InputError


def _k3_pair_gram() -> GramMatrix:
    """Gram matrix of {K3, K3} under the CSI kernel with its per-size stack."""
    return GramMatrix(
        ids=["a", "b"],
        values=np.full((2, 2), 33.0),
        per_size=np.stack([np.full((2, 2), v) for v in (9.0, 18.0, 6.0)]),
        size_weights=[1.0, 1.0, 1.0],
    )


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(4)) == pytest.approx(1.0, abs=1e-12)
    assert min_eigenvalue(np.ones((2, 2))) == pytest.approx(0.0, abs=1e-12)
    assert min_eigenvalue(np.diag([3.0, -1.0])) == pytest.approx(-1.0, abs=1e-12)


def test_min_eigenvalue_symmetrizes():
    assert min_eigenvalue([[1.0, 2.0], [0.0, 1.0]]) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("matrix", [np.ones((2, 3)), np.ones(3), np.zeros((0, 0))])
def test_min_eigenvalue_rejects_non_square(matrix):
    with pytest.raises(InputError):
        min_eigenvalue(matrix)


def test_is_psd_tolerance_is_relative():
    M = np.diag([1e6, -1e-3])
    assert is_psd(M, tol=1e-8)
    assert not is_psd(np.diag([1.0, -1e-3]), tol=1e-8)
    assert is_psd(np.zeros((2, 2)))


def test_gram_matrix_shape_validation():
    with pytest.raises(ValidationError):
        GramMatrix(ids=["a"], values=np.ones((2, 2)))
    with pytest.raises(ValidationError):
        GramMatrix(ids=["a", "b"], values=np.ones((2, 2)), per_size=np.ones((2, 3, 3)))
    with pytest.raises(ValidationError):
        GramMatrix(ids=["a", "b"], values=np.ones((2, 2)), per_size=np.ones((3, 2, 2)), size_weights=[1.0])


def test_normalize_none_returns_input():
    M = _k3_pair_gram()
    assert normalize_gram(M, "none") is M


def test_cosine_normalization():
    M = GramMatrix(ids=["a", "b", "c"], values=[[4.0, 2.0, 0.0], [2.0, 9.0, 0.0], [0.0, 0.0, 0.0]])
    N = normalize_gram(M, "cosine")
    assert N.values[0, 0] == 1.0 and N.values[1, 1] == 1.0
    assert N.values[0, 1] == pytest.approx(2.0 / 6.0)
    # zero self-similarity normalizes to 0, not nan
    assert N.values[2, 2] == 0.0
    assert not np.isnan(N.values).any()


def test_per_size_normalization_of_k3_pair():
    N = normalize_gram(_k3_pair_gram(), "per-size")
    assert np.array_equal(N.values, np.full((2, 2), 3.0))


def test_per_size_normalization_applies_size_weights():
    M = _k3_pair_gram().model_copy(update={"size_weights": [0.0, 2.0, 1.0]})
    N = normalize_gram(M, "per-size")
    assert np.array_equal(N.values, np.full((2, 2), 3.0))


def test_per_size_requires_stack():
    M = GramMatrix(ids=["a"], values=[[1.0]])
    with pytest.raises(ConfigurationError):
        normalize_gram(M, "per-size")


def test_unknown_normalization_mode():
    with pytest.raises(ValueError):
        normalize_gram(_k3_pair_gram(), "l2")


def test_cosine_keeps_random_gram_psd():
    rng = np.random.default_rng(5)
    for _ in range(20):
        X = rng.random((8, 4))
        M = GramMatrix(ids=[str(i) for i in range(8)], values=X @ X.T)
        assert is_psd(M)
        assert is_psd(normalize_gram(M, "cosine"))


def test_write_and_read_gram(tmp_path):
    rng = np.random.default_rng(6)
    X = rng.random((3, 3))
    M = GramMatrix(ids=["m1", "m2", "m3"], values=X @ X.T / 3.0)
    path = tmp_path / "gram.csv"
    write_gram(M, path)

    lines = path.read_text().splitlines()
    assert lines[0] == "# ids: m1,m2,m3"
    assert len(lines) == 4

    back = read_gram(path)
    assert back.ids == M.ids
    assert np.array_equal(back.values, M.values)


def test_write_rejects_ids_with_commas(tmp_path):
    M = GramMatrix(ids=["a,b"], values=[[1.0]])
    with pytest.raises(GramFormatError):
        write_gram(M, tmp_path / "gram.csv")


@pytest.mark.parametrize("text", [
    "1,2\n3,4\n",
    "# ids: a,b\n1,2\n",
    "# ids: a,b\n1,2\n3\n",
    "# ids: a,b\n1,2\n3,x\n",
    "# ids: a\n1\n2\n",
])
def test_read_gram_format_errors(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(GramFormatError):
        read_gram(path)


def test_read_gram_missing_file(tmp_path):
    with pytest.raises(InputError):
        read_gram(tmp_path / "nope.csv")


def test_read_gram_reports_file_line_numbers_past_blank_lines(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("\n# ids: a,b\n\n1,2\n\n2,x\n")
    with pytest.raises(GramFormatError, match=r"bad\.csv:6:"):
        read_gram(path)


def test_read_gram_skips_blank_lines(tmp_path):
    path = tmp_path / "gram.csv"
    path.write_text("# ids: a,b\n\n1,2\n2,1\n\n")
    assert read_gram(path).values.tolist() == [[1.0, 2.0], [2.0, 1.0]]


@pytest.mark.parametrize("ids", [["a,b"], [" a"], [""]])
def test_check_gram_ids_rejects_unwritable_ids(ids):
    with pytest.raises(GramFormatError):
        check_gram_ids(ids)
