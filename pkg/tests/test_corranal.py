import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dendrohaar import ContingencyTable, DataMatrix, chi2_distance, correspondence_analysis, double
from dendrohaar.corranal import doubled_shape
from dendrohaar.errors import DegenerateTable, InputError, ZeroMassRow
from oracles import chi2_sq_by_hand


def _pairwise(x):
    return np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(-1))


def test_chi2_diagonal_table():
    t = ContingencyTable([[2, 0], [0, 2]])
    assert chi2_distance(t, 0, 1) ** 2 == pytest.approx(4.0)


def test_chi2_identical_and_proportional_rows():
    t = ContingencyTable([[1, 2, 3], [1, 2, 3], [3, 6, 9], [4, 1, 1]])
    assert chi2_distance(t, 0, 1) == 0
    assert chi2_distance(t, 0, 2) == pytest.approx(0, abs=1e-15)
    assert chi2_distance(t, 0, 3) > 0


def test_chi2_matches_hand_formula():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 20, size=(6, 5)) + 1
    t = ContingencyTable(x)
    for i in range(6):
        for j in range(6):
            assert chi2_distance(t, i, j) ** 2 == pytest.approx(chi2_sq_by_hand(x, i, j), rel=1e-12, abs=1e-15)


def test_table_validation():
    with pytest.raises(InputError):
        ContingencyTable([[1, -1]])
    with pytest.raises(ZeroMassRow):
        ContingencyTable([[1, 2], [0, 0]])
    with pytest.raises(ZeroMassRow):
        ContingencyTable([[0, 0]])
    t = ContingencyTable([[1, 0, 2], [3, 0, 1]], col_labels=("a", "b", "c"))
    assert t.values.shape == (2, 2) and t.col_labels == ("a", "c")
    np.testing.assert_allclose(t.row_masses.sum(), 1.0)
    np.testing.assert_allclose(t.profiles().sum(axis=1), 1.0)


def test_ca_distances_random_10x6():
    rng = np.random.default_rng(10)
    x = rng.random((10, 6)) + 0.01
    t = ContingencyTable(x)
    emb = correspondence_analysis(t)
    d = _pairwise(emb.rows)
    ref = np.array([[chi2_distance(t, i, j) for j in range(10)] for i in range(10)])
    np.testing.assert_allclose(d, ref, rtol=1e-8, atol=1e-12)
    assert emb.k == 5
    assert np.all(np.diff(emb.eigenvalues) <= 0)


tables = st.tuples(st.integers(2, 12), st.integers(2, 12), st.integers(0, 2**32 - 1))


@settings(max_examples=50, deadline=None)
@given(tables)
def test_ca_properties(case):
    n, m, seed = case
    rng = np.random.default_rng(seed)
    x = rng.random((n, m)) + 1e-3
    t = ContingencyTable(x)
    emb = correspondence_analysis(t)
    assert emb.k <= min(n, m) - 1
    # scale invariance of the whole embedding
    emb2 = correspondence_analysis(ContingencyTable(7.5 * x))
    np.testing.assert_allclose(emb2.eigenvalues, emb.eigenvalues, rtol=1e-9)
    np.testing.assert_allclose(_pairwise(emb2.rows), _pairwise(emb.rows), rtol=1e-8, atol=1e-12)
    # sign convention: the largest-magnitude coordinate of every factor is positive
    for j in range(emb.k):
        assert emb.rows[np.argmax(np.abs(emb.rows[:, j])), j] > 0
    # centroid of the rows, weighted by mass, is the origin
    np.testing.assert_allclose(t.row_masses @ emb.rows, 0, atol=1e-10)


def test_ca_degenerate():
    x = np.array([[1, 2, 3], [2, 4, 6], [1, 2, 3]])
    with pytest.raises(DegenerateTable):
        correspondence_analysis(x)
    emb = correspondence_analysis(x, allow_empty=True)
    assert emb.k == 0 and emb.rows.shape == (3, 0)


def test_double_single_cell():
    assert doubled_shape([[5]]) == ((1, 2), (1, 1))
    out = double(DataMatrix([[5.0], [2.0]], col_labels=("w",)))
    np.testing.assert_array_equal(out.values, [[5, 0], [2, 3]])
    assert out.col_labels == ("w", "w'")


def test_double_equal_masses():
    rng = np.random.default_rng(3)
    x = rng.integers(0, 10, size=(5, 7))
    for mode in ("column-max", "table-max"):
        d = double(x, mode).values
        totals = d.sum(axis=1)
        np.testing.assert_allclose(totals, totals[0])
    with pytest.raises(InputError):
        double(x, "row-max")


def _segment_table(seed=0):
    """8 terms by 24 segments, one segment with no occurrences."""
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 12, size=(8, 24))
    x[:, 5] = 0
    return x


def test_doubled_8x24_shapes():
    x = _segment_table()
    assert doubled_shape(x) == ((8, 48), (8, 46))
    emb = correspondence_analysis(double(x))
    assert emb.k == 7


def test_embedding_serialization():
    emb = correspondence_analysis(ContingencyTable([[5, 1, 2], [1, 4, 1], [2, 2, 6]], row_labels=("a", "b", "c")))
    data = json.loads(emb.to_json())
    assert len(data["eigenvalues"]) == emb.k == 2
    lines = emb.to_csv().splitlines()
    assert lines[0].startswith("eigenvalue,")
    assert lines[1] == ",F1,F2"
    assert [ln.split(",")[0] for ln in lines[2:]] == ["a", "b", "c"]
    mat = emb.as_matrix()
    assert mat.col_labels == ("F1", "F2")
