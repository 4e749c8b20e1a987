import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from fuzzyproc.errors import ScenarioError
from fuzzyproc.matrixio import format_matrix, matrix_from_csv, parse_matrix, read_matrix, write_matrix
from fuzzyproc.neutro import I, SAMPLE_RELATION, NeutroMatrix, NeutroValue
from fuzzyproc.runner import run, emit_csv
from fuzzyproc.scenario import bundled_scenarios, load_scenario


def test_parse_scalar_and_neutro():
    M = parse_matrix("2 2\n0.1 0.2  # first\n\n0.3 0.4\n")
    assert isinstance(M, np.ndarray) and M.tolist() == [[0.1, 0.2], [0.3, 0.4]]
    N = parse_matrix("1 3\n0 I 0.4I")
    assert isinstance(N, NeutroMatrix)
    assert N[0, 1] == I and N[0, 2] == NeutroValue.ind(0.4)


@pytest.mark.parametrize(
    "text",
    ["", "2\n1 2", "2 2\n0.1 0.2", "1 2\n0.1 0.2 0.3", "2 1\n0.1\n0.2 0.3", "1 1\nfoo"],
)
def test_parse_errors(text):
    with pytest.raises(ScenarioError):
        parse_matrix(text)


@given(arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(1, 4)), elements=st.floats(0, 1)))
def test_text_round_trip(M):
    back = parse_matrix(format_matrix(M))
    assert np.allclose(back, M, rtol=1e-11, atol=1e-12)


def test_file_round_trip_with_indeterminates(tmp_path):
    path = tmp_path / "r.txt"
    write_matrix(SAMPLE_RELATION, path)
    assert read_matrix(path) == SAMPLE_RELATION


def test_csv_round_trip_of_reports(tmp_path):
    for name, table in [("nre", "relation"), ("nre", "closure"), ("flowsheet", "network_weights")]:
        path = next(p for p in bundled_scenarios() if p.stem == name)
        rep = run(load_scenario(path))
        emit_csv(rep, tmp_path)
        loaded = matrix_from_csv(tmp_path / f"{rep.scenario_id}.{table}.csv")
        rows = [r[1:] for r in rep.table(table).rows]
        if isinstance(loaded, NeutroMatrix):
            assert loaded == NeutroMatrix([[NeutroValue.of(v) if not isinstance(v, str) else NeutroValue.parse(v) for v in r] for r in rows])
        else:
            assert np.allclose(loaded, np.array(rows, dtype=float), atol=5e-7)
