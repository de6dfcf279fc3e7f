import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hklab import serialize
from hklab.linalg import matrix_from_json, matrix_to_json


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=12))
def test_floats_replay_bitwise(xs):
    assert serialize.loads(serialize.dumps(xs)) == xs


def test_seventeen_digits():
    assert serialize.dumps(0.1) == "0.10000000000000001"
    assert serialize.dumps(2.0) == "2.0"


def test_matrix_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    path = tmp_path / "m.json"
    serialize.dump_file(matrix_to_json(A), str(path))
    assert np.array_equal(matrix_from_json(serialize.load_file(str(path))), A)


def test_numpy_scalars_and_nesting():
    obj = {"a": np.float64(1.5), "b": np.int64(3), "c": [np.bool_(True), None, "x"],
           "d": np.arange(3.0)}
    assert serialize.loads(serialize.dumps(obj)) == {"a": 1.5, "b": 3, "c": [True, None, "x"],
                                                     "d": [0.0, 1.0, 2.0]}


def test_non_finite_as_strings():
    assert serialize.loads(serialize.dumps([float("inf"), float("nan")])) == ["inf", "nan"]
