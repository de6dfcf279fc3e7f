import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklab.errors import NonSquare, NotRealSpectrum, RankAmbiguous, ShapeMismatch
from hklab.linalg import (
    JordanType,
    SpectralData,
    Tolerances,
    charpoly_drift,
    eig_real_check,
    jordan_matrix,
    jordan_type,
    matrix_from_json,
    matrix_to_json,
    random_orthogonal,
    rank_tol,
)
from hklab.ks import partitions


def similar(J, seed, cond=10.0):
    rng = np.random.default_rng(seed)
    n = J.shape[0]
    U = random_orthogonal(n, rng.integers(2**31))
    V = random_orthogonal(n, rng.integers(2**31))
    s = np.geomspace(1.0, cond, n)
    P = (U * s) @ V
    return P @ J @ np.linalg.inv(P)


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert (t.rank_rel, t.eig_real, t.residual) == (1e-9, 1e-8, 1e-10)

    @pytest.mark.parametrize("field", ["rank_rel", "eig_real", "cluster", "residual"])
    def test_rejects_nonpositive(self, field):
        with pytest.raises(ValueError):
            Tolerances(**{field: 0.0})

    def test_rank_rel_below_one(self):
        with pytest.raises(ValueError):
            Tolerances(rank_rel=1.0)

    def test_json_round_trip(self):
        t = Tolerances(residual=1e-12)
        assert Tolerances.from_json(t.to_json()) == t


class TestEigRealCheck:
    def test_diagonal(self):
        sd = eig_real_check(np.diag([1.0, 2.0, 2.0]))
        assert sd.values == (1.0, 2.0) and sd.multiplicities == (1, 2)

    def test_nilpotent(self):
        sd = eig_real_check([[0, 1], [0, 0]])
        assert sd.values == (0.0,) and sd.multiplicities == (2,)

    def test_rotation_rejected(self):
        with pytest.raises(NotRealSpectrum):
            eig_real_check([[0, 1], [-1, 0]])

    def test_non_square(self):
        with pytest.raises(NonSquare):
            eig_real_check(np.zeros((2, 3)))

    def test_jordan_block_splitting_is_clustered(self):
        # a size-4 block splits its eigenvalue by about eps**(1/4)
        M = similar(jordan_matrix(JordanType({1.5: (4,)})), 3)
        sd = eig_real_check(M)
        assert sd.multiplicities == (4,)
        assert abs(sd.values[0] - 1.5) < 1e-3

    def test_transpose_and_conjugate(self):
        M = similar(np.diag([-1.0, 0.0, 2.0]), 5).astype(complex)
        a = eig_real_check(M)
        assert eig_real_check(M.T).multiplicities == a.multiplicities
        assert np.allclose(eig_real_check(M.conj()).values, a.values)

    def test_spectral_data_invariants(self):
        with pytest.raises(ValueError):
            SpectralData((2.0, 1.0), (1, 1))
        with pytest.raises(ValueError):
            SpectralData((1.0,), (0,))
        sd = SpectralData((1.0, 2.0), (1, 2))
        assert list(sd.expanded()) == [2.0, 2.0, 1.0]
        assert list(sd.expanded("increasing")) == [1.0, 2.0, 2.0]


class TestJordanType:
    def test_nilpotent_block(self):
        assert jordan_type([[0, 1], [0, 0]]).blocks == {0.0: (2,)}

    def test_zero(self):
        assert jordan_type(np.zeros((3, 3))).blocks == {0.0: (1, 1, 1)}

    def test_similarity_recovers_21(self):
        J = jordan_matrix(JordanType({1.0: (2, 1)}))
        jt = jordan_type(similar(J, 11))
        assert list(jt.blocks) == pytest.approx([1.0], abs=1e-6)
        assert jt.partitions() == ((2, 1),)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_all_nilpotent_partitions(self, n):
        for i, lam in enumerate(partitions(n)):
            J = jordan_matrix(JordanType({0.0: lam}))
            assert jordan_type(similar(J, 100 * n + i, cond=1e3)).blocks == {0.0: lam}

    def test_symmetric_nilpotent(self):
        assert jordan_type([[1, 1j], [1j, -1]]).blocks == {0.0: (2,)}

    def test_ambiguous_rank_raises(self):
        # coupling at the rank cutoff relative to the unit-size block
        M = np.diag([1.0, 0.0, 0.0])
        M[1, 2] = 1e-9
        with pytest.raises(RankAmbiguous):
            jordan_type(M)

    def test_rank_is_scale_relative(self):
        assert jordan_type([[0.0, 1e-9], [0.0, 0.0]]).blocks == {0.0: (2,)}

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            JordanType({0.0: (1, 2)})

    def test_json_round_trip(self):
        jt = JordanType({-1.0: (2,), 3.0: (1, 1)})
        assert JordanType.from_json(jt.to_json()).blocks == jt.blocks
        assert jt.n == 4

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 2**31 - 1))
    def test_similarity_invariance(self, n, seed):
        rng = np.random.default_rng(seed)
        parts = partitions(n)
        jt = JordanType({float(rng.integers(-3, 4)): parts[rng.integers(len(parts))]})
        M = similar(jordan_matrix(jt), seed)
        assert jordan_type(M).matches(jt)


class TestRankAndOrthogonal:
    def test_rank_examples(self):
        u = np.array([1.0, 2.0, -1.0])
        assert rank_tol(np.zeros((3, 3))) == 0
        assert rank_tol(np.eye(4)) == 4
        assert rank_tol(np.outer(u, u)) == 1

    def test_orthogonal(self):
        assert abs(abs(random_orthogonal(1, 0)[0, 0]) - 1) < 1e-15
        Q = random_orthogonal(5, 42)
        assert np.linalg.norm(Q.T @ Q - np.eye(5)) <= 1e-12
        assert np.array_equal(Q, random_orthogonal(5, 42))


class TestCharpolyAndJson:
    def test_drift_zero_under_similarity(self):
        M = np.diag([1.0, -2.0, 0.5])
        assert charpoly_drift(similar(M, 1), M) < 1e-12

    def test_matrix_json(self):
        A = np.array([[1.0, 2.0], [3.0, 4.0]])
        obj = matrix_to_json(A)
        assert obj == {"rows": 2, "cols": 2, "data": [1.0, 2.0, 3.0, 4.0]}
        B = np.array([[1 + 2j, 0], [0, -1j]])
        assert np.array_equal(matrix_from_json(matrix_to_json(B)), B)

    @pytest.mark.parametrize("obj", [
        {"rows": 2, "cols": 2, "data": [1.0]},
        {"rows": 1, "cols": 1, "data": [float("nan")]},
        {"rows": 1, "cols": 1, "data": [[1.0, 2.0, 3.0]]},
        {"cols": 1, "data": [1.0]},
    ])
    def test_matrix_json_rejects(self, obj):
        with pytest.raises(ShapeMismatch):
            matrix_from_json(obj)
