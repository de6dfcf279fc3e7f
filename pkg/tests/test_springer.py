import numpy as np
import pytest

from hklab.errors import UnsupportedForm
from hklab.ks import partitions
from hklab.linalg import JordanType, jordan_matrix
from hklab.springer import (
    HECKE_FAMILIES,
    hecke_parameters,
    restricted_roots,
    semismall_check_gl,
    springer_fiber_dim_numeric,
)


class TestRestrictedRoots:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_split_type_A(self, n):
        rr = restricted_roots("gl_split", n)
        assert rr.is_reduced()
        assert len(rr.to_json()["roots"]) == n * (n - 1)
        assert set(rr.to_json()["multiplicities"]) == {1}

    def test_gl_split_n1_empty(self):
        assert hecke_parameters("gl_split", 1).d == ()
        assert hecke_parameters("gl_split", 1).kind == "trivial"

    def test_su_pq_non_reduced(self):
        rr = restricted_roots("su_pq", 5, 2)
        assert not rr.is_reduced()


class TestHecke:
    @pytest.mark.parametrize("family", ["gl_split", "sl_split"])
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_split_parameters(self, family, n):
        h = hecke_parameters(family, n)
        assert h.d == (1,) * (n - 1)
        assert h.kind == "Hecke algebra at q = -1"

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_complex_parameters(self, n):
        h = hecke_parameters("sl_complex", n)
        assert h.d == (2,) * (n - 1)
        assert h.kind == "group algebra C[W]"
        assert all("+ 1" in r for r in h.relations()[: n - 1])

    def test_gl3_two_generators(self):
        h = hecke_parameters("gl_split", 3)
        assert len(h.generators) == 2 and h.d == (1, 1)
        assert h.braid[0][1] == 3

    @pytest.mark.parametrize("p,n,expected", [(2, 5, (2, 3)), (2, 4, (2, 1)), (1, 3, (3,))])
    def test_su_pq(self, p, n, expected):
        assert hecke_parameters("su_pq", n, p).d == expected

    def test_unsupported(self):
        assert "so_pq" not in HECKE_FAMILIES
        with pytest.raises(UnsupportedForm):
            hecke_parameters("so_pq", 4, 2)


class TestSemismall:
    def test_n2_hand_values(self):
        rows = {tuple(r["partition"]): r for r in semismall_check_gl(2)}
        assert rows[(2,)]["fiber_dim"] == 0 and rows[(2,)]["bound"] == 0
        assert rows[(1, 1)]["fiber_dim"] == 1 and rows[(1, 1)]["bound"] == 1

    @pytest.mark.parametrize("n", range(1, 7))
    def test_inequality(self, n):
        rows = semismall_check_gl(n)
        assert len(rows) == len(partitions(n))
        assert all(r["holds"] for r in rows)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            semismall_check_gl(7)

    @pytest.mark.parametrize("lam,expected", [((2,), 0), ((1, 1), 1)])
    def test_flag_oracle_n2(self, lam, expected):
        e = jordan_matrix(JordanType({0.0: lam})).real
        assert springer_fiber_dim_numeric(e, starts=4) == expected
