import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hklab.errors import SizeMismatch
from hklab.ks import (
    conjugate,
    dominance_leq,
    ks_table_gl,
    orbit_label,
    partitions,
    poset_to_dot,
    table_text,
)
from hklab.linalg import JordanType
from hklab.tracer import trace
from hklab.verify import random_real_spectrum_matrix


class TestPartitions:
    def test_small(self):
        assert partitions(0) == [()]
        assert partitions(2) == [(2,), (1, 1)]
        assert len(partitions(4)) == 5
        assert len(partitions(6)) == 11

    @given(st.integers(1, 8))
    def test_conjugate_involution(self, n):
        for lam in partitions(n):
            assert conjugate(conjugate(lam)) == lam
            assert sum(conjugate(lam)) == n

    def test_dominance(self):
        assert dominance_leq((1, 1), (2,))
        assert dominance_leq((2, 2), (3, 1))
        assert not dominance_leq((3, 1), (2, 2))
        with pytest.raises(SizeMismatch):
            dominance_leq((2,), (1, 1, 1))

    @given(st.integers(1, 6))
    def test_dominance_reverses_under_conjugation(self, n):
        P = partitions(n)
        for a in P:
            for b in P:
                assert dominance_leq(a, b) == dominance_leq(conjugate(b), conjugate(a))


class TestTable:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_poset_axioms(self, n):
        t = ks_table_gl(n)
        for poset in (t.real_poset, t.symmetric_poset):
            assert all(poset.check_axioms().values())
        assert len(t.pairs) == len(partitions(n))

    def test_n2_pairs(self):
        t = ks_table_gl(2)
        assert t.pairs == (((2,), (2,)), ((1, 1), (1, 1)))

    def test_n4_covers(self):
        t = ks_table_gl(4)
        labels = t.real_poset.labels
        edges = {(labels[i], labels[j]) for i, j in t.real_poset.covers()}
        # the dominance order on partitions of 4 is a chain
        assert edges == {((3, 1), (4,)), ((2, 2), (3, 1)), ((2, 1, 1), (2, 2)),
                         ((1, 1, 1, 1), (2, 1, 1))}

    def test_renderings(self):
        t = ks_table_gl(3)
        dot = poset_to_dot(t.real_poset)
        assert dot.startswith("digraph") and '"(2,1)" -> "(3)"' in dot
        txt = table_text(t)
        assert len(txt.strip().splitlines()) == 4
        assert t.to_json()["n"] == 3


class TestLabels:
    def test_examples(self):
        assert orbit_label([[0, 1], [0, 0]]).blocks == {0.0: (2,)}
        assert orbit_label(np.zeros((3, 3))).blocks == {0.0: (1, 1, 1)}
        assert orbit_label([[1, 1j], [1j, -1]]).blocks == {0.0: (2,)}

    @pytest.mark.parametrize("n", [2, 3])
    def test_traced_pairing(self, n):
        # real nilpotents of each type trace to symmetric nilpotents of the same type
        table = dict(ks_table_gl(n).pairs)
        for i, lam in enumerate(partitions(n)):
            M0 = random_real_spectrum_matrix(n, JordanType({0.0: lam}), 40 + i)
            T = trace(M0).target
            assert np.linalg.norm(T - T.T) <= 1e-6
            assert orbit_label(T).blocks == {0.0: table[lam]}
