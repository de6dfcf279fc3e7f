import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklab.errors import ShapeMismatch, SingularGauge
from hklab.mv import decode
from hklab.quiver import (
    DimensionVector,
    QuiverRep,
    apply_I,
    apply_J,
    apply_K,
    conj_rep,
    gauge_act,
    glW_act,
    mu,
    rep_norm,
    scale,
)


def random_rep(n, seed):
    rng = np.random.default_rng(seed)
    dims = DimensionVector.mv(n)
    v, w = dims.v, dims.w

    def z(r, c):
        return rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c))

    return QuiverRep(dims, tuple(z(v[k + 1], v[k]) for k in range(n - 1)),
                     tuple(z(v[k], v[k + 1]) for k in range(n - 1)),
                     z(v[0], w[0]), z(w[0], v[0]))


def random_gauge(dims, seed, unitary=False):
    rng = np.random.default_rng(seed)
    out = []
    for d in dims.v:
        Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        out.append(np.linalg.qr(Z)[0] if unitary else np.eye(d) + 0.3 * Z)
    return out


def close(r1, r2, atol=1e-12):
    return np.linalg.norm(r1.to_vector() - r2.to_vector()) <= atol * (1 + rep_norm(r1))


reps = st.builds(random_rep, st.integers(1, 4), st.integers(0, 2**31 - 1))


class TestShapes:
    def test_mv_dims(self):
        d = DimensionVector.mv(3)
        assert d.v == (3, 2, 1) and d.w == (3, 0, 0)

    def test_framing_first_vertex_only(self):
        with pytest.raises(ShapeMismatch):
            DimensionVector((2, 1), (1, 1))

    def test_wrong_block_shape(self):
        dims = DimensionVector.mv(2)
        with pytest.raises(ShapeMismatch):
            QuiverRep(dims, (np.zeros((2, 2)),), (np.zeros((2, 1)),),
                      np.zeros((2, 2)), np.zeros((2, 2)))

    def test_non_finite_rejected(self):
        dims = DimensionVector.mv(1)
        with pytest.raises(ShapeMismatch):
            QuiverRep(dims, (), (), [[np.inf]], [[0.0]])

    def test_immutable(self):
        rep = random_rep(2, 0)
        with pytest.raises(ValueError):
            rep.x[0, 0] = 1.0

    def test_json_round_trip(self):
        rep = random_rep(3, 1)
        assert close(QuiverRep.from_json(rep.to_json()), rep, 0.0)


class TestMomentMap:
    def test_zero_rep(self):
        m = mu(QuiverRep.zero(DimensionVector.mv(3)))
        assert m.real_norm() == 0.0 and m.complex_norm() == 0.0

    def test_n1_complex_value(self):
        lam = 1.7
        rep = QuiverRep(DimensionVector.mv(1), (), (), [[1.0]], [[-1j * lam]])
        assert mu(rep).complex[0][0, 0] == pytest.approx(-1j * lam)

    @settings(max_examples=20, deadline=None)
    @given(reps)
    def test_real_part_skew_hermitian(self, rep):
        for A in mu(rep).real:
            assert np.linalg.norm(A + A.conj().T) <= 1e-12 * (1 + np.linalg.norm(A))
            assert np.all(np.abs(np.diag(A).real) <= 1e-12 * (1 + np.linalg.norm(A)))

    @settings(max_examples=20, deadline=None)
    @given(reps, st.integers(0, 2**31 - 1))
    def test_complex_equivariance(self, rep, seed):
        g = random_gauge(rep.dims, seed)
        m0, m1 = mu(rep).complex, mu(gauge_act(rep, g)).complex
        for gk, a, b in zip(g, m0, m1):
            assert np.linalg.norm(b - gk @ a @ np.linalg.inv(gk)) <= 1e-10 * (1 + np.linalg.norm(a))

    @settings(max_examples=20, deadline=None)
    @given(reps, st.integers(0, 2**31 - 1))
    def test_real_unitary_equivariance(self, rep, seed):
        u = random_gauge(rep.dims, seed, unitary=True)
        m0, m1 = mu(rep).real, mu(gauge_act(rep, u)).real
        for uk, a, b in zip(u, m0, m1):
            assert np.linalg.norm(b - uk @ a @ uk.conj().T) <= 1e-10 * (1 + np.linalg.norm(a))

    @settings(max_examples=20, deadline=None)
    @given(reps)
    def test_conjugation_intertwines(self, rep):
        m, mc = mu(rep), mu(conj_rep(rep))
        for a, b in zip(m.complex, mc.complex):
            assert np.allclose(b, a.conj(), atol=1e-12)
        for a, b in zip(m.real, mc.real):
            assert np.allclose(b, -a.conj(), atol=1e-12)

    def test_quadratic_scaling(self):
        rep = random_rep(3, 4)
        m1, m2 = mu(rep), mu(scale(rep, 2.0))
        for a, b in zip(m1.real + m1.complex, m2.real + m2.complex):
            assert np.allclose(b, 4 * a, atol=1e-12)


class TestQuaternionic:
    @settings(max_examples=20, deadline=None)
    @given(reps)
    def test_relations(self, rep):
        neg = scale(rep, -1.0)
        assert close(apply_I(apply_I(rep)), neg)
        assert close(apply_J(apply_J(rep)), neg)
        assert close(apply_K(apply_K(rep)), neg)
        assert close(apply_I(apply_J(rep)), scale(apply_J(apply_I(rep)), -1.0))

    def test_J_on_n1(self):
        rep = QuiverRep(DimensionVector.mv(1), (), (), [[1.0]], [[0.0]])
        out = apply_J(rep)
        assert out.x[0, 0] == 0 and out.y[0, 0] == 1

    @settings(max_examples=20, deadline=None)
    @given(reps)
    def test_conj_commutes_with_J(self, rep):
        assert close(conj_rep(apply_J(rep)), apply_J(conj_rep(rep)))
        assert close(conj_rep(conj_rep(rep)), rep, 0.0)

    def test_conj_fixes_real_rep(self):
        rep = random_rep(2, 9).map_blocks(np.real)
        assert close(conj_rep(rep), rep, 0.0)


class TestGauge:
    def test_identity(self):
        rep = random_rep(3, 2)
        assert close(gauge_act(rep, [np.eye(d) for d in rep.dims.v]), rep, 0.0)

    def test_inverse(self):
        rep = random_rep(3, 2)
        g = random_gauge(rep.dims, 5)
        back = gauge_act(gauge_act(rep, g), [np.linalg.inv(a) for a in g])
        assert close(back, rep)

    def test_decode_unitary_invariant(self):
        rep = random_rep(3, 3)
        u = random_gauge(rep.dims, 6, unitary=True)
        assert np.allclose(decode(gauge_act(rep, u)), decode(rep), atol=1e-12)

    def test_singular_gauge(self):
        rep = random_rep(2, 3)
        with pytest.raises(SingularGauge):
            gauge_act(rep, [np.zeros((2, 2)), np.eye(1)])

    def test_glW(self):
        rep = random_rep(3, 7)
        rng = np.random.default_rng(0)
        g1 = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
        g2 = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
        M = decode(rep)
        assert np.allclose(decode(glW_act(rep, g1)), g1 @ M @ np.linalg.inv(g1), atol=1e-12)
        assert close(glW_act(rep, g1 @ g2), glW_act(glW_act(rep, g2), g1))
        assert close(glW_act(rep, np.eye(3)), rep)


class TestNorm:
    def test_zero(self):
        assert rep_norm(QuiverRep.zero(DimensionVector.mv(2))) == 0.0

    def test_scaling(self):
        rep = random_rep(3, 8)
        assert rep_norm(scale(rep, 2.5)) == pytest.approx(2.5 * rep_norm(rep))
        assert rep_norm(scale(rep, 0.0)) == 0.0
        assert close(scale(rep, 1.0), rep, 0.0)

    def test_unitary_invariance(self):
        rep = random_rep(3, 8)
        u = random_gauge(rep.dims, 1, unitary=True)
        assert rep_norm(gauge_act(rep, u)) == pytest.approx(rep_norm(rep), rel=1e-12)
