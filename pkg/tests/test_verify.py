import numpy as np
import pytest

from hklab import serialize
from hklab.involution import alpha_gl_details
from hklab.linalg import JordanType, eig_real_check, jordan_type, matrix_from_json
from hklab.quiver import Conventions
from hklab.verify import (
    REGISTRY,
    THEOREM_CLAIMS,
    SuiteConfig,
    _endpoint,
    random_real_spectrum_matrix,
    run_claim,
    run_suite,
)

SMALL = SuiteConfig(n_max=3, samples_per_case=1, group_trials=1, trace_n_max=2)


class TestRegistry:
    def test_theorem_claims_registered_once(self):
        assert len(set(THEOREM_CLAIMS)) == len(THEOREM_CLAIMS)
        assert set(THEOREM_CLAIMS) <= set(REGISTRY)
        assert all(REGISTRY[cid].id == cid for cid in REGISTRY)

    def test_controls_are_members(self):
        assert {"control.kappa_flip", "control.mu_sign_flip"} <= set(REGISTRY)

    def test_statements_present(self):
        assert all(c.statement for c in REGISTRY.values())


class TestSampling:
    def test_nilpotent_2(self):
        M = random_real_spectrum_matrix(2, JordanType({0.0: (2,)}), 3)
        assert np.isrealobj(M)
        assert jordan_type(M).blocks == {0.0: (2,)}

    def test_diagonalizable(self):
        M = random_real_spectrum_matrix(2, JordanType({1.0: (1,), 2.0: (1,)}), 3)
        sd = eig_real_check(M)
        assert np.allclose(sd.values, [1.0, 2.0]) and sd.multiplicities == (1, 1)

    def test_jordan_round_trip(self):
        jt = JordanType({-1.0: (2, 1), 2.0: (1,)})
        assert jordan_type(random_real_spectrum_matrix(4, jt, 9)).matches(jt)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            random_real_spectrum_matrix(3, JordanType({0.0: (2,)}), 0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SuiteConfig(n_max=9)
        with pytest.raises(ValueError):
            SuiteConfig(a_grid=(0.0, 0.5))


class TestSuite:
    CLAIMS = ["alpha.endpoint_conjugation", "alpha.involutivity", "mv.balance_convergence",
              "ks.table", "hecke.split_parameters"]

    def test_seed_replay_is_bitwise(self):
        a = run_suite(SMALL, self.CLAIMS)
        b = run_suite(SMALL, self.CLAIMS)
        assert a.all_passed
        assert serialize.dumps(a.residuals()) == serialize.dumps(b.residuals())

    def test_report_json(self):
        rep = run_suite(SMALL, ["ks.table"])
        obj = serialize.loads(serialize.dumps(rep))
        assert obj["all_passed"] is True
        assert obj["claims"]["ks.table"]["passed"] is True

    def test_failure_carries_counterexample(self):
        res = _endpoint(SMALL, 1.0, np.transpose, decode_conv=Conventions(kappa=-1j))
        assert not res.passed
        assert "matrix" in res.counterexample and "seed" in res.counterexample
        # the serialized counterexample reproduces the failure
        M = matrix_from_json(serialize.loads(serialize.dumps(res.counterexample))["matrix"])
        out = alpha_gl_details(M, 1.0, decode_conv=Conventions(kappa=-1j))[0]
        assert np.linalg.norm(out - M.T) > 1e-8 * (1 + np.linalg.norm(M, 2))

    @pytest.mark.parametrize("cid", ["control.kappa_flip", "control.mu_sign_flip"])
    def test_controls_detected(self, cid):
        res = run_claim(cid, SMALL)
        assert res.passed and res.details["detected"]

    def test_failed_claim_serializes(self):
        res = _endpoint(SMALL, 0.0, np.conj, conv=Conventions(complex_frame_sign=-1))
        assert res.max_residual == float("inf")
        assert '"inf"' in serialize.dumps(res)
