"""Tests for noise operators, measurement filters, gates, and channel
application."""

import numpy as np
import pytest

from qutrit_teleport.channels import (
    OMEGA,
    KrausKind,
    KrausSet,
    MeasurementStrengths,
    NoiseParams,
    VanishingProbability,
    ad_kraus,
    apply_channel,
    apply_selective,
    gate_h,
    gate_lc,
    gate_rc,
    gate_x,
    gate_z,
    qmr_operator,
    qmr_selective,
    tensor_kraus,
    wm_operators,
    wm_selective,
)
from qutrit_teleport.tensor import DimensionMismatch, dagger, kron


class TestNoiseParams:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            NoiseParams(d1=1.5, d2=0.2)
        with pytest.raises(ValueError):
            NoiseParams(d1=0.2, d2=-0.1)

    def test_from_gamma_t(self):
        noise = NoiseParams.from_gamma_t(0.7)
        d = 1.0 - np.exp(-0.7)
        assert noise.d1 == pytest.approx(d, abs=1e-15)
        assert noise.d2 == pytest.approx(d, abs=1e-15)
        assert noise.gamma_t == 0.7
        assert noise.symmetric

    def test_gamma_t_must_match_decay(self):
        with pytest.raises(ValueError):
            NoiseParams(d1=0.5, d2=0.5, gamma_t=0.2)

    def test_rejects_negative_gamma_t(self):
        with pytest.raises(ValueError):
            NoiseParams(d1=0.0, d2=0.0, gamma_t=-1.0)

    def test_symmetric_flag(self):
        assert not NoiseParams(d1=0.2, d2=0.3).symmetric


class TestMeasurementStrengths:
    def test_defaults_are_zero(self):
        ms = MeasurementStrengths()
        assert (ms.p, ms.q, ms.p_r, ms.q_r) == (0.0, 0.0, 0.0, 0.0)
        assert ms.symmetric

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            MeasurementStrengths(p_r=1.2)

    def test_symmetric_flag(self):
        assert not MeasurementStrengths(p=0.1, q=0.2).symmetric
        assert MeasurementStrengths(p=0.3, q=0.3, p_r=0.6, q_r=0.6).symmetric


class TestAdKraus:
    def test_completeness(self):
        for d1 in (0.0, 0.3, 1.0):
            for d2 in (0.0, 0.7, 1.0):
                ks = ad_kraus(NoiseParams(d1=d1, d2=d2))
                np.testing.assert_allclose(
                    ks.completeness_sum(), np.eye(3), rtol=0, atol=1e-14
                )

    def test_population_transfer(self):
        # level 1 drains into the ground level with probability d1
        ks = ad_kraus(NoiseParams(d1=0.4, d2=0.9))
        out = apply_channel(np.diag([0.0, 1.0, 0.0]).astype(complex), ks)
        np.testing.assert_allclose(
            out, np.diag([0.4, 0.6, 0.0]), rtol=0, atol=1e-15
        )
        out = apply_channel(np.diag([0.0, 0.0, 1.0]).astype(complex), ks)
        np.testing.assert_allclose(
            out, np.diag([0.9, 0.0, 0.1]), rtol=0, atol=1e-15
        )

    def test_coherence_damping(self):
        d1, d2 = 0.36, 0.75
        ks = ad_kraus(NoiseParams(d1=d1, d2=d2))
        k = np.ones(3, dtype=complex) / np.sqrt(3.0)
        out = apply_channel(np.outer(k, k.conj()), ks)
        assert out[0, 1] == pytest.approx(np.sqrt(1 - d1) / 3.0, abs=1e-15)
        assert out[0, 2] == pytest.approx(np.sqrt(1 - d2) / 3.0, abs=1e-15)
        assert out[1, 2] == pytest.approx(
            np.sqrt((1 - d1) * (1 - d2)) / 3.0, abs=1e-15
        )


class TestWmOperators:
    def test_completeness(self):
        ks = wm_operators(MeasurementStrengths(p=0.3, q=0.8))
        np.testing.assert_allclose(
            ks.completeness_sum(), np.eye(3), rtol=0, atol=1e-14
        )

    def test_null_branch_amplitudes(self):
        ms = MeasurementStrengths(p=0.19, q=0.64)
        m0 = wm_selective(ms).operators[0]
        k = np.array([0.5, 0.5, 1 / np.sqrt(2)], dtype=complex)
        np.testing.assert_allclose(
            m0 @ k,
            [0.5, 0.5 * np.sqrt(0.81), np.sqrt(0.36 / 2)],
            rtol=0,
            atol=1e-15,
        )

    def test_selective_kind(self):
        ks = wm_selective(MeasurementStrengths(p=0.3, q=0.3))
        assert ks.kind is KrausKind.SELECTIVE
        assert len(ks.operators) == 1


class TestQmrOperator:
    def test_reversed_pairing(self):
        # q_r scales the |1> amplitude and p_r the |2> amplitude
        ms = MeasurementStrengths(p_r=0.19, q_r=0.51)
        expected = np.diag(
            [np.sqrt(0.81 * 0.49), np.sqrt(0.49), np.sqrt(0.81)]
        )
        np.testing.assert_allclose(qmr_operator(ms), expected, rtol=0, atol=1e-15)

    def test_selective_kind(self):
        ks = qmr_selective(MeasurementStrengths(p_r=0.4, q_r=0.4))
        assert ks.kind is KrausKind.SELECTIVE


class TestKrausSetValidation:
    def test_rejects_incomplete_full_channel(self):
        bad = np.diag([1.0, 0.5, 0.5]).astype(complex)
        with pytest.raises(ValueError, match="completeness"):
            KrausSet(operators=(bad,), kind=KrausKind.FULL_CHANNEL)

    def test_rejects_selective_above_identity(self):
        with pytest.raises(ValueError, match="<= I"):
            KrausSet(
                operators=(1.1 * np.eye(3, dtype=complex),),
                kind=KrausKind.SELECTIVE,
            )

    def test_rejects_mixed_shapes(self):
        with pytest.raises(DimensionMismatch):
            KrausSet(
                operators=(np.eye(3, dtype=complex), np.eye(4, dtype=complex))
            )

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            KrausSet(operators=())


class TestTensorKraus:
    def test_full_times_full(self):
        a = ad_kraus(NoiseParams(d1=0.2, d2=0.5))
        pair = tensor_kraus(a, a)
        assert pair.kind is KrausKind.FULL_CHANNEL
        assert len(pair.operators) == 9
        np.testing.assert_allclose(
            pair.completeness_sum(), np.eye(9), rtol=0, atol=1e-13
        )

    def test_full_times_selective_is_selective(self):
        a = ad_kraus(NoiseParams(d1=0.2, d2=0.5))
        b = wm_selective(MeasurementStrengths(p=0.4, q=0.4))
        assert tensor_kraus(a, b).kind is KrausKind.SELECTIVE


class TestGates:
    @pytest.mark.parametrize(
        "gate", [gate_x(1), gate_x(2), gate_z(1), gate_z(2), gate_h(),
                 gate_rc(), gate_lc()]
    )
    def test_unitary(self, gate):
        np.testing.assert_allclose(
            dagger(gate) @ gate, np.eye(gate.shape[0]), rtol=0, atol=1e-14
        )

    def test_shift_action(self):
        for i in range(3):
            for m in range(3):
                ket = np.zeros(3, dtype=complex)
                ket[m] = 1.0
                out = gate_x(i) @ ket
                assert out[(m + i) % 3] == pytest.approx(1.0)

    def test_phase_action(self):
        for k in range(3):
            for m in range(3):
                ket = np.zeros(3, dtype=complex)
                ket[m] = 1.0
                out = gate_z(k) @ ket
                assert out[m] == pytest.approx(OMEGA ** (k * m), abs=1e-14)

    def test_weyl_commutation(self):
        # Z^k X^i = omega^(k i) X^i Z^k for every exponent pair
        for k in range(3):
            for i in range(3):
                lhs = gate_z(k) @ gate_x(i)
                rhs = OMEGA ** (k * i) * (gate_x(i) @ gate_z(k))
                np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-14)

    def test_fourier_columns(self):
        h = gate_h()
        np.testing.assert_allclose(
            h[:, 0], np.ones(3) / np.sqrt(3.0), rtol=0, atol=1e-15
        )
        np.testing.assert_allclose(
            h[:, 1], np.array([1.0, OMEGA, OMEGA**2]) / np.sqrt(3.0),
            rtol=0, atol=1e-14,
        )

    def test_controlled_shifts_invert(self):
        np.testing.assert_allclose(
            gate_rc() @ gate_lc(), np.eye(9), rtol=0, atol=1e-15
        )

    def test_right_shift_action(self):
        # |1, 1> -> |1, 2>
        ket = np.zeros(9, dtype=complex)
        ket[4] = 1.0
        out = gate_rc() @ ket
        assert out[5] == pytest.approx(1.0)


class TestApplyChannel:
    def test_preserves_trace(self, random_density):
        rho = random_density(3)
        ks = ad_kraus(NoiseParams(d1=0.3, d2=0.6))
        out = apply_channel(rho, ks)
        assert np.trace(out).real == pytest.approx(1.0, abs=1e-13)

    def test_zero_noise_is_identity(self, random_density):
        rho = random_density(3)
        ks = ad_kraus(NoiseParams(d1=0.0, d2=0.0))
        np.testing.assert_allclose(apply_channel(rho, ks), rho, rtol=0, atol=1e-14)

    def test_rejects_selective_set(self, random_density):
        ks = wm_selective(MeasurementStrengths(p=0.4, q=0.4))
        with pytest.raises(ValueError, match="apply_selective"):
            apply_channel(random_density(3), ks)

    def test_rejects_shape_mismatch(self, random_density):
        ks = ad_kraus(NoiseParams(d1=0.3, d2=0.6))
        with pytest.raises(DimensionMismatch):
            apply_channel(random_density(9), ks)


class TestApplySelective:
    def test_known_branch_probability(self):
        # tr[(Mr (x) Mr) (I/9) (Mr (x) Mr)^dag] = (1.5625) / 9
        mr = qmr_operator(MeasurementStrengths(p_r=0.5, q_r=0.5))
        rho = np.eye(9, dtype=complex) / 9.0
        out, prob = apply_selective(rho, kron(mr, mr))
        assert prob == pytest.approx(0.1736111111111111, abs=1e-15)
        assert np.trace(out).real == pytest.approx(1.0, abs=1e-13)

    def test_vanishing_branch_raises(self):
        mr = qmr_operator(MeasurementStrengths(p_r=1.0, q_r=1.0))
        with pytest.raises(VanishingProbability):
            apply_selective(np.eye(3, dtype=complex) / 3.0, mr)

    def test_rejects_operator_above_identity(self, random_density):
        with pytest.raises(ValueError, match="<= I"):
            apply_selective(random_density(3), 2.0 * np.eye(3, dtype=complex))

    def test_rejects_shape_mismatch(self, random_density):
        mr = qmr_operator(MeasurementStrengths(p_r=0.5, q_r=0.5))
        with pytest.raises(DimensionMismatch):
            apply_selective(random_density(9), mr)
