"""Tests for the nine noise channels and their three representations."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qpanoise import channels, gates, qstate
from qpanoise.channels import (
    ChannelKind,
    apply,
    apply_via_dilation,
    bloch_affine,
    bloch_image,
    channel_kind_from_name,
    dilate,
    kraus_from_dilation,
    make_channel,
    max_theta,
)
from qpanoise.verify import bloch_probe_points, theta_probe_grid

ALL_KINDS = tuple(ChannelKind)


def signs_for(kind):
    if kind in (ChannelKind.DISPLACE_X, ChannelKind.DISPLACE_Y):
        return (1, -1)
    return (1,)


class TestNames:
    def test_round_trip(self):
        for kind in ALL_KINDS:
            assert channel_kind_from_name(kind.value) is kind

    def test_unicode_minus(self):
        assert channel_kind_from_name("disp-z−") is ChannelKind.DISPLACE_Z_MINUS

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown channel"):
            channel_kind_from_name("depolarizing")


class TestKrausForms:
    def test_bit_flip(self):
        theta = 0.7
        ch = make_channel(ChannelKind.BIT_FLIP, theta)
        np.testing.assert_allclose(ch.kraus[0], math.cos(theta / 2) * np.eye(2))
        np.testing.assert_allclose(ch.kraus[1], math.sin(theta / 2) * gates.PAULI_X)

    @pytest.mark.parametrize(
        "kind,pauli",
        [(ChannelKind.PHASE_FLIP, gates.PAULI_Z), (ChannelKind.BIT_PHASE_FLIP, gates.PAULI_Y)],
    )
    def test_other_flips(self, kind, pauli):
        theta = 1.1
        ch = make_channel(kind, theta)
        np.testing.assert_allclose(ch.kraus[0], math.cos(theta / 2) * np.eye(2))
        np.testing.assert_allclose(ch.kraus[1], math.sin(theta / 2) * pauli)

    def test_amplitude_damping(self):
        theta = 0.5
        c, s = math.cos(theta), math.sin(theta)
        ch = make_channel(ChannelKind.DISPLACE_Z_PLUS, theta)
        np.testing.assert_allclose(ch.kraus[0], [[1, 0], [0, c]])
        np.testing.assert_allclose(ch.kraus[1], [[0, s], [0, 0]])

    def test_thermal(self):
        theta = 0.5
        c, s = math.cos(theta), math.sin(theta)
        ch = make_channel(ChannelKind.DISPLACE_Z_MINUS, theta)
        np.testing.assert_allclose(ch.kraus[0], [[c, 0], [0, 1]])
        np.testing.assert_allclose(ch.kraus[1], [[0, 0], [s, 0]])

    @pytest.mark.parametrize("sign", [1, -1])
    def test_displacement_x(self, sign):
        theta = 0.6
        c, s = math.cos(theta), math.sin(theta)
        ch = make_channel(ChannelKind.DISPLACE_X, theta, sign)
        np.testing.assert_allclose(
            ch.kraus[0],
            0.5 * np.array([[1 + c, sign * (1 - c)], [sign * (1 - c), 1 + c]]),
        )
        np.testing.assert_allclose(
            ch.kraus[1], 0.5 * np.array([[-sign * s, s], [-s, sign * s]])
        )

    @pytest.mark.parametrize("sign", [1, -1])
    def test_displacement_y(self, sign):
        # the +i Kraus pair displaces toward -y, so the sign label flips
        theta = 0.6
        c, s = math.cos(theta), math.sin(theta)
        w = -sign
        ch = make_channel(ChannelKind.DISPLACE_Y, theta, sign)
        np.testing.assert_allclose(
            ch.kraus[0],
            0.5 * np.array([[1 + c, w * 1j * (1 - c)], [-w * 1j * (1 - c), 1 + c]]),
        )
        np.testing.assert_allclose(
            ch.kraus[1], 0.5 * np.array([[w * 1j * s, s], [s, -w * 1j * s]])
        )

    def test_rotation_single_kraus(self):
        theta = 0.9
        ch = make_channel(ChannelKind.ROTATION_Y, theta)
        assert len(ch.kraus) == 1
        np.testing.assert_allclose(ch.kraus[0], gates.rotation(gates.Y_AXIS, theta))

    def test_completeness_everywhere(self):
        for kind in ALL_KINDS:
            for theta in theta_probe_grid(kind, 12):
                for sign in signs_for(kind):
                    ch = make_channel(kind, float(theta), sign)
                    total = sum(f.conj().T @ f for f in ch.kraus)
                    assert np.max(np.abs(total - np.eye(2))) < 1e-12, (kind, theta)


class TestAffineForms:
    def test_bit_flip_map(self):
        theta = 0.8
        m, t = bloch_affine(make_channel(ChannelKind.BIT_FLIP, theta))
        np.testing.assert_allclose(m, np.diag([1.0, math.cos(theta), math.cos(theta)]))
        np.testing.assert_allclose(t, np.zeros(3))

    def test_phase_flip_map_against_kraus(self):
        # symmetry axis z; columns recovered from the channel action itself
        theta = 0.8
        ch = make_channel(ChannelKind.PHASE_FLIP, theta)
        m, t = bloch_affine(ch)
        np.testing.assert_allclose(m, np.diag([math.cos(theta), math.cos(theta), 1.0]))
        shift = qstate.bloch_of(apply(ch, np.eye(2, dtype=complex) / 2))
        np.testing.assert_allclose(t, shift, atol=1e-12)
        for column, axis in enumerate(np.eye(3)):
            image = qstate.bloch_of(apply(ch, qstate.state_of(axis))) - shift
            np.testing.assert_allclose(m[:, column], image, atol=1e-12)

    def test_bit_phase_flip_map(self):
        theta = 0.4
        m, t = bloch_affine(make_channel(ChannelKind.BIT_PHASE_FLIP, theta))
        np.testing.assert_allclose(m, np.diag([math.cos(theta), 1.0, math.cos(theta)]))
        np.testing.assert_allclose(t, np.zeros(3))

    def test_displacement_maps(self):
        theta = 0.5
        c, s = math.cos(theta), math.sin(theta)
        m, t = bloch_affine(make_channel(ChannelKind.DISPLACE_Z_PLUS, theta))
        np.testing.assert_allclose(m, np.diag([c, c, c * c]))
        np.testing.assert_allclose(t, [0, 0, s * s])
        _, t_minus = bloch_affine(make_channel(ChannelKind.DISPLACE_Z_MINUS, theta))
        np.testing.assert_allclose(t_minus, [0, 0, -s * s])
        m_x, t_x = bloch_affine(make_channel(ChannelKind.DISPLACE_X, theta))
        np.testing.assert_allclose(m_x, np.diag([c * c, c, c]))
        np.testing.assert_allclose(t_x, [s * s, 0, 0])
        m_y, t_y = bloch_affine(make_channel(ChannelKind.DISPLACE_Y, theta, -1))
        np.testing.assert_allclose(m_y, np.diag([c, c * c, c]))
        np.testing.assert_allclose(t_y, [0, -s * s, 0])

    def test_rotation_map(self):
        theta = 1.3
        m, t = bloch_affine(make_channel(ChannelKind.ROTATION_Z, theta))
        np.testing.assert_allclose(m, gates.bloch_rotation(gates.Z_AXIS, theta))
        np.testing.assert_allclose(t, np.zeros(3))

    def test_affine_matches_kraus_on_grid(self):
        points = bloch_probe_points(40)
        for kind in ALL_KINDS:
            for theta in theta_probe_grid(kind, 7):
                ch = make_channel(kind, float(theta))
                for r in points:
                    via_kraus = qstate.bloch_of(apply(ch, qstate.state_of(r)))
                    np.testing.assert_allclose(
                        via_kraus, bloch_image(ch, r), atol=1e-10
                    )

    def test_unit_ball_stays_inside(self):
        sphere = [p / np.linalg.norm(p) for p in bloch_probe_points(60) if np.linalg.norm(p) > 0]
        for kind in ALL_KINDS:
            for theta in theta_probe_grid(kind, 7):
                ch = make_channel(kind, float(theta))
                for r in sphere:
                    assert np.linalg.norm(bloch_image(ch, r)) <= 1.0 + 1e-12

    def test_rotations_preserve_norm(self):
        rng = np.random.default_rng(11)
        for kind in (ChannelKind.ROTATION_X, ChannelKind.ROTATION_Y, ChannelKind.ROTATION_Z):
            ch = make_channel(kind, rng.uniform(-3, 3))
            for _ in range(10):
                r = rng.normal(size=3)
                r /= np.linalg.norm(r)
                assert np.linalg.norm(bloch_image(ch, r)) == pytest.approx(1.0, abs=1e-12)


class TestApply:
    def test_bit_flip_on_pole(self):
        theta = 0.9
        out = apply(make_channel(ChannelKind.BIT_FLIP, theta), qstate.projector([1, 0]))
        expected = np.diag([math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2])
        np.testing.assert_allclose(out, expected, atol=1e-14)

    def test_complete_damping(self):
        rng = np.random.default_rng(12)
        ch = make_channel(ChannelKind.DISPLACE_Z_PLUS, math.pi / 2)
        for _ in range(5):
            v = rng.normal(size=3)
            rho = qstate.state_of(v / np.linalg.norm(v) * rng.random())
            np.testing.assert_allclose(apply(ch, rho), np.diag([1.0, 0.0]), atol=1e-12)

    def test_half_turn_rotation(self):
        out = apply(make_channel(ChannelKind.ROTATION_X, math.pi), qstate.projector([1, 0]))
        np.testing.assert_allclose(out, qstate.projector([0, 1]), atol=1e-14)

    def test_identity_at_zero_strength(self):
        rng = np.random.default_rng(13)
        r = rng.normal(size=3)
        r *= 0.3 / np.linalg.norm(r)
        rho = qstate.state_of(r)
        for kind in ALL_KINDS:
            ch = make_channel(kind, 0.0)
            assert len(ch.kraus) == 1
            np.testing.assert_allclose(apply(ch, rho), rho, atol=1e-15)
            np.testing.assert_allclose(ch.bloch_matrix, np.eye(3), atol=1e-15)
            np.testing.assert_allclose(ch.bloch_shift, np.zeros(3), atol=1e-15)

    def test_embedded_qubit(self):
        rng = np.random.default_rng(14)
        rho_a = qstate.state_of(rng.normal(size=3) * 0.2)
        rho_b = qstate.state_of(rng.normal(size=3) * 0.2)
        ch = make_channel(ChannelKind.PHASE_FLIP, 0.7)
        out = apply(ch, qstate.tensor(rho_a, rho_b), qubit=1)
        np.testing.assert_allclose(out, qstate.tensor(rho_a, apply(ch, rho_b)), atol=1e-13)

    def test_invalid_qubit(self):
        ch = make_channel(ChannelKind.BIT_FLIP, 0.1)
        with pytest.raises(ValueError, match="qubit index"):
            apply(ch, np.eye(4) / 4, qubit=2)


class TestDilation:
    def test_trivial_at_zero_strength(self):
        rng = np.random.default_rng(15)
        rho = qstate.state_of(rng.normal(size=3) * 0.4)
        for kind in ALL_KINDS:
            ch = make_channel(kind, 0.0)
            np.testing.assert_allclose(apply_via_dilation(ch, rho), rho, atol=1e-14)

    def test_bit_flip_kraus_recovered(self):
        theta = 0.7
        ch = make_channel(ChannelKind.BIT_FLIP, theta)
        ancilla, joint = dilate(ch)
        assert gates.is_unitary(joint)
        recovered = kraus_from_dilation(joint, ancilla)
        np.testing.assert_allclose(recovered[0], math.cos(theta / 2) * np.eye(2), atol=1e-14)
        np.testing.assert_allclose(recovered[1], math.sin(theta / 2) * gates.PAULI_X, atol=1e-14)

    @pytest.mark.parametrize("kind", [ChannelKind.DISPLACE_X, ChannelKind.DISPLACE_Y])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_displacement_circuit_recovers_kraus(self, kind, sign):
        theta = 0.45
        ch = make_channel(kind, theta, sign)
        recovered = kraus_from_dilation(ch.joint, ch.ancilla)
        for stored, extracted in zip(ch.kraus, recovered):
            np.testing.assert_allclose(extracted, stored, atol=1e-14)

    def test_displacement_x_is_conjugated_damping(self):
        theta = 0.45
        ch = make_channel(ChannelKind.DISPLACE_X, theta)
        u = np.array([[1, 1], [-1, 1]], dtype=complex) / math.sqrt(2)
        damping = make_channel(ChannelKind.DISPLACE_Z_PLUS, theta).joint
        expected = np.kron(u.conj().T, np.eye(2)) @ damping @ np.kron(u, np.eye(2))
        np.testing.assert_allclose(ch.joint, expected, atol=1e-14)

    def test_thermal_is_not_conjugated_damping(self):
        theta = 0.45
        ch = make_channel(ChannelKind.DISPLACE_Z_MINUS, theta)
        flip = np.kron(gates.PAULI_X, np.eye(2))
        damping = make_channel(ChannelKind.DISPLACE_Z_PLUS, theta).joint
        np.testing.assert_allclose(ch.joint, flip @ damping @ flip, atol=1e-14)

    def test_action_matches_kraus_everywhere(self):
        points = bloch_probe_points(30)
        for kind in ALL_KINDS:
            for theta in theta_probe_grid(kind, 7):
                for sign in signs_for(kind):
                    ch = make_channel(kind, float(theta), sign)
                    for r in points[:15]:
                        rho = qstate.state_of(r)
                        np.testing.assert_allclose(
                            apply_via_dilation(ch, rho), apply(ch, rho), atol=1e-10
                        )


class TestGeometry:
    @pytest.mark.parametrize(
        "kind,pole",
        [
            (ChannelKind.DISPLACE_Z_PLUS, (0.0, 0.0, 1.0)),
            (ChannelKind.DISPLACE_Z_MINUS, (0.0, 0.0, -1.0)),
            (ChannelKind.DISPLACE_X, (1.0, 0.0, 0.0)),
            (ChannelKind.DISPLACE_Y, (0.0, 1.0, 0.0)),
        ],
    )
    def test_tangency_pole_is_fixed(self, kind, pole):
        # the image ellipsoid touches the sphere exactly at the displacement pole
        ch = make_channel(kind, 0.37)
        np.testing.assert_allclose(bloch_image(ch, np.array(pole)), pole, atol=1e-12)
        out = apply(ch, qstate.state_of(pole))
        np.testing.assert_allclose(out, qstate.state_of(pole), atol=1e-12)

    def test_bit_flip_at_pi_is_pauli_conjugation(self):
        ch = make_channel(ChannelKind.BIT_FLIP, math.pi)
        np.testing.assert_allclose(ch.bloch_matrix, np.diag([1.0, -1.0, -1.0]))
        rng = np.random.default_rng(16)
        rho = qstate.state_of(rng.normal(size=3) * 0.5)
        np.testing.assert_allclose(
            apply(ch, rho), gates.PAULI_X @ rho @ gates.PAULI_X, atol=1e-14
        )


class TestDomains:
    def test_flip_range(self):
        make_channel(ChannelKind.BIT_FLIP, math.pi)
        with pytest.raises(ValueError, match="outside"):
            make_channel(ChannelKind.BIT_FLIP, math.pi + 0.01)
        with pytest.raises(ValueError, match="outside"):
            make_channel(ChannelKind.PHASE_FLIP, -0.1)

    def test_displacement_range(self):
        make_channel(ChannelKind.DISPLACE_X, math.pi / 2)
        with pytest.raises(ValueError, match="outside"):
            make_channel(ChannelKind.DISPLACE_X, math.pi / 2 + 0.01)

    def test_rotation_accepts_any_angle(self):
        make_channel(ChannelKind.ROTATION_X, -7.5)
        make_channel(ChannelKind.ROTATION_Z, 42.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            make_channel(ChannelKind.ROTATION_X, math.inf)

    def test_sign_validation(self):
        with pytest.raises(ValueError, match="sign"):
            make_channel(ChannelKind.DISPLACE_X, 0.1, sign=2)

    def test_max_theta(self):
        assert max_theta(ChannelKind.BIT_FLIP) == pytest.approx(math.pi)
        assert max_theta(ChannelKind.DISPLACE_Y) == pytest.approx(math.pi / 2)

    def test_rotation_sign_negates_angle(self):
        plus = make_channel(ChannelKind.ROTATION_Y, 0.8, sign=-1)
        minus = make_channel(ChannelKind.ROTATION_Y, -0.8)
        np.testing.assert_allclose(plus.kraus[0], minus.kraus[0])

    def test_channels_are_frozen(self):
        ch = make_channel(ChannelKind.BIT_FLIP, 0.3)
        with pytest.raises(ValueError):
            ch.kraus[0][0, 0] = 2.0
