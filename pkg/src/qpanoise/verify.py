"""Runtime consistency checks: three-representation agreement for every
channel kind, Kraus completeness, and the equivalence of the exact circuit
step with the analytic Bell-diagonal recurrence."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from qpanoise import channels, eavesdrop, qpa, qstate
from qpanoise.channels import ChannelKind, NoiseChannel

REPRESENTATION_TOL = 1e-10
COMPLETENESS_TOL = 1e-12
ORACLE_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def bloch_probe_points(count: int = 100, seed: int = 7) -> np.ndarray:
    """Deterministic probe set: the six axis poles, an equator ring, and
    interior points drawn uniformly from the ball."""
    points = [
        (0.0, 0.0, 1.0),
        (0.0, 0.0, -1.0),
        (1.0, 0.0, 0.0),
        (-1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, -1.0, 0.0),
    ]
    for k in range(12):
        angle = 2.0 * np.pi * k / 12.0
        points.append((np.cos(angle), np.sin(angle), 0.0))
    rng = np.random.default_rng(seed)
    while len(points) < count:
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        points.append(tuple(direction * rng.random() ** (1.0 / 3.0)))
    return np.array(points[:count])


def theta_probe_grid(kind: ChannelKind, count: int = 20) -> np.ndarray:
    hi = channels.max_theta(kind)
    if kind in channels.ROTATION_KINDS:
        return np.linspace(-hi, hi, count)
    return np.linspace(0.0, hi, count)


def _signs_for(kind: ChannelKind) -> tuple[int, ...]:
    if kind in (ChannelKind.DISPLACE_X, ChannelKind.DISPLACE_Y):
        return (1, -1)
    return (1,)


def representation_deviation(
    kind: ChannelKind, thetas: np.ndarray, points: np.ndarray
) -> float:
    """Largest entrywise disagreement between the Kraus sum, the affine
    Bloch map and the dilation circuit over a channel-parameter grid."""
    worst = 0.0
    for sign in _signs_for(kind):
        for theta in thetas:
            channel = channels.make_channel(kind, float(theta), sign)
            for r in points:
                rho = qstate.state_of(r)
                via_kraus = channels.apply(channel, rho)
                via_affine = qstate.state_of(channels.bloch_image(channel, r))
                via_dilation = channels.apply_via_dilation(channel, rho)
                worst = max(
                    worst,
                    float(np.max(np.abs(via_kraus - via_affine))),
                    float(np.max(np.abs(via_kraus - via_dilation))),
                )
    return worst


def completeness_deviation(channel: NoiseChannel) -> float:
    """Distance of sum_k F_k^dagger F_k from the identity."""
    total = sum(f.conj().T @ f for f in channel.kraus)
    return float(np.max(np.abs(total - np.eye(2))))


def oracle_deviation(n_states: int = 50, seed: int = 11) -> float:
    """Worst disagreement between the noiseless circuit step and the
    analytic recurrence over random Bell-diagonal states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        raw = rng.random(4)
        raw /= raw.sum()
        coeffs = eavesdrop.BellCoeffs(*raw)
        state, p = qpa.noisy_step(eavesdrop.bell_diagonal(coeffs), None)
        expected_coeffs, expected_p = qpa.ideal_step(coeffs)
        expected = eavesdrop.bell_diagonal(expected_coeffs)
        worst = max(worst, float(np.max(np.abs(state - expected))), abs(p - expected_p))
    return worst


def _corrupt(channel: NoiseChannel) -> NoiseChannel:
    # test hook: break Kraus normalization on purpose
    damaged = (1.01 * channel.kraus[0],) + channel.kraus[1:]
    return dataclasses.replace(channel, kraus=damaged)


def run_verification(corrupt_kraus: bool = False) -> list[CheckResult]:
    """Run the full check suite; ``corrupt_kraus`` injects a deliberate
    normalization defect into one bit-flip channel so failure reporting
    can be exercised."""
    points = bloch_probe_points()
    results = []
    for kind in ChannelKind:
        thetas = theta_probe_grid(kind)
        built = [channels.make_channel(kind, float(t)) for t in thetas]
        if corrupt_kraus and kind is ChannelKind.BIT_FLIP:
            built[len(built) // 2] = _corrupt(built[len(built) // 2])
        completeness = max(completeness_deviation(ch) for ch in built)
        results.append(
            CheckResult(f"kraus completeness ({kind.value})", completeness, COMPLETENESS_TOL)
        )
        if corrupt_kraus and kind is ChannelKind.BIT_FLIP:
            # measure the corrupted Kraus list against the intact dilation
            worst = 0.0
            for ch in built:
                for r in points[:20]:
                    rho = qstate.state_of(r)
                    diff = channels.apply(ch, rho) - channels.apply_via_dilation(ch, rho)
                    worst = max(worst, float(np.max(np.abs(diff))))
            results.append(
                CheckResult(f"representation agreement ({kind.value})", worst, REPRESENTATION_TOL)
            )
        else:
            results.append(
                CheckResult(
                    f"representation agreement ({kind.value})",
                    representation_deviation(kind, thetas, points),
                    REPRESENTATION_TOL,
                )
            )
    results.append(
        CheckResult("noisy step matches analytic recurrence", oracle_deviation(), ORACLE_TOL)
    )
    return results
