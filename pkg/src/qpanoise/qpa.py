"""The purification engine.

The ideal path iterates the analytic recurrence on Bell coefficients:
a' = (a^2+d^2)/N, b' = 2ad/N, c' = (b^2+c^2)/N, d' = 2bc/N with success
probability N = (a+d)^2 + (b+c)^2.  The noisy path runs the exact
four-qubit circuit instead: pair the current state with a copy of itself,
rotate Alice's wires by +pi/2 and Bob's by -pi/2 about x, optionally
apply a noise channel on one wire, apply both CNOTs, and keep the control
pair when the target measurements coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from qpanoise import channels, eavesdrop, gates, qstate
from qpanoise.channels import ChannelKind, NoiseChannel, make_channel
from qpanoise.eavesdrop import BellCoeffs
from qpanoise.qstate import PurificationAborted


class Wire(enum.IntEnum):
    """The four wires of the purification circuit, top to bottom."""

    ALICE_CONTROL = 0
    BOB_CONTROL = 1
    ALICE_TARGET = 2
    BOB_TARGET = 3


WIRE_NAMES = {
    Wire.ALICE_CONTROL: "alice-control",
    Wire.BOB_CONTROL: "bob-control",
    Wire.ALICE_TARGET: "alice-target",
    Wire.BOB_TARGET: "bob-target",
}


def wire_from_name(name: str) -> Wire:
    for wire, wire_name in WIRE_NAMES.items():
        if wire_name == name.strip():
            return wire
    valid = ", ".join(WIRE_NAMES.values())
    raise ValueError(f"unknown wire {name!r}; valid names: {valid}")


@dataclass(frozen=True)
class NoiseConfig:
    """Which channel disturbs the circuit and on which wire.

    The channel acts once per purification step, after the local rotations
    and before the CNOT gates (the only insertion point the protocol
    study uses).  ``channel=None`` runs the circuit noiselessly.
    """

    channel: NoiseChannel | None
    wire: Wire = Wire.ALICE_CONTROL


@dataclass(frozen=True)
class ProtocolTrace:
    """Per-iteration record of a purification run.

    Entry ``i`` of each tuple describes the state after ``i`` steps
    (entry 0 is the initial pair; ``step_prob[0]`` is fixed at 1).
    ``survival[i]`` is the product of the step probabilities up to ``i``
    and ``efficiency[i] = survival[i] / 2**i`` accounts for the target
    pairs consumed along the way.
    """

    fidelity: tuple[float, ...]
    step_prob: tuple[float, ...]
    survival: tuple[float, ...]
    efficiency: tuple[float, ...]
    states: tuple[np.ndarray, ...]

    @property
    def n_steps(self) -> int:
        return len(self.fidelity) - 1


class ThresholdError(RuntimeError):
    """Raised when the noise-threshold solver cannot produce a trustworthy root."""


_ALICE_ROTATION = gates.rotation(gates.X_AXIS, math.pi / 2.0)
_BOB_ROTATION = gates.rotation(gates.X_AXIS, -math.pi / 2.0)
_ROTATION_LAYER = np.kron(
    np.kron(_ALICE_ROTATION, _BOB_ROTATION), np.kron(_ALICE_ROTATION, _BOB_ROTATION)
)
_CNOT_LAYER = gates.embed(gates.cnot(), (Wire.ALICE_CONTROL, Wire.ALICE_TARGET), 4) @ gates.embed(
    gates.cnot(), (Wire.BOB_CONTROL, Wire.BOB_TARGET), 4
)
_TARGET_WIRES = (Wire.ALICE_TARGET, Wire.BOB_TARGET)


def ideal_step(coeffs: BellCoeffs) -> tuple[BellCoeffs, float]:
    """One purification step of the analytic Bell-diagonal recurrence."""
    a, b, c, d = coeffs.as_tuple()
    n = (a + d) ** 2 + (b + c) ** 2
    if n <= qstate.ABORT_THRESHOLD:
        raise PurificationAborted("protocol aborted, all pairs discarded")
    new = BellCoeffs(
        a=(a * a + d * d) / n,
        b=2.0 * a * d / n,
        c=(b * b + c * c) / n,
        d=2.0 * b * c / n,
    )
    return new, float(min(n, 1.0))


def run_ideal(f: float, n_steps: int) -> ProtocolTrace:
    """Iterate the analytic recurrence from the attacked pair at intrusion ``f``."""
    if n_steps < 1:
        raise ValueError("at least one purification step is required")
    state, coeffs = eavesdrop.initial_pair(f)
    fidelity = [coeffs.a]
    step_prob = [1.0]
    survival = [1.0]
    efficiency = [1.0]
    states = [state]
    for i in range(1, n_steps + 1):
        coeffs, p = ideal_step(coeffs)
        fidelity.append(coeffs.a)
        step_prob.append(p)
        survival.append(survival[-1] * p)
        efficiency.append(survival[-1] / 2.0**i)
        states.append(eavesdrop.bell_diagonal(coeffs))
    return ProtocolTrace(
        fidelity=tuple(fidelity),
        step_prob=tuple(step_prob),
        survival=tuple(survival),
        efficiency=tuple(efficiency),
        states=tuple(states),
    )


def noisy_step(
    pair: np.ndarray, noise: NoiseConfig | None = None
) -> tuple[np.ndarray, float]:
    """One exact circuit step on ``pair`` tensored with a copy of itself.

    Returns the surviving control-pair state and the coincidence
    probability; raises PurificationAborted when nothing survives.
    """
    pair = np.asarray(pair, dtype=complex)
    if pair.shape != (4, 4):
        raise ValueError("noisy_step expects a two-qubit pair state")
    rho = qstate.tensor(pair, pair)
    rho = _ROTATION_LAYER @ rho @ _ROTATION_LAYER.conj().T
    if noise is not None and noise.channel is not None:
        rho = channels.apply(noise.channel, rho, qubit=int(noise.wire))
    rho = _CNOT_LAYER @ rho @ _CNOT_LAYER.conj().T
    return qstate.postselect_coincide(rho, _TARGET_WIRES)


def run_noisy(f: float, noise: NoiseConfig | None, n_steps: int) -> ProtocolTrace:
    """Iterate the exact four-qubit circuit from the attacked pair."""
    if n_steps < 1:
        raise ValueError("at least one purification step is required")
    state, coeffs = eavesdrop.initial_pair(f)
    fidelity = [coeffs.a]
    step_prob = [1.0]
    survival = [1.0]
    efficiency = [1.0]
    states = [state]
    for i in range(1, n_steps + 1):
        state, p = noisy_step(state, noise)
        fidelity.append(qstate.fidelity_phi_plus(state))
        step_prob.append(p)
        survival.append(survival[-1] * p)
        efficiency.append(survival[-1] / 2.0**i)
        states.append(state)
    return ProtocolTrace(
        fidelity=tuple(fidelity),
        step_prob=tuple(step_prob),
        survival=tuple(survival),
        efficiency=tuple(efficiency),
        states=tuple(states),
    )


def threshold_theta(
    kind: ChannelKind,
    f: float,
    n_steps: int,
    target: float,
    wire: Wire = Wire.ALICE_CONTROL,
    sign: int = 1,
    rel_tol: float = 1e-3,
) -> float:
    """Noise strength at which the final deviation 1-F(n) reaches ``target``.

    A 32-point pre-pass over [0, theta_max] locates the first crossing and
    checks that 1-F grows monotonically up to it; bisection then refines
    the root until 1-F matches ``target`` within ``rel_tol`` relative.
    """
    if target <= 0.0:
        raise ValueError("target deviation must be positive")

    def deviation(theta: float) -> float:
        cfg = NoiseConfig(make_channel(kind, theta, sign), wire)
        return 1.0 - run_noisy(f, cfg, n_steps).fidelity[-1]

    grid = np.linspace(0.0, channels.max_theta(kind), 32)
    values = [deviation(theta) for theta in grid]
    if values[0] >= target:
        raise ThresholdError(
            f"target unreachable: noiseless 1-F(n) = {values[0]:.6g} "
            f"already exceeds target {target:.6g}"
        )
    crossing = next((i for i in range(1, len(grid)) if values[i] >= target), None)
    if crossing is None:
        raise ThresholdError(
            f"not bracketed: 1-F(n) stays below target {target:.6g} "
            f"up to theta = {grid[-1]:.6g}"
        )
    for i in range(crossing):
        if values[i + 1] < values[i] - 1e-12:
            raise ThresholdError(
                "non-monotone: 1-F(n; theta) decreases inside the bracket "
                f"near theta = {grid[i]:.6g}"
            )
    lo, hi = grid[crossing - 1], grid[crossing]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        value = deviation(mid)
        if abs(value - target) <= rel_tol * target:
            return float(mid)
        if value < target:
            lo = mid
        else:
            hi = mid
    raise ThresholdError("bisection failed to converge")
