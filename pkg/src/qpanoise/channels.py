"""The nine single-qubit noise channels, each kept in three synchronized
representations: a Kraus operator list, an affine map on Bloch vectors,
and a unitary dilation with a prepared ancilla.

Geometrically the channels are rotations of the Bloch sphere (about x, y
or z), deformations of the sphere into an ellipsoid (bit flip, bit-phase
flip, phase flip) and displacements of its center (along +-x, +-y, +z for
amplitude damping, -z for thermal excitation).  Displacements use the
minimum deformation compatible with complete positivity: the image
ellipsoid stays tangent to the sphere at one pole, which fixes the
semi-axes to (cos(theta), cos(theta), cos^2(theta)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from qpanoise import gates, qstate


class ChannelKind(enum.Enum):
    """Channel taxonomy; the value is the canonical CLI name."""

    ROTATION_X = "rot-x"
    ROTATION_Y = "rot-y"
    ROTATION_Z = "rot-z"
    BIT_FLIP = "bit-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"
    PHASE_FLIP = "phase-flip"
    DISPLACE_X = "disp-x"
    DISPLACE_Y = "disp-y"
    DISPLACE_Z_PLUS = "disp-z+"
    DISPLACE_Z_MINUS = "disp-z-"


ROTATION_KINDS = frozenset(
    {ChannelKind.ROTATION_X, ChannelKind.ROTATION_Y, ChannelKind.ROTATION_Z}
)
FLIP_KINDS = frozenset(
    {ChannelKind.BIT_FLIP, ChannelKind.BIT_PHASE_FLIP, ChannelKind.PHASE_FLIP}
)
DISPLACEMENT_KINDS = frozenset(
    {
        ChannelKind.DISPLACE_X,
        ChannelKind.DISPLACE_Y,
        ChannelKind.DISPLACE_Z_PLUS,
        ChannelKind.DISPLACE_Z_MINUS,
    }
)

_ROTATION_AXES = {
    ChannelKind.ROTATION_X: gates.X_AXIS,
    ChannelKind.ROTATION_Y: gates.Y_AXIS,
    ChannelKind.ROTATION_Z: gates.Z_AXIS,
}
_FLIP_PAULIS = {
    ChannelKind.BIT_FLIP: gates.PAULI_X,
    ChannelKind.BIT_PHASE_FLIP: gates.PAULI_Y,
    ChannelKind.PHASE_FLIP: gates.PAULI_Z,
}
# diagonal of the Bloch contraction for the flip channels: the symmetry
# axis keeps length 1, the other two shrink by cos(theta)
_FLIP_AXIS_INDEX = {
    ChannelKind.BIT_FLIP: 0,
    ChannelKind.BIT_PHASE_FLIP: 1,
    ChannelKind.PHASE_FLIP: 2,
}


@dataclass(frozen=True)
class NoiseChannel:
    """One noise channel in all three representations.

    ``kraus`` realizes rho -> sum_k F_k rho F_k^dagger; ``bloch_matrix`` and
    ``bloch_shift`` realize r -> M r + t on Bloch vectors; ``joint`` applied
    to system (qubit 0) tensor ``ancilla`` (qubit 1), followed by tracing
    out the ancilla, realizes the same map.  Arrays are read-only; channels
    are safe to share between threads.
    """

    kind: ChannelKind
    theta: float
    sign: int
    kraus: tuple[np.ndarray, ...]
    bloch_matrix: np.ndarray
    bloch_shift: np.ndarray
    ancilla: np.ndarray
    joint: np.ndarray

    @property
    def name(self) -> str:
        return self.kind.value


def channel_kind_from_name(name: str) -> ChannelKind:
    """Resolve a CLI channel name; the unicode minus sign is accepted."""
    normalized = name.strip().replace("−", "-")
    for kind in ChannelKind:
        if kind.value == normalized:
            return kind
    valid = ", ".join(k.value for k in ChannelKind)
    raise ValueError(f"unknown channel {name!r}; valid names: {valid}")


def max_theta(kind: ChannelKind) -> float:
    """Upper end of the admissible noise-strength range for ``kind``."""
    if kind in DISPLACEMENT_KINDS:
        return math.pi / 2.0
    return math.pi


def _check_theta(kind: ChannelKind, theta: float) -> None:
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    if kind in ROTATION_KINDS:
        return
    hi = max_theta(kind)
    if not 0.0 <= theta <= hi:
        raise ValueError(f"theta={theta:g} outside [0, {hi:g}] for {kind.value}")


def _damping_block(theta: float) -> np.ndarray:
    # partial swap of |10> toward |01> on (system, ancilla); tracing out the
    # ancilla leaves the amplitude damping channel on the system
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, s, 0.0],
            [0.0, -s, c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        dtype=complex,
    )


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def make_channel(kind: ChannelKind, theta: float, sign: int = 1) -> NoiseChannel:
    """Build a channel of the given kind and noise strength ``theta``.

    ``sign`` selects the direction for the x/y displacement channels and
    the sense of rotation for the rotation channels; flip channels and the
    two z displacements ignore it.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_theta(kind, theta)
    c, s = math.cos(theta), math.sin(theta)
    ket0 = np.array([1.0, 0.0], dtype=complex)

    if kind in ROTATION_KINDS:
        axis = _ROTATION_AXES[kind]
        u = gates.rotation(axis, sign * theta)
        kraus = (u,)
        m = gates.bloch_rotation(axis, sign * theta)
        t = np.zeros(3)
        ancilla = ket0
        joint = np.kron(u, gates.IDENTITY)
    elif kind in FLIP_KINDS:
        pauli = _FLIP_PAULIS[kind]
        half_c, half_s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        kraus = (half_c * gates.IDENTITY, half_s * pauli)
        diag = np.full(3, c)
        diag[_FLIP_AXIS_INDEX[kind]] = 1.0
        m = np.diag(diag)
        t = np.zeros(3)
        ancilla = np.array([half_c, half_s], dtype=complex)
        # ancilla-controlled Pauli on the system line
        p0 = np.outer(ket0, ket0)
        p1 = np.eye(2) - p0
        joint = np.kron(gates.IDENTITY, p0) + np.kron(pauli, p1)
    elif kind is ChannelKind.DISPLACE_Z_PLUS:
        kraus = (
            np.array([[1.0, 0.0], [0.0, c]], dtype=complex),
            np.array([[0.0, s], [0.0, 0.0]], dtype=complex),
        )
        m = np.diag([c, c, c * c])
        t = np.array([0.0, 0.0, s * s])
        ancilla = ket0
        joint = _damping_block(theta)
    elif kind is ChannelKind.DISPLACE_Z_MINUS:
        kraus = (
            np.array([[c, 0.0], [0.0, 1.0]], dtype=complex),
            np.array([[0.0, 0.0], [s, 0.0]], dtype=complex),
        )
        m = np.diag([c, c, c * c])
        t = np.array([0.0, 0.0, -s * s])
        ancilla = ket0
        flip = np.kron(gates.PAULI_X, gates.IDENTITY)
        joint = flip @ _damping_block(theta) @ flip
    else:  # DISPLACE_X / DISPLACE_Y
        if kind is ChannelKind.DISPLACE_X:
            u = np.array([[1.0, sign], [-sign, 1.0]], dtype=complex) / math.sqrt(2.0)
            kraus = (
                0.5 * np.array([[1.0 + c, sign * (1.0 - c)], [sign * (1.0 - c), 1.0 + c]]),
                0.5 * np.array([[-sign * s, s], [-s, sign * s]]),
            )
            m = np.diag([c * c, c, c])
            t = np.array([sign * s * s, 0.0, 0.0])
        else:
            # the Kraus pair with +i entries displaces along -y (the basis
            # change there is an x-rotation, which mirrors y), so the
            # internal sign is flipped to label kinds by actual direction
            w = -sign
            u = np.array([[1.0, w * 1.0j], [w * 1.0j, 1.0]], dtype=complex) / math.sqrt(2.0)
            kraus = (
                0.5
                * np.array([[1.0 + c, w * 1.0j * (1.0 - c)], [-w * 1.0j * (1.0 - c), 1.0 + c]]),
                0.5 * np.array([[w * 1.0j * s, s], [s, -w * 1.0j * s]]),
            )
            m = np.diag([c, c * c, c])
            t = np.array([0.0, sign * s * s, 0.0])
        ancilla = ket0
        # the system passes through U, the damping block, then U back
        pre = np.kron(u, gates.IDENTITY)
        post = np.kron(u.conj().T, gates.IDENTITY)
        joint = post @ _damping_block(theta) @ pre

    # drop exactly-zero operators (the sin(theta/2) term of a flip at theta=0)
    kraus = tuple(_freeze(np.asarray(f, dtype=complex)) for f in kraus if np.any(f))
    return NoiseChannel(
        kind=kind,
        theta=float(theta),
        sign=sign,
        kraus=kraus,
        bloch_matrix=_freeze(m.astype(float)),
        bloch_shift=_freeze(t.astype(float)),
        ancilla=_freeze(ancilla),
        joint=_freeze(joint),
    )


def apply(channel: NoiseChannel, rho: np.ndarray, qubit: int = 0) -> np.ndarray:
    """Kraus sum of the channel acting on one qubit of ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    n = qstate.n_qubits(rho.shape[0])
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index {qubit} out of range for {n} qubit(s)")
    if n == 1:
        ops = channel.kraus
    else:
        ops = [gates.embed(f, (qubit,), n) for f in channel.kraus]
    out = np.zeros_like(rho)
    for f in ops:
        out += f @ rho @ f.conj().T
    return out


def bloch_affine(channel: NoiseChannel) -> tuple[np.ndarray, np.ndarray]:
    """Affine Bloch-sphere representation ``(M, t)`` with r' = M r + t."""
    return channel.bloch_matrix, channel.bloch_shift


def bloch_image(channel: NoiseChannel, r: np.ndarray) -> np.ndarray:
    """Image of the Bloch vector ``r`` under the channel's affine map."""
    return channel.bloch_matrix @ np.asarray(r, dtype=float) + channel.bloch_shift


def dilate(channel: NoiseChannel) -> tuple[np.ndarray, np.ndarray]:
    """Unitary dilation ``(ancilla, joint)`` on system (qubit 0) + ancilla (qubit 1)."""
    return channel.ancilla, channel.joint


def apply_via_dilation(channel: NoiseChannel, rho: np.ndarray) -> np.ndarray:
    """Run a single-qubit state through the dilation circuit and trace the ancilla."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("the dilation route is defined for single-qubit states")
    anc = np.outer(channel.ancilla, channel.ancilla.conj())
    joint_state = channel.joint @ np.kron(rho, anc) @ channel.joint.conj().T
    return qstate.partial_trace(joint_state, (0,))


def kraus_from_dilation(joint: np.ndarray, ancilla: np.ndarray) -> tuple[np.ndarray, ...]:
    """Extract Kraus operators F_k = <k|_anc joint |ancilla>_anc."""
    t = np.asarray(joint, dtype=complex).reshape(2, 2, 2, 2)
    anc = np.asarray(ancilla, dtype=complex)
    # indices: (system out, ancilla out, system in, ancilla in)
    return tuple(np.einsum("sia,a->si", t[:, k, :, :], anc) for k in range(2))
