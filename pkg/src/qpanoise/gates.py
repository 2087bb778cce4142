"""Unitary building blocks: Pauli matrices, axis rotations, the CNOT gate,
and embedding of few-qubit operators into larger registers.

Qubit 0 is the most significant bit of a basis index everywhere in this
package, so |q0 q1 .. q_{n-1}> has index q0*2**(n-1) + .. + q_{n-1}.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

X_AXIS = (1.0, 0.0, 0.0)
Y_AXIS = (0.0, 1.0, 0.0)
Z_AXIS = (0.0, 0.0, 1.0)

_AXIS_NORM_TOL = 1e-9


def rotation(axis: Sequence[float], theta: float) -> np.ndarray:
    """Rotation through ``theta`` about the unit vector ``axis``.

    Returns cos(theta/2)*I - i*sin(theta/2)*(n.sigma); the Bloch-sphere
    action is a right-handed rotation by ``theta`` about ``axis``.
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > _AXIS_NORM_TOL:
        raise ValueError("rotation axis must be a unit 3-vector")
    n_dot_sigma = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
    return math.cos(theta / 2.0) * IDENTITY - 1.0j * math.sin(theta / 2.0) * n_dot_sigma


def bloch_rotation(axis: Sequence[float], theta: float) -> np.ndarray:
    """3x3 rotation matrix acting on Bloch vectors (Rodrigues form)."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > _AXIS_NORM_TOL:
        raise ValueError("rotation axis must be a unit 3-vector")
    c, s = math.cos(theta), math.sin(theta)
    cross = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return c * np.eye(3) + s * cross + (1.0 - c) * np.outer(n, n)


def cnot() -> np.ndarray:
    """Two-qubit CNOT, |x>|y> -> |x>|y^x|, control on the first (more
    significant) qubit."""
    return np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ],
        dtype=complex,
    )


def embed(op: np.ndarray, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Lift a k-qubit operator onto ``targets`` of an n-qubit register.

    Slot m of ``op`` acts on qubit ``targets[m]`` (slot 0 is the operator's
    most significant qubit); all other qubits see the identity.  Works for
    any square operator, not just unitaries.
    """
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError("target qubits must be distinct")
    if any(t < 0 or t >= n_qubits for t in targets):
        raise ValueError(f"target qubits must lie in [0, {n_qubits - 1}]")
    k = len(targets)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**k, 2**k):
        raise ValueError(f"operator dimension {op.shape} does not match {k} target qubit(s)")
    if k == n_qubits and targets == list(range(n_qubits)):
        return op.copy()
    rest = [q for q in range(n_qubits) if q not in targets]
    full = np.kron(op, np.eye(2 ** len(rest), dtype=complex))
    # `full` is ordered (targets..., rest...); permute axes back to 0..n-1.
    order = targets + rest
    perm = [order.index(q) for q in range(n_qubits)]
    tensor = full.reshape((2,) * (2 * n_qubits))
    tensor = tensor.transpose(perm + [n_qubits + p for p in perm])
    return np.ascontiguousarray(tensor.reshape(2**n_qubits, 2**n_qubits))


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)
