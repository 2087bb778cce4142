"""Dense density-matrix algebra for registers of one to four qubits.

States are plain complex numpy arrays.  Bloch convention:
rho = (I + x*sigma_x + y*sigma_y + z*sigma_z)/2, so |0><0| sits at z = +1.
All operations are pure functions; measurement is handled by exact
projection and branch summation, never by sampling.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from qpanoise import gates

#: tolerance for structural invariants (hermiticity, trace, norms)
STRUCTURAL_TOL = 1e-12
#: slack allowed below zero on the smallest eigenvalue of a valid state
POSITIVITY_SLACK = 1e-10
#: postselection probabilities below this abort the protocol
ABORT_THRESHOLD = 1e-14
#: largest register dimension handled anywhere in the package (4 qubits)
MAX_DIM = 16

PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
PHI_MINUS = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)
PSI_PLUS = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2.0)
PSI_MINUS = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)


class PurificationAborted(RuntimeError):
    """Raised when a postselection keeps essentially no probability mass."""


def n_qubits(dim: int) -> int:
    """Number of qubits for a register dimension in {2, 4, 8, 16}."""
    n = int(dim).bit_length() - 1
    if dim < 2 or dim > MAX_DIM or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two in [2, {MAX_DIM}]")
    return n


def basis_ket(index: int, dim: int) -> np.ndarray:
    """Computational-basis column vector |index> in a ``dim``-dimensional space."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    ket = np.zeros(dim, dtype=complex)
    ket[index] = 1.0
    return ket


def pure_state(amplitudes: Sequence[complex]) -> np.ndarray:
    """Validate a state vector (unit norm, power-of-two length)."""
    psi = np.asarray(amplitudes, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("state vector must be one-dimensional")
    n_qubits(psi.shape[0])
    if abs(np.vdot(psi, psi).real - 1.0) > STRUCTURAL_TOL:
        raise ValueError("state vector is not normalized")
    return psi


def projector(psi: Sequence[complex]) -> np.ndarray:
    """Density matrix |psi><psi| of a pure state."""
    psi = pure_state(psi)
    return np.outer(psi, psi.conj())


def check_density_matrix(rho: np.ndarray) -> None:
    """Raise ValueError naming the violated invariant, if any.

    A valid state is Hermitian and unit-trace within 1e-12 and has smallest
    eigenvalue >= -1e-10.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    n_qubits(rho.shape[0])
    if np.max(np.abs(rho - rho.conj().T)) > STRUCTURAL_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > STRUCTURAL_TOL or abs(np.trace(rho).imag) > STRUCTURAL_TOL:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -POSITIVITY_SLACK:
        raise ValueError("density matrix is not positive semidefinite")


def density_matrix(entries: np.ndarray) -> np.ndarray:
    """Convert to a complex array and validate it as a density matrix."""
    rho = np.asarray(entries, dtype=complex)
    check_density_matrix(rho)
    return rho


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the factor ``a`` occupies the more significant qubits."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise ValueError(f"tensor product dimension {dim} exceeds the {MAX_DIM} cap")
    n_qubits(dim)
    return np.kron(a, b)


def partial_trace(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced state on the ``keep`` qubits, ordered as listed.

    ``keep`` must be a nonempty proper subset of the register's qubits.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho.shape[0])
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise ValueError("kept qubits must be distinct")
    if not keep or len(keep) >= n:
        raise ValueError("keep must be a nonempty proper subset of the qubits")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"kept qubits must lie in [0, {n - 1}]")
    rest = [q for q in range(n) if q not in keep]
    perm = keep + rest
    t = rho.reshape((2,) * (2 * n))
    t = t.transpose(perm + [n + p for p in perm])
    d_keep = 2 ** len(keep)
    d_rest = 2 ** len(rest)
    t = t.reshape(d_keep, d_rest, d_keep, d_rest)
    return np.einsum("arbr->ab", t)


def apply_unitary(rho: np.ndarray, u: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Conjugate ``rho`` by ``u`` acting on ``targets`` (listed slot order)."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho.shape[0])
    w = gates.embed(u, targets, n)
    return w @ rho @ w.conj().T


def bloch_of(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (x, y, z) of a single-qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("Bloch coordinates are defined for single-qubit states only")
    return np.array(
        [
            np.trace(rho @ gates.PAULI_X).real,
            np.trace(rho @ gates.PAULI_Y).real,
            np.trace(rho @ gates.PAULI_Z).real,
        ]
    )


def state_of(r: Sequence[float]) -> np.ndarray:
    """Single-qubit state with Bloch vector ``r`` (must lie in the unit ball)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("Bloch vector must have three components")
    if r @ r > 1.0 + POSITIVITY_SLACK:
        raise ValueError("Bloch vector lies outside the unit ball")
    return 0.5 * (
        gates.IDENTITY + r[0] * gates.PAULI_X + r[1] * gates.PAULI_Y + r[2] * gates.PAULI_Z
    )


def fidelity_phi_plus(rho: np.ndarray) -> float:
    """Overlap <phi+|rho|phi+> of a two-qubit state with the ideal EPR pair."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("fidelity_phi_plus expects a two-qubit state")
    value = np.vdot(PHI_PLUS, rho @ PHI_PLUS).real
    return float(min(max(value, 0.0), 1.0))


def postselect_coincide(
    rho: np.ndarray, targets: Sequence[int]
) -> tuple[np.ndarray, float]:
    """Project two qubits onto coinciding z outcomes and discard them.

    Both coinciding branches (|00> and |11> on ``targets``) are kept and
    summed, the targets are traced out and the survivor renormalized.
    Returns ``(state, p)`` where ``p`` is the total coincidence probability.
    Raises PurificationAborted when essentially no probability survives.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho.shape[0])
    targets = list(targets)
    if len(targets) != 2 or len(set(targets)) != 2:
        raise ValueError("exactly two distinct target qubits must be measured")
    if any(q < 0 or q >= n for q in targets):
        raise ValueError(f"target qubits must lie in [0, {n - 1}]")
    keep = [q for q in range(n) if q not in targets]
    d_keep = 2 ** len(keep)
    unnormalized = np.zeros((d_keep, d_keep), dtype=complex)
    p = 0.0
    for outcome in (0, 1):
        pin = projector(basis_ket(outcome, 2))
        proj = gates.embed(np.kron(pin, pin), targets, n)
        branch = proj @ rho @ proj
        p += np.trace(branch).real
        unnormalized += partial_trace(branch, keep)
    if p < ABORT_THRESHOLD:
        raise PurificationAborted("protocol aborted, all pairs discarded")
    return unnormalized / p, float(min(p, 1.0))
