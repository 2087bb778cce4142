"""The isotropic Buzek-Hillery copying machine.

Eve intercepts the qubit Alice sends to Bob, entangles it with a prepared
two-qubit register through the copying unitary, keeps one imperfect clone
and forwards the other.  Both clones carry the input Bloch vector shrunk
by a uniform ratio (r_b for Bob, r_e for Eve), and the surviving
Alice-Bob pair is diagonal in the Bell basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qpanoise import gates, qstate

#: machine amplitude at zero intrusion (Bob receives the qubit untouched)
ALPHA_NO_INTRUSION = 1.0 / math.sqrt(2.0)
#: machine amplitude at maximum intrusion (both clones identical)
ALPHA_MAX_INTRUSION = 2.0 / math.sqrt(6.0)


@dataclass(frozen=True)
class CloningParams:
    """Amplitudes of the copying machine's prepared pair plus derived ratios.

    The prepared two-qubit state is alpha|00> + beta|01> + gamma|10> +
    delta|11| with gamma = 0 for isotropic cloning; r_b = 2*alpha*delta and
    r_e = 2*alpha*beta are the Bloch-vector shrink ratios of Bob's and
    Eve's clones.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    f_alpha: float
    r_b: float
    r_e: float


@dataclass(frozen=True)
class BellCoeffs:
    """Weights (a, b, c, d) of a Bell-diagonal two-qubit state on
    (phi+, phi-, psi+, psi-)."""

    a: float
    b: float
    c: float
    d: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def params_from_intrusion(f: float) -> CloningParams:
    """Machine amplitudes for intrusion level ``f`` in [0, 1].

    f = 0 leaves the transmitted qubit untouched; f = 1 is the symmetric
    machine where Eve's clone equals Bob's.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError("intrusion parameter must lie in [0, 1]")
    alpha = ALPHA_NO_INTRUSION + f * (ALPHA_MAX_INTRUSION - ALPHA_NO_INTRUSION)
    # the radicand reaches exactly zero at maximum intrusion; clamp rounding
    root = math.sqrt(max(0.5 - 0.75 * alpha * alpha, 0.0))
    beta = alpha / 2.0 - root
    delta = alpha / 2.0 + root
    return CloningParams(
        alpha=alpha,
        beta=beta,
        gamma=0.0,
        delta=delta,
        f_alpha=f,
        r_b=2.0 * alpha * delta,
        r_e=2.0 * alpha * beta,
    )


def intrusion_from_alpha(alpha: float) -> float:
    """Inverse of the affine alpha(f) map."""
    return (alpha - ALPHA_NO_INTRUSION) / (ALPHA_MAX_INTRUSION - ALPHA_NO_INTRUSION)


def cloning_unitary() -> np.ndarray:
    """The 8x8 copying unitary on (system, clone, ancilla).

    Basis action: flip both lower qubits iff the system is set, then flip
    the system iff the clone is set, then iff the ancilla is set.
    """
    w = np.zeros((8, 8), dtype=complex)
    for src in range(8):
        sys_bit = (src >> 2) & 1
        clone_bit = (src >> 1) & 1
        anc_bit = src & 1
        clone_bit ^= sys_bit
        anc_bit ^= sys_bit
        sys_bit ^= clone_bit
        sys_bit ^= anc_bit
        w[(sys_bit << 2) | (clone_bit << 1) | anc_bit, src] = 1.0
    return w


def cloning_cnot_sequence() -> tuple[np.ndarray, ...]:
    """The copying unitary as four CNOTs, in application order."""
    gate = gates.cnot()
    return (
        gates.embed(gate, (0, 1), 3),
        gates.embed(gate, (0, 2), 3),
        gates.embed(gate, (1, 0), 3),
        gates.embed(gate, (2, 0), 3),
    )


def machine_pair_state(params: CloningParams) -> np.ndarray:
    """State vector of the two-qubit register Eve prepares."""
    return np.array(
        [params.alpha, params.beta, params.gamma, params.delta], dtype=complex
    )


def clone(
    rho: np.ndarray, params: CloningParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Clone a single-qubit state (pure or mixed, by linearity).

    Returns the joint three-qubit state and the reduced states of Bob's
    clone (the system wire) and Eve's clone.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("clone expects a single-qubit state")
    prepared = qstate.projector(machine_pair_state(params))
    joint = qstate.apply_unitary(qstate.tensor(rho, prepared), cloning_unitary(), (0, 1, 2))
    rho_b = qstate.partial_trace(joint, (0,))
    rho_e = qstate.partial_trace(joint, (1,))
    return joint, rho_b, rho_e


def bell_diagonal(coeffs: BellCoeffs) -> np.ndarray:
    """Two-qubit state a*P(phi+) + b*P(phi-) + c*P(psi+) + d*P(psi-)."""
    return (
        coeffs.a * np.outer(qstate.PHI_PLUS, qstate.PHI_PLUS.conj())
        + coeffs.b * np.outer(qstate.PHI_MINUS, qstate.PHI_MINUS.conj())
        + coeffs.c * np.outer(qstate.PSI_PLUS, qstate.PSI_PLUS.conj())
        + coeffs.d * np.outer(qstate.PSI_MINUS, qstate.PSI_MINUS.conj())
    )


def bell_coeffs_of(rho: np.ndarray) -> BellCoeffs:
    """Bell-basis diagonal of a two-qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("Bell coefficients are defined for two-qubit states")
    return BellCoeffs(
        a=float(np.vdot(qstate.PHI_PLUS, rho @ qstate.PHI_PLUS).real),
        b=float(np.vdot(qstate.PHI_MINUS, rho @ qstate.PHI_MINUS).real),
        c=float(np.vdot(qstate.PSI_PLUS, rho @ qstate.PSI_PLUS).real),
        d=float(np.vdot(qstate.PSI_MINUS, rho @ qstate.PSI_MINUS).real),
    )


def initial_pair(f: float) -> tuple[np.ndarray, BellCoeffs]:
    """Alice-Bob pair state after the attack at intrusion level ``f``.

    Built from the closed-form Bell coefficients a = (alpha+delta)^2/2,
    b = (alpha-delta)^2/2, c = (beta+gamma)^2/2, d = (beta-gamma)^2/2.
    """
    p = params_from_intrusion(f)
    coeffs = BellCoeffs(
        a=0.5 * (p.alpha + p.delta) ** 2,
        b=0.5 * (p.alpha - p.delta) ** 2,
        c=0.5 * (p.beta + p.gamma) ** 2,
        d=0.5 * (p.beta - p.gamma) ** 2,
    )
    return bell_diagonal(coeffs), coeffs


def initial_pair_circuit(f: float) -> np.ndarray:
    """Independent route to the attacked pair: run the full four-qubit
    circuit (ideal EPR pair, copying unitary on Bob's half) and trace out
    Eve's two qubits."""
    p = params_from_intrusion(f)
    psi = np.kron(qstate.PHI_PLUS, machine_pair_state(p))
    rho = qstate.projector(psi)
    # wires: Alice, Bob (attacked in transit), Eve's clone, Eve's ancilla
    rho = qstate.apply_unitary(rho, cloning_unitary(), (1, 2, 3))
    return qstate.partial_trace(rho, (0, 1))
