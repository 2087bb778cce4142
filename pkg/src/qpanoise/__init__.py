"""Exact density-matrix study of single-qubit noise channels acting on the
quantum privacy amplification (QPA) entanglement-purification protocol."""

from qpanoise.channels import (
    ChannelKind,
    NoiseChannel,
    apply,
    bloch_affine,
    channel_kind_from_name,
    dilate,
    make_channel,
    max_theta,
)
from qpanoise.eavesdrop import (
    BellCoeffs,
    CloningParams,
    bell_coeffs_of,
    bell_diagonal,
    clone,
    cloning_cnot_sequence,
    cloning_unitary,
    initial_pair,
    initial_pair_circuit,
    params_from_intrusion,
)
from qpanoise.gates import cnot, embed, rotation
from qpanoise.qpa import (
    NoiseConfig,
    ProtocolTrace,
    ThresholdError,
    Wire,
    ideal_step,
    noisy_step,
    run_ideal,
    run_noisy,
    threshold_theta,
)
from qpanoise.qstate import (
    PurificationAborted,
    apply_unitary,
    bloch_of,
    fidelity_phi_plus,
    partial_trace,
    postselect_coincide,
    state_of,
    tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BellCoeffs",
    "ChannelKind",
    "CloningParams",
    "NoiseChannel",
    "NoiseConfig",
    "ProtocolTrace",
    "PurificationAborted",
    "ThresholdError",
    "Wire",
    "apply",
    "apply_unitary",
    "bell_coeffs_of",
    "bell_diagonal",
    "bloch_affine",
    "bloch_of",
    "channel_kind_from_name",
    "clone",
    "cloning_cnot_sequence",
    "cloning_unitary",
    "cnot",
    "dilate",
    "embed",
    "fidelity_phi_plus",
    "ideal_step",
    "initial_pair",
    "initial_pair_circuit",
    "make_channel",
    "max_theta",
    "noisy_step",
    "params_from_intrusion",
    "partial_trace",
    "postselect_coincide",
    "rotation",
    "run_ideal",
    "run_noisy",
    "state_of",
    "tensor",
    "threshold_theta",
]
