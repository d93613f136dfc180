"""Exact few-qubit statevector simulator and protocol harness for
collapse-plus-restore signalling on entangled pairs, with channel
analysis and a small circuit language."""

from .statevector import (
    AMPLITUDE_ATOL,
    MAX_QUBITS,
    MIN_BRANCH_PROBABILITY,
    NORM_ATOL,
    GateKind,
    GateOp,
    MeasurementResult,
    RandomSource,
    StateVector,
    apply_gate,
    cnot,
    collapse_qubit,
    hadamard,
    measure_qubit,
    new_ground_state,
    not_gate,
    outcome_distribution,
)
from .protocol import (
    ALICE_QUBIT,
    BOB_QUBIT,
    AliceAction,
    BlockResult,
    ProtocolTrace,
    alice_step,
    bob_step,
    prepare_pair,
    restore,
    run_block,
    run_pair,
    transmit_message,
)
from .channel import (
    ANCILLA_QUBIT,
    BlockErrorEstimate,
    EmpiricalDistribution,
    OutcomeDistribution,
    ZChannel,
    ancilla_model_distribution,
    binary_entropy,
    block_error_probability,
    channel_capacity,
    exact_distribution,
    monte_carlo_block_error,
    monte_carlo_distribution,
    mutual_information,
    z_channel_capacity,
    z_channel_mutual_information,
)
from .dsl import (
    Circuit,
    Instruction,
    MeasurementRecord,
    ParseError,
    RunRecord,
    execute,
    load,
    parse,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "ALICE_QUBIT",
    "AMPLITUDE_ATOL",
    "ANCILLA_QUBIT",
    "AliceAction",
    "BOB_QUBIT",
    "BlockErrorEstimate",
    "BlockResult",
    "Circuit",
    "EmpiricalDistribution",
    "GateKind",
    "GateOp",
    "Instruction",
    "MAX_QUBITS",
    "MIN_BRANCH_PROBABILITY",
    "MeasurementRecord",
    "MeasurementResult",
    "NORM_ATOL",
    "OutcomeDistribution",
    "ParseError",
    "ProtocolTrace",
    "RandomSource",
    "RunRecord",
    "StateVector",
    "ZChannel",
    "alice_step",
    "ancilla_model_distribution",
    "apply_gate",
    "binary_entropy",
    "block_error_probability",
    "bob_step",
    "channel_capacity",
    "cnot",
    "collapse_qubit",
    "exact_distribution",
    "execute",
    "hadamard",
    "load",
    "measure_qubit",
    "monte_carlo_block_error",
    "monte_carlo_distribution",
    "mutual_information",
    "new_ground_state",
    "not_gate",
    "outcome_distribution",
    "parse",
    "prepare_pair",
    "render",
    "restore",
    "run_block",
    "run_pair",
    "transmit_message",
    "z_channel_capacity",
    "z_channel_mutual_information",
]
