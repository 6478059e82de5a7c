"""Quantum Fisher information and estimation gain for mixed-state
Pauli-channel parameter estimation, with separability and discord
diagnostics and Monte Carlo validation of the Cramér-Rao bound."""

from . import channels, correlations, linop, mc, protocol, qfi
from .channels import (
    BlockPair,
    ChannelSpec,
    apply_pauli_channel,
    bitstring_weight,
    blocks_to_dense,
    bloch_state,
    correlated_state,
    extended_channel_state,
    post_channel_blocks,
    preparation_unitary,
    prepared_state_blocks,
)
from .correlations import (
    BellDiagonalCoeffs,
    DiscordReport,
    bell_diagonalize,
    discord_prep,
    discord_protocol,
    discord_rmu,
    discord_xstate,
    is_separable_ppt,
    rho_final_two_qubit,
    separability_threshold,
)
from .linop import (
    Spectrum,
    hermitian_eig,
    partial_trace,
    partial_transpose,
    tensor,
)
from .mc import ExperimentConfig, ExperimentResult, classical_fisher, outcome_probs, run_experiment
from .protocol import (
    ProtocolPoint,
    WeightPair,
    gain,
    gain_limit_r0,
    gain_limit_r1,
    gain_max,
    gain_min,
    gain_two_qubit,
    lambda_from_t2,
    lambda_threshold_gain_n,
    qfi_correlated,
    stationary_polarizations,
    weight_pair,
)
from .qfi import (
    SldResult,
    qfi_independent_opt,
    qfi_single_use,
    qfi_upper_bound,
    sld_2x2,
    sld_block_sum,
    sld_eig,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiagonalCoeffs",
    "BlockPair",
    "ChannelSpec",
    "DiscordReport",
    "ExperimentConfig",
    "ExperimentResult",
    "ProtocolPoint",
    "SldResult",
    "Spectrum",
    "WeightPair",
    "apply_pauli_channel",
    "bell_diagonalize",
    "bitstring_weight",
    "blocks_to_dense",
    "bloch_state",
    "channels",
    "classical_fisher",
    "correlated_state",
    "correlations",
    "discord_prep",
    "discord_protocol",
    "discord_rmu",
    "discord_xstate",
    "extended_channel_state",
    "gain",
    "gain_limit_r0",
    "gain_limit_r1",
    "gain_max",
    "gain_min",
    "gain_two_qubit",
    "hermitian_eig",
    "is_separable_ppt",
    "lambda_from_t2",
    "lambda_threshold_gain_n",
    "linop",
    "mc",
    "outcome_probs",
    "partial_trace",
    "partial_transpose",
    "post_channel_blocks",
    "preparation_unitary",
    "prepared_state_blocks",
    "protocol",
    "qfi",
    "qfi_correlated",
    "qfi_independent_opt",
    "qfi_single_use",
    "qfi_upper_bound",
    "rho_final_two_qubit",
    "run_experiment",
    "separability_threshold",
    "sld_2x2",
    "sld_block_sum",
    "sld_eig",
    "stationary_polarizations",
    "tensor",
    "weight_pair",
]
