"""Pauli-channel evolution and the correlated-state preparation.

Covers the channel map rho -> (1-lam) rho + lam s_n rho s_n, its two-qubit
coin-toss dilation, the preparatory unitary (pairwise controlled-Z then a
Hadamard on every qubit), and the splitting of the prepared state into
two-dimensional blocks spanned by |x> and |N-x|.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import linop
from .linop import DIM_CAP, tensor


@dataclass(frozen=True)
class ChannelSpec:
    """One Pauli channel: axis, strength ``lam``, and invocation count ``m``."""

    axis: str
    lam: float
    m: int = 1

    def __post_init__(self):
        if self.axis not in ("x", "y", "z"):
            raise ValueError(f"axis must be 'x', 'y' or 'z', got {self.axis!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"channel strength must lie in [0, 1], got {self.lam}")
        if self.m < 1:
            raise ValueError(f"invocation count must be >= 1, got {self.m}")


def bloch_state(v) -> np.ndarray:
    """Single-qubit density operator (I + r.sigma)/2 for a Bloch vector r."""
    rx, ry, rz = (float(c) for c in v)
    norm = np.sqrt(rx * rx + ry * ry + rz * rz)
    if norm > 1.0 + 1e-12:
        raise ValueError(f"Bloch vector norm {norm} exceeds 1")
    return 0.5 * (
        linop.identity()
        + rx * linop.sigma_x()
        + ry * linop.sigma_y()
        + rz * linop.sigma_z()
    )


def apply_pauli_channel(
    rho: np.ndarray, spec: ChannelSpec, targets: Sequence[int]
) -> np.ndarray:
    """Apply the channel once per listed target qubit.

    ``len(targets)`` is the invocation count and must equal ``spec.m``.
    """
    rho = np.asarray(rho, dtype=complex)
    n = linop.num_qubits(rho)
    tgts = [int(t) for t in targets]
    if len(set(tgts)) != len(tgts):
        raise ValueError(f"duplicate channel targets in {tgts}")
    if any(t < 1 or t > n for t in tgts):
        raise ValueError(f"channel targets {tgts} out of range 1..{n}")
    if len(tgts) != spec.m:
        raise ValueError(
            f"spec counts m={spec.m} invocations but {len(tgts)} targets were given"
        )
    s = linop.pauli(spec.axis)
    out = rho
    for t in tgts:
        factors = [np.eye(2, dtype=complex)] * n
        factors[n - t] = s  # qubit t sits at list position n-t (qubit 1 last)
        p = tensor(factors)
        out = (1.0 - spec.lam) * out + spec.lam * (p @ out @ p)
    return out


def extended_channel_state(rho_channel: np.ndarray, lam: float) -> np.ndarray:
    """Two-qubit dilation of the phase-flip channel; ancilla is qubit 2.

    The ancilla starts in |0>, passes the coin-toss rotation, and a
    controlled-Z couples it to the channel qubit. The coin-toss is evaluated
    at 1-lam so that the amplitude routed to |1> (which fires the Z) is
    sqrt(lam): tracing out the ancilla then reproduces the channel at the
    same lam.
    """
    rho_channel = np.asarray(rho_channel, dtype=complex)
    if rho_channel.shape != (2, 2):
        raise ValueError("extended channel takes a single-qubit state")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    anc = np.zeros((2, 2), dtype=complex)
    anc[0, 0] = 1.0
    joint = tensor([anc, rho_channel])
    u = linop.controlled_z() @ tensor([linop.coin_toss(1.0 - lam), linop.identity()])
    return u @ joint @ linop.dagger(u)


# ---------------------------------------------------------------------------
# Preparatory unitary


def _pair_phases(n: int) -> np.ndarray:
    # (-1)**s with s = number of bit pairs both set = C(popcount, 2)
    d = 2**n
    pc = np.array([bin(z).count("1") for z in range(d)])
    return np.where((pc * (pc - 1) // 2) % 2, -1.0, 1.0)


def preparation_unitary(n: int) -> np.ndarray:
    """Controlled-Z on each distinct qubit pair, then Hadamard on every qubit."""
    if n < 2:
        raise ValueError(f"preparation needs at least 2 qubits, got {n}")
    if 2**n > DIM_CAP:
        raise linop.DimensionError(f"2**{n} exceeds the dense cap {DIM_CAP}")
    # the controlled-Z layer is diagonal: one -1 per pair of set bits
    cz_layer = np.diag(_pair_phases(n)).astype(complex)
    h_layer = tensor([linop.hadamard()] * n)
    return h_layer @ cz_layer


# ---------------------------------------------------------------------------
# Block decomposition of the prepared and post-channel states


def bitstring_weight(x: int, n: int, r: float) -> float:
    """Probability weight (1+r)**j (1-r)**(n-j) / 2**n, j = zero bits of x."""
    if not 0 <= x <= 2**n - 1:
        raise ValueError(f"x={x} out of range for {n} qubits")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    j = n - bin(x).count("1")
    return (1.0 + r) ** j * (1.0 - r) ** (n - j) / 2**n


@dataclass(frozen=True)
class BlockPair:
    """Weights of the 2-dimensional block spanned by |x> and |N-x>.

    The block matrix is
        diag_weight (|x><x| + |N-x><N-x|)
        + i offdiag_weight offdiag_scale (|x><N-x| - |N-x><x|)
    with offdiag_scale = 1 before the channel and (1-2 lam)**m after it.
    """

    x: int
    diag_weight: float
    offdiag_weight: float
    offdiag_scale: float = 1.0


def prepared_state_blocks(n: int, r: float) -> list[BlockPair]:
    """Blocks of the preparation unitary conjugating n identical
    y-polarized qubits."""
    if n < 2:
        raise ValueError(f"preparation needs at least 2 qubits, got {n}")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    big_n = 2**n - 1
    blocks = []
    for x in range((big_n - 1) // 2 + 1):
        fx, fnx = bitstring_weight(x, n, r), bitstring_weight(big_n - x, n, r)
        blocks.append(BlockPair(x, (fx + fnx) / 2, (fx - fnx) / 2, 1.0))
    return blocks


def _blocks_n(blocks: Sequence[BlockPair]) -> int:
    n = len(blocks).bit_length()
    if len(blocks) != 2 ** (n - 1):
        raise ValueError(f"{len(blocks)} blocks is not a power of two")
    return n


def post_channel_blocks(
    blocks: Sequence[BlockPair], lam: float, m: int
) -> list[BlockPair]:
    """Scale each off-diagonal by (1-2 lam)**m; diagonal weights are untouched.

    The channel acts on the m least significant qubits; since |x> and |N-x>
    differ in every bit, each invocation contributes one factor (1-2 lam).
    """
    n = _blocks_n(blocks)
    if not 1 <= m <= n:
        raise ValueError(f"invocation count m={m} must lie in 1..{n}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    scale = (1.0 - 2.0 * lam) ** m
    return [replace(b, offdiag_scale=b.offdiag_scale * scale) for b in blocks]


def blocks_to_dense(blocks: Sequence[BlockPair]) -> np.ndarray:
    """Assemble block weights into the dense density matrix."""
    n = _blocks_n(blocks)
    d = 2**n
    big_n = d - 1
    out = np.zeros((d, d), dtype=complex)
    for b in blocks:
        x, nx = b.x, big_n - b.x
        out[x, x] += b.diag_weight
        out[nx, nx] += b.diag_weight
        off = 1j * b.offdiag_weight * b.offdiag_scale
        out[x, nx] += off
        out[nx, x] -= off
    return out


def correlated_state(
    n: int, r: float, lam: float, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Dense post-channel state of the correlated protocol and its derivative.

    Returns (rho, drho/dlam). Only the off-diagonals depend on lam, through
    (1-2 lam)**m, whose derivative is -2m (1-2 lam)**(m-1).
    """
    blocks = prepared_state_blocks(n, r)
    rho = blocks_to_dense(post_channel_blocks(blocks, lam, m))
    dscale = -2.0 * m * (1.0 - 2.0 * lam) ** (m - 1)
    d = 2**n
    big_n = d - 1
    drho = np.zeros((d, d), dtype=complex)
    for b in blocks:
        off = 1j * b.offdiag_weight * dscale
        drho[b.x, big_n - b.x] += off
        drho[big_n - b.x, b.x] -= off
    return rho, drho
