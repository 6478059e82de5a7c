"""Two-qubit correlation diagnostics for the protocol's pre-measurement state.

Separability via the positive-partial-transpose test with its closed-form
polarization threshold, and quantum discord through the Bell-diagonal
(X-state) closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import channels, linop

#: Default tolerance on the minimum partial-transpose eigenvalue.
PPT_TOL = 1e-10

#: Residual allowed when forcing the state into Bell-diagonal form.
BELL_RESIDUAL_TOL = 1e-10


def _xlog2(v: float) -> float:
    # 0 log2 0 := 0
    return v * math.log2(v) if v > 0.0 else 0.0


@dataclass(frozen=True)
class BellDiagonalCoeffs:
    """Coefficients of (1/4)(I + c1 XX + c2 YY + c3 ZZ)."""

    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class DiscordReport:
    """Quantum discord in bits, the dominant |c_j|, and the four spectral
    combinations 1 -+ c1 -+ c2 -+ c3 (each with an odd number of minuses)."""

    Q: float
    c: float
    lambdas: tuple[float, float, float, float]


def rho_final_two_qubit(r: float, lam: float, m: int) -> np.ndarray:
    """Dense two-qubit state with off-diagonal scale (1-2 lam)**m.

    For m <= 2 this is exactly the post-channel block reconstruction; larger
    m extends the same matrix family, which the correlation diagnostics
    treat for any invocation count.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    scale = (1.0 - 2.0 * lam) ** m
    blocks = [
        replace(b, offdiag_scale=scale) for b in channels.prepared_state_blocks(2, r)
    ]
    return channels.blocks_to_dense(blocks)


def is_separable_ppt(rho: np.ndarray, tol: float = PPT_TOL) -> tuple[bool, float]:
    """PPT test: separable iff the partial transpose stays positive.

    Returns (verdict, minimum partial-transpose eigenvalue).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("PPT separability test takes a two-qubit state")
    if not linop.is_density_operator(rho, tol=1e-8):
        raise ValueError("input is not a two-qubit density operator")
    pt = linop.partial_transpose(rho, [1])
    min_eig = float(np.min(np.linalg.eigvalsh((pt + linop.dagger(pt)) / 2)))
    return min_eig >= -tol, min_eig


def separability_threshold(m: int, lam: float) -> float:
    """Polarization below which the post-channel two-qubit state is separable:
    sqrt(mu**2 + 1) - |mu| with mu = (1-2 lam)**m."""
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    mu = abs((1.0 - 2.0 * lam) ** m)
    return math.sqrt(mu * mu + 1.0) - mu


_PAULIS = None


def _pauli_basis():
    global _PAULIS
    if _PAULIS is None:
        _PAULIS = (
            linop.identity(),
            linop.sigma_x(),
            linop.sigma_y(),
            linop.sigma_z(),
        )
    return _PAULIS


def bell_diagonalize(rho: np.ndarray) -> BellDiagonalCoeffs:
    """Rotate the post-channel state into Bell-diagonal form and read off c_j.

    Applies the local unitary with antidiagonal phases exp(+-i pi/8) to each
    qubit, then extracts every two-qubit Pauli coefficient. Raises if any
    coefficient outside the XX/YY/ZZ diagonal survives above tolerance.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("Bell diagonalization takes a two-qubit state")
    u = np.array(
        [[0.0, np.exp(1j * np.pi / 8)], [np.exp(-1j * np.pi / 8), 0.0]], dtype=complex
    )
    uu = linop.tensor([u, u])
    rot = uu @ rho @ linop.dagger(uu)
    paulis = _pauli_basis()
    coeffs = np.empty((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            coeffs[a, b] = np.trace(rot @ linop.tensor([paulis[a], paulis[b]])) / 4.0
    residual = 0.0
    for a in range(4):
        for b in range(4):
            if a == b:
                continue
            residual = max(residual, abs(coeffs[a, b]))
    residual = max(residual, float(np.max(np.abs(coeffs.diagonal()[1:].imag))))
    residual = max(residual, abs(coeffs[0, 0] - 0.25))
    if residual > BELL_RESIDUAL_TOL:
        raise ValueError(
            f"state is not Bell-diagonal after rotation (residual {residual:.3e})"
        )
    # state = (1/4)(I + sum c_j s_j x s_j), so c_j = Tr[rho (s_j x s_j)]
    return BellDiagonalCoeffs(
        c1=float(4.0 * coeffs[1, 1].real),
        c2=float(4.0 * coeffs[2, 2].real),
        c3=float(4.0 * coeffs[3, 3].real),
    )


def _clamped(v: float) -> float:
    if v < -1e-10:
        raise ValueError(f"spectral combination {v} is negative: invalid state")
    return max(v, 0.0)


def _discord_from(lambdas: tuple[float, ...], c: float) -> float:
    q = 0.25 * sum(_xlog2(v) for v in lambdas)
    q -= 0.5 * ((1.0 - c) * (math.log2(1.0 - c) if c < 1.0 else 0.0))
    q -= 0.5 * (1.0 + c) * math.log2(1.0 + c)
    if q < -1e-9:
        raise ValueError(f"discord came out negative ({q}): invalid coefficients")
    return max(q, 0.0)


def discord_xstate(coeffs: BellDiagonalCoeffs) -> DiscordReport:
    """Discord of a Bell-diagonal state from its generic closed form."""
    c1, c2, c3 = coeffs.c1, coeffs.c2, coeffs.c3
    lambdas = (
        _clamped(1.0 - c1 - c2 - c3),
        _clamped(1.0 - c1 + c2 + c3),
        _clamped(1.0 + c1 - c2 + c3),
        _clamped(1.0 + c1 + c2 - c3),
    )
    c = max(abs(c1), abs(c2), abs(c3))
    return DiscordReport(Q=_discord_from(lambdas, c), c=c, lambdas=lambdas)


def discord_rmu(r: float, mu: float) -> DiscordReport:
    """Discord of the protocol state with off-diagonal scale mu.

    Flipping the sign of mu leaves the discord unchanged, so |mu| is used
    throughout. The spectral combinations are
    1 - r^2 (twice), 1 +- 2 r |mu| + r^2, and c = max(r^2, r |mu|).
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    if abs(mu) > 1.0 + 1e-12:
        raise ValueError(f"off-diagonal scale must lie in [-1, 1], got {mu}")
    am = abs(mu)
    lambdas = (
        _clamped(1.0 - r * r),
        _clamped(1.0 + 2.0 * r * am + r * r),
        _clamped(1.0 - 2.0 * r * am + r * r),
        _clamped(1.0 - r * r),
    )
    c = max(r * r, r * am)
    return DiscordReport(Q=_discord_from(lambdas, c), c=c, lambdas=lambdas)


def discord_protocol(r: float, lam: float, m: int) -> DiscordReport:
    """Discord of the two-qubit post-channel state at (r, lam, m)."""
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    return discord_rmu(r, (1.0 - 2.0 * lam) ** m)


def discord_prep(r: float) -> float:
    """Discord of the prepared (pre-channel) state:
    (1+r)/2 log2(1+r) + (1-r)/2 log2(1-r), increasing in r."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"polarization must lie in [0, 1], got {r}")
    return 0.5 * (_xlog2(1.0 + r) + _xlog2(1.0 - r))
