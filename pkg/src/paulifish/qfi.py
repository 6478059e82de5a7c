"""Score operators and quantum Fisher information, by three routes.

The closed 2x2 route needs no eigensolve and branches on
alpha = Tr(A^2) - (Tr A)^2; orthogonal-support pieces add; the
eigendecomposition route is the general oracle
L_ij = 2 <i|drho|j> / (p_i + p_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linop

#: Branch threshold for alpha = Tr(A^2) - (Tr A)^2 in the 2x2 route.
ALPHA_TOL = 1e-12

#: Default support cutoff on eigenvalue sums in the eigendecomposition route.
SUPPORT_TOL = linop.EIGENVALUE_ZERO_CUTOFF


@dataclass(frozen=True)
class SldResult:
    """A score operator L and the Fisher information H = Tr(drho L)."""

    L: np.ndarray
    H: float


def _real_trace(a: np.ndarray) -> float:
    return float(np.trace(a).real)


def sld_2x2(a: np.ndarray, da: np.ndarray) -> SldResult:
    """Score operator of a differentiable 2x2 Hermitian family, eigensolve-free.

    ``da`` is the analytic parameter derivative of ``a``. Requires
    Tr(a) != 0; the alpha = 0 branch arises for pure states.
    """
    a = np.asarray(a, dtype=complex)
    da = np.asarray(da, dtype=complex)
    if a.shape != (2, 2) or da.shape != (2, 2):
        raise ValueError("sld_2x2 expects 2x2 operators")
    tr = _real_trace(a)
    if abs(tr) <= 1e-12:
        raise ValueError(f"trace {tr:.3e} is too close to zero for the 2x2 route")
    dtr = _real_trace(da)
    alpha = _real_trace(a @ a) - tr * tr
    dalpha = 2.0 * _real_trace(a @ da) - 2.0 * tr * dtr
    if abs(alpha) < ALPHA_TOL:
        L = (2.0 * da - (dtr / tr) * a) / tr
    else:
        L = (2.0 * da - (dalpha / alpha) * a) / tr + (
            dalpha / alpha - dtr / tr
        ) * np.eye(2)
    return SldResult(L=L, H=_real_trace(da @ L))


def sld_block_sum(
    parts: Sequence[SldResult | tuple],
    rhos: Optional[Sequence[np.ndarray]] = None,
) -> SldResult:
    """Combine score operators of orthogonal-support pieces: L and H both add.

    Each part is an SldResult (or (L, H) pair) already embedded in the full
    space. Passing the pieces' density blocks as ``rhos`` turns on a pairwise
    support-orthogonality check.
    """
    if not parts:
        raise ValueError("sld_block_sum needs at least one part")
    ls, hs = [], []
    for p in parts:
        l, h = (p.L, p.H) if isinstance(p, SldResult) else p
        ls.append(np.asarray(l, dtype=complex))
        hs.append(float(h))
    shape = ls[0].shape
    if any(l.shape != shape for l in ls):
        raise ValueError("score operators have mismatched dimensions")
    if rhos is not None:
        for i in range(len(rhos)):
            for j in range(i + 1, len(rhos)):
                overlap = linop.frobenius_max(rhos[i] @ rhos[j])
                if overlap > 1e-10:
                    raise ValueError(
                        f"blocks {i} and {j} are not support-orthogonal "
                        f"(max overlap {overlap:.3e})"
                    )
    return SldResult(L=sum(ls), H=sum(hs))


def sld_eig(
    rho: np.ndarray, drho: np.ndarray, tol: float = SUPPORT_TOL
) -> SldResult:
    """General score operator from the eigendecomposition of rho.

    Pairs with p_i + p_j <= tol contribute nothing; if the derivative has
    weight above sqrt(tol) between two such null directions the Fisher
    information is ill-defined and this raises.
    """
    rho = np.asarray(rho, dtype=complex)
    drho = np.asarray(drho, dtype=complex)
    dev = linop.frobenius_max(drho - linop.dagger(drho))
    if dev > 1e-9:
        raise ValueError(f"drho is not Hermitian: max deviation {dev:.3e}")
    spec = linop.hermitian_eig(rho)
    p = spec.eigenvalues
    v = spec.eigenvectors
    m = linop.dagger(v) @ drho @ v
    psum = p[:, None] + p[None, :]
    included = psum > tol
    bad = ~included & (np.abs(m) > math.sqrt(tol))
    if np.any(bad):
        worst = float(np.max(np.abs(m[bad])))
        raise ValueError(
            "Fisher information ill-defined: derivative weight "
            f"{worst:.3e} between null directions of rho"
        )
    l_eig = np.zeros_like(m)
    l_eig[included] = 2.0 * m[included] / psum[included]
    h = float(np.sum(2.0 * np.abs(m[included]) ** 2 / psum[included]))
    return SldResult(L=v @ l_eig @ linop.dagger(v), H=h)


# ---------------------------------------------------------------------------
# Closed forms for the single-qubit channel


def _check_lambda(lam: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    return float(lam)


def _reject_pure_corner(r: float, lam: float) -> None:
    if (lam == 0.0 or lam == 1.0) and r >= 1.0 - 1e-12:
        raise ValueError(
            "pure state with lam in {0, 1} is outside the closed form's domain"
        )


def qfi_single_use(v, lam: float) -> float:
    """Fisher information of one phase-flip use on the state (I + r.sigma)/2.

        H = 4 (1-rz^2)(r^2-rz^2) / [(1-2 lam)^2 (1-r^2) + 4 lam (1-lam)(1-rz^2)]

    Maximal over orientations at rz = 0.
    """
    lam = _check_lambda(lam)
    rx, ry, rz = (float(c) for c in v)
    r2 = rx * rx + ry * ry + rz * rz
    if r2 > 1.0 + 1e-12:
        raise ValueError(f"Bloch vector norm {math.sqrt(r2)} exceeds 1")
    _reject_pure_corner(math.sqrt(r2), lam)
    num = 4.0 * (1.0 - rz * rz) * (r2 - rz * rz)
    if num <= 0.0:
        return 0.0
    den = (1.0 - 2.0 * lam) ** 2 * (1.0 - r2) + 4.0 * lam * (1.0 - lam) * (
        1.0 - rz * rz
    )
    return num / den


def qfi_independent_opt(r: float, lam: float, m: int) -> float:
    """Best independent-use Fisher information, 4 r^2 m / (1 - (1-2 lam)^2 r^2)."""
    lam = _check_lambda(lam)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"polarization must lie in [0, 1], got {r}")
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    _reject_pure_corner(r, lam)
    return 4.0 * r * r * m / (1.0 - (1.0 - 2.0 * lam) ** 2 * r * r)


def qfi_upper_bound(lam: float, m: int) -> float:
    """Absolute bound m / (lam (1-lam)); infinite at the interval endpoints."""
    lam = _check_lambda(lam)
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if lam == 0.0 or lam == 1.0:
        return math.inf
    return m / (lam * (1.0 - lam))
