"""Closed forms for the correlated-state protocol.

Everything here is analytic in (n, m, r, lam): the protocol's Fisher
information, its gain over the best independent scheme, the gain's extremes
and small/large-polarization limits, stationary polarizations of the
two-qubit gain, the channel-strength threshold for an n-fold gain, and the
map from dephasing time to channel strength.

The lam dependence enters only through nu = (1-2 lam)**2. By convention
nu**(m-1) is 1 when m = 1 even at lam = 1/2 (continuity), which Python's
0.0**0 == 1.0 already provides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Largest qubit count for the analytic path (float binomials stay accurate).
ANALYTIC_N_CAP = 64


@dataclass(frozen=True)
class ProtocolPoint:
    """One evaluation point: n qubits, m invocations, polarization, strength."""

    n: int
    m: int
    r: float
    lam: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"protocol needs n >= 2 qubits, got {self.n}")
        if self.n > ANALYTIC_N_CAP:
            raise ValueError(f"n={self.n} exceeds the analytic cap {ANALYTIC_N_CAP}")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"invocations m={self.m} must lie in 1..{self.n}")
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"polarization must lie in [0, 1), got {self.r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"channel strength must lie in [0, 1], got {self.lam}")


@dataclass(frozen=True)
class WeightPair:
    """Difference and sum of the weight products across a bit-complement pair.

    diff  = (1+r)**j (1-r)**(n-j) - (1+r)**(n-j) (1-r)**j
    total = (1+r)**j (1-r)**(n-j) + (1+r)**(n-j) (1-r)**j

    diff changes sign under j -> n-j, total does not, and
    diff**2 = total**2 - 4 (1-r**2)**n exactly.
    """

    diff: float
    total: float


def weight_pair(n: int, j: int, r: float) -> WeightPair:
    if not 0 <= j <= n:
        raise ValueError(f"j={j} out of range 0..{n}")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    a = (1.0 + r) ** j * (1.0 - r) ** (n - j)
    b = (1.0 + r) ** (n - j) * (1.0 - r) ** j
    return WeightPair(diff=a - b, total=a + b)


def _binom(n: int, j: int) -> float:
    # multiplicative recurrence in floats; exact enough for n <= 64
    j = min(j, n - j)
    out = 1.0
    for i in range(1, j + 1):
        out = out * (n - j + i) / i
    return out


def _validate_nm(n: int, m: int) -> None:
    if n < 2 or n > ANALYTIC_N_CAP:
        raise ValueError(f"n={n} must lie in 2..{ANALYTIC_N_CAP}")
    if not 1 <= m <= n:
        raise ValueError(f"invocations m={m} must lie in 1..{n}")


def qfi_correlated(p: ProtocolPoint) -> float:
    """Fisher information of the correlated protocol.

        H = m^2 nu^(m-1) / 2^(n-1)
            * sum_j C(n,j) diff_j^2 total_j / (total_j^2 - nu^m diff_j^2)

    The denominator is evaluated as
    total^2 (1 - nu^m) + 4 nu^m (1-r^2)^n, exact by the WeightPair identity
    and stable as r -> 1.
    """
    nu = (1.0 - 2.0 * p.lam) ** 2
    numul = nu**p.m
    pure_gap = 4.0 * (1.0 - p.r * p.r) ** p.n
    s = 0.0
    for j in range(p.n + 1):
        w = weight_pair(p.n, j, p.r)
        den = w.total * w.total * (1.0 - numul) + numul * pure_gap
        s += _binom(p.n, j) * w.diff * w.diff * w.total / den
    return p.m * p.m * nu ** (p.m - 1) / 2.0 ** (p.n - 1) * s


def gain(p: ProtocolPoint) -> float:
    """Ratio of the correlated-protocol Fisher information to the best
    independent one at equal (n, m, r, lam); undefined at r = 0."""
    if p.r == 0.0:
        raise ValueError("gain is undefined at r = 0; use gain_limit_r0")
    nu = (1.0 - 2.0 * p.lam) ** 2
    numul = nu**p.m
    pure_gap = 4.0 * (1.0 - p.r * p.r) ** p.n
    s = 0.0
    for j in range(p.n + 1):
        w = weight_pair(p.n, j, p.r)
        den = w.total * w.total * (1.0 - numul) + numul * pure_gap
        s += _binom(p.n, j) * w.diff * w.diff * w.total / den
    return (
        p.m
        * nu ** (p.m - 1)
        * (1.0 - nu * p.r * p.r)
        / (2.0 ** (p.n + 1) * p.r * p.r)
        * s
    )


def gain_min(n: int, m: int, r: float) -> float:
    """Worst-case gain over lam, attained at lam = 1/2: a closed sum for one
    invocation, zero otherwise."""
    _validate_nm(n, m)
    if r == 0.0:
        raise ValueError("gain is undefined at r = 0; use gain_limit_r0")
    if not 0.0 < r < 1.0:
        raise ValueError(f"polarization must lie in (0, 1), got {r}")
    if m != 1:
        return 0.0
    s = 0.0
    for j in range(n + 1):
        w = weight_pair(n, j, r)
        s += _binom(n, j) * w.diff * w.diff / w.total
    return s / (2.0 ** (n + 1) * r * r)


def gain_max(n: int, m: int, r: float) -> float:
    """Best-case gain over lam (the lam -> 0 or 1 limit)."""
    _validate_nm(n, m)
    if not 0.0 < r < 1.0:
        raise ValueError(f"polarization must lie in (0, 1), got {r}")
    pure_gap = 4.0 * (1.0 - r * r) ** n
    s = 0.0
    for j in range(n + 1):
        w = weight_pair(n, j, r)
        # (1 - diff^2/total^2) == pure_gap / total^2
        s += _binom(n, j) * w.diff * w.diff * w.total * (1.0 - r * r) / pure_gap
    return m * s / (2.0 ** (n + 1) * r * r)


def gain_limit_r0(n: int, m: int, lam: float) -> float:
    """Vanishing-polarization limit of the gain: m n (1-2 lam)**(2m-2)."""
    _validate_nm(n, m)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    nu = (1.0 - 2.0 * lam) ** 2
    return m * n * nu ** (m - 1)


def gain_limit_r1(m: int, lam: float) -> float:
    """Pure-state limit of the gain; identically 1 for one invocation."""
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    if m == 1:
        return 1.0
    if lam == 0.0 or lam == 1.0:
        raise ValueError(
            "pure-state limit with lam in {0, 1} is outside the formula's domain"
        )
    nu = (1.0 - 2.0 * lam) ** 2
    return m * nu ** (m - 1) * (1.0 - nu) / (1.0 - nu**m)


def gain_two_qubit(m: int, r: float, lam: float) -> float:
    """Two-qubit gain in fully reduced form:

        G = 2 m nu^(m-1) (1+r^2) (1 - nu r^2) / [(1+r^2)^2 - 4 r^2 nu^m]

    Regular at r = 0, where it equals gain_limit_r0(n=2, m, lam).
    """
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polarization must lie in [0, 1), got {r}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    nu = (1.0 - 2.0 * lam) ** 2
    r2 = r * r
    return (
        2.0
        * m
        * nu ** (m - 1)
        * (1.0 + r2)
        * (1.0 - nu * r2)
        / ((1.0 + r2) ** 2 - 4.0 * r2 * nu**m)
    )


def stationary_polarizations(m: int, lam: float) -> list[float]:
    """Polarizations in (0, 1) where the two-qubit gain is flat in r.

    Setting the r-derivative of the reduced two-qubit gain to zero gives
    (1+nu)(1+u)^2 = 4 nu^m (1 + nu u^2) in u = r^2, a quadratic

        [(1+nu) - 4 nu^(m+1)] u^2 + 2 (1+nu) u + (1+nu) - 4 nu^m = 0.

    Real roots with u in (0, 1) are returned as r = sqrt(u), ascending.
    """
    if m < 1:
        raise ValueError(f"invocation count must be >= 1, got {m}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"channel strength must lie in [0, 1], got {lam}")
    if lam == 0.5:
        raise ValueError("stationarity is degenerate at lam = 1/2")
    nu = (1.0 - 2.0 * lam) ** 2
    a = (1.0 + nu) - 4.0 * nu ** (m + 1)
    b = 2.0 * (1.0 + nu)
    c = (1.0 + nu) - 4.0 * nu**m
    if abs(a) < 1e-14:
        candidates = [-c / b]
    else:
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        candidates = [(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)]
    roots: list[float] = []
    for u in candidates:
        if 0.0 < u < 1.0:
            r = math.sqrt(u)
            if all(abs(r - other) > 1e-9 for other in roots):
                roots.append(r)
    return sorted(roots)


def lambda_threshold_gain_n(m: int) -> float:
    """Largest channel strength keeping the small-polarization gain >= n when
    every qubit is hit once (m = n): (1/2)(1 - m**(-1/(2m-2)))."""
    if m < 2:
        raise ValueError("threshold needs m >= 2; for m = 1 see gain_limit_r0")
    return 0.5 * (1.0 - m ** (-1.0 / (2.0 * m - 2.0)))


def lambda_from_t2(t: float, t2: float) -> float:
    """Channel strength of dephasing for time t: (1 - exp(-t/T2))/2."""
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t}")
    if t2 <= 0.0:
        raise ValueError(f"dephasing time must be > 0, got {t2}")
    return 0.5 * (1.0 - math.exp(-t / t2))
