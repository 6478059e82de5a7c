"""Cross-module verification suites behind the ``verify`` CLI command.

Each suite exercises one family of invariants (oracle equivalence of the
closed-form Fisher information, analytic bounds, the weight-pair and gain
inequalities, discord monotonicity, stationary polarizations, separability
thresholds, preparation-unitary structure) and reports its worst observed
error against a fixed tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels, correlations, protocol, qfi


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_error: float
    detail: str


def _rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def suite_oracle(n_max: int = 5) -> SuiteResult:
    """Closed-form Fisher information vs the eigendecomposition route."""
    worst = 0.0
    lams = [round(0.1 * k, 10) for k in range(1, 10)]
    rs = [round(0.1 * k, 10) for k in range(1, 10)]
    for n in range(2, n_max + 1):
        for m in range(1, n + 1):
            for lam in lams:
                for r in rs:
                    rho, drho = channels.correlated_state(n, r, lam, m)
                    h_oracle = qfi.sld_eig(rho, drho).H
                    h_closed = protocol.qfi_correlated(protocol.ProtocolPoint(n, m, r, lam))
                    worst = max(worst, _rel_err(h_oracle, h_closed))
    return SuiteResult("oracle", worst < 1e-8, worst, f"n<= {n_max}, tol 1e-8")


def suite_bounds(n_max: int = 5) -> SuiteResult:
    """H <= m/(lam(1-lam)) everywhere; pure limit approaches the bound."""
    worst = -math.inf
    lams = [round(0.1 * k, 10) for k in range(1, 10)]
    rs = [round(0.1 * k, 10) for k in range(1, 10)]
    for n in range(2, n_max + 1):
        for m in range(1, n + 1):
            for lam in lams:
                bound = qfi.qfi_upper_bound(lam, m)
                for r in rs:
                    h = protocol.qfi_correlated(protocol.ProtocolPoint(n, m, r, lam))
                    h_ind = qfi.qfi_independent_opt(r, lam, m)
                    worst = max(worst, h - bound, h_ind - bound)
    pure_err = 0.0
    for m in (1, 2, 3):
        for lam in lams:
            h = qfi.qfi_independent_opt(1.0 - 1e-8, lam, m)
            pure_err = max(pure_err, _rel_err(h, qfi.qfi_upper_bound(lam, m)))
    ok = worst <= 1e-8 and pure_err < 1e-4
    return SuiteResult(
        "bounds", ok, max(worst, 0.0) + pure_err, f"max excess {worst:.2e}, pure-limit rel {pure_err:.2e}"
    )


def suite_weight_inequalities(n_max: int = 8) -> SuiteResult:
    """diff^2/total^2 >= r^2 off the middle index, total >= 2(1-r^2)^(n-1),
    the weighted sum >= 2^(n+1) r^2, and gain > 1 for single invocations."""
    worst = 0.0  # most negative margin observed, as a positive number
    rs = [round(0.02 * k, 10) for k in range(1, 50)]
    for n in range(2, n_max + 1):
        for r in rs:
            total_sum = 0.0
            for j in range(n + 1):
                w = protocol.weight_pair(n, j, r)
                if 2 * j != n:
                    margin = (w.diff / w.total) ** 2 - r * r
                    worst = max(worst, -margin)
                worst = max(worst, 2.0 * (1.0 - r * r) ** (n - 1) - w.total)
                total_sum += protocol._binom(n, j) * w.diff**2 / w.total
            worst = max(worst, 2.0 ** (n + 1) * r * r - total_sum)
    floor_margin = math.inf
    lams = [round(0.01 * k, 10) for k in range(0, 101)]
    for n in range(2, n_max + 1):
        for r in (0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.98):
            for lam in lams:
                g = protocol.gain(protocol.ProtocolPoint(n, 1, r, lam))
                floor_margin = min(floor_margin, g - 1.0)
    ok = worst <= 1e-12 and floor_margin > 0.0
    return SuiteResult(
        "weight-inequalities",
        ok,
        max(worst, 0.0),
        f"worst margin {worst:.2e}, min single-use gain excess {floor_margin:.2e}",
    )


def suite_discord(step: float = 1e-4) -> SuiteResult:
    """Monotonicity of discord in both arguments, sign symmetry, and route
    equivalence between the generic and protocol closed forms."""
    grid = [round(0.05 * k, 10) for k in range(1, 20)]
    worst_mono = 0.0
    for r in grid:
        for mu in grid:
            up = correlations.discord_rmu(r, mu + step).Q
            down = correlations.discord_rmu(r, mu - step).Q
            worst_mono = max(worst_mono, down - up)
            up = correlations.discord_rmu(r + step, mu).Q
            down = correlations.discord_rmu(r - step, mu).Q
            worst_mono = max(worst_mono, down - up)
    worst_sym = 0.0
    worst_route = 0.0
    for r in grid:
        for lam in (0.0, 0.1, 0.3, 0.5, 0.7, 0.95, 1.0):
            for m in (1, 2, 3):
                mu = (1.0 - 2.0 * lam) ** m
                worst_sym = max(
                    worst_sym,
                    abs(
                        correlations.discord_rmu(r, mu).Q
                        - correlations.discord_rmu(r, -mu).Q
                    ),
                )
                coeffs = correlations.bell_diagonalize(
                    correlations.rho_final_two_qubit(r, lam, m)
                )
                worst_route = max(
                    worst_route,
                    abs(
                        correlations.discord_xstate(coeffs).Q
                        - correlations.discord_protocol(r, lam, m).Q
                    ),
                )
    ok = worst_mono <= 0.0 and worst_sym < 1e-12 and worst_route < 1e-10
    return SuiteResult(
        "discord",
        ok,
        max(worst_mono, worst_sym, worst_route),
        f"mono {worst_mono:.2e}, sym {worst_sym:.2e}, routes {worst_route:.2e}",
    )


_TABLE_STATIONARY = [
    (1, 0.95, 0.66),
    (1, 0.99, 0.83),
    (2, 0.95, 0.48),
    (2, 0.99, 0.76),
]


def suite_stationary() -> SuiteResult:
    """Reference stationary polarizations of the two-qubit gain, and a flat
    central-difference derivative at every reported root."""
    worst_val = 0.0
    worst_grad = 0.0
    h = 1e-4
    for m, lam, expected in _TABLE_STATIONARY:
        roots = protocol.stationary_polarizations(m, lam)
        if not roots:
            return SuiteResult("stationary", False, math.inf, f"no root at m={m}, lam={lam}")
        best = min(roots, key=lambda r: abs(r - expected))
        worst_val = max(worst_val, abs(best - expected))
        g_plus = protocol.gain(protocol.ProtocolPoint(2, m, best + h, lam))
        g_minus = protocol.gain(protocol.ProtocolPoint(2, m, best - h, lam))
        worst_grad = max(worst_grad, abs(g_plus - g_minus) / (2 * h))
    ok = worst_val <= 0.005 and worst_grad < 1e-5
    return SuiteResult(
        "stationary", ok, worst_val, f"root dev {worst_val:.4f}, |dG/dr| {worst_grad:.2e}"
    )


def suite_separability() -> SuiteResult:
    """PPT verdict flips across the closed-form threshold, and separable
    points with gain above 1 exist."""
    margin = 1e-6
    worst = 0.0
    found_separable_gain = False
    lams = [round(0.1 * k, 10) for k in range(0, 11)]
    for m in (1, 2, 3):
        for lam in lams:
            thr = correlations.separability_threshold(m, lam)
            if thr - margin > 0.0:
                sep, _ = correlations.is_separable_ppt(
                    correlations.rho_final_two_qubit(thr - margin, lam, m)
                )
                if not sep:
                    worst = max(worst, margin)
            if thr + margin < 1.0:
                sep, _ = correlations.is_separable_ppt(
                    correlations.rho_final_two_qubit(thr + margin, lam, m)
                )
                if sep:
                    worst = max(worst, margin)
            if 0.0 < thr - margin and 0.0 < lam < 1.0 and m <= 2:
                r = thr - margin
                g = protocol.gain(protocol.ProtocolPoint(2, m, r, lam))
                sep, _ = correlations.is_separable_ppt(
                    correlations.rho_final_two_qubit(r, lam, m)
                )
                if sep and g > 1.0:
                    found_separable_gain = True
    ok = worst == 0.0 and found_separable_gain
    return SuiteResult(
        "separability", ok, worst, f"flip margin 1e-6, separable-with-gain {found_separable_gain}"
    )


def suite_preparation() -> SuiteResult:
    """Column structure of the preparation unitary on the rotated basis:
    exactly two amplitudes, (1+i)/2 and (1-i)/2, plus unitarity."""
    worst = 0.0
    # the rotated basis is the sigma_y eigenbasis: bit 0 -> (|0>+i|1>)/sqrt2
    plus = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)
    for n in (2, 3, 4):
        u = channels.preparation_unitary(n)
        worst = max(worst, float(np.max(np.abs(u @ u.conj().T - np.eye(2**n)))))
        big_n = 2**n - 1
        for x in range(2**n):
            vec = np.array([1.0], dtype=complex)
            for bit_pos in reversed(range(n)):  # qubit n first, qubit 1 last
                vec = np.kron(vec, minus if (x >> bit_pos) & 1 else plus)
            out = u @ vec
            expected = np.zeros(2**n, dtype=complex)
            expected[x] = (1.0 + 1.0j) / 2.0
            expected[big_n - x] = (1.0 - 1.0j) / 2.0
            worst = max(worst, float(np.max(np.abs(out - expected))))
    return SuiteResult("preparation", worst < 1e-12, worst, "n in {2,3,4}, tol 1e-12")


def suite_threshold_gain() -> SuiteResult:
    """At the channel-strength threshold, the all-qubit small-polarization
    gain reaches n within 1e-2."""
    worst = 0.0
    for m in range(2, 7):
        lam = protocol.lambda_threshold_gain_n(m)
        g = protocol.gain(protocol.ProtocolPoint(m, m, 1e-6, lam))
        worst = max(worst, m - g)
    return SuiteResult("threshold-gain", worst < 1e-2, max(worst, 0.0), "m=n in 2..6")


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "oracle": suite_oracle,
    "bounds": suite_bounds,
    "weight-inequalities": suite_weight_inequalities,
    "discord": suite_discord,
    "stationary": suite_stationary,
    "separability": suite_separability,
    "preparation": suite_preparation,
    "threshold-gain": suite_threshold_gain,
}


def run_suites(names: list[str] | None = None, n_max: int = 5) -> list[SuiteResult]:
    selected = names or list(SUITES)
    out = []
    for name in selected:
        fn = SUITES[name]
        if name in ("oracle", "bounds"):
            out.append(fn(n_max=n_max))
        else:
            out.append(fn())
    return out
