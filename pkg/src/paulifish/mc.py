"""Monte Carlo check of the Cramér-Rao bound for the independent protocol.

Each run prepares (I + r sigma_y)/2, applies the phase-flip once, and
measures along +-y. The estimator inverts the empirical + fraction,
lambda_hat = (1 - (2 p_hat - 1)/r)/2, clamped to [0, 1]; it is linear in
p_hat, so its variance attains 1/(shots Fisher) exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import channels, linop


@dataclass(frozen=True)
class ExperimentConfig:
    r: float
    lambda_true: float
    m: int = 1
    trials: int = 200
    shots_per_trial: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.r <= 1.0:
            raise ValueError(f"polarization must lie in (0, 1], got {self.r}")
        if not 0.0 < self.lambda_true < 1.0:
            raise ValueError(
                f"true channel strength must lie in (0, 1), got {self.lambda_true}"
            )
        if self.m < 1:
            raise ValueError(f"invocations per run must be >= 1, got {self.m}")
        if self.trials < 1 or self.shots_per_trial < 1:
            raise ValueError("trials and shots_per_trial must be >= 1")


@dataclass(frozen=True)
class ExperimentResult:
    estimates: np.ndarray
    sample_variance: float
    crb: float
    fisher_classical: float
    n_clamped: int

    @property
    def mean(self) -> float:
        return float(np.mean(self.estimates))


def _measurement_ops() -> tuple[np.ndarray, np.ndarray]:
    # projectors onto (|0> +- i|1>)/sqrt(2)
    plus = (linop.identity() + linop.sigma_y()) / 2.0
    return plus, linop.identity() - plus


def outcome_probs(r: float, lam: float) -> tuple[float, float]:
    """Born-rule probabilities of the +-y measurement after one channel use."""
    rho = channels.bloch_state((0.0, r, 0.0))
    out = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", lam, 1), [1])
    p_plus_op, p_minus_op = _measurement_ops()
    p_plus = float(np.trace(out @ p_plus_op).real)
    p_minus = float(np.trace(out @ p_minus_op).real)
    return p_plus, p_minus


def outcome_prob_derivs(r: float, lam: float) -> tuple[float, float]:
    """Derivatives of the +-y outcome probabilities in the channel strength.

    Uses the exact derivative of the channel map, d rho_f = Z rho Z - rho,
    pushed through the Born rule; no closed-form shortcut.
    """
    rho = channels.bloch_state((0.0, r, 0.0))
    z = linop.sigma_z()
    drho = z @ rho @ z - rho
    p_plus_op, p_minus_op = _measurement_ops()
    return (
        float(np.trace(drho @ p_plus_op).real),
        float(np.trace(drho @ p_minus_op).real),
    )


def classical_fisher(p: Sequence[float], dp: Sequence[float]) -> float:
    """Discrete Fisher information sum dp_k**2 / p_k.

    A zero-probability outcome with nonzero derivative carries infinite
    information and returns ``math.inf``.
    """
    p = [float(v) for v in p]
    dp = [float(v) for v in dp]
    if len(p) != len(dp):
        raise ValueError("probability and derivative lists differ in length")
    if abs(sum(p) - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {sum(p)}, not 1")
    if abs(sum(dp)) > 1e-9:
        raise ValueError(f"probability derivatives sum to {sum(dp)}, not 0")
    total = 0.0
    for pk, dpk in zip(p, dp):
        if pk <= 0.0:
            if abs(dpk) > 0.0:
                return math.inf
            continue
        total += dpk * dpk / pk
    return total


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Simulate the full experiment; deterministic in cfg.seed.

    Trials use independent spawned substreams of a counter-based generator,
    so their order (or any parallel schedule) cannot change the result.
    """
    p_plus, _ = outcome_probs(cfg.r, cfg.lambda_true)
    fisher = classical_fisher(
        outcome_probs(cfg.r, cfg.lambda_true), outcome_prob_derivs(cfg.r, cfg.lambda_true)
    )
    draws = cfg.shots_per_trial * cfg.m
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    estimates = np.empty(cfg.trials)
    n_clamped = 0
    for t in range(cfg.trials):
        rng = np.random.Generator(np.random.Philox(streams[t]))
        p_hat = rng.binomial(draws, p_plus) / draws
        est = 0.5 * (1.0 - (2.0 * p_hat - 1.0) / cfg.r)
        if est < 0.0 or est > 1.0:
            n_clamped += 1
            est = min(max(est, 0.0), 1.0)
        estimates[t] = est
    var = float(np.var(estimates, ddof=1)) if cfg.trials > 1 else 0.0
    crb = math.inf if fisher == 0.0 else 1.0 / (draws * fisher)
    return ExperimentResult(
        estimates=estimates,
        sample_variance=var,
        crb=crb,
        fisher_classical=fisher,
        n_clamped=n_clamped,
    )
