"""Random point sets as approximate projective toric designs.

A uniform point set ``C`` is an eps-approximate P(T^n) t-design when
``|mean_{phi in C} exp(i p . phi)| <= eps`` for every ``p`` in ``S_t^(n)``.
Drawing ``M >= (G_{n-1}(t) - 1) / (2 delta eps^2)`` Haar-random points
achieves this with probability at least ``1 - delta``;
:func:`run_experiment` measures that probability empirically.

Randomness comes from numpy's PCG64.  Trial ``i`` of an experiment with seed
``s`` draws from ``SeedSequence([s, i])``, so results do not depend on how
trials are spread over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from .combinatorics import crystal_ball, enumerate_St
from .errors import UsageError
from .toric_designs import WeightedPhaseSet, monomial_sums

__all__ = [
    "ApproxExperiment",
    "TrialRecord",
    "ExperimentResult",
    "DeviationStats",
    "enumerate_St",
    "sample_angles",
    "sample_uniform",
    "max_deviation",
    "required_M",
    "run_experiment",
    "squared_deviation_stats",
]


@dataclass(frozen=True)
class ApproxExperiment:
    n: int
    t: int
    epsilon: float
    delta: float
    M: int
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.t < 1:
            raise UsageError(f"need n >= 1 and t >= 1, got n={self.n}, t={self.t}")
        if not 0 < self.epsilon:
            raise UsageError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise UsageError(f"delta must lie in (0, 1), got {self.delta}")
        if self.M < 1 or self.trials < 1:
            raise UsageError("M and trials must be >= 1")

    @classmethod
    def from_dict(cls, obj: dict) -> ApproxExperiment:
        unknown = set(obj) - {"n", "t", "epsilon", "delta", "M", "trials", "seed"}
        if unknown:
            raise UsageError(f"unknown experiment keys: {sorted(unknown)}")
        missing = {"n", "t", "epsilon", "delta", "M"} - set(obj)
        if missing:
            raise UsageError(f"missing experiment keys: {sorted(missing)}")
        return cls(**obj)

    def to_dict(self) -> dict:
        return asdict(self)


class TrialRecord(NamedTuple):
    trial: int
    max_deviation: float
    passed: bool


@dataclass(frozen=True)
class ExperimentResult:
    config: ApproxExperiment
    success_rate: float
    mean_deviation: float
    per_trial: list[TrialRecord]


def _rng(seed: int, trial: int | None = None) -> np.random.Generator:
    entropy = [seed] if trial is None else [seed, trial]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def sample_angles(n: int, M: int, rng: np.random.Generator) -> np.ndarray:
    """``(M, n)`` Haar-random representatives with first angle 0."""
    out = np.zeros((M, n))
    out[:, 1:] = 2 * np.pi * rng.random((M, n - 1))
    return out


def sample_uniform(n: int, M: int, seed: int) -> WeightedPhaseSet:
    """``M`` Haar-random points of P(T^n) with weights ``1/M``."""
    if n < 1 or M < 1:
        raise UsageError(f"need n >= 1 and M >= 1, got n={n}, M={M}")
    angles = sample_angles(n, M, _rng(seed))
    return WeightedPhaseSet(n, tuple(map(tuple, angles.tolist())), (1.0 / M,) * M, {"construction": "uniform", "seed": seed})


def _angle_deviation(angles: np.ndarray, exps: np.ndarray) -> np.ndarray:
    return np.abs(np.exp(1j * (angles @ exps.T)).mean(axis=0))


def max_deviation(C: WeightedPhaseSet, t: int) -> tuple[float, tuple[int, ...] | None]:
    """Worst ``|mean_C f_p|`` over ``p`` in ``S_t^(n)`` and the ``p`` attaining it."""
    if not C.is_uniform:
        raise UsageError("approximate designs are defined for uniform weights only")
    exps = enumerate_St(C.n, t)
    if not exps:
        return 0.0, None
    devs = np.abs(monomial_sums(C, exps))
    i = int(np.argmax(devs))
    return float(devs[i]), exps[i]


def _exact_fraction(x: float) -> Fraction:
    # 0.2 means 1/5, not the nearest binary double
    return Fraction(repr(float(x)))


def required_M(n: int, t: int, epsilon: float, delta: float) -> int:
    """``ceil((G_{n-1}(t) - 1) / (2 delta eps^2))``, evaluated exactly."""
    if epsilon <= 0 or not 0 < delta <= 1:
        raise UsageError(f"need epsilon > 0 and 0 < delta <= 1, got {epsilon}, {delta}")
    eps, dl = _exact_fraction(epsilon), _exact_fraction(delta)
    return max(1, math.ceil(Fraction(crystal_ball(n, t) - 1) / (2 * dl * eps * eps)))


def _trial_chunk(args) -> list[TrialRecord]:
    cfg, start, stop = args
    exps = np.array(enumerate_St(cfg.n, cfg.t), dtype=float).reshape(-1, cfg.n)
    out = []
    for i in range(start, stop):
        angles = sample_angles(cfg.n, cfg.M, _rng(cfg.seed, i))
        dev = float(_angle_deviation(angles, exps).max()) if len(exps) else 0.0
        out.append(TrialRecord(i, dev, dev <= cfg.epsilon))
    return out


def run_experiment(
    cfg: ApproxExperiment,
    threads: int = 1,
    sink: Callable[[TrialRecord], None] | None = None,
) -> ExperimentResult:
    """Draw ``cfg.trials`` independent ``M``-point sets and record each worst deviation.

    ``sink`` receives records in trial order as chunks complete.
    """
    chunk = max(1, min(100, cfg.trials))
    jobs = [(cfg, s, min(s + chunk, cfg.trials)) for s in range(0, cfg.trials, chunk)]
    records: list[TrialRecord] = []
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = ex.map(_trial_chunk, jobs)
            for recs in results:
                records.extend(recs)
                for r in recs if sink else ():
                    sink(r)
    else:
        for job in jobs:
            recs = _trial_chunk(job)
            records.extend(recs)
            for r in recs if sink else ():
                sink(r)
    rate = sum(r.passed for r in records) / len(records)
    mean = math.fsum(r.max_deviation for r in records) / len(records)
    return ExperimentResult(cfg, rate, mean, records)


class DeviationStats(NamedTuple):
    exponents: list[tuple[int, ...]]
    mean: np.ndarray
    stderr: np.ndarray


def squared_deviation_stats(n: int, t: int, M: int, trials: int, seed: int = 0) -> DeviationStats:
    """Sample mean and standard error of ``|mean_C f_p|^2`` for each ``p`` in ``S_t^(n)``.

    Its expectation over Haar-random ``M``-point sets is exactly ``1/M``.
    """
    exps = enumerate_St(n, t)
    K = np.array(exps, dtype=float).reshape(-1, n)
    sq = np.empty((trials, len(exps)))
    for i in range(trials):
        angles = sample_angles(n, M, _rng(seed, i))
        sq[i] = _angle_deviation(angles, K) ** 2
    return DeviationStats(exps, sq.mean(axis=0), sq.std(axis=0, ddof=1) / math.sqrt(trials))
