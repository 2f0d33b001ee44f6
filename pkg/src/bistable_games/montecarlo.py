"""Seeded sampling of classical flip-model plays and quantum measurement outcomes.

Trials are split into fixed blocks of ``BLOCK_SIZE``; block ``i`` draws from
its own Philox stream keyed by ``SeedSequence(seed, spawn_key=(i,))``.  The
report is built from integer outcome counts, so it does not depend on how
blocks are scheduled across threads.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ALGEBRAIC_TOL,
    DEFAULT_PAYOFFS,
    ConfigError,
    GamePreset,
    PayoffMatrix,
    QuasiProbabilityError,
    _check_unit,
)
from .quantum import QuantumStrategy, Validity, kraus_set, outcome_probabilities

ALGORITHM = "numpy-philox4x32-10/seedsequence-spawnkey-block/v1"
BLOCK_SIZE = 65536
OUTCOME_LABELS = ("YY", "YX", "XY", "XX")


@dataclass(frozen=True)
class ClassicalTarget:
    p: float
    q: float
    k: float
    kprime: float

    def __post_init__(self):
        for name in ("p", "q", "k", "kprime"):
            _check_unit(name, getattr(self, name))


@dataclass(frozen=True)
class QuantumTarget:
    alice: QuantumStrategy
    bob: QuantumStrategy
    k: float
    kprime: float

    def __post_init__(self):
        _check_unit("k", self.k)
        _check_unit("kprime", self.kprime)


@dataclass(frozen=True)
class SimulationSpec:
    trials: int
    seed: int
    target: ClassicalTarget | QuantumTarget
    payoffs: PayoffMatrix = field(default_factory=lambda: DEFAULT_PAYOFFS[GamePreset.PRISONERS_DILEMMA])

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ConfigError("simulation.trials", "must be a positive integer")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed", "must be an integer in [0, 2**64)")


@dataclass(frozen=True)
class EstimateReport:
    kind: str
    trials: int
    seed: int
    counts: tuple[int, int, int, int]
    frequencies: tuple[float, float, float, float]
    frequency_std_errors: tuple[float | None, ...]
    mean_utilities: tuple[float, float]
    utility_std_errors: tuple[float | None, float | None]
    alice_first_option: float
    alice_first_option_std_error: float | None
    bob_first_option: float
    bob_first_option_std_error: float | None
    algorithm: str = ALGORITHM

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "algorithm": self.algorithm,
            "trials": self.trials,
            "seed": self.seed,
            "outcomes": list(OUTCOME_LABELS),
            "counts": list(self.counts),
            "frequencies": list(self.frequencies),
            "frequency_std_errors": list(self.frequency_std_errors),
            "mean_utilities": {"piA": self.mean_utilities[0], "piB": self.mean_utilities[1]},
            "utility_std_errors": {"piA": self.utility_std_errors[0], "piB": self.utility_std_errors[1]},
            "marginals": {
                "alice_first_option": self.alice_first_option,
                "alice_first_option_std_error": self.alice_first_option_std_error,
                "bob_first_option": self.bob_first_option,
                "bob_first_option_std_error": self.bob_first_option_std_error,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run_blocks(trials: int, seed: int, draw, threads: int) -> np.ndarray:
    n_blocks = math.ceil(trials / BLOCK_SIZE)

    def job(b):
        n = min(BLOCK_SIZE, trials - b * BLOCK_SIZE)
        idx = draw(_block_rng(seed, b), n)
        return np.bincount(idx, minlength=4)

    if threads <= 1:
        parts = [job(b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, range(n_blocks)))
    return np.sum(parts, axis=0).astype(np.int64)


def _std_error(values: np.ndarray, counts: np.ndarray, n: int) -> tuple[float, float | None]:
    mean = float(np.dot(counts, values) / n)
    if n < 2:
        return mean, None
    var = float(np.dot(counts, (values - mean) ** 2) / (n - 1))
    return mean, math.sqrt(var / n)


def _report(kind: str, spec: SimulationSpec, counts: np.ndarray) -> EstimateReport:
    n = spec.trials
    freqs = counts / n
    freq_se = []
    for i in range(4):
        indicator = np.zeros(4)
        indicator[i] = 1.0
        freq_se.append(_std_error(indicator, counts, n)[1])
    m = spec.payoffs
    pi_a, se_a = _std_error(np.array(m.alice, float), counts, n)
    pi_b, se_b = _std_error(np.array(m.bob, float), counts, n)
    alice_y, alice_se = _std_error(np.array([1.0, 1.0, 0.0, 0.0]), counts, n)
    bob_y, bob_se = _std_error(np.array([1.0, 0.0, 1.0, 0.0]), counts, n)
    return EstimateReport(
        kind, n, int(spec.seed), tuple(int(c) for c in counts), tuple(float(f) for f in freqs),
        tuple(freq_se), (pi_a, pi_b), (se_a, se_b), alice_y, alice_se, bob_y, bob_se,
    )


def sample_classical(spec: SimulationSpec, threads: int = 1) -> EstimateReport:
    """Flip-model plays: each agent draws an intent, then keeps it with probability k or flips it."""
    t = spec.target
    if not isinstance(t, ClassicalTarget):
        raise ConfigError("simulation.target", "expected a classical target")

    def draw(rng, n):
        u = rng.random((4, n))
        alice_y = (u[0] < t.p) == (u[1] < t.k)
        bob_y = (u[2] < t.q) == (u[3] < t.kprime)
        return 2 * (~alice_y) + (~bob_y)

    return _report("classical", spec, _run_blocks(spec.trials, spec.seed, draw, threads))


def quantum_sampling_distribution(target: QuantumTarget) -> np.ndarray:
    """Outcome law used for sampling; raises in the quasi-probability regime."""
    ks = kraus_set(target.k, target.kprime)
    if ks.validity is Validity.QUASI_PROBABILITY:
        raise QuasiProbabilityError(
            "measurement is not a proper POVM, positivity needs (2k-1)(2k'-1) >= -1/3; " + ks.positivity_diagnostic()
        )
    probs = np.array(outcome_probabilities(target.alice, target.bob, target.k, target.kprime).probs)
    if probs.min() < -ALGEBRAIC_TOL:
        raise QuasiProbabilityError(f"negative outcome probability {probs.min():.3g} below -1e-12")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample_quantum(spec: SimulationSpec, threads: int = 1) -> EstimateReport:
    """Categorical draws from the four measurement expectation values."""
    t = spec.target
    if not isinstance(t, QuantumTarget):
        raise ConfigError("simulation.target", "expected a quantum target")
    cdf = np.cumsum(quantum_sampling_distribution(t))

    def draw(rng, n):
        return np.minimum(np.searchsorted(cdf, rng.random(n), side="right"), 3)

    return _report("quantum", spec, _run_blocks(spec.trials, spec.seed, draw, threads))


def simulate(spec: SimulationSpec, threads: int = 1) -> EstimateReport:
    if isinstance(spec.target, QuantumTarget):
        return sample_quantum(spec, threads)
    return sample_classical(spec, threads)


def within_sigma(estimate: float, truth: float, std_error: float | None, sigmas: float = 3.0) -> bool:
    if std_error is None or std_error == 0.0:
        return abs(estimate - truth) <= ALGEBRAIC_TOL
    return abs(estimate - truth) <= sigmas * std_error

