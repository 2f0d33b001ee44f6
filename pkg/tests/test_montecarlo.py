import numpy as np
import pytest

from bistable_games.core import (
    DEFAULT_PAYOFFS,
    ConfigError,
    GamePreset,
    QuasiProbabilityError,
    bistable_transform,
    outcome_distribution,
)
from bistable_games.montecarlo import (
    ALGORITHM,
    ClassicalTarget,
    QuantumTarget,
    SimulationSpec,
    sample_classical,
    sample_quantum,
    simulate,
    within_sigma,
)
from bistable_games.quantum import QuantumStrategy, outcome_probabilities

IDENTITY = QuantumStrategy(0.0, 0.0)
PD = DEFAULT_PAYOFFS[GamePreset.PRISONERS_DILEMMA]


def test_certain_cooperation_is_exact():
    r = sample_classical(SimulationSpec(1000, 5, ClassicalTarget(1, 1, 1, 1)))
    assert r.frequencies == (1.0, 0.0, 0.0, 0.0)
    assert r.mean_utilities == (3.0, 3.0)
    assert r.utility_std_errors == (0.0, 0.0)


def test_classical_frequencies_within_three_sigma():
    r = sample_classical(SimulationSpec(10**6, 11, ClassicalTarget(0.3, 0.6, 0.8, 0.9)))
    truth = outcome_distribution(0.3, 0.6, 0.8, 0.9)
    for est, se, t in zip(r.frequencies, r.frequency_std_errors, truth):
        assert within_sigma(est, t, se)
    assert within_sigma(r.mean_utilities[0], 2.3228, r.utility_std_errors[0])
    assert within_sigma(r.alice_first_option, bistable_transform(0.3, 0.8), r.alice_first_option_std_error)
    assert sum(r.counts) == 10**6


def test_quantum_identity_sharp_is_all_cooperation():
    r = sample_quantum(SimulationSpec(5000, 1, QuantumTarget(IDENTITY, IDENTITY, 1, 1)))
    assert r.counts == (5000, 0, 0, 0)


def test_quantum_identity_frequencies_within_three_sigma():
    r = sample_quantum(SimulationSpec(10**6, 2, QuantumTarget(IDENTITY, IDENTITY, 0.75, 0.75)))
    w = (0.75 + 0.75 - 2 * 0.75 * 0.75) / 2
    for est, se, t in zip(r.frequencies, r.frequency_std_errors, (1 - 3 * w, w, w, w)):
        assert within_sigma(est, t, se)


def test_quasi_probability_regime_is_refused():
    spec = SimulationSpec(100, 0, QuantumTarget(IDENTITY, IDENTITY, 0.9, 0.1))
    with pytest.raises(QuasiProbabilityError, match="-1/3"):
        sample_quantum(spec)


def test_same_seed_gives_identical_reports():
    spec = SimulationSpec(200_000, 42, ClassicalTarget(0.4, 0.7, 0.65, 0.85))
    single = simulate(spec).to_json()
    assert simulate(spec).to_json() == single
    assert simulate(spec, threads=4).to_json() == single
    other = simulate(SimulationSpec(200_000, 43, spec.target)).to_json()
    assert other != single
    assert ALGORITHM in single


def test_quantum_threads_match_single_thread():
    target = QuantumTarget(QuantumStrategy(1.1, 0.4), QuantumStrategy(2.0, 0.2), 0.8, 0.7)
    spec = SimulationSpec(150_000, 9, target)
    assert sample_quantum(spec, threads=3) == sample_quantum(spec)


@pytest.mark.parametrize("trials", [0, -3, 1.5, True])
def test_invalid_trials(trials):
    with pytest.raises(ConfigError) as exc:
        SimulationSpec(trials, 0, ClassicalTarget(1, 1, 1, 1))
    assert exc.value.field == "simulation.trials"


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_invalid_seed(seed):
    with pytest.raises(ConfigError):
        SimulationSpec(10, seed, ClassicalTarget(1, 1, 1, 1))


def test_marginals_track_bistable_transform():
    rng = np.random.default_rng(99)
    for i in range(5):
        p, k = rng.random(2)
        r = sample_classical(SimulationSpec(200_000, i, ClassicalTarget(p, 0.5, k, 0.5)))
        assert within_sigma(r.alice_first_option, bistable_transform(p, k), r.alice_first_option_std_error, 4)


@pytest.mark.slow
def test_calibration_over_seeds():
    # a 3-sigma band should cover the truth in at least 99 of 100 seeded runs
    target = QuantumTarget(QuantumStrategy(1.2, 0.3), QuantumStrategy(0.7, 0.0), 0.8, 0.9)
    truth = outcome_probabilities(target.alice, target.bob, 0.8, 0.9).probs[0]
    hits = 0
    for seed in range(100):
        r = sample_quantum(SimulationSpec(10**6, seed, target))
        hits += within_sigma(r.frequencies[0], truth, r.frequency_std_errors[0])
    assert hits >= 99
