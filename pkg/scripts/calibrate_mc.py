"""Coverage of the 3-sigma band over many seeds, for classical and quantum targets.

    python scripts/calibrate_mc.py --seeds 100 --trials 1000000
"""
import argparse

from bistable_games.core import outcome_distribution
from bistable_games.montecarlo import (
    ClassicalTarget,
    QuantumTarget,
    SimulationSpec,
    sample_classical,
    sample_quantum,
    within_sigma,
)
from bistable_games.quantum import QuantumStrategy, outcome_probabilities


def coverage(sampler, target, truth, seeds, trials):
    hits = [0, 0, 0, 0]
    for seed in range(seeds):
        r = sampler(SimulationSpec(trials, seed, target))
        for i in range(4):
            hits[i] += within_sigma(r.frequencies[i], truth[i], r.frequency_std_errors[i])
    return hits


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--seeds", type=int, default=100)
    parser.add_argument("--trials", type=int, default=10**6)
    args = parser.parse_args()

    classical = ClassicalTarget(0.3, 0.6, 0.8, 0.9)
    quantum = QuantumTarget(QuantumStrategy(1.2, 0.3), QuantumStrategy(0.7, 0.0), 0.8, 0.9)
    cases = [
        ("classical", sample_classical, classical, tuple(outcome_distribution(0.3, 0.6, 0.8, 0.9))),
        ("quantum", sample_quantum, quantum, outcome_probabilities(quantum.alice, quantum.bob, 0.8, 0.9).probs),
    ]
    for name, sampler, target, truth in cases:
        hits = coverage(sampler, target, truth, args.seeds, args.trials)
        print(f"{name:<10} within 3 sigma: " + ", ".join(f"{h}/{args.seeds}" for h in hits))


if __name__ == "__main__":
    main()
