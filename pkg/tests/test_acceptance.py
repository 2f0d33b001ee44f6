"""Acceptance criteria, one test each.

A PASS/FAIL line per criterion is written in the "acceptance criteria"
section at the end of the pytest run.
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bistable_games.classical import (
    EquilibriumKind,
    delta_m,
    delta_m_arrays,
    equilibrium_segments,
    find_equilibria,
    grid_equilibrium_mask,
    utility_arrays,
)
from bistable_games.claims import REGISTRY
from bistable_games.core import (
    DEFAULT_PAYOFFS,
    GamePreset,
    PayoffMatrix,
    ScenarioBinding,
    ScenarioMode,
    bistable_transform,
    complement_transform,
)
from bistable_games.montecarlo import ClassicalTarget, QuantumTarget, SimulationSpec, sample_classical, sample_quantum
from bistable_games.quantum import (
    QuantumStrategy,
    Validity,
    closed_form_discrepancy,
    deformation_factor,
    kraus_set,
    ne_grid_search,
    sharp_bell_projectors,
)

PD = DEFAULT_PAYOFFS[GamePreset.PRISONERS_DILEMMA]
GRID = np.linspace(0.0, 1.0, 101)


def _report(number, ok, detail):
    print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")


@pytest.mark.criterion(1, "bistable identities")
def test_bistable_identities():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    p, k = rng.random(10_000), rng.random(10_000)
    worst = max(abs(bistable_transform(a, b) + complement_transform(a, b) - 1.0) for a, b in zip(p, k))
    anchors = all(
        bistable_transform(x, 1.0) == x and bistable_transform(x, 0.5) == 0.5 and bistable_transform(x, 0.0) == 1 - x
        for x in (0.0, 0.25, 0.5, 0.75, 1.0)
    )
    elapsed = time.perf_counter() - start
    _report(1, worst <= 1e-12 and anchors and elapsed < 1, f"max residual {worst:.1e}, {elapsed:.2f}s")
    assert worst <= 1e-12
    assert anchors
    assert elapsed < 1.0


@pytest.mark.criterion(2, "flip-model equivalence by sampling")
def test_flip_model_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(2)
    misses = []
    for i in range(20):
        p, k = rng.random(2)
        r = sample_classical(SimulationSpec(10**6, 1000 + i, ClassicalTarget(p, 0.5, k, 0.5)))
        z = (r.alice_first_option - bistable_transform(p, k)) / r.alice_first_option_std_error
        if abs(z) > 3:
            misses.append((p, k, z))
    elapsed = time.perf_counter() - start
    _report(2, not misses and elapsed < 30, f"{len(misses)} outside 3 sigma, {elapsed:.1f}s")
    assert not misses
    assert elapsed < 30


def _predicted_mask(eqs, segments):
    mask = np.zeros((GRID.size, GRID.size), dtype=bool)
    if any(e.kind is EquilibriumKind.EVERYWHERE for e in eqs):
        return ~mask
    for e in eqs:
        mask |= np.outer(np.abs(GRID - e.p_star) <= 1e-9, np.abs(GRID - e.q_star) <= 1e-9)
    for (p0, q0), (p1, q1) in segments:
        on_p = (GRID >= min(p0, p1) - 1e-9) & (GRID <= max(p0, p1) + 1e-9)
        on_q = (GRID >= min(q0, q1) - 1e-9) & (GRID <= max(q0, q1) + 1e-9)
        mask |= np.outer(on_p, on_q)
    return mask


def _random_cases(n, seed):
    rng = np.random.default_rng(seed)
    special = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    for i in range(n):
        if i % 2:
            m = PayoffMatrix(*rng.integers(-5, 6, 4).astype(float))
            k, kp = rng.choice(special, 2)
        else:
            m = PayoffMatrix(*rng.uniform(-10, 10, 4))
            k, kp = rng.random(2)
        yield m, float(k), float(kp)


@pytest.mark.criterion(3, "classical equilibria equal the grid oracle")
def test_classical_oracle_equivalence():
    start = time.perf_counter()
    mismatches, too_many, uncertified = [], 0, 0
    for m, k, kp in _random_cases(500, 3):
        for scen in (
            ScenarioBinding(ScenarioMode.SYMMETRIC, k),
            ScenarioBinding(ScenarioMode.ONE_RATIONAL, k),
            ScenarioBinding(ScenarioMode.COMPLEMENTARY, k),
            ScenarioBinding(ScenarioMode.INDEPENDENT, k, kp),
        ):
            eqs = find_equilibria(m, scen)
            ka, kb = scen.resolve()
            too_many += len(eqs) > 5
            uncertified += sum(e.certification.value != "both" for e in eqs)
            oracle = grid_equilibrium_mask(m, ka, kb)
            if not (oracle == _predicted_mask(eqs, equilibrium_segments(m, scen))).all():
                mismatches.append((m, scen))
    elapsed = time.perf_counter() - start
    ok = not mismatches and not too_many and not uncertified and elapsed < 120
    _report(3, ok, f"{len(mismatches)} mismatches in 2000 games, {elapsed:.1f}s")
    assert not mismatches, mismatches[:3]
    assert too_many == 0 and uncertified == 0
    assert elapsed < 120


@pytest.mark.criterion(4, "degenerate scenario at k = k' = 0.5")
def test_degenerate_half_scenario():
    rng = np.random.default_rng(4)
    p, q = rng.random(10_000), rng.random(10_000)
    pi_a, _ = utility_arrays(PD, p, q, 0.5, 0.5)
    worst = float(np.abs(pi_a - PD.total / 4).max())
    eqs = find_equilibria(PD, ScenarioBinding(ScenarioMode.SYMMETRIC, 0.5))
    everywhere = len(eqs) == 1 and eqs[0].kind is EquilibriumKind.EVERYWHERE
    _report(4, worst <= 1e-12 and everywhere, f"max deviation from 2.25 is {worst:.1e}")
    assert PD.total / 4 == 2.25
    assert worst <= 1e-12
    assert everywhere


@pytest.mark.criterion(5, "Kraus completeness, hermiticity, positivity")
def test_kraus_suite():
    start = time.perf_counter()
    worst_c = worst_h = 0.0
    wrong = []
    for k in np.linspace(0, 1, 21):
        for kp in np.linspace(0, 1, 21):
            ks = kraus_set(k, kp)
            worst_c = max(worst_c, ks.completeness_residual())
            worst_h = max(worst_h, ks.hermiticity_residual())
            expected_proper = (2 * k - 1) * (2 * kp - 1) >= -1 / 3 - 1e-12
            eig_proper = ks.min_eigenvalue() >= -1e-12
            if expected_proper != eig_proper or (ks.validity is Validity.PROPER_POVM) != eig_proper:
                wrong.append((k, kp))
    sharp = max(np.abs(a - b).max() for a, b in zip(kraus_set(1, 1).elements, sharp_bell_projectors()))
    elapsed = time.perf_counter() - start
    ok = worst_c <= 1e-12 and worst_h <= 1e-12 and not wrong and sharp <= 1e-12 and elapsed < 5
    _report(5, ok, f"completeness {worst_c:.1e}, hermiticity {worst_h:.1e}, {elapsed:.2f}s")
    assert worst_c <= 1e-12 and worst_h <= 1e-12
    assert not wrong
    assert sharp <= 1e-12
    assert elapsed < 5


@pytest.mark.criterion(6, "closed-form expectations on the phase-free slice")
def test_closed_form_cross_check():
    start = time.perf_counter()
    ks = np.linspace(0, 1, 6)
    rep = closed_form_discrepancy(theta_points=19, phi_points=7, k_values=ks, kprime_values=ks)
    elapsed = time.perf_counter() - start
    worst = max(rep["phi_zero_max_abs_error"].values())
    phased = max(rep["with_phase_max_abs_error"].values())
    _report(6, worst < 1e-9 and elapsed < 10, f"phase-free error {worst:.1e}; with phases {phased:.3g} reported")
    assert rep["phi_zero_agrees"] and worst < 1e-9
    assert set(rep["with_phase_worst_case"]) == {"cc", "cd", "dc", "dd"}
    assert elapsed < 10


@pytest.mark.criterion(7, "quantum game reduces to the classical one when rational")
@pytest.mark.parametrize("game", [GamePreset.PRISONERS_DILEMMA, GamePreset.STAG_HUNT, GamePreset.CHICKEN])
def test_quantum_classical_reduction(game):
    m = DEFAULT_PAYOFFS[game]
    r = ne_grid_search(m, 1.0, 1.0)
    quantum = {(round(e.x[0], 9), round(e.x[1], 9)) for e in r.equilibria}
    classical = {(round(e.p_star, 9), round(e.q_star, 9)) for e in find_equilibria(m, (1.0, 1.0))}
    _report(7, quantum == classical, f"{game.value}: {len(quantum)} quantum vs {len(classical)} classical")
    assert quantum == classical


@pytest.mark.criterion(8, "deformation factor identity")
def test_f_identity():
    worst = 0.0
    for k in np.linspace(0, 1, 21):
        for kp in np.linspace(0, 1, 21):
            f = deformation_factor(k, kp)
            worst = max(worst, abs(f - (2 * k - 1) * (2 * kp - 1)), abs(f - (1 - 2 * (k + kp - 2 * k * kp))))
    _report(8, worst < 1e-12, f"max residual {worst:.1e}")
    assert worst < 1e-12


@pytest.mark.criterion(9, "cooperation motive anchors and monotonicity")
def test_delta_m_anchors():
    rational = delta_m(2, 1, 1, 1, 1, 1)
    noisy = delta_m(2, 1, 1, 1, 0.5, 0.5)
    ratio = np.linspace(1.0, 10.0, 901)[1:]
    curve = delta_m_arrays(ratio, 1.0, 1.0, 1.0, 1.0, 1.0)
    increasing = bool(np.all(np.diff(curve) > 0))
    ok = abs(rational - 1) <= 1e-12 and abs(noisy + 0.5) <= 1e-12 and increasing
    _report(9, ok, f"rational {rational:g}, half {noisy:g}, increasing {increasing}")
    assert abs(rational - 1) <= 1e-12
    assert abs(noisy + 0.5) <= 1e-12
    assert increasing


@pytest.mark.criterion(10, "claims report completeness and determinism")
def test_claims_report():
    start = time.perf_counter()
    cmd = [sys.executable, "-m", "bistable_games", "verify-claims"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    elapsed = time.perf_counter() - start
    doc = json.loads(runs[0])
    ids = [c["id"] for c in doc["claims"]]
    complete = ids == [c.id for c in REGISTRY]
    rational = next(c for c in doc["claims"] if c["id"] == "classical.pd.rational-single")
    ok = complete and runs[0] == runs[1] and elapsed < 600 and rational["verdict"] != "confirmed"
    _report(10, ok, f"{len(ids)} verdicts {doc['summary']}, two runs in {elapsed:.1f}s")
    assert complete
    assert runs[0] == runs[1]
    assert rational["verdict"] == "refuted" and rational["values"]["count"] == 3
    assert elapsed < 600


@pytest.mark.criterion(11, "quantum sampling at identity strategies")
def test_quantum_monte_carlo():
    identity = QuantumStrategy(0.0, 0.0)
    r = sample_quantum(SimulationSpec(10**6, 11, QuantumTarget(identity, identity, 0.75, 0.75)))
    w = (0.75 + 0.75 - 2 * 0.75 * 0.75) / 2
    z = [(f - t) / se for f, t, se in zip(r.frequencies, (1 - 3 * w, w, w, w), r.frequency_std_errors)]
    worst = max(abs(v) for v in z)
    _report(11, worst <= 3, f"largest deviation {worst:.2f} sigma")
    assert worst <= 3
    assert not math.isnan(worst)
