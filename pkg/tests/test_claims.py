import pytest

from bistable_games.claims import REGISTRY, VERDICTS, verify_claims
from bistable_games.core import ConfigError

# reviewed list of every equilibrium and utility-trend claim in the registry
MANIFEST = (
    "classical.any.up-to-five",
    "classical.any.half-everywhere",
    "classical.any.half-outcome-independent",
    "classical.pd.rational-single",
    "classical.pd.symmetric-families",
    "classical.pd.one-rational-candidates",
    "classical.pd.complementary-no-diagonal",
    "classical.pd.mixed-possible",
    "classical.pd.max-three.symmetric",
    "classical.pd.max-three.one_rational",
    "classical.pd.max-three.complementary",
    "classical.pd.utility-flattens",
    "classical.pd.utility-bob-rational",
    "classical.pd.complementary-argmax",
    "classical.pd.complementary-lower",
    "classical.pd.utility-rational-best",
    "classical.sh.utility-rational-best",
    "classical.cg.utility-rational-best",
    "classical.pd.delta-m-increasing",
    "classical.pd.delta-m-falls-with-k",
    "classical.pd.delta-m-insensitive",
    "classical.sh.rational-pure",
    "classical.sh.rational-mixed-depends",
    "classical.sh.max-three.symmetric",
    "classical.sh.one-rational-candidates",
    "classical.sh.complementary-candidates",
    "classical.cg.rational-pure",
    "classical.cg.rational-mixed-depends",
    "classical.cg.symmetric-families",
    "classical.cg.max-three.one_rational",
    "classical.cg.complementary-families",
    "quantum.pd.symmetric-half-pi",
    "quantum.pd.symmetric-half-pi-phases",
    "quantum.pd.complementary-zero",
    "quantum.pd.utility-rises-with-k",
    "quantum.pd.utility-rises-with-irrationality",
    "quantum.sh.utility-rises-with-k",
    "quantum.sh.utility-rises-with-irrationality",
    "quantum.cg.utility-rises-with-k",
    "quantum.cg.utility-rises-with-irrationality",
    "quantum.pd.half-strategy-dependent",
    "quantum.sh.half-strategy-dependent",
    "quantum.sh.symmetric-half-pi",
    "quantum.sh.symmetric-zero",
    "quantum.sh.symmetric-mixed",
    "quantum.sh.complementary-half-pi-zero",
    "quantum.sh.complementary-zero-half-pi",
    "quantum.sh.complementary-mixed",
    "quantum.sh.max-at-half-pi",
    "quantum.cg.symmetric-zero-half-pi",
    "quantum.cg.symmetric-half-pi-zero",
    "quantum.cg.symmetric-mixed",
    "quantum.cg.complementary-zero",
    "quantum.cg.complementary-half-pi",
    "quantum.cg.complementary-mixed",
    "quantum.cg.max-at-theta-zero",
    "quantum.any.up-to-three",
    "quantum.any.f-identity",
    "quantum.any.k-independent",
    "quantum.any.half-everywhere",
    "quantum.any.mimics-rational-classical",
    "quantum.pd.phase-utility-rises-with-irrationality",
)


@pytest.fixture(scope="module")
def report():
    return verify_claims()


def _record(report, claim_id):
    return next(r for r in report.records if r.claim.id == claim_id)


def test_registry_matches_manifest():
    ids = [c.id for c in REGISTRY]
    assert len(ids) == len(set(ids)) == 62
    assert sorted(ids) == sorted(MANIFEST)


def test_every_claim_gets_exactly_one_verdict(report):
    assert [r.claim.id for r in report.records] == [c.id for c in REGISTRY]
    assert all(r.result.verdict in VERDICTS for r in report.records)
    assert sum(report.summary().values()) == 62


def test_report_is_deterministic(report):
    assert verify_claims().to_json() == report.to_json()


def test_rational_prisoners_dilemma_claim_is_refuted_with_values(report):
    rec = _record(report, "classical.pd.rational-single")
    assert rec.result.verdict == "refuted"
    assert rec.result.values["count"] == 3
    assert rec.result.notes


def test_half_noise_quantum_claim_is_confirmed(report):
    assert _record(report, "quantum.any.half-everywhere").result.verdict == "confirmed"


def test_half_pi_claim_has_two_deviation_sets(report):
    plain = _record(report, "quantum.pd.symmetric-half-pi")
    phased = _record(report, "quantum.pd.symmetric-half-pi-phases")
    for rec in (plain, phased):
        per_k = rec.result.values["per_k"]
        assert per_k and all("printed" in v and "doubled" in v for v in per_k)
    assert plain.result.verdict in VERDICTS and phased.result.verdict in VERDICTS


def test_f_identity_confirmed(report):
    assert _record(report, "quantum.any.f-identity").result.verdict == "confirmed"


def test_refuted_claims_carry_notes(report):
    for r in report.records:
        if r.result.verdict != "confirmed":
            assert r.result.notes or r.result.values, r.claim.id


def test_unknown_claim_id_is_a_config_error():
    with pytest.raises(ConfigError) as exc:
        verify_claims(ids=["no.such.claim"])
    assert exc.value.field == "claims.ids"
