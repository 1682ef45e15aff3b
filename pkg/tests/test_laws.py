"""Law suites on a small regime, plus planted faults each suite must catch."""

from __future__ import annotations

import pytest

from rlie import catalog, laws, schunck
from rlie.errors import InputError

SMALL = (2, 2)


@pytest.fixture(scope="module")
def small_reports():
    return {name: laws.run_suite(name, *SMALL) for name in laws.SUITES}


@pytest.mark.parametrize("name", sorted(laws.SUITES))
def test_suite_holds_on_small_regime(small_reports, name):
    rep = small_reports[name]
    assert rep.ok, [(law.name, law.failures[:3]) for law in rep.laws if law.failures]
    assert all(law.checked > 0 for law in rep.laws), [law.name for law in rep.laws]


def test_report_serialises(small_reports):
    data = small_reports["chief"].to_json()
    assert data["suite"] == "chief" and data["ok"]
    assert {x["law"] for x in data["laws"]} >= {"soluble-has-abelian-p-ideal",
                                                "chief-factor-null-or-central-atom"}


def test_law_result_records_failures():
    law = laws.LawResult("x", "statement")
    assert law.check(True, "a") and not law.check(False, "b")
    assert law.checked == 2 and law.failures == ["b"] and not law.ok


def test_unknown_suite_rejected():
    with pytest.raises(InputError):
        laws.run_suite("nope")


def test_regimes():
    assert laws.regimes() == [(2, 3), (3, 2)]
    assert laws.regimes(2) == [(2, 3)]
    assert laws.regimes(5) == [(5, 2)]
    assert laws.regimes(None, 2) == [(2, 2), (3, 2)]


def test_describe_is_deterministic():
    R = catalog.der(3)
    assert laws.describe(R) == laws.describe(catalog.der(3))
    assert "GF(3) dim 3" in laws.describe(R)


def test_all_ops_sample_is_larger():
    assert (len(laws.restricted_instances(2, 2, all_ops=True))
            > len(laws.restricted_instances(2, 2, all_ops=False)))


# -- planted faults ---------------------------------------------------------

def _failing(rep):
    return {law.name for law in rep.laws if law.failures}


def test_frattini_suite_catches_wrong_frattini(monkeypatch):
    monkeypatch.setattr(laws, "frattini", lambda L, *a: L.whole())
    rep = laws.run_suite("frattini", *SMALL)
    assert "p-frattini-contains-frattini" in _failing(rep)


def test_chief_suite_catches_wrong_p_map(monkeypatch):
    real = laws.evaluate_p
    monkeypatch.setattr(laws, "evaluate_p", lambda R, v: tuple(1 for _ in v) if any(v) else real(R, v))
    rep = laws.run_suite("chief", *SMALL)
    assert "chief-factor-null-or-central-atom" in _failing(rep)


def test_projector_suite_catches_wrong_projector(monkeypatch):
    monkeypatch.setattr(laws.schunck, "projector", lambda R, C, validate=True: R.whole())
    rep = laws.suite_projectors(*SMALL, classes=("pN",))
    assert "projector-matches-definition" in _failing(rep)


def test_intravariance_suite_catches_wrong_normalizer(monkeypatch):
    monkeypatch.setattr(laws, "normalizer", lambda L, U, within=None: U)
    rep = laws.run_suite("intravariance", *SMALL)
    assert rep.laws[0].failures


def test_cohomology_suite_catches_wrong_dimension(monkeypatch):
    monkeypatch.setattr(laws, "cohomology_dim", lambda *a, **k: 1)
    rep = laws.run_suite("cohomology", *SMALL)
    assert "primitive-cohomology-vanishes" in _failing(rep)


def test_formation_suite_catches_non_formation(monkeypatch):
    odd = schunck.literal_class("dim<=1", lambda R: R.dim <= 1)
    monkeypatch.setattr(laws, "formation_classes", lambda p=None: [(odd, None)])
    rep = laws.run_suite("formations", *SMALL)
    assert "closed-under-subdirect-products" in _failing(rep)


def test_envelope_suite_catches_bad_certificate(monkeypatch):
    monkeypatch.setattr(laws, "envelope_certificates", lambda env, extra=None: {"x": False})
    rep = laws.run_suite("envelopes", *SMALL)
    assert "envelope-certificates" in _failing(rep)


def test_module_suite_catches_wrong_centrality(monkeypatch):
    monkeypatch.setattr(laws.schunck, "all_factors_central",
                        lambda R, S, rep, F, want=True: not want)
    rep = laws.suite_modules(2, 1)
    assert "hypercentral-decomposition-direct" in _failing(rep)
