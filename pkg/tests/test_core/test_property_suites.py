"""
性质测试套件测试
"""
import pytest

from core.entities.iso_type import SimpleType
from core.entities.scalar import ZERO
from core.services import property_suites, wedge_classifier
from core.services.jordan_algebra import JordanFactory
from core.services.property_suites import PropertySuites

CHEAP = ["jordan-axioms", "squares-peirce", "cone-test", "flip-criterion"]


@pytest.fixture(scope="module")
def suites(factory):
    return PropertySuites(factory, JordanFactory(), exceptional=False)


def test_names(suites):
    assert suites.names[0] == "jordan-axioms"
    assert "kkt-round-trip" in suites.names
    assert len(suites.names) == 9


def test_cheap_suites_pass(suites):
    report = suites.run(seed=7, count=12, only=CHEAP)
    assert [s.name for s in report.suites] == CHEAP
    assert report.passed, [s.failures for s in report.suites]
    assert all(s.cases > 0 for s in report.suites)


def test_deterministic(suites):
    a = suites.run(seed=11, count=6, only=["squares-peirce", "cone-test"]).to_dict()
    b = suites.run(seed=11, count=6, only=["cone-test", "squares-peirce"]).to_dict()
    assert a == b


def test_unknown_suite(suites):
    with pytest.raises(ValueError):
        suites.run(seed=1, count=1, only=["nope"])


def test_report_dict(suites):
    data = suites.run(seed=3, count=2, only=["jordan-axioms"]).to_dict()
    assert data["seed"] == 3
    assert data["passed"] is True
    assert data["suites"][0]["failed"] == 0


def test_wrong_reduction_is_caught(factory, monkeypatch):
    monkeypatch.setattr(wedge_classifier, "reduced_coords", lambda lam: tuple(ZERO for _ in lam))
    fresh = PropertySuites(factory, JordanFactory(), exceptional=False)
    outcome = fresh.run(seed=5, count=24, only=["reduction-soundness"]).suites[0]
    assert outcome.cases == 24
    assert outcome.failures
    assert any("C₊" in f for f in outcome.failures)


def test_kkt_types_match_partners(suites, monkeypatch):
    monkeypatch.setattr(property_suites, "KKT_CASES", (("sym", (2,)), ("mink", (3,)), ("sym", (3,))))
    outcome = suites.run(seed=1, count=1, only=["kkt-round-trip"]).suites[0]
    assert outcome.cases == 3
    assert not outcome.failures


def test_kkt_wrong_partner_is_caught(factory, monkeypatch):
    # so(2,5) 与 sp(6) 维数同为 21
    monkeypatch.setattr(property_suites, "KKT_CASES", (("sym", (3,)),))
    monkeypatch.setattr(property_suites, "kkt_partner", lambda V: SimpleType("so2", (5,)))
    fresh = PropertySuites(factory, JordanFactory(), exceptional=False)
    outcome = fresh.run(seed=1, count=1, only=["kkt-round-trip"]).suites[0]
    assert len(outcome.failures) == 1
    assert "sp(6)" in outcome.failures[0]


@pytest.mark.slow
def test_structural_suites(suites):
    report = suites.run(seed=20240607, count=20,
                        only=["peirce-rules", "reduction-soundness", "trichotomy", "three-graded",
                              "kkt-round-trip"])
    assert report.passed, [s.failures for s in report.suites]
