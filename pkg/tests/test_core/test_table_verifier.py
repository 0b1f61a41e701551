"""
表格复现测试
"""
import pytest

from core.entities.report_model import STATUS_FAIL, STATUS_PASS, STATUS_SKIP
from core.services import table_verifier
from core.services.table_verifier import TABLES, TableVerifier, load_fixture, summarize


def statuses(report):
    return {(row.case, row.tau): row.status for row in report.rows}


@pytest.fixture
def verifier(factory, classifier):
    return TableVerifier(factory, classifier, max_rank=2, max_dim=15)


class TestFixtures:

    @pytest.mark.parametrize("name", TABLES)
    def test_load(self, name):
        data = load_fixture(name)
        assert data["schema_version"] == 1
        assert data["rows"]

    def test_unknown(self):
        with pytest.raises(ValueError):
            load_fixture("table9")


class TestVerify:

    def test_tube_parts(self, factory, classifier):
        report = TableVerifier(factory, classifier, max_rank=1, max_dim=8).verify("table2")
        found = statuses(report)
        assert found[("su:2,1", None)] == STATUS_PASS
        assert found[("sostar:5", None)] == STATUS_SKIP
        assert report.passed

    def test_partial_sums(self, verifier):
        report = verifier.verify("table3")
        found = statuses(report)
        for case in ("su:1,1", "su:2,2", "sp:1", "sp:2", "so2:1", "so2:3", "so2:4"):
            assert found[(case, "cayley")] == STATUS_PASS
        assert found[("kkt:hermO3", None)] == STATUS_SKIP
        assert report.counts()[STATUS_SKIP] == 5
        assert summarize([report]) is None

    def test_restriction(self, factory, classifier):
        report = TableVerifier(factory, classifier, max_rank=1, max_dim=8).verify("table4")
        assert statuses(report)[("su:2,1", "so")] == STATUS_PASS

    def test_enumeration_row(self, verifier, monkeypatch):
        fixture = {
            "schema_version": 1, "title": "sp(4)",
            "rows": [{"case": "sp:2", "tau": "cayley", "rank": 2, "dim": 10,
                      "expected": ["sp(4)", "sl2", "sl2+sl2"]}],
        }
        monkeypatch.setattr(table_verifier, "load_fixture", lambda name: fixture)
        report = verifier.verify("table1")
        assert report.rows[0].status == STATUS_PASS

    def test_mismatch_is_reported(self, verifier, monkeypatch):
        fixture = {
            "schema_version": 1, "title": "wrong",
            "rows": [{"case": "su:2,2", "rank": 2, "dim": 15, "expected": ["su(2,2)", "sp(4)"]}],
        }
        monkeypatch.setattr(table_verifier, "load_fixture", lambda name: fixture)
        report = verifier.verify("table3")
        row = report.rows[0]
        assert row.status == STATUS_FAIL
        assert row.missing == ["sp(4)"]
        assert not report.passed
        assert summarize([report]).startswith("table3 su:2,2")

    def test_to_dict(self, verifier):
        data = verifier.verify("table2").to_dict()
        assert data["table"] == "table2"
        assert sum(data["counts"].values()) == len(data["rows"])


@pytest.mark.slow
def test_e7_partial_sums(factory, classifier):
    report = TableVerifier(factory, classifier, max_rank=3, max_dim=140).verify("table3")
    assert statuses(report)[("kkt:hermO3", "cayley")] == STATUS_PASS


@pytest.mark.slow
def test_restriction_splits_so22_and_so4c(factory, classifier):
    report = TableVerifier(factory, classifier, max_rank=2, max_dim=45).verify("table4")
    found = statuses(report)
    assert found[("su:3,2", "so")] == STATUS_PASS
    assert found[("sostar:5", "soc")] == STATUS_PASS


def _only_rows(name, case, tau):
    data = load_fixture(name)
    return {**data, "rows": [row for row in data["rows"] if row["case"] == case and row.get("tau") == tau]}


def test_sp4_complex_involution_row(verifier, monkeypatch):
    fixture = _only_rows("table1", "sp:2", "spc")
    assert fixture["rows"][0]["expected"] == ["sl2"]
    monkeypatch.setattr(table_verifier, "load_fixture", lambda name: fixture)
    report = verifier.verify("table1")
    assert report.rows[0].status == STATUS_PASS


@pytest.mark.slow
def test_sp8_complex_involution_row(factory, classifier, monkeypatch):
    fixture = _only_rows("table1", "sp:4", "spc")
    monkeypatch.setattr(table_verifier, "load_fixture", lambda name: fixture)
    report = TableVerifier(factory, classifier, max_rank=4, max_dim=36).verify("table1")
    assert report.rows[0].status == STATUS_PASS
