"""
报告格式化测试
"""
import pytest
from sympy.polys.domains import QQ

from core.entities.report_model import STATUS_FAIL, Report, RowOutcome, TableReport
from core.services.formatter import ReportFormatter


@pytest.fixture
def formatter():
    return ReportFormatter()


def test_json_is_sorted(formatter):
    text = formatter.to_json({"b": 1, "a": "𝔤"})
    assert text.index('"a"') < text.index('"b"')
    assert "𝔤" in text
    assert text.endswith("\n")


def test_render_formats(formatter):
    report = Report(command="build", machine={"x": 1}, human="# t\n\n| a | b |\n|---|---|\n| 1 | 2 |")
    assert '"schema_version": 1' in formatter.render(report, "json")
    assert formatter.render(report, "md").endswith("|\n")
    html = formatter.render(report, "html")
    assert "<table>" in html
    assert "<title>liewedge build</title>" in html


def test_render_unknown(formatter):
    with pytest.raises(ValueError):
        formatter.render(Report(command="build", machine={}, human=""), "pdf")


def test_wedge_table(formatter, factory, classifier):
    r = factory.build("su", (2, 2))
    res = classifier.classify(classifier.input_for(r, "cayley", [QQ(1, 2), 0]))
    text = formatter.wedge_markdown([res], "su(2,2)")
    assert text.startswith("# su(2,2)")
    assert "| 1/2,0 |" in text
    assert "sl2" in text


def test_table_notes(formatter):
    row = RowOutcome(case="su:2,2", status=STATUS_FAIL, expected=["su(2,2)", "sp(4)"],
                     computed=["su(2,2)"], missing=["sp(4)"])
    text = formatter.tables_markdown([TableReport(table="table3", title="t", rows=[row])])
    assert "FAIL 1" in text
    assert "缺少 sp(4)" in text
