"""
命令行入口测试
"""
import json

import pytest

from app.dependencies import ServiceContainer
from main import run


@pytest.fixture(autouse=True)
def fresh_container(data_dir, monkeypatch):
    """每个测试使用新的服务容器，配置落在临时目录"""
    monkeypatch.setattr(ServiceContainer, "_instance", None)
    monkeypatch.setattr(ServiceContainer, "_initialized", False)
    monkeypatch.delenv("LIEWEDGE_THREADS", raising=False)
    yield


def test_help():
    assert run(["--help"]) == 0


def test_unknown_command():
    assert run(["nope"]) == 2


def test_build(capsys):
    assert run(["build", "--case", "su:1,1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "build"
    assert data["realization"]["dim"] == 3
    assert data["schema_version"] == 1


def test_build_bad_case():
    assert run(["build", "--case", "su:x"]) == 2


def test_build_out_of_range():
    assert run(["build", "--case", "su:0,1"]) == 2


def test_classify_requires_h():
    assert run(["classify", "--case", "su:1,1"]) == 2


def test_classify(capsys):
    assert run(["classify", "--case", "su:2,2", "--tau", "cayley", "--h", "1/2,0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["iso_display"] == "sl2"
    assert data["h"] == ["1/2", "0"]


def test_classify_missing_involution():
    assert run(["classify", "--case", "su:2,1", "--tau", "cayley", "--h", "1/2"]) == 2


def test_classify_enumerate_markdown(capsys):
    assert run(["classify", "--case", "sp:2", "--h", "enumerate", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# ")
    assert "sl2+sl2" in out


def test_out_file(data_dir):
    target = data_dir / "report.html"
    assert run(["build", "--case", "sp:1", "--format", "html", "--out", str(target)]) == 0
    text = target.read_text(encoding="utf-8")
    assert "<table>" in text
    assert "<title>liewedge build</title>" in text


def test_verify(capsys):
    assert run(["verify", "table2", "--max-rank", "1", "--max-dim", "8"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is True


def test_props(capsys):
    argv = ["props", "--seed", "5", "--count", "3", "--suite", "jordan-axioms", "--skip-exceptional"]
    assert run(argv) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_props_unknown_suite():
    assert run(["props", "--suite", "nope", "--skip-exceptional"]) == 2
