"""
配置管理与启动参数测试
"""
import json
import logging

from app.bootstrap import THREADS_ENV, resolve_threads
from infrastructure.config_manager import CURRENT_SCHEMA_VERSION, ConfigManager
from infrastructure.logger import get_logger


def test_defaults(tmp_path):
    config = ConfigManager(str(tmp_path / "config.json"))
    assert config.get("verify.max_rank") == 3
    assert config.get("props.seed") == 20240607
    assert config.get("output.format") == "json"
    assert config.get("verify.nope", "x") == "x"


def test_save_and_reload(tmp_path):
    path = tmp_path / "config.json"
    config = ConfigManager(str(path))
    config.set("verify.max_dim", 64)
    config.set("threads", 4)
    assert config.save_config()
    reloaded = ConfigManager(str(path))
    assert reloaded.get("verify.max_dim") == 64
    assert reloaded.get("verify.max_rank") == 3
    assert reloaded.get("threads") == 4


def test_partial_file_is_merged(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"schema_version": 1, "props": {"count": 5}, "unknown": 1}), encoding="utf-8")
    config = ConfigManager(str(path))
    assert config.get("props.count") == 5
    assert config.get("props.seed") == 20240607
    assert config.get("unknown") is None


def test_unversioned_file_keeps_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"max_rank": 2, "props": {"seed": 9}}), encoding="utf-8")
    config = ConfigManager(str(path))
    assert config.get("verify.max_rank") == 3
    assert config.get("max_rank") is None
    assert config.get("props.seed") == 9
    assert config.get("schema_version") == CURRENT_SCHEMA_VERSION


class TestLogLevel:

    def test_console_follows_level(self):
        log = get_logger()
        try:
            log.set_level("warning")
            assert log.console_level == logging.WARNING
        finally:
            log.set_level("INFO")
        assert log.console_level == logging.INFO

    def test_unknown_level_is_info(self):
        log = get_logger()
        log.set_level("LOUD")
        assert log.console_level == logging.INFO


def test_corrupt_file_falls_back(tmp_path, data_dir):
    path = tmp_path / "config.json"
    path.write_text("{not json", encoding="utf-8")
    config = ConfigManager(str(path))
    assert config.get_all()["log_level"] == "INFO"


def test_default_location(data_dir):
    config = ConfigManager()
    assert config.config_file == str(data_dir / "config.json")


class TestThreads:

    def test_flag_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert resolve_threads(ConfigManager(str(tmp_path / "c.json")), 2) == 2

    def test_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert resolve_threads(ConfigManager(str(tmp_path / "c.json"))) == 3

    def test_bad_env_uses_config(self, tmp_path, monkeypatch, data_dir):
        monkeypatch.setenv(THREADS_ENV, "many")
        config = ConfigManager(str(tmp_path / "c.json"))
        config.set("threads", 2)
        assert resolve_threads(config) == 2

    def test_floor_is_one(self, tmp_path, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert resolve_threads(ConfigManager(str(tmp_path / "c.json")), 0) == 1
