"""
测试公共夹具
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.services.realizations import RealizationFactory  # noqa: E402
from core.services.wedge_classifier import WedgeClassifier  # noqa: E402


@pytest.fixture(scope="session")
def factory():
    """会话内共享的实现工厂（缓存已构造的实现）"""
    return RealizationFactory()


@pytest.fixture(scope="session")
def classifier():
    """默认参数的楔形分类器"""
    return WedgeClassifier()


@pytest.fixture
def data_dir(tmp_path, monkeypatch):
    """把配置与输出目录重定向到临时目录"""
    monkeypatch.setenv("LIEWEDGE_DATA_DIR", str(tmp_path))
    return tmp_path
