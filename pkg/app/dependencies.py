"""
依赖注入容器
管理全局服务实例
"""
from typing import Optional

from infrastructure.config_manager import ConfigManager
from infrastructure.logger import get_logger
from core.services.formatter import ReportFormatter
from core.services.jordan_algebra import JordanFactory, default_jordan_factory
from core.services.property_suites import PropertySuites
from core.services.realizations import RealizationFactory, default_factory
from core.services.table_verifier import TableVerifier
from core.services.wedge_classifier import WedgeClassifier
from app.bootstrap import resolve_threads


class ServiceContainer:
    """服务容器 - 单例模式管理全局依赖"""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            # 基础服务
            self.config_manager = ConfigManager()
            self.logger = get_logger()

            # 领域服务
            self.realization_factory = default_factory()
            self.jordan_factory = default_jordan_factory()
            self.formatter = ReportFormatter()
            self.classifier = WedgeClassifier(threads=resolve_threads(self.config_manager))

            self._initialized = True

    def get_config_manager(self) -> ConfigManager:
        """获取配置管理器"""
        return self.config_manager

    def get_logger(self):
        """获取日志实例"""
        return self.logger

    def get_realization_factory(self) -> RealizationFactory:
        """获取实现工厂"""
        return self.realization_factory

    def get_jordan_factory(self) -> JordanFactory:
        """获取 Jordan 代数工厂"""
        return self.jordan_factory

    def get_formatter(self) -> ReportFormatter:
        """获取报告格式化器"""
        return self.formatter

    def get_classifier(self, threads: Optional[int] = None) -> WedgeClassifier:
        """获取楔形分类器（指定线程数时重新创建）"""
        if threads is not None and threads != self.classifier.threads:
            self.classifier = WedgeClassifier(threads=threads)
        return self.classifier

    def get_table_verifier(self, max_rank: Optional[int] = None,
                           max_dim: Optional[int] = None) -> TableVerifier:
        """获取表格复现器（上限默认取配置）"""
        return TableVerifier(
            self.realization_factory, self.classifier,
            max_rank=max_rank if max_rank is not None else self.config_manager.get("verify.max_rank", 3),
            max_dim=max_dim if max_dim is not None else self.config_manager.get("verify.max_dim", 140),
        )

    def get_property_suites(self, exceptional: bool = True) -> PropertySuites:
        """获取性质测试集合"""
        return PropertySuites(self.realization_factory, self.jordan_factory, exceptional=exceptional)


def get_container() -> ServiceContainer:
    """全局容器实例"""
    return ServiceContainer()
