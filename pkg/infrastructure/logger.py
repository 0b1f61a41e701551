"""
日志系统模块
文件日志保留完整计算轨迹（DEBUG），控制台走 stderr，stdout 只留给报告
"""
import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler

from utils.resource_path import get_data_path

LOGGER_NAME = "liewedge"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class AppLogger:
    """应用日志管理器（单例）"""

    _instance = None
    _logger = None
    _console = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._logger is not None:
            return
        self._logger = logging.getLogger(LOGGER_NAME)
        self._logger.setLevel(logging.DEBUG)
        for handler in self._logger.handlers:
            if not isinstance(handler, RotatingFileHandler):
                self._console = handler
        if self._logger.handlers:
            return

        self._logger.addHandler(self._file_handler())
        self._console = logging.StreamHandler(sys.stderr)
        self._console.setLevel(logging.INFO)
        self._console.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
        self._logger.addHandler(self._console)

    @staticmethod
    def _file_handler() -> RotatingFileHandler:
        """按日期命名、10MB 轮转的文件日志"""
        today = datetime.now().strftime("%Y-%m-%d")
        handler = RotatingFileHandler(
            os.path.join(get_data_path("logs"), f"{today}.log"),
            maxBytes=10 * 1024 * 1024,
            backupCount=7,
            encoding='utf-8'
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))
        return handler

    @property
    def console_level(self) -> int:
        return self._console.level if self._console else logging.NOTSET

    def set_level(self, level: str):
        """
        设置控制台日志级别（文件日志始终为 DEBUG）

        Args:
            level: DEBUG / INFO / WARNING / ERROR，其他取值按 INFO 处理
        """
        name = level.upper()
        if name not in LEVELS:
            self._logger.warning(f"未知日志级别 {level!r}，使用 INFO")
            name = "INFO"
        if self._console is not None:
            self._console.setLevel(getattr(logging, name))
        self._logger.debug(f"控制台日志级别: {name}")

    def debug(self, message: str):
        self._logger.debug(message)

    def info(self, message: str):
        self._logger.info(message)

    def warning(self, message: str):
        self._logger.warning(message)

    def error(self, message: str):
        self._logger.error(message)


# 全局日志实例
logger = AppLogger()


def get_logger():
    """获取全局日志实例"""
    return logger
