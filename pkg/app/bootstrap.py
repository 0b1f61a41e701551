"""
应用程序引导模块
负责日志级别与并行度等启动参数的解析
"""
import os
from typing import Optional

THREADS_ENV = "LIEWEDGE_THREADS"


def initialize_logger(config_manager, level: Optional[str] = None):
    """
    初始化日志系统

    Args:
        config_manager: 配置管理器实例
        level: 命令行指定的级别（优先于配置）
    """
    from infrastructure.logger import get_logger

    logger = get_logger()
    logger.set_level(level or config_manager.get("log_level", "INFO"))
    logger.debug("liewedge 启动")

    return logger


def resolve_threads(config_manager, flag: Optional[int] = None) -> int:
    """
    并行线程数：命令行 > 环境变量 LIEWEDGE_THREADS > 配置 > 1

    Args:
        config_manager: 配置管理器实例
        flag: 命令行指定的线程数

    Returns:
        不小于 1 的线程数
    """
    if flag is not None:
        return max(1, int(flag))
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            from infrastructure.logger import get_logger
            get_logger().warning(f"{THREADS_ENV}={raw!r} 不是整数，忽略")
    return max(1, int(config_manager.get("threads", 1) or 1))
