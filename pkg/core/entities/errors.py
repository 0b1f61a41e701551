"""
异常定义模块
统一的异常层次结构
"""
from typing import List, Optional


class LieWedgeError(Exception):
    """所有领域异常的基类"""


class ContractViolation(LieWedgeError, ValueError):
    """前置条件不满足（输入维度、对称性、参数范围等）"""


class SpectrumError(LieWedgeError):
    """谱不是有理数或不可对角化"""

    def __init__(self, message: str, residual_dim: int = 0):
        super().__init__(message)
        self.residual_dim = residual_dim


class ValidationError(LieWedgeError):
    """结构校验失败（Jacobi、自同构、Jordan 公理等）"""

    def __init__(self, message: str, trace: Optional[List[dict]] = None):
        super().__init__(message)
        self.trace = list(trace) if trace else []


class ParseError(LieWedgeError, ValueError):
    """命令行参数解析失败，附带出错位置"""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} (位置 {position}: {text!r})")
        self.text = text
        self.position = position
