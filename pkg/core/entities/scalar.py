"""
有理数标量工具
所有系数统一使用 sympy 的 QQ 域元素
"""
from fractions import Fraction
from typing import Iterable, Tuple

from sympy import Rational
from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation

Scalar = type(QQ(0))

ZERO = QQ(0)
ONE = QQ(1)
HALF = QQ(1, 2)


def to_qq(value) -> Scalar:
    """
    将各种输入转换为 QQ 元素

    Args:
        value: int / str("a/b") / Fraction / sympy Rational / QQ 元素

    Returns:
        QQ 元素

    Raises:
        ContractViolation: 无法解析为有理数
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise ContractViolation(f"不支持布尔值作为有理数: {value}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    if isinstance(value, str):
        return parse_qq(value)
    raise ContractViolation(f"无法转换为有理数: {value!r}")


def parse_qq(text: str) -> Scalar:
    """解析 'num/den' 或整数文本"""
    raw = text.strip()
    try:
        if '/' in raw:
            num, den = raw.split('/', 1)
            den_value = int(den)
            if den_value == 0:
                raise ContractViolation(f"分母不能为零: {text!r}")
            return QQ(int(num), den_value)
        return QQ(int(raw))
    except ValueError as e:
        raise ContractViolation(f"无法解析有理数: {text!r}") from e


def format_qq(value) -> str:
    """格式化为 'num/den' 文本（整数不带分母）"""
    q = to_qq(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def qq_vector(values: Iterable) -> Tuple[Scalar, ...]:
    """转换为 QQ 元组"""
    return tuple(to_qq(v) for v in values)


def is_half_odd(value) -> bool:
    """判断是否属于 ℤ+½"""
    q = to_qq(value) - HALF
    return q.denominator == 1
