"""
报告实体模型
表格复现结果、性质测试结果与命令输出报告
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.entities.errors import ContractViolation
from core.entities.wedge_model import SCHEMA_VERSION

STATUS_PASS = "PASS"
STATUS_WARN = "WARN"
STATUS_FAIL = "FAIL"
STATUS_ERROR = "ERROR"
STATUS_SKIP = "SKIP"
ROW_STATUSES = (STATUS_PASS, STATUS_WARN, STATUS_FAIL, STATUS_ERROR, STATUS_SKIP)


@dataclass
class RowOutcome:
    """表格中一行的比对结果"""

    case: str
    status: str
    expected: List[str] = field(default_factory=list)
    computed: List[str] = field(default_factory=list)
    missing: List[str] = field(default_factory=list)
    unexpected: List[str] = field(default_factory=list)
    tau: Optional[str] = None
    ref: str = ""
    message: str = ""
    details: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self):
        """验证数据"""
        if self.status not in ROW_STATUSES:
            raise ContractViolation(f"未知的行状态: {self.status}")

    @property
    def failed(self) -> bool:
        """FAIL 或 ERROR"""
        return self.status in (STATUS_FAIL, STATUS_ERROR)

    def to_dict(self) -> dict:
        """转换为字典"""
        data = {
            "case": self.case,
            "tau": self.tau,
            "status": self.status,
            "expected": list(self.expected),
            "computed": list(self.computed),
            "missing": list(self.missing),
            "unexpected": list(self.unexpected),
            "ref": self.ref,
        }
        if self.message:
            data["message"] = self.message
        if self.details:
            data["details"] = list(self.details)
        return data


@dataclass
class TableReport:
    """一张表格的复现报告"""

    table: str
    title: str
    rows: List[RowOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """没有 FAIL / ERROR 行"""
        return not any(row.failed for row in self.rows)

    def counts(self) -> Dict[str, int]:
        """各状态的行数"""
        return {status: sum(1 for row in self.rows if row.status == status)
                for status in ROW_STATUSES}

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "schema_version": SCHEMA_VERSION,
            "table": self.table,
            "title": self.title,
            "passed": self.passed,
            "counts": self.counts(),
            "rows": [row.to_dict() for row in self.rows],
        }


@dataclass
class SuiteOutcome:
    """单个性质测试套件的结果"""

    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """无失败"""
        return not self.failures

    def to_dict(self) -> dict:
        """转换为字典（失败信息最多保留 20 条）"""
        return {
            "name": self.name,
            "cases": self.cases,
            "failed": len(self.failures),
            "failures": self.failures[:20],
        }


@dataclass
class PropsReport:
    """性质测试报告"""

    seed: int
    count: int
    suites: List[SuiteOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """全部套件通过"""
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "suites": [s.to_dict() for s in self.suites],
        }


@dataclass
class Report:
    """
    命令输出：机器可读部分（JSON 字典）与人类可读部分（Markdown）

    exit_code 遵循 0 成功 / 1 校验失败 / 2 用法错误
    """

    command: str
    machine: Dict[str, Any]
    human: str = ""
    exit_code: int = 0

    def __post_init__(self):
        """验证数据"""
        if self.exit_code not in (0, 1, 2):
            raise ContractViolation(f"退出码必须为 0/1/2: {self.exit_code}")
        self.machine.setdefault("schema_version", SCHEMA_VERSION)
