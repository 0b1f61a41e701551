"""
表格复现服务
按 resources/tables 中的预期行计算并比对同构类型
"""
import json
from typing import Callable, Dict, List, Optional, Sequence

from core.entities.errors import LieWedgeError
from core.entities.iso_type import IsoType
from core.entities.scalar import format_qq
from core.entities.report_model import (
    STATUS_ERROR, STATUS_FAIL, STATUS_PASS, STATUS_SKIP, STATUS_WARN, RowOutcome, TableReport,
)
from core.entities.wedge_model import CaseSpec
from core.services.realizations import RealizationFactory
from core.services.wedge_classifier import WedgeClassifier
from infrastructure.logger import get_logger
from utils.resource_path import get_resource_path

logger = get_logger()

TABLES = ("table1", "table2", "table3", "table4")


def load_fixture(name: str) -> dict:
    """
    读取预期行

    Raises:
        ValueError: 未知表格名
    """
    if name not in TABLES:
        raise ValueError(f"未知表格: {name}（可选: {', '.join(TABLES)}）")
    path = get_resource_path(f"resources/tables/{name}.json")
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _keys(labels: Sequence[str]) -> Dict[tuple, str]:
    """标签 → 规范键（保留首个文本）"""
    out: Dict[tuple, str] = {}
    for text in labels:
        out.setdefault(IsoType.parse(text).key(), text)
    return out


class TableVerifier:
    """表格复现器"""

    def __init__(self, factory: RealizationFactory, classifier: WedgeClassifier,
                 max_rank: int = 3, max_dim: int = 140):
        """
        初始化

        Args:
            factory: 实现工厂
            classifier: 楔形分类器
            max_rank: 超过该实秩的行记为 SKIP
            max_dim: 超过该维数的行记为 SKIP
        """
        self.factory = factory
        self.classifier = classifier
        self.max_rank = max_rank
        self.max_dim = max_dim
        self._handlers: Dict[str, Callable[[dict], RowOutcome]] = {
            "table1": self._verify_enumeration,
            "table2": self._verify_tube_part,
            "table3": self._verify_partial_sums,
            "table4": self._verify_restriction,
        }

    def verify(self, name: str) -> TableReport:
        """
        复现一张表格

        Args:
            name: table1 / table2 / table3 / table4

        Returns:
            TableReport（行顺序与预期文件一致）
        """
        fixture = load_fixture(name)
        handler = self._handlers[name]
        report = TableReport(table=name, title=fixture.get("title", name))
        for row in fixture["rows"]:
            if row.get("rank", 0) > self.max_rank or row.get("dim", 0) > self.max_dim:
                report.rows.append(RowOutcome(
                    case=row["case"], tau=row.get("tau"), status=STATUS_SKIP,
                    expected=self._expected_list(row), ref=row.get("ref", ""),
                    message=f"超出上限 (rank ≤ {self.max_rank}, dim ≤ {self.max_dim})",
                ))
                continue
            try:
                outcome = handler(row)
            except LieWedgeError as e:
                logger.error(f"{name} {row['case']}: {e}")
                outcome = RowOutcome(
                    case=row["case"], tau=row.get("tau"), status=STATUS_ERROR,
                    expected=self._expected_list(row), ref=row.get("ref", ""),
                    message=str(e), details=list(getattr(e, "trace", []) or []),
                )
            logger.info(f"{name} {row['case']} {row.get('tau') or ''}: {outcome.status}")
            report.rows.append(outcome)
        return report

    def verify_many(self, names: Sequence[str]) -> List[TableReport]:
        """依次复现多张表格"""
        return [self.verify(name) for name in names]

    # ------------------------------------------------------------------
    # 各表格
    # ------------------------------------------------------------------

    @staticmethod
    def _expected_list(row: dict) -> List[str]:
        expected = row["expected"]
        return [expected] if isinstance(expected, str) else list(expected)

    def _realization(self, row: dict):
        spec = CaseSpec.parse(row["case"], row.get("tau"))
        return self.factory.build(spec.family, spec.params), spec

    def _verify_enumeration(self, row: dict) -> RowOutcome:
        """全部 h 模式得到的非零类型集合与预期集合比对"""
        r, spec = self._realization(row)
        results = self.classifier.enumerate(r, spec.tau)
        computed = {}
        details = []
        for res in results:
            details.append({"h": [format_qq(c) for c in res.h], "iso": res.iso.display()})
            if not res.is_zero:
                computed.setdefault(res.iso.key(), res.iso.display())
        expected = _keys(row["expected"])
        unlisted = _keys(row.get("known_unlisted", []))
        missing = [text for key, text in expected.items() if key not in computed]
        extra = [text for key, text in computed.items() if key not in expected]
        warned = [text for key, text in computed.items() if key not in expected and key in unlisted]
        unexpected = [text for text in extra if text not in warned]
        if missing or unexpected:
            status = STATUS_FAIL
        elif warned:
            status = STATUS_WARN
            logger.warning(f"{row['case']}/{row.get('tau')}: 计算得到表中未列出的类型 {', '.join(warned)}")
        else:
            status = STATUS_PASS
        return RowOutcome(
            case=row["case"], tau=row.get("tau"), status=status,
            expected=list(row["expected"]), computed=list(computed.values()),
            missing=missing, unexpected=unexpected + warned, ref=row.get("ref", ""),
            message=f"已知未列出: {', '.join(warned)}" if warned else "", details=details,
        )

    def _verify_tube_part(self, row: dict) -> RowOutcome:
        """𝔤_t(½ΣH_k) 的类型"""
        r, _ = self._realization(row)
        iso = self.classifier.tube_part(r)
        expected = IsoType.parse(row["expected"])
        ok = iso.key() == expected.key()
        return RowOutcome(
            case=row["case"], status=STATUS_PASS if ok else STATUS_FAIL,
            expected=[row["expected"]], computed=[iso.display()],
            missing=[] if ok else [row["expected"]], unexpected=[] if ok else [iso.display()],
            ref=row.get("ref", ""),
        )

    def _verify_partial_sums(self, row: dict) -> RowOutcome:
        """Cayley 对合下 (½^j, 0^{r−j}) 的类型序列（有序比对）"""
        r, _ = self._realization(row)
        results = self.classifier.partial_sums(r, "cayley")
        computed = [res.iso.display() for res in results]
        computed_keys = [res.iso.key() for res in results]
        expected_keys = [IsoType.parse(t).key() for t in row["expected"]]
        ok = computed_keys == expected_keys
        return RowOutcome(
            case=row["case"], tau="cayley", status=STATUS_PASS if ok else STATUS_FAIL,
            expected=list(row["expected"]), computed=computed,
            missing=[t for t, k in zip(row["expected"], expected_keys) if k not in computed_keys],
            unexpected=[t for t, k in zip(computed, computed_keys) if k not in expected_keys],
            ref=row.get("ref", ""),
            details=[{"h": [format_qq(c) for c in res.h], "iso": res.iso.display(),
                      "dim": res.g_tau_h.dim} for res in results],
        )

    def _verify_restriction(self, row: dict) -> RowOutcome:
        """(𝔤_t 的类型, 𝔤_t^τ 的类型)"""
        r, spec = self._realization(row)
        gt_type, fixed_type = self.classifier.restriction(r, spec.tau)
        computed = [gt_type.display(), fixed_type.display()]
        expected_keys = [IsoType.parse(t).key() for t in row["expected"]]
        ok = [gt_type.key(), fixed_type.key()] == expected_keys
        return RowOutcome(
            case=row["case"], tau=row.get("tau"), status=STATUS_PASS if ok else STATUS_FAIL,
            expected=list(row["expected"]), computed=computed,
            missing=[] if ok else list(row["expected"]), unexpected=[] if ok else computed,
            ref=row.get("ref", ""),
        )


def summarize(reports: Sequence[TableReport]) -> Optional[str]:
    """首个失败行的简短描述（全部通过时为 None）"""
    for report in reports:
        for row in report.rows:
            if row.failed:
                return f"{report.table} {row.case} {row.tau or ''}: {row.status} {row.message}".strip()
    return None
