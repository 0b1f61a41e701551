"""
报告格式化模块
把分类结果、表格复现结果与性质测试结果整理为 JSON / Markdown / HTML
"""
import json
from typing import Dict, List, Sequence

import markdown2

from core.entities.report_model import PropsReport, Report, TableReport
from core.entities.scalar import format_qq
from core.entities.wedge_model import WedgeResult

FORMATS = ("json", "md", "html")


def _cell(text) -> str:
    """表格单元格（转义竖线）"""
    return str(text).replace("|", "\\|")


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> List[str]:
    """Markdown 表格"""
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    for row in rows:
        lines.append("| " + " | ".join(_cell(c) for c in row) + " |")
    return lines


class ReportFormatter:
    """报告格式化器"""

    def to_json(self, data: Dict) -> str:
        """
        确定性的 JSON 文本（键排序、缩进 2、保留非 ASCII 字符）

        同一输入总是得到逐字节相同的输出
        """
        return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    def to_html(self, markdown_text: str, title: str = "liewedge") -> str:
        """Markdown 转 HTML 文档"""
        body = markdown2.markdown(markdown_text, extras=["tables"])
        return (
            "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
            f"<title>{title}</title>\n</head>\n<body>\n{body}</body>\n</html>\n"
        )

    def render(self, report: Report, fmt: str) -> str:
        """
        按格式输出报告

        Args:
            report: 命令报告
            fmt: json / md / html

        Raises:
            ValueError: 不支持的格式
        """
        if fmt == "json":
            return self.to_json(report.machine)
        if fmt == "md":
            return report.human if report.human.endswith("\n") else report.human + "\n"
        if fmt == "html":
            return self.to_html(report.human, title=f"liewedge {report.command}")
        raise ValueError(f"不支持的输出格式: {fmt}（可选: {', '.join(FORMATS)}）")

    # ------------------------------------------------------------------
    # Markdown
    # ------------------------------------------------------------------

    def realization_markdown(self, data: Dict) -> str:
        """实现的结构数据"""
        lines = [f"# {data['algebra']}", ""]
        lines.extend(_table(["项目", "值"], [
            ("同构类型", data["iso"]),
            ("维数", data["dim"]),
            ("实秩", data["rank"]),
            ("管型", "是" if data["tube"] else "否"),
            ("限制根重数", ", ".join(str(m) for m in data.get("multiplicities", []))),
        ]))
        if data.get("involutions"):
            lines.extend(["", "## 标准对合", ""])
            lines.extend(_table(
                ["名称", "类别", "不动代数", "维数", "实秩"],
                [(inv["name"], inv["class"], inv["fixed_algebra"], inv["fixed_dim"], inv["fixed_rank"])
                 for inv in data["involutions"]],
            ))
        return "\n".join(lines) + "\n"

    def wedge_markdown(self, results: Sequence[WedgeResult], title: str) -> str:
        """楔形结果表（每个 h 一行）"""
        rows = []
        for res in results:
            rows.append((
                ",".join(format_qq(c) for c in res.h),
                ",".join(format_qq(c) for c in res.h0),
                res.g_tau_h.dim, res.c_plus.dim, res.bracket_part.dim,
                res.iso.display(),
            ))
        lines = [f"# {title}", ""]
        lines.extend(_table(["h", "h₀", "dim 𝔤(τ,h)", "dim 𝔤₊", "dim [𝔤₋,𝔤₊]", "𝔤(τ,h)"], rows))
        return "\n".join(lines) + "\n"

    def tables_markdown(self, reports: Sequence[TableReport]) -> str:
        """表格复现结果"""
        lines: List[str] = []
        for report in reports:
            counts = report.counts()
            summary = ", ".join(f"{k} {v}" for k, v in counts.items() if v)
            lines.extend([f"# {report.table}: {report.title}", "", f"结果: {summary}", ""])
            lines.extend(_table(
                ["用例", "τ", "状态", "预期", "计算", "出处"],
                [(row.case, row.tau or "", row.status, ", ".join(row.expected),
                  ", ".join(row.computed) or row.message, row.ref)
                 for row in report.rows],
            ))
            notes = [row for row in report.rows if row.missing or row.unexpected]
            for row in notes:
                lines.append("")
                if row.missing:
                    lines.append(f"- {row.case} {row.tau or ''}: 缺少 {', '.join(row.missing)}")
                if row.unexpected:
                    lines.append(f"- {row.case} {row.tau or ''}: 多出 {', '.join(row.unexpected)}")
            lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"

    def props_markdown(self, report: PropsReport) -> str:
        """性质测试结果"""
        lines = [f"# 性质测试 (seed {report.seed}, count {report.count})", ""]
        lines.extend(_table(
            ["套件", "用例数", "失败", "结果"],
            [(s.name, s.cases, len(s.failures), "PASS" if s.passed else "FAIL") for s in report.suites],
        ))
        for suite in report.suites:
            if suite.failures:
                lines.extend(["", f"## {suite.name}", ""])
                lines.extend(f"- {msg}" for msg in suite.failures[:20])
        return "\n".join(lines) + "\n"
