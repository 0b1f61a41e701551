"""
子命令实现
每个命令返回 Report：machine 为 JSON 字典，human 为 Markdown，exit_code 为 0/1/2
"""
from typing import List, Optional, Sequence

from app.dependencies import ServiceContainer
from core.entities.errors import ContractViolation
from core.entities.report_model import Report
from core.entities.wedge_model import CaseSpec
from core.services.lie_core import restricted_root_data
from core.services.table_verifier import TABLES, summarize
from infrastructure.logger import get_logger

logger = get_logger()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _realization(container: ServiceContainer, spec: CaseSpec):
    return container.get_realization_factory().build(spec.family, spec.params)


def cmd_build(container: ServiceContainer, case: str) -> Report:
    """
    构造实现并输出结构数据

    Raises:
        ParseError: 代数规格格式错误
        ContractViolation: 参数超出范围
    """
    spec = CaseSpec.parse(case)
    r = _realization(container, spec)
    data = r.to_dict()
    roots = r.extras.get("root_data") or restricted_root_data(r.algebra, r.a_basis)
    data["multiplicities"] = roots.multiplicities()
    data["root_data"] = roots.to_dict()
    machine = {"command": "build", "case": spec.label(), "realization": data}
    human = container.get_formatter().realization_markdown(data)
    return Report(command="build", machine=machine, human=human, exit_code=EXIT_OK)


def cmd_classify(container: ServiceContainer, case: str, tau: Optional[str], h: Optional[str],
                 threads: Optional[int] = None) -> Report:
    """
    计算单个 h 的 𝔤(τ, h)，或 h = enumerate 时遍历全部模式

    τ 缺省时取第一个标准对合

    Raises:
        ParseError: 参数格式错误
        ContractViolation: 缺少 h、对合不存在或坐标个数不符
        ValidationError: 计算中的结构校验失败
    """
    spec = CaseSpec.parse(case, tau, h)
    if spec.h is None and not spec.enumerate_all:
        raise ContractViolation("classify 需要 --h（逗号分隔的有理数或 enumerate）")
    r = _realization(container, spec)
    selector = spec.tau if spec.tau is not None else 0
    record = r.involution(selector)
    classifier = container.get_classifier(threads)
    formatter = container.get_formatter()
    title = f"{r.label} / {record.name}"
    if spec.enumerate_all:
        results = classifier.enumerate(r, record)
        machine = {
            "command": "classify", "case": spec.label(), "tau": record.name,
            "tau_class": record.tau_class, "enumerate": True,
            "iso_types": [res.iso.display() for res in results if not res.is_zero],
            "results": [res.to_dict() for res in results],
        }
    else:
        results = [classifier.classify(classifier.input_for(r, record, spec.h))]
        machine = {"command": "classify", "case": spec.label(), "enumerate": False}
        machine.update(results[0].to_dict())
    return Report(command="classify", machine=machine,
                  human=formatter.wedge_markdown(results, title), exit_code=EXIT_OK)


def cmd_verify_tables(container: ServiceContainer, which: Sequence[str], max_rank: Optional[int] = None,
               max_dim: Optional[int] = None, threads: Optional[int] = None) -> Report:
    """
    复现表格并与预期行比对；任一行 FAIL / ERROR 时退出码为 1

    Raises:
        ContractViolation: 未知表格名
    """
    names: List[str] = []
    for name in which:
        if name == "all":
            names.extend(TABLES)
        elif name in TABLES:
            names.append(name)
        else:
            raise ContractViolation(f"未知表格: {name}（可选: {', '.join(TABLES)}, all）")
    container.get_classifier(threads)
    verifier = container.get_table_verifier(max_rank=max_rank, max_dim=max_dim)
    reports = verifier.verify_many(list(dict.fromkeys(names)))
    passed = all(report.passed for report in reports)
    first_failure = summarize(reports)
    if first_failure:
        logger.error(f"表格复现失败: {first_failure}")
    machine = {
        "command": "verify",
        "max_rank": verifier.max_rank,
        "max_dim": verifier.max_dim,
        "passed": passed,
        "tables": [report.to_dict() for report in reports],
    }
    return Report(command="verify", machine=machine,
                  human=container.get_formatter().tables_markdown(reports),
                  exit_code=EXIT_OK if passed else EXIT_FAILED)


def cmd_props(container: ServiceContainer, seed: Optional[int] = None, count: Optional[int] = None,
              suites: Optional[Sequence[str]] = None, exceptional: bool = True) -> Report:
    """
    运行性质测试；任一失败时退出码为 1

    Raises:
        ValueError: 未知套件名
    """
    config = container.get_config_manager()
    seed = seed if seed is not None else config.get("props.seed", 20240607)
    count = count if count is not None else config.get("props.count", 1000)
    if count < 1:
        raise ContractViolation(f"--count 必须为正整数，实际 {count}")
    report = container.get_property_suites(exceptional=exceptional).run(seed, count, only=suites)
    machine = {"command": "props"}
    machine.update(report.to_dict())
    return Report(command="props", machine=machine,
                  human=container.get_formatter().props_markdown(report),
                  exit_code=EXIT_OK if report.passed else EXIT_FAILED)
