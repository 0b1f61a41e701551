"""
liewedge 命令行
主入口文件
"""
import argparse
import sys
from typing import List, Optional

from core.entities.errors import LieWedgeError, SpectrumError, ValidationError
from core.services.formatter import FORMATS
from core.services.table_verifier import TABLES


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器"""
    parser = argparse.ArgumentParser(
        prog="liewedge",
        description="厄米李代数中由对合与整双曲元确定的子代数 𝔤(τ,h) 的精确计算",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="输出格式（默认取配置，json）")
    common.add_argument("--out", default=None, help="输出文件（默认标准输出）")
    common.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--threads", type=int, default=None, help="并行线程数（覆盖 LIEWEDGE_THREADS）")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="构造实现并输出结构数据")
    p.add_argument("--case", required=True, help="su:p,q | sp:n | sostar:n | so2:n | sl2:r | kkt:<Jordan 族>")

    p = sub.add_parser("classify", parents=[common], help="计算 𝔤(τ,h)")
    p.add_argument("--case", required=True)
    p.add_argument("--tau", default=None, help="对合名（cayley, so, sp, spc/slc, soc, so1n, so1a:<a>）或下标")
    p.add_argument("--h", required=True, help="𝔞_𝔥 坐标，如 1/2,0；或 enumerate")

    p = sub.add_parser("verify", parents=[common], help="复现表格")
    p.add_argument("tables", nargs="+", choices=list(TABLES) + ["all"])
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--max-dim", type=int, default=None)

    p = sub.add_parser("props", parents=[common], help="运行性质测试")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--suite", action="append", default=None, help="只运行指定套件（可重复）")
    p.add_argument("--skip-exceptional", action="store_true", help="跳过 Herm(3,O) 与 e7")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行命令并返回退出码：0 成功，1 校验失败或结果不符，2 用法错误

    Args:
        argv: 命令行参数（None 表示 sys.argv[1:]）
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    from app.bootstrap import initialize_logger
    from app.dependencies import get_container
    from cli import commands

    container = get_container()
    config = container.get_config_manager()
    logger = initialize_logger(config, args.log_level)
    fmt = args.format or config.get("output.format", "json")

    try:
        if args.command == "build":
            report = commands.cmd_build(container, args.case)
        elif args.command == "classify":
            report = commands.cmd_classify(container, args.case, args.tau, args.h, threads=args.threads)
        elif args.command == "verify":
            report = commands.cmd_verify_tables(container, args.tables, max_rank=args.max_rank,
                                         max_dim=args.max_dim, threads=args.threads)
        else:
            report = commands.cmd_props(container, seed=args.seed, count=args.count,
                                        suites=args.suite, exceptional=not args.skip_exceptional)
    except (ValidationError, SpectrumError) as e:
        logger.error(f"{args.command}: {e}")
        trace = getattr(e, "trace", None)
        if trace:
            logger.error(f"已完成的步骤: {trace}")
        return commands.EXIT_FAILED
    except (ValueError, LieWedgeError) as e:
        logger.error(f"{args.command}: {e}")
        return commands.EXIT_USAGE

    text = container.get_formatter().render(report, fmt)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"报告已写入 {args.out}")
    else:
        sys.stdout.write(text)
    return report.exit_code


def main():
    """程序主入口"""
    sys.exit(run())


if __name__ == '__main__':
    main()
