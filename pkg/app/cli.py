"""
命令行入口

用法:
    python -m app.cli pick problem.json --seed 7
    python -m app.cli lift-check problem.json --degree 4 --grid 2048

标准输出只包含一个 JSON 文档；日志写入标准错误。
退出码：0 计算完成（任何判定），2 输入不合法，3 数值失败。
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.config import get_settings
from app.errors import HardyError, InvalidInputError
from app.services.problem_service import COMMANDS, ProblemService
from app.utils.logconf import setup_logging
from app.utils.serialization import encode_json

logger = logging.getLogger(__name__)

EXIT_OK = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardy-lift", description="H²(𝔹ⁿ) 插值与提升判定")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="问题文件路径，'-' 表示标准输入")
    parser.add_argument("--seed", type=int, default=None, help="Monte Carlo 种子")
    parser.add_argument("--samples", type=int, default=None, help="Monte Carlo 样本数")
    parser.add_argument("--degree", type=int, default=None, help="代表元多项式的最大次数")
    parser.add_argument("--tol", type=float, default=None, help="半正定判定与二分的容差")
    parser.add_argument("--grid", type=int, default=None, help="每个坐标圆周上的网格点数")
    parser.add_argument("--log-level", default=None, help="日志级别（默认取配置）")
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"无法读取输入文件: {e.strerror}", path=path)


def main(argv: Optional[List[str]] = None) -> int:
    """
    运行一条命令并把结果写到标准输出

    Args:
        argv: 命令行参数，默认取 sys.argv[1:]

    Returns:
        退出码
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level)

    service = ProblemService(settings)
    try:
        problem = service.parse(_read_input(args.input))
        result = service.run(
            args.command,
            problem,
            degree=args.degree,
            seed=args.seed,
            samples=args.samples,
            tol=args.tol,
            grid=args.grid,
        )
    except HardyError as e:
        logger.error("%s failed: %s", args.command, e.message)
        sys.stdout.write(encode_json({"command": args.command, "error": e.to_payload()}) + "\n")
        return e.exit_code

    sys.stdout.write(encode_json(result) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
