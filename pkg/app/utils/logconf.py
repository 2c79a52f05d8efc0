"""
日志配置
"""
import logging
import sys

PACKAGE_LOGGER = "app"

logging.getLogger(PACKAGE_LOGGER).addHandler(logging.NullHandler())


def setup_logging(level: str = "WARNING") -> None:
    """
    为入口程序配置日志（输出到 stderr，stdout 只保留 JSON）

    Args:
        level: 日志级别名称
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(level.upper())
    if not any(getattr(h, "_hardy_handler", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        handler._hardy_handler = True
        logger.addHandler(handler)
