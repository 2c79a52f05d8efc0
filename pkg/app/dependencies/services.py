"""
服务依赖
"""
from fastapi import Depends

from app.config import Settings, get_settings
from app.services.problem_service import ProblemService


def get_problem_service(settings: Settings = Depends(get_settings)) -> ProblemService:
    """
    为每个请求构造命令分发服务

    Args:
        settings: 配置

    Returns:
        ProblemService
    """
    return ProblemService(settings)
