"""
球面积分与压缩算子 API 路由
"""
from fastapi import APIRouter, Depends

from app.dependencies.services import get_problem_service
from app.models.schemas import CommandResponse, ProblemFile
from app.routers.envelope import run_command
from app.services.problem_service import ProblemService

router = APIRouter(prefix="/calculus", tags=["Calculus"])


@router.post("/integrate", response_model=CommandResponse)
def integrate(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    单项式的精确积分，或多项式的 L1 / L2 / Linf 球面范数
    """
    return run_command(service, "integrate", problem)


@router.post("/compress", response_model=CommandResponse)
def compress(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    S_p 在 Q_m 上的矩阵（正交规范单项式基）
    """
    return run_command(service, "compress", problem)
