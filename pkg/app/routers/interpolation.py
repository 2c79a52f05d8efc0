"""
插值 API 路由
"""
from fastapi import APIRouter, Depends

from app.dependencies.services import get_problem_service
from app.models.schemas import CommandResponse, ProblemFile
from app.routers.envelope import run_command
from app.services.problem_service import ProblemService

router = APIRouter(prefix="/interpolation", tags=["Interpolation"])


@router.post("/pick", response_model=CommandResponse)
def pick(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    n = 1 的 Pick 矩阵、可行性与 Pick 常数
    """
    return run_command(service, "pick", problem)


@router.post("/interpolate", response_model=CommandResponse)
def interpolate(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    ψ_{Z,W} 的核组合系数；n = 1 且严格可行时附带 Schur 插值函数
    """
    return run_command(service, "interpolate", problem)
