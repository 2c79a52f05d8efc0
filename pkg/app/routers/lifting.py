"""
提升判定 API 路由
"""
from fastapi import APIRouter, Depends

from app.dependencies.services import get_problem_service
from app.models.schemas import CommandResponse, ProblemFile
from app.routers.envelope import run_command
from app.services.problem_service import ProblemService

router = APIRouter(prefix="/lifting", tags=["Lifting"])


@router.post("/lift-check", response_model=CommandResponse)
def lift_check(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    算子范数下界、sup 范数上界与距离区间
    """
    return run_command(service, "lift-check", problem)


@router.post("/poly-lift-test", response_model=CommandResponse)
def poly_lift_test(problem: ProblemFile, service: ProblemService = Depends(get_problem_service)):
    """
    ‖p‖₂ = 1 的多项式在 Q_m 上的提升判定
    """
    return run_command(service, "poly-lift-test", problem)
