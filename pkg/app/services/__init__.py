"""
Services module
"""
from app.services.hardy_service import HardyService
from app.services.interpolation_service import InterpolationService
from app.services.lifting_service import LiftingService
from app.services.problem_service import ProblemService
from app.services.quotient_service import QuotientService
from app.services.sphere_service import SphereService

__all__ = [
    "SphereService",
    "HardyService",
    "QuotientService",
    "InterpolationService",
    "LiftingService",
    "ProblemService",
]
