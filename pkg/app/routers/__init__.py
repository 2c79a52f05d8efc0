"""
Routers module
"""
from app.routers import calculus, interpolation, lifting

__all__ = ["calculus", "interpolation", "lifting"]
