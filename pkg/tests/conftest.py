"""
测试公共夹具
"""
import numpy as np
import pytest

from app.config import Settings


@pytest.fixture
def settings() -> Settings:
    """精度允许时使用较少的 Monte Carlo 样本"""
    return Settings(_env_file=None, mc_samples=200_000)


@pytest.fixture
def full_settings() -> Settings:
    """默认的 10⁶ 样本配置"""
    return Settings(_env_file=None)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def ball_points(rng):
    """
    生成两两相距不小于 separation 的球内随机点

    用法: ball_points(m, n, radius=0.7, separation=0.2)
    """
    def make(m: int, n: int, radius: float = 0.7, separation: float = 0.2) -> np.ndarray:
        points = []
        while len(points) < m:
            z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            z *= radius * rng.uniform() ** (1.0 / (2 * n)) / np.linalg.norm(z)
            if all(np.linalg.norm(z - p) >= separation for p in points):
                points.append(z)
        return np.array(points)

    return make
