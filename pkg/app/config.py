"""
配置管理模块
"""
from functools import lru_cache
from typing import Optional

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """数值配置（即 lifting 模块中的 Config）"""

    model_config = SettingsConfigDict(
        env_prefix="HARDY_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # 随机数与 Monte Carlo
    seed: int = Field(default=42, ge=0, lt=2**64)
    mc_samples: int = Field(default=1_000_000, ge=1)
    workers: int = Field(default=1, ge=1)

    # 球面网格
    grid_points_per_dim: int = Field(default=1024, ge=8)
    sphere_grid_points: int = Field(default=4096, ge=1)

    # 容差
    tol_psd: float = Field(default=1e-10, gt=0)
    tol_bisect: float = Field(default=1e-10, gt=0)
    max_bisect_iter: int = Field(default=60, ge=1)
    solver_tol: float = Field(default=1e-6, gt=0)
    unimodular_tol: float = Field(default=1e-8, gt=0)
    gram_rcond_min: float = Field(default=1e-12, gt=0)

    # None 表示按维数取默认膨胀系数
    inflation_factor: Optional[float] = None
    max_degree: int = Field(default=12, ge=0)

    # 服务配置
    log_level: str = "WARNING"
    port: int = 8000

    @model_validator(mode="after")
    def _check_inflation(self) -> "Settings":
        if self.inflation_factor is not None and self.inflation_factor < 1.0:
            raise ValueError("inflation_factor 必须 >= 1")
        return self

    def with_overrides(self, **overrides) -> "Settings":
        """返回应用覆盖项后的新配置（会重新校验）"""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return Settings.model_validate(values)


@lru_cache()
def get_settings() -> Settings:
    """获取配置实例（单例）"""
    return Settings()
