"""
Hardy Lift - FastAPI Application
"""
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError

from app.config import get_settings
from app.routers import calculus, interpolation, lifting
from app.routers.envelope import request_validation_error
from app.utils.logconf import setup_logging

# 获取配置
settings = get_settings()
setup_logging(settings.log_level)

# 创建 FastAPI 应用
app = FastAPI(
    title="Hardy Lift",
    description="H²(𝔹ⁿ) 上的 Nevanlinna–Pick 插值与交换子提升数值判定",
    version="1.0.0"
)

# 注册路由
app.include_router(calculus.router)       # 球面积分与压缩算子
app.include_router(interpolation.router)  # Pick 插值
app.include_router(lifting.router)        # 提升判定


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """请求体校验失败返回 400 与 {data, error} 信封"""
    return request_validation_error(exc.errors())


@app.get("/")
async def root():
    """根路径"""
    return {
        "message": "Hardy Lift API",
        "version": "1.0.0",
        "docs": "/docs"
    }


@app.get("/health")
async def health_check():
    """健康检查"""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=settings.port,
        reload=True
    )
