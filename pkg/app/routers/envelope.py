"""
路由公共部分 - 统一的 {data, error} 响应信封
"""
import logging
from typing import Any, Dict, Sequence

from fastapi import Response

from app.errors import HardyError, InvalidInputError
from app.models.schemas import ProblemFile
from app.services.problem_service import ProblemService, validation_details
from app.utils.serialization import encode_json

logger = logging.getLogger(__name__)

STATUS_BY_REASON = {InvalidInputError.reason: 400}


def envelope(data: Any = None, error: Dict[str, Any] = None, status_code: int = 200) -> Response:
    """以 17 位有效数字编码结果，非有限值编码为字符串"""
    body = encode_json({"data": data, "error": error})
    return Response(content=body, media_type="application/json", status_code=status_code)


def request_validation_error(errors: Sequence[Dict[str, Any]]) -> Response:
    """请求体未通过模型校验：与服务层的 invalid_input 使用同一信封"""
    error = InvalidInputError("请求体不符合模型", errors=validation_details(errors))
    logger.warning("request rejected: %s", error.details["errors"])
    return envelope(error=error.to_payload(), status_code=STATUS_BY_REASON[error.reason])


def run_command(service: ProblemService, command: str, problem: ProblemFile) -> Response:
    try:
        return envelope(data=service.run(command, problem))
    except HardyError as e:
        logger.warning("%s failed: %s", command, e.message)
        return envelope(error=e.to_payload(), status_code=STATUS_BY_REASON.get(e.reason, 422))
