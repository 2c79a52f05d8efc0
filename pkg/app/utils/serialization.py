"""
JSON 序列化工具 - 浮点数统一保留 17 位有效数字
"""
import json
import math
from fractions import Fraction
from typing import Any

import numpy as np


def format_float(value: float) -> str:
    """格式化浮点数；非有限值输出为字符串哨兵"""
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    if value == 0.0:
        # 统一 -0.0 与 0.0
        return "0"
    return format(value, ".17g")


def encode_json(obj: Any) -> str:
    """
    将结果结构编码为确定性的 JSON 文本

    复数编码为 [re, im]；numpy 标量与数组、Fraction 均转为普通数值。

    Args:
        obj: 待编码对象

    Returns:
        JSON 文本
    """
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_json([float(obj.real), float(obj.imag)])
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        return encode_json(obj.tolist())
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k), ensure_ascii=False)}: {encode_json(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(encode_json(v) for v in obj) + "]"
    if hasattr(obj, "to_payload"):
        return encode_json(obj.to_payload())
    raise TypeError(f"无法序列化类型: {type(obj).__name__}")


def complex_pair(value: complex) -> list:
    """复数 -> [re, im]"""
    value = complex(value)
    return [value.real, value.imag]
