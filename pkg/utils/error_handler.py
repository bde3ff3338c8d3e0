# -*- coding: utf-8 -*-
"""
错误处理工具类 - 提供统一的异常体系、错误分类和退出码映射
"""
import time
import logging
import traceback
from typing import Any, Dict, Optional
from enum import Enum


class QhdError(Exception):
    """所有领域错误的基类"""


class PresentationError(QhdError):
    """呈示文件解析错误（带行列位置）"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        self.detail = message
        if line is not None:
            message = f"line {line}, col {column or 1}: {message}"
        super().__init__(message)


class CapExceeded(QhdError):
    """补全或正规基枚举超过长度上限"""

    def __init__(self, message: str, cap: int):
        self.cap = cap
        super().__init__(f"{message} (cap={cap})")


class NotAdmissibleError(QhdError):
    """理想不满足 I ⊆ J²"""


class PreconditionFailed(QhdError):
    """操作的前置条件不成立"""


class TooLarge(QhdError):
    """穷举搜索规模超限"""


class NotMonomialError(QhdError):
    """要求单项式关系但输入含有多项关系"""


class ZeroElementError(QhdError, ValueError):
    """零元素没有首项"""


class ErrorType(Enum):
    """错误类型枚举"""
    INPUT_ERROR = "输入错误"
    CAP_ERROR = "上限错误"
    PRECONDITION_ERROR = "前置条件错误"
    ALGEBRA_ERROR = "代数错误"
    SYSTEM_ERROR = "系统错误"
    UNKNOWN_ERROR = "未知错误"


# 退出码：0 判定/验证通过，1 非拟遗传或链被拒绝，2 未知，3 输入或上限错误
EXIT_DECIDED = 0
EXIT_REJECTED = 1
EXIT_UNKNOWN = 2
EXIT_INPUT_ERROR = 3


class ErrorHandler:
    """统一错误处理器"""

    def __init__(self, logger_name: str = __name__):
        self.logger = logging.getLogger(logger_name)
        self.error_stats = {error_type: 0 for error_type in ErrorType}

    def classify_error(self, error: Exception) -> ErrorType:
        """分类错误类型"""
        if isinstance(error, (PresentationError, NotMonomialError)):
            return ErrorType.INPUT_ERROR

        elif isinstance(error, (CapExceeded, TooLarge)):
            return ErrorType.CAP_ERROR

        elif isinstance(error, PreconditionFailed):
            return ErrorType.PRECONDITION_ERROR

        elif isinstance(error, (NotAdmissibleError, ZeroElementError, QhdError)):
            return ErrorType.ALGEBRA_ERROR

        elif isinstance(error, (OSError, MemoryError)):
            return ErrorType.SYSTEM_ERROR

        else:
            return ErrorType.UNKNOWN_ERROR

    def handle_error(self, error: Exception, context: str = "",
                     log_traceback: bool = True) -> Dict[str, Any]:
        """处理错误并返回错误信息"""
        error_type = self.classify_error(error)
        self.error_stats[error_type] += 1

        error_info = {
            'type': error_type.value,
            'message': str(error),
            'context': context,
            'timestamp': time.strftime('%Y-%m-%d %H:%M:%S'),
            'exit_code': EXIT_INPUT_ERROR,
        }

        log_message = f"[{error_type.value}] {context}: {error}"

        if error_type in (ErrorType.SYSTEM_ERROR, ErrorType.UNKNOWN_ERROR):
            self.logger.error(log_message)
            if log_traceback:
                self.logger.error(f"详细错误信息:\n{traceback.format_exc()}")
        elif error_type in (ErrorType.CAP_ERROR, ErrorType.ALGEBRA_ERROR):
            self.logger.warning(log_message)
        else:
            self.logger.info(log_message)

        return error_info

    def get_error_stats(self) -> Dict[str, int]:
        """获取错误统计"""
        return {error_type.value: count for error_type, count in self.error_stats.items()}

    def reset_stats(self):
        """重置错误统计"""
        for error_type in self.error_stats:
            self.error_stats[error_type] = 0
