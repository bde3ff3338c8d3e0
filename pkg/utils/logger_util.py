"""
日志工具类
"""
import logging
import os
import sys
from typing import Optional


def setup_logger(log_level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """设置日志配置（控制台输出走 stderr，保持 stdout 只输出报告）"""

    # 获取日志级别
    if log_level is None:
        log_level = os.getenv('QHD_LOG_LEVEL') or os.getenv('LOG_LEVEL', 'WARNING')

    # 获取日志文件名，未配置时不写文件
    if log_file is None:
        log_file = os.getenv('LOG_FILE') or None

    level = getattr(logging, log_level.upper(), logging.WARNING)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    logger = logging.getLogger()
    logger.setLevel(level)

    # 清除现有处理器
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


class LoggerMixin:
    """日志混入类"""

    @property
    def logger(self) -> logging.Logger:
        """获取当前类的日志器"""
        return logging.getLogger(self.__class__.__name__)
