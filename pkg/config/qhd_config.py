"""
拟遗传判定配置管理
"""
import logging
import os
from typing import List, Optional

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

logger = logging.getLogger(__name__)


class QhdConfig:
    """判定工具配置类"""

    def __init__(self):
        self.invalid: List[str] = []
        self.cap: Optional[int] = self._int_env('QHD_CAP', None)
        self.field = os.getenv('QHD_FIELD', 'q').strip() or 'q'
        self.log_level = os.getenv('QHD_LOG_LEVEL') or os.getenv('LOG_LEVEL', 'WARNING')
        self.log_file = os.getenv('LOG_FILE') or None

        # 穷举顶点排序的顶点数上限
        self.brute_force_limit = self._int_env('QHD_BRUTE_FORCE_LIMIT', 8)

    def _int_env(self, name: str, default: Optional[int]) -> Optional[int]:
        """整数环境变量；格式错误时记入 invalid 并使用默认值"""
        raw = os.getenv(name, '').strip()
        if not raw:
            return default
        try:
            return int(raw)
        except ValueError:
            logger.warning(f"{name}={raw!r} 不是整数，使用默认值 {default}")
            self.invalid.append(name)
            return default

    def default_cap(self, longest_generator: int, vertex_count: int) -> int:
        """未显式指定时的长度上限：2 × 最长生成元长度 + 顶点数"""
        if self.cap is not None:
            return self.cap
        return 2 * max(longest_generator, 1) + vertex_count

    def validate_config(self) -> bool:
        """验证配置有效性"""
        if self.invalid:
            return False
        if self.cap is not None and self.cap < 1:
            return False
        if self.brute_force_limit < 1:
            return False
        return self.field == 'q' or self.field.startswith('fp:')

    def __str__(self) -> str:
        text = f"QhdConfig(cap={self.cap}, field={self.field}, log_level={self.log_level})"
        if self.invalid:
            text += f" 格式错误: {', '.join(self.invalid)}"
        return text
