"""
精确线性代数工具 - 稀疏坐标向量的行化简（sympy DomainMatrix，支持 QQ 与 GF(p)）
"""
from typing import Dict, List, Sequence
import logging

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

SparseVector = Dict[int, object]


def row_basis(vectors: Sequence[SparseVector], width: int, field: Domain) -> List[SparseVector]:
    """行空间的简化阶梯形基（每行首元为 1）"""
    rows = {i: dict(v) for i, v in enumerate(vectors) if v}
    if not rows or width == 0:
        return []
    matrix = DomainMatrix(rows, (len(vectors), width), field)
    logger.debug(f"行化简: {len(rows)} x {width}")
    echelon, _ = matrix.rref()
    # 稀疏表示只保存非零行，即 rref 的前 rank 行
    sparse = echelon.to_sparse().rep
    return [{j: c for j, c in sparse[i].items() if c} for i in sorted(sparse)]


def rank(vectors: Sequence[SparseVector], width: int, field: Domain) -> int:
    return len(row_basis(vectors, width, field))


class EchelonSpan:
    """逐批扩充的子空间，保持简化阶梯形基"""

    def __init__(self, width: int, field: Domain):
        self.width = width
        self.field = field
        self.basis: List[SparseVector] = []

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def extend(self, vectors: Sequence[SparseVector]) -> int:
        """加入一批向量，返回维数增量"""
        before = len(self.basis)
        candidates = [v for v in vectors if v]
        if candidates:
            self.basis = row_basis(self.basis + candidates, self.width, self.field)
        return len(self.basis) - before
