"""
有限维代数模型 - 以正规基 N 为基的结构常数表、理想子空间 ΛeΛ 与张量维数
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Mapping, Tuple
import logging

from sympy.polys.domains.domain import Domain

from models.groebner_model import GroebnerData, reduce
from models.path_algebra_model import Element
from models.quiver_model import Path, Quiver, compose
from utils.error_handler import PreconditionFailed
from utils.linear_algebra import EchelonSpan, SparseVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FDAlgebra:
    """Λ = KQ/I：基为 N，乘法 n1·n2 = reduce(n1 n2)"""
    quiver: Quiver
    data: GroebnerData
    table: Mapping[Tuple[Path, Path], Element] = field(hash=False, compare=False)

    @property
    def basis(self) -> Tuple[Path, ...]:
        return self.data.normal_basis

    @property
    def field(self) -> Domain:
        return self.data.field

    @property
    def dimension(self) -> int:
        return len(self.data.normal_basis)

    @cached_property
    def index(self) -> Dict[Path, int]:
        return {p: i for i, p in enumerate(self.data.normal_basis)}

    def basis_element(self, p: Path) -> Element:
        return Element.monomial(p, self.field)

    def radical_basis(self) -> List[Path]:
        """J(Λ) 的基：长度 >= 1 的正规路径（I 容许时成立）"""
        return [p for p in self.basis if p.length >= 1]

    def arrows(self) -> List[Path]:
        return [p for p in self.basis if p.length == 1]

    def multiply(self, x: Element, y: Element) -> Element:
        terms: Dict[Path, object] = {}
        zero = self.field.zero
        for p, c in x.terms.items():
            for q, d in y.terms.items():
                if p.end != q.origin:
                    continue
                product_element = self.table.get((p, q))
                if product_element is None:
                    continue
                factor = c * d
                for r, e in product_element.terms.items():
                    terms[r] = terms.get(r, zero) + factor * e
        return Element(terms, self.field)

    def to_vector(self, x: Element) -> SparseVector:
        index = self.index
        return {index[p]: c for p, c in x.terms.items()}

    def from_vector(self, vector: SparseVector) -> Element:
        basis = self.basis
        return Element({basis[i]: c for i, c in vector.items()}, self.field)

    def is_associative(self) -> bool:
        """在全部基三元组上检查结合律"""
        elements = [self.basis_element(p) for p in self.basis]
        for x, y, z in product(elements, repeat=3):
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                return False
        return True

    def unit_check(self) -> bool:
        """顶点是两两正交的幂等元且和为 1"""
        vertices = [Element.monomial(v, self.field) for v in self.quiver.vertex_paths()]
        one = Element.zero(self.field)
        for v in vertices:
            one = one + v
        for v, w in product(vertices, repeat=2):
            expected = v if v == w else Element.zero(self.field)
            if self.multiply(v, w) != expected:
                return False
        for p in self.basis:
            n = self.basis_element(p)
            if self.multiply(one, n) != n or self.multiply(n, one) != n:
                return False
        return True


@dataclass(frozen=True)
class Subspace:
    """Span N 中的子空间，基为行简化后的元素"""
    algebra: FDAlgebra
    basis: Tuple[Element, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def build_fd_algebra(quiver: Quiver, data: GroebnerData) -> FDAlgebra:
    """结构常数表 table[n1][n2] = reduce(n1·n2)，不可复合时为 0（不存储）"""
    basis = data.elements()
    table: Dict[Tuple[Path, Path], Element] = {}
    by_origin: Dict[int, List[Path]] = {}
    for n in data.normal_basis:
        by_origin.setdefault(n.origin, []).append(n)
    for n1 in data.normal_basis:
        for n2 in by_origin.get(n1.end, []):
            product_element = reduce(Element.monomial(compose(n1, n2), data.field), basis, data.order)
            if product_element:
                table[(n1, n2)] = product_element
    logger.debug(f"结构常数表: {len(table)} 个非零乘积, dim={len(data.normal_basis)}")
    return FDAlgebra(quiver, data, table)


def _as_vertex_set(vertex_set: Iterable[int]) -> List[int]:
    return sorted(getattr(vertex_set, 'members', vertex_set))


def ideal_subspace(algebra: FDAlgebra, vertex_set: Iterable[int]) -> Subspace:
    """
    ΛeΛ 作为 Span N 的子空间：以 n1·v·n2 为种子，在左右乘箭头下闭包，行化简得到基。
    """
    members = _as_vertex_set(vertex_set)
    span = EchelonSpan(algebra.dimension, algebra.field)
    seeds = []
    for v in members:
        ending = [algebra.basis_element(p) for p in algebra.basis if p.end == v]
        starting = [algebra.basis_element(p) for p in algebra.basis if p.origin == v]
        seeds.extend(algebra.to_vector(algebra.multiply(x, y)) for x in ending for y in starting)
    span.extend(seeds)

    arrows = [algebra.basis_element(p) for p in algebra.arrows()]
    while True:
        current = [algebra.from_vector(v) for v in span.basis]
        products = []
        for x in current:
            for a in arrows:
                products.append(algebra.to_vector(algebra.multiply(a, x)))
                products.append(algebra.to_vector(algebra.multiply(x, a)))
        if span.extend(products) == 0:
            break

    return Subspace(algebra, tuple(algebra.from_vector(v) for v in span.basis))


def has_nonzero_eje(algebra: FDAlgebra, vertex_set: Iterable[int]) -> bool:
    """eJ(Λ)e ≠ 0 当且仅当存在两端都在 S 中的正长度正规路径"""
    members = set(_as_vertex_set(vertex_set))
    return any(p.length >= 1 and p.origin in members and p.end in members for p in algebra.basis)


def tensor_dimension(algebra: FDAlgebra, vertex_set: Iterable[int]) -> int:
    """
    dim Λe ⊗_{eΛe} eΛ = Σ_{v∈S} dim(Λv)·dim(vΛ)，仅在 eJe = 0（eΛe ≅ K^|S|）时成立。
    """
    members = _as_vertex_set(vertex_set)
    if has_nonzero_eje(algebra, members):
        raise PreconditionFailed("eJ(Λ)e ≠ 0，张量积维数判据不适用")
    total = 0
    for v in members:
        left = sum(1 for p in algebra.basis if p.end == v)
        right = sum(1 for p in algebra.basis if p.origin == v)
        total += left * right
    return total
