"""
拟遗传判定模型 - 真内部顶点判据、单项式代数的顶点消去判定、提升流程、
遗传链构造以及基于精确线性代数的独立验证
"""
from dataclasses import dataclass, replace
from enum import Enum
from itertools import permutations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from models.fd_algebra_model import (
    FDAlgebra, build_fd_algebra, ideal_subspace, tensor_dimension,
)
from models.groebner_model import (
    GroebnerData, TipSet, associated_monomial, complete, is_monomial, monomial_data,
    normal_levels, tip,
)
from models.path_algebra_model import (
    Element, UniformElement, VertexSet, restrict_set, restrict_to_subquiver,
)
from models.quiver_model import AdmissibleOrder, Path, Quiver
from utils.error_handler import PreconditionFailed, TooLarge
from utils.linear_algebra import EchelonSpan

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 8


class Verdict(Enum):
    QUASI_HEREDITARY = "quasi_hereditary"
    NOT_QUASI_HEREDITARY = "not_quasi_hereditary"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class StepRecord:
    """遗传链中一步的验证记录"""
    vertex: str
    ideal_dim: int
    tensor_dim: Optional[int]
    l_squared_ok: bool
    ljl_ok: bool
    projective_ok: bool
    quotient_dim: Optional[int] = None
    failed_condition: Optional[str] = None
    monomial_consistent: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.l_squared_ok and self.ljl_ok and self.projective_ok and self.failed_condition is None


@dataclass(frozen=True)
class EliminationOrdering:
    """顶点消去序列；失败时记录阻塞步、被阻塞顶点与剩余首项"""
    ordering: Tuple[int, ...]
    failure_point: Optional[int] = None
    blocked: FrozenSet[int] = frozenset()
    surviving_tips: Optional[TipSet] = None
    candidates: Tuple[FrozenSet[int], ...] = ()

    @property
    def succeeded(self) -> bool:
        return self.failure_point is None


@dataclass(frozen=True)
class HeredityChainReport:
    quiver: Quiver
    ordering: EliminationOrdering
    steps: Tuple[StepRecord, ...]
    verdict: Verdict
    order_used: Optional[AdmissibleOrder] = None
    data: Optional[GroebnerData] = None
    monomial: bool = False

    @property
    def certified(self) -> bool:
        return (self.ordering.succeeded and len(self.steps) == self.quiver.vertex_count
                and all(step.passed for step in self.steps))

    def ordering_names(self) -> List[str]:
        return self.quiver.format_vertices(self.ordering.ordering)


def properly_internal(v: int, tips: Iterable[Path]) -> bool:
    """存在 t = p1·v·p2 且 |p1|, |p2| >= 1；端点出现不算"""
    return any(v in t.interior_vertices() for t in tips)


def heredity_candidates(tips: Iterable[Path], remaining: Iterable[int]) -> VertexSet:
    """剩余顶点中不真内部于任何首项的顶点"""
    tips = list(tips)
    return VertexSet.of(v for v in getattr(remaining, 'members', remaining) if not properly_internal(v, tips))


def general_candidates(data: GroebnerData) -> VertexSet:
    """一般情形的充分判据：v 不真内部于 tip(G) 时 ΛvΛ 是遗传理想"""
    return heredity_candidates(data.tips, range(data.quiver.vertex_count))


def greedy_ordering(quiver: Quiver, tips: TipSet) -> EliminationOrdering:
    """
    反复选取编号最小的候选顶点并删去；首项保留当且仅当不经过已删顶点。
    受限首项集单调缩小，因此任一步的合法选择不会破坏后续可扩展性。
    """
    remaining = set(range(quiver.vertex_count))
    current = tips
    ordering: List[int] = []
    trace: List[FrozenSet[int]] = []
    while remaining:
        candidates = heredity_candidates(current, remaining).members
        trace.append(candidates)
        if not candidates:
            logger.info(f"第 {len(ordering) + 1} 步无候选顶点，剩余 {quiver.format_vertices(sorted(remaining))}")
            return EliminationOrdering(tuple(ordering), len(ordering), frozenset(remaining), current, tuple(trace))
        v = min(candidates)
        ordering.append(v)
        remaining.discard(v)
        current = current.restrict({v})
    return EliminationOrdering(tuple(ordering), candidates=tuple(trace))


def brute_force_qh(quiver: Quiver, tips: TipSet, limit: int = BRUTE_FORCE_LIMIT) -> bool:
    """穷举全部顶点排列，检验逐步不真内部条件"""
    if quiver.vertex_count > limit:
        raise TooLarge(f"顶点数 {quiver.vertex_count} 超过穷举上限 {limit}")
    for perm in permutations(range(quiver.vertex_count)):
        current = set(tips)
        for v in perm:
            if properly_internal(v, current):
                break
            current = {t for t in current if v not in t.vertices}
        else:
            return True
    return False


def verify_heredity_ideal(algebra: FDAlgebra, vertex_set: Iterable[int]) -> StepRecord:
    """
    检查 L = ΛeΛ：(1) L² = L；(2) L·J(Λ)·L = 0；(3) eJe = 0 时比较 dim L 与张量积维数。
    """
    members = sorted(getattr(vertex_set, 'members', vertex_set))
    label = '+'.join(algebra.quiver.format_vertices(members))
    ideal = ideal_subspace(algebra, members)
    generators = list(ideal.basis)

    squares = EchelonSpan(algebra.dimension, algebra.field)
    for x in generators:
        squares.extend([algebra.to_vector(algebra.multiply(x, y)) for y in generators])
        if squares.dimension == ideal.dimension:
            break
    l_squared_ok = squares.dimension == ideal.dimension

    radical = [algebra.basis_element(p) for p in algebra.radical_basis()]
    left_products = EchelonSpan(algebra.dimension, algebra.field)
    for x in generators:
        left_products.extend([algebra.to_vector(algebra.multiply(x, j)) for j in radical])
    ljl_ok = all(
        algebra.multiply(algebra.from_vector(w), y).is_zero()
        for w in left_products.basis for y in generators
    )

    try:
        tensor_dim = tensor_dimension(algebra, members)
        projective_ok = tensor_dim == ideal.dimension
    except PreconditionFailed as e:
        logger.debug(f"{label}: {e}")
        tensor_dim = None
        projective_ok = False

    failed = None
    if not l_squared_ok:
        failed = 'L2'
    elif not ljl_ok:
        failed = 'LJL'
    elif not projective_ok:
        failed = 'proj'
    return StepRecord(label, ideal.dimension, tensor_dim, l_squared_ok, ljl_ok, projective_ok,
                      failed_condition=failed)


def quotient_algebra(algebra: FDAlgebra, vertex_set: Iterable[int]) -> FDAlgebra:
    """
    Λ/ΛeΛ ≅ KQ_ê / I_ê：子箭图 Q_ê 上以 restrict_set(G, S) 为 Gröbner 基的代数。
    要求 S 中每个顶点都不真内部于 tip(G)。
    """
    members = frozenset(getattr(vertex_set, 'members', vertex_set))
    if not members:
        return algebra
    data = algebra.data
    internal = [v for v in sorted(members) if properly_internal(v, data.tips)]
    if internal:
        raise PreconditionFailed(
            f"顶点 {algebra.quiver.format_vertices(internal)} 真内部于 tip(G)，限制公式不成立")

    restriction = algebra.quiver.subquiver(members)
    child = restriction.child
    order = data.order.restrict(restriction)
    basis = [restrict_to_subquiver(x, restriction) for x in restrict_set(data.elements(), members)]
    tips = TipSet.of(restriction.path(t) for t in data.tips.restrict(members))
    normal, bound = normal_levels(child, tips, max(data.length_bound, 1))
    uniform = []
    for g in basis:
        t = tip(g, order)
        uniform.append(UniformElement(g, t.origin, t.end))
    quotient = GroebnerData(
        quiver=child,
        order=order,
        basis=tuple(sorted(uniform, key=lambda g: order.key(tip(g, order)))),
        tips=tips,
        normal_basis=tuple(sorted(normal, key=order.key)),
        length_bound=bound,
        field=data.field,
    )
    return build_fd_algebra(child, quotient)


def quotient_monomial_consistent(quotient: FDAlgebra) -> bool:
    """(Λ/ΛeΛ)_Mon ≅ Λ_Mon/Λ_Mon e Λ_Mon：重新补全商代数的基，首项集应与限制首项集一致"""
    data = quotient.data
    cap = 2 * max(data.length_bound, 1) + quotient.quiver.vertex_count
    recomputed = complete(quotient.quiver, data.elements(), data.order, cap, field=data.field)
    return recomputed.tips == data.tips


def verify_chain(algebra: FDAlgebra, ordering: Sequence[int]) -> HeredityChainReport:
    """
    逐步验证：在当前商代数上检查 ΛvΛ 是遗传理想，然后取商并递归。
    """
    quiver = algebra.quiver
    if sorted(ordering) != list(range(quiver.vertex_count)):
        raise PreconditionFailed("顶点序列必须是全部顶点的一个排列")
    names = quiver.format_vertices(ordering)
    current = algebra
    steps: List[StepRecord] = []
    failure = None
    for i, name in enumerate(names):
        v = current.quiver.vertex_id(name)
        record = verify_heredity_ideal(current, [v])
        if record.passed:
            if current.quiver.vertex_count == 1:
                record = replace(record, quotient_dim=0)
            else:
                try:
                    quotient = quotient_algebra(current, [v])
                except PreconditionFailed as e:
                    logger.warning(f"第 {i + 1} 步 {name}: {e}")
                    record = replace(record, failed_condition='quotient')
                else:
                    consistent = quotient_monomial_consistent(quotient)
                    record = replace(record, quotient_dim=quotient.dimension, monomial_consistent=consistent)
                    if not consistent:
                        record = replace(record, failed_condition='monomialization')
                    current = quotient
        steps.append(record)
        logger.info(f"第 {i + 1} 步 {name}: dim L={record.ideal_dim}, 通过={record.passed}")
        if not record.passed:
            failure = i
            break

    elimination = EliminationOrdering(tuple(ordering), failure_point=failure)
    verdict = Verdict.QUASI_HEREDITARY if failure is None else Verdict.UNKNOWN
    return HeredityChainReport(quiver, elimination, tuple(steps), verdict,
                               order_used=algebra.data.order, data=algebra.data)


def decide_monomial_qh(quiver: Quiver, tips: TipSet, verify: bool = True,
                       order: Optional[AdmissibleOrder] = None, field: Domain = QQ,
                       cap: Optional[int] = None) -> HeredityChainReport:
    """单项式代数 KQ/⟨T⟩ 拟遗传当且仅当存在顶点消去序列"""
    elimination = greedy_ordering(quiver, tips)
    data = monomial_data(quiver, tips, order, cap, field)
    if not elimination.succeeded:
        return HeredityChainReport(quiver, elimination, (), Verdict.NOT_QUASI_HEREDITARY,
                                   order_used=data.order, data=data, monomial=True)
    steps: Tuple[StepRecord, ...] = ()
    if verify:
        chain = verify_chain(build_fd_algebra(quiver, data), elimination.ordering)
        steps = chain.steps
        if not chain.certified:
            logger.error("单项式判定成功但线性代数验证拒绝了遗传链")
            return HeredityChainReport(quiver, chain.ordering, steps, Verdict.UNKNOWN,
                                       order_used=data.order, data=data, monomial=True)
    return HeredityChainReport(quiver, elimination, steps, Verdict.QUASI_HEREDITARY,
                               order_used=data.order, data=data, monomial=True)


def decide_qh(quiver: Quiver, gens: Sequence[Element], orders: Sequence[AdmissibleOrder],
              cap: int, field: Optional[Domain] = None) -> HeredityChainReport:
    """
    依次尝试每个容许序：补全 → 相伴单项式代数 → 顶点消去；首次成功时把同一顶点序列
    提升到 Λ 上并用线性代数验证。所有序都失败时结论为 unknown（单项式输入除外）。
    """
    if not orders:
        raise ValueError("至少需要一个容许序")
    monomial = is_monomial(gens)
    first: Optional[HeredityChainReport] = None
    for order in orders:
        description = order.describe(quiver)
        data = complete(quiver, gens, order, cap, field=field)
        elimination = greedy_ordering(quiver, associated_monomial(data))
        if not elimination.succeeded:
            logger.info(f"序 {description}: Λ_Mon 不是拟遗传的")
            if monomial:
                return HeredityChainReport(quiver, elimination, (), Verdict.NOT_QUASI_HEREDITARY,
                                           order_used=order, data=data, monomial=True)
            if first is None:
                first = HeredityChainReport(quiver, elimination, (), Verdict.UNKNOWN,
                                           order_used=order, data=data)
            continue

        chain = verify_chain(build_fd_algebra(quiver, data), elimination.ordering)
        if chain.certified:
            logger.info(f"序 {description}: 遗传链 {chain.ordering_names()} 已验证")
            return HeredityChainReport(quiver, elimination, chain.steps, Verdict.QUASI_HEREDITARY,
                                       order_used=order, data=data, monomial=monomial)
        logger.warning(f"序 {description}: 提升后的遗传链未通过验证")
        if first is None:
            first = HeredityChainReport(quiver, chain.ordering, chain.steps, Verdict.UNKNOWN,
                                       order_used=order, data=data)
    return first
