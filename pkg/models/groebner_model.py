"""
Gröbner 基模型 - 约化（正规形）、重叠补全为约化 Gröbner 基、首项集合、正规基 N、
相伴单项式代数以及容许性验证
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import random

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from models.path_algebra_model import Element, UniformElement, uniformize
from models.quiver_model import (
    AdmissibleOrder, Path, Quiver, compose, is_subpath, overlaps, subpath_occurrences,
)
from utils.error_handler import CapExceeded, NotAdmissibleError, ZeroElementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TipSet:
    """首项集合：子路径关系下的反链，成员长度均 >= 2"""
    members: FrozenSet[Path]

    def __post_init__(self):
        for t in self.members:
            if t.length < 2:
                raise ValueError("首项长度必须至少为 2")
        for t in self.members:
            for s in self.members:
                if s != t and is_subpath(s, t):
                    raise ValueError("首项集合不是子路径反链")

    @classmethod
    def of(cls, paths: Iterable[Path]) -> 'TipSet':
        return cls(frozenset(paths))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Path) -> bool:
        return p in self.members

    def sorted(self, order: AdmissibleOrder) -> List[Path]:
        return sorted(self.members, key=order.key)

    def restrict(self, vertex_set: Iterable[int]) -> 'TipSet':
        """单项式情形的 restrict_set：首项保留当且仅当不经过任何被删顶点"""
        removed = frozenset(vertex_set)
        return TipSet(frozenset(t for t in self.members if not t.visits(removed)))

    def divides(self, p: Path) -> bool:
        return any(is_subpath(t, p) for t in self.members)


@dataclass(frozen=True)
class GroebnerData:
    """约化 Gröbner 基 G、极小首项集 T、正规基 N 以及长度界"""
    quiver: Quiver
    order: AdmissibleOrder
    basis: Tuple[UniformElement, ...]
    tips: TipSet
    normal_basis: Tuple[Path, ...]
    length_bound: int
    field: Domain = QQ

    def elements(self) -> List[Element]:
        return [g.element for g in self.basis]


@dataclass(frozen=True)
class AdmissibilityWitness:
    admissible: bool
    length_bound: Optional[int]
    reason: str = ''

    def __bool__(self) -> bool:
        return self.admissible


GeneratorLike = Union[Element, UniformElement]


def _element(g: GeneratorLike) -> Element:
    return g.element if isinstance(g, UniformElement) else g


def leading_term(x: Element, order: AdmissibleOrder) -> Tuple[Path, object]:
    if x.is_zero():
        raise ZeroElementError("零元素没有首项")
    p = max(x.paths(), key=order.key)
    return p, x.coefficient(p)


def tip(x: GeneratorLike, order: AdmissibleOrder) -> Path:
    """x 中系数非零的 ≻-最大路径"""
    return leading_term(_element(x), order)[0]


def monic(x: Element, order: AdmissibleOrder) -> Element:
    _, c = leading_term(x, order)
    return x.scale(x.field.quo(x.field.one, c))


def _prepare(basis: Sequence[GeneratorLike], order: AdmissibleOrder) -> List[Tuple[Element, Path, object]]:
    prepared = []
    for g in basis:
        element = _element(g)
        t, c = leading_term(element, order)
        prepared.append((element, t, c))
    return prepared


def _leftmost_divisor(p: Path, prepared) -> Optional[Tuple[int, Path, Path]]:
    """最左出现位置优先，同位置时取基中靠前的元素"""
    best = None
    for index, (_, t, _) in enumerate(prepared):
        for position in range(p.length - t.length + 1):
            if p.arrows[position:position + t.length] == t.arrows:
                if best is None or position < best[0]:
                    best = (position, index)
                break
    if best is None:
        return None
    position, index = best
    t = prepared[index][1]
    return index, p.sub(0, position), p.sub(position + t.length, p.length)


def _rewrite(terms: Dict[Path, object], c, element: Element, t: Path, lc,
             prefix: Path, suffix: Path, field: Domain):
    """terms -= (c / lc) · prefix · g · suffix，首项相消"""
    factor = field.quo(c, lc)
    for q, d in element.terms.items():
        if q == t:
            continue
        new = compose(compose(prefix, q), suffix)
        value = terms.get(new, field.zero) - factor * d
        if value:
            terms[new] = value
        else:
            terms.pop(new, None)


def reduce(x: Element, basis: Sequence[GeneratorLike], order: AdmissibleOrder,
           rng: Optional[random.Random] = None) -> Element:
    """
    x 关于 G 的正规形 n_x：x - n_x ∈ ⟨G⟩，n_x 中没有路径被任何首项整除。

    默认策略总是改写 ≻-最大的可约项的最左出现；给定 rng 时随机选择可约项、出现位置和基元素。
    """
    if x.is_zero() or not basis:
        return x
    field = x.field
    prepared = _prepare(basis, order)

    if rng is not None:
        return _reduce_randomly(x, prepared, order, rng)

    pending = dict(x.terms)
    result: Dict[Path, object] = {}
    while pending:
        p = max(pending, key=order.key)
        c = pending.pop(p)
        hit = _leftmost_divisor(p, prepared)
        if hit is None:
            result[p] = c
            continue
        index, prefix, suffix = hit
        element, t, lc = prepared[index]
        _rewrite(pending, c, element, t, lc, prefix, suffix, field)
    return Element(result, field)


def _reduce_randomly(x: Element, prepared, order: AdmissibleOrder, rng: random.Random) -> Element:
    field = x.field
    terms = dict(x.terms)
    while True:
        choices = []
        for p in sorted(terms, key=order.key):
            for index, (_, t, _) in enumerate(prepared):
                for prefix, suffix in subpath_occurrences(t, p):
                    choices.append((p, index, prefix, suffix))
        if not choices:
            return Element(terms, field)
        p, index, prefix, suffix = rng.choice(choices)
        c = terms.pop(p)
        element, t, lc = prepared[index]
        _rewrite(terms, c, element, t, lc, prefix, suffix, field)


def interreduce(elements: Sequence[Element], order: AdmissibleOrder) -> List[Element]:
    """互相约化直到稳定：每个元素首一，且没有项被其他元素的首项整除"""
    current = [monic(g, order) for g in elements if g]
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(current):
            others = current[:i] + current[i + 1:]
            r = reduce(g, others, order)
            if r != g:
                changed = True
                del current[i]
                if r:
                    current.append(monic(r, order))
                break
    return sorted(current, key=lambda g: order.key(tip(g, order)))


def minimal_tipset(paths: Iterable[Path]) -> TipSet:
    """去掉真包含其他成员的路径，得到生成同一单项式理想的唯一反链"""
    members = set(paths)
    for p in members:
        if p.length < 2:
            raise ValueError("首项长度必须至少为 2")
    return TipSet(frozenset(
        p for p in members
        if not any(q != p and is_subpath(q, p) for q in members)
    ))


def normal_levels(quiver: Quiver, tips: Iterable[Path], cap: int) -> Tuple[List[Path], int]:
    """逐层枚举正规路径，返回 (正规路径, 第一个全空的长度)"""
    tips = list(tips)
    level = quiver.vertex_paths()
    normal = list(level)
    length = 0
    while level:
        length += 1
        if length > cap:
            raise CapExceeded(f"长度 {cap} 处仍有正规路径，正规基可能无限", cap)
        extended = []
        for p in level:
            for a in quiver.out_arrows(p.end):
                q = Path(p.vertices + (a.target,), p.arrows + (a.arrow_id,))
                # 前缀已正规，只需检查以新箭头结尾的首项
                if not any(t.length <= q.length and q.arrows[q.length - t.length:] == t.arrows
                           for t in tips):
                    extended.append(q)
        level = extended
        normal.extend(level)
    return normal, length


def normal_basis(quiver: Quiver, tips: Iterable[Path], cap: int,
                 order: Optional[AdmissibleOrder] = None) -> List[Path]:
    """不含任何首项作为子路径的全部路径（按长度逐层扩展），按容许序升序"""
    order = order or AdmissibleOrder.default(quiver)
    normal, _ = normal_levels(quiver, tips, cap)
    return sorted(normal, key=order.key)


def is_monomial(gens: Iterable[Element]) -> bool:
    return all(len(component.element) == 1 for g in gens for component in uniformize(g))


def _s_element(g1: Element, t1: Path, g2: Element, t2: Path, w: Path) -> Element:
    """重叠 w = t1·v = u·t2 处的 S-元素 g1·v - u·g2"""
    v = w.sub(t1.length, w.length)
    u = w.sub(0, w.length - t2.length)
    field = g1.field
    return g1 * Element.monomial(v, field) - Element.monomial(u, field) * g2


def complete(quiver: Quiver, gens: Sequence[Element], order: AdmissibleOrder, cap: int,
             field: Optional[Domain] = None) -> GroebnerData:
    """
    重叠补全：一致化生成元、首一化、互相约化；对首项的每个重叠构造 S-元素并约化，
    加入非零余式，直到不再产生新元素；最后验证容许性并返回约化 Gröbner 基。
    未给出 field 时取生成元的系数域，没有生成元时为 QQ。
    """
    if field is None:
        field = gens[0].field if gens else QQ
    components: List[Element] = []
    for g in gens:
        for component in uniformize(g):
            if component.element.min_length() < 2:
                raise NotAdmissibleError(
                    f"关系 {g.format(quiver, order)} 含有长度小于 2 的项，不满足 I ⊆ J²")
            components.append(component.element)

    basis = interreduce(components, order)
    logger.info(f"补全开始: {len(basis)} 个生成元, cap={cap}")

    processed = set()
    deferred = []
    while True:
        pending = []
        for g1 in basis:
            t1 = tip(g1, order)
            for g2 in basis:
                t2 = tip(g2, order)
                for w in overlaps(t1, t2):
                    key = (g1, g2, w)
                    if key not in processed:
                        processed.add(key)
                        pending.append((w, g1, t1, g2, t2))
        if not pending:
            break
        pending.sort(key=lambda item: order.key(item[0]))

        additions: List[Element] = []
        for w, g1, t1, g2, t2 in pending:
            if w.length > cap:
                deferred.append((w, g1, t1, g2, t2))
                continue
            r = reduce(_s_element(g1, t1, g2, t2, w), basis + additions, order)
            if r:
                r = monic(r, order)
                logger.debug(f"重叠 {quiver.format_path(w)} 产生新元素 {r.format(quiver, order)}")
                additions.append(r)
        if additions:
            basis = interreduce(basis + additions, order)
            logger.info(f"补全进行中: 基大小 {len(basis)}")

    # 超过上限未处理的重叠必须在最终基下约化为零
    live = set(basis)
    for w, g1, t1, g2, t2 in deferred:
        if g1 in live and g2 in live and reduce(_s_element(g1, t1, g2, t2, w), basis, order):
            raise CapExceeded(f"重叠 {quiver.format_path(w)} 超过长度上限且未约化为零", cap)

    tips = minimal_tipset(tip(g, order) for g in basis)
    normal, bound = normal_levels(quiver, tips, cap)
    data = GroebnerData(
        quiver=quiver,
        order=order,
        basis=tuple(UniformElement(g, tip(g, order).origin, tip(g, order).end) for g in basis),
        tips=tips,
        normal_basis=tuple(sorted(normal, key=order.key)),
        length_bound=bound,
        field=field,
    )
    logger.info(f"补全完成: |G|={len(basis)}, |N|={len(normal)}, 长度界={bound}")
    return data


def monomial_data(quiver: Quiver, tips: Iterable[Path], order: Optional[AdmissibleOrder] = None,
                  cap: Optional[int] = None, field: Domain = QQ) -> GroebnerData:
    """单项式理想 ⟨T⟩ 的 Gröbner 数据：约化 Gröbner 基就是 T 本身"""
    order = order or AdmissibleOrder.default(quiver)
    tip_set = minimal_tipset(tips)
    cap = cap or 2 * max((t.length for t in tip_set), default=1) + quiver.vertex_count
    normal, bound = normal_levels(quiver, tip_set, cap)
    ordered = tip_set.sorted(order)
    return GroebnerData(
        quiver=quiver,
        order=order,
        basis=tuple(UniformElement(Element.monomial(t, field), t.origin, t.end) for t in ordered),
        tips=tip_set,
        normal_basis=tuple(sorted(normal, key=order.key)),
        length_bound=bound,
        field=field,
    )


def is_admissible(quiver: Quiver, data: Union[GroebnerData, Iterable[Path]],
                  cap: Optional[int] = None) -> AdmissibilityWitness:
    """所有首项长度 >= 2 且正规基有限；见证为使全部长度 m 路径可被首项整除的 m"""
    tips = list(data.tips) if isinstance(data, GroebnerData) else list(data)
    if any(t.length < 2 for t in tips):
        return AdmissibilityWitness(False, None, "存在长度小于 2 的首项")
    if cap is None:
        cap = data.length_bound if isinstance(data, GroebnerData) else \
            2 * max((t.length for t in tips), default=1) + quiver.vertex_count
    try:
        _, bound = normal_levels(quiver, tips, cap)
    except CapExceeded:
        return AdmissibilityWitness(False, None, "正规基无限")
    return AdmissibilityWitness(True, bound)


def dimension(data: GroebnerData) -> int:
    """dim Λ = dim Λ_Mon = |N|"""
    return len(data.normal_basis)


def associated_monomial(data: GroebnerData) -> TipSet:
    """相伴单项式代数 Λ_Mon = KQ/⟨T⟩ 的极小生成集"""
    return data.tips
