"""
路径代数模型 - KQ 中的精确系数元素、一致分解，以及 e / ê 向量空间分裂
"""
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple
import logging

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from models.quiver_model import AdmissibleOrder, Path, QuiverRestriction, compose

logger = logging.getLogger(__name__)

PRIME_LIMIT = 2 ** 31


def make_field(mode: str = 'q') -> Domain:
    """系数域：'q' 为有理数域，'fp:<p>' 为素域 GF(p)，p < 2^31"""
    mode = (mode or 'q').strip().lower()
    if mode in ('q', 'qq'):
        return QQ
    if mode.startswith('fp:'):
        try:
            p = int(mode[3:])
        except ValueError:
            raise ValueError(f"无效的素数: {mode[3:]!r}")
        if p >= PRIME_LIMIT or not isprime(p):
            raise ValueError(f"fp 模式需要小于 2^31 的素数，得到 {p}")
        logger.debug(f"使用素域 GF({p})")
        return GF(p)
    raise ValueError(f"未知的域模式: {mode!r}")


def field_mode(field: Domain) -> str:
    return 'q' if field == QQ else f"fp:{field.mod}"


def coefficient(field: Domain, value) -> object:
    """把整数、Fraction 或 'p/q' 字符串转换为域元素"""
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return field.quo(field(value.numerator), field(value.denominator))
    return field(value)


def format_coefficient(field: Domain, c) -> str:
    """系数序列化为 'p/q' 形式的字符串"""
    return str(field.to_sympy(c))


class Element:
    """
    KQ 中的元素：路径到非零系数的有限映射。

    构造后不可变；零元素的项集合为空。
    """
    __slots__ = ('_terms', '_field', '_hash')

    def __init__(self, terms: Mapping[Path, object], field: Domain = QQ):
        self._field = field
        self._terms = {p: c for p, c in terms.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, field: Domain = QQ) -> 'Element':
        return cls({}, field)

    @classmethod
    def monomial(cls, path: Path, field: Domain = QQ, coef=None) -> 'Element':
        return cls({path: field.one if coef is None else coef}, field)

    @property
    def field(self) -> Domain:
        return self._field

    @property
    def terms(self) -> Mapping[Path, object]:
        return MappingProxyType(self._terms)

    def paths(self) -> Iterator[Path]:
        return iter(self._terms)

    def coefficient(self, path: Path):
        return self._terms.get(path, self._field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: 'Element') -> 'Element':
        terms = dict(self._terms)
        for p, c in other._terms.items():
            terms[p] = terms.get(p, self._field.zero) + c
        return Element(terms, self._field)

    def __neg__(self) -> 'Element':
        return Element({p: -c for p, c in self._terms.items()}, self._field)

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def scale(self, c) -> 'Element':
        if not c:
            return Element.zero(self._field)
        return Element({p: c * d for p, d in self._terms.items()}, self._field)

    def __mul__(self, other: 'Element') -> 'Element':
        """KQ 中的乘法：路径拼接，不可复合的项为零"""
        terms: Dict[Path, object] = {}
        zero = self._field.zero
        for p, c in self._terms.items():
            for q, d in other._terms.items():
                pq = compose(p, q)
                if pq is not None:
                    terms[pq] = terms.get(pq, zero) + c * d
        return Element(terms, self._field)

    def sorted_terms(self, order: AdmissibleOrder, descending: bool = True) -> List[Tuple[Path, object]]:
        return sorted(self._terms.items(), key=lambda item: order.key(item[0]), reverse=descending)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_length(self) -> int:
        return min((p.length for p in self._terms), default=0)

    def max_length(self) -> int:
        return max((p.length for p in self._terms), default=0)

    def format(self, quiver, order: Optional[AdmissibleOrder] = None) -> str:
        """按容许序降序输出，例如 'ab - cd' 或 '3/2*ab + e'"""
        if not self._terms:
            return '0'
        items = self.sorted_terms(order) if order else list(self._terms.items())
        parts = []
        for i, (p, c) in enumerate(items):
            text = format_coefficient(self._field, c)
            negative = text.startswith('-')
            if negative:
                text = text[1:]
            word = quiver.format_path(p)
            term = word if text == '1' else f"{text}*{word}"
            if i == 0:
                parts.append(f"-{term}" if negative else term)
            else:
                parts.append(f"- {term}" if negative else f"+ {term}")
        return ' '.join(parts)

    def __repr__(self) -> str:
        return f"Element({len(self._terms)} terms)"


@dataclass(frozen=True)
class UniformElement:
    """一致元素：所有路径有相同的起点与终点，满足 v x w = x"""
    element: Element
    origin: int
    end: int

    def __post_init__(self):
        for p in self.element.paths():
            if p.origin != self.origin or p.end != self.end:
                raise ValueError("元素不是一致的")


@dataclass(frozen=True)
class VertexSet:
    """顶点集合，对应幂等元 e = Σ v"""
    members: FrozenSet[int]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> 'VertexSet':
        return cls(frozenset(vertices))

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def _members(vertex_set) -> FrozenSet[int]:
    return vertex_set.members if isinstance(vertex_set, VertexSet) else frozenset(vertex_set)


def uniformize(x: Element) -> List[UniformElement]:
    """x = Σ u x v 的非零一致分量，按 (起点, 终点) 排列"""
    groups: Dict[Tuple[int, int], Dict[Path, object]] = {}
    for p, c in x.terms.items():
        groups.setdefault((p.origin, p.end), {})[p] = c
    return [UniformElement(Element(terms, x.field), o, e) for (o, e), terms in sorted(groups.items())]


def split_e(x: Element, vertex_set) -> Tuple[Element, Element]:
    """
    唯一分解 x = x_ê + x_e：x_ê 支撑在不经过 S 中任何顶点的路径上，
    x_e 支撑在经过 S（包括端点）的路径上。
    """
    members = _members(vertex_set)
    hat: Dict[Path, object] = {}
    inside: Dict[Path, object] = {}
    for p, c in x.terms.items():
        (inside if p.visits(members) else hat)[p] = c
    return Element(hat, x.field), Element(inside, x.field)


def restrict_set(xs: Iterable[Element], vertex_set) -> List[Element]:
    """X_ê = {x_ê : x ∈ X}，去掉零元素"""
    restricted = []
    for x in xs:
        hat, _ = split_e(x, vertex_set)
        if hat:
            restricted.append(hat)
    return restricted


def restrict_to_subquiver(x: Element, restriction: QuiverRestriction) -> Element:
    """把 KQ_ê 中的元素翻译为子箭图路径代数中的元素"""
    return Element({restriction.path(p): c for p, c in x.terms.items()}, x.field)
