"""
箭图模型 - 顶点、箭头、路径、子路径/重叠组合学以及路径集合上的容许序
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    """箭头 a: source -> target"""
    arrow_id: int
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    """
    路径：经过的顶点序列与箭头序列。

    长度为 0 的路径只含一个顶点；正长度路径的起点与终点由箭头决定。
    """
    vertices: Tuple[int, ...]
    arrows: Tuple[int, ...] = ()

    @property
    def origin(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)

    def is_vertex(self) -> bool:
        return not self.arrows

    def visits(self, vertex_set: Iterable[int]) -> bool:
        """路径是否经过集合中的某个顶点（含端点）"""
        members = vertex_set if isinstance(vertex_set, (set, frozenset)) else set(vertex_set)
        return any(v in members for v in self.vertices)

    def interior_vertices(self) -> Tuple[int, ...]:
        """严格位于路径内部的顶点（两侧都有箭头）"""
        return self.vertices[1:-1]

    def sub(self, start: int, stop: int) -> 'Path':
        """箭头位置 [start, stop) 对应的子路径；start == stop 时为该位置的顶点"""
        return Path(self.vertices[start:stop + 1], self.arrows[start:stop])


def compose(p: Path, q: Path) -> Optional[Path]:
    """路径乘法 pq；端点不匹配时返回 None"""
    if p.end != q.origin:
        return None
    return Path(p.vertices + q.vertices[1:], p.arrows + q.arrows)


def subpath_occurrences(t: Path, p: Path) -> List[Tuple[Path, Path]]:
    """p = prefix · t · suffix 的全部分解，按出现位置从左到右"""
    found = []
    if t.is_vertex():
        for i, v in enumerate(p.vertices):
            if v == t.origin:
                found.append((p.sub(0, i), p.sub(i, p.length)))
        return found

    k = t.length
    for i in range(p.length - k + 1):
        if p.arrows[i:i + k] == t.arrows:
            found.append((p.sub(0, i), p.sub(i + k, p.length)))
    return found


def is_subpath(t: Path, p: Path) -> bool:
    if t.is_vertex():
        return t.origin in p.vertices
    k = t.length
    return any(p.arrows[i:i + k] == t.arrows for i in range(p.length - k + 1))


def overlaps(t1: Path, t2: Path) -> List[Path]:
    """
    t1 的真后缀与 t2 的真前缀重合时的粘合路径 w = t1·v = u·t2。

    重合长度 s 满足 1 <= s < |t1| 且 s < |t2|；t1 = t2 时包含自重叠。
    """
    glued = []
    for s in range(1, min(t1.length, t2.length)):
        if t1.arrows[-s:] == t2.arrows[:s]:
            glued.append(Path(t1.vertices + t2.vertices[s + 1:], t1.arrows + t2.arrows[s:]))
    return glued


@dataclass(frozen=True)
class QuiverRestriction:
    """删去部分顶点后的子箭图 Q_ê 及编号映射"""
    parent: 'Quiver'
    child: 'Quiver'
    removed: FrozenSet[int]
    vertex_map: Dict[int, int] = field(hash=False)
    arrow_map: Dict[int, int] = field(hash=False)

    def path(self, p: Path) -> Path:
        """把不经过被删顶点的父路径翻译到子箭图"""
        if p.visits(self.removed):
            raise ValueError(f"路径 {self.parent.format_path(p)} 经过被删除的顶点")
        return Path(tuple(self.vertex_map[v] for v in p.vertices),
                    tuple(self.arrow_map[a] for a in p.arrows))


@dataclass(frozen=True)
class Quiver:
    """有限箭图：顶点名称与箭头（允许平行箭头和环）"""
    vertex_names: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        if not self.vertex_names:
            raise ValueError("箭图至少需要一个顶点")
        if len(set(self.vertex_names)) != len(self.vertex_names):
            raise ValueError("顶点名称重复")
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise ValueError("箭头名称重复")
        n = len(self.vertex_names)
        for i, arrow in enumerate(self.arrows):
            if arrow.arrow_id != i:
                raise ValueError("箭头编号必须从 0 开始连续")
            if not (0 <= arrow.source < n and 0 <= arrow.target < n):
                raise ValueError(f"箭头 {arrow.name} 的端点不是合法顶点")

    @classmethod
    def build(cls, vertex_names: Sequence[str],
              arrows: Sequence[Tuple[str, str, str]]) -> 'Quiver':
        """按名称构造：arrows 为 (名称, 起点名, 终点名)"""
        index = {name: i for i, name in enumerate(vertex_names)}
        return cls(tuple(vertex_names),
                   tuple(Arrow(i, name, index[s], index[t]) for i, (name, s, t) in enumerate(arrows)))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_names)

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    @cached_property
    def _vertex_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.vertex_names)}

    @cached_property
    def _arrow_index(self) -> Dict[str, int]:
        return {a.name: a.arrow_id for a in self.arrows}

    @cached_property
    def _out_arrows(self) -> Tuple[Tuple[Arrow, ...], ...]:
        return tuple(tuple(a for a in self.arrows if a.source == v) for v in range(self.vertex_count))

    def vertex_id(self, name: str) -> int:
        return self._vertex_index[name]

    def arrow_id(self, name: str) -> int:
        return self._arrow_index[name]

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def out_arrows(self, v: int) -> Tuple[Arrow, ...]:
        return self._out_arrows[v]

    def vertex_path(self, v: int) -> Path:
        return Path((v,))

    def arrow_path(self, a: int) -> Path:
        arrow = self.arrows[a]
        return Path((arrow.source, arrow.target), (a,))

    def vertex_paths(self) -> List[Path]:
        return [Path((v,)) for v in range(self.vertex_count)]

    def path(self, arrow_ids: Sequence[int], base_vertex: Optional[int] = None) -> Path:
        """由箭头序列构造路径；不可复合时抛出 ValueError"""
        if not arrow_ids:
            if base_vertex is None:
                raise ValueError("长度为 0 的路径需要指定顶点")
            return Path((base_vertex,))
        vertices = [self.arrows[arrow_ids[0]].source]
        for a in arrow_ids:
            arrow = self.arrows[a]
            if arrow.source != vertices[-1]:
                raise ValueError(f"箭头 {arrow.name} 无法接在 {self.vertex_names[vertices[-1]]} 之后")
            vertices.append(arrow.target)
        return Path(tuple(vertices), tuple(arrow_ids))

    def path_from_names(self, names: Sequence[str]) -> Path:
        """单个顶点名表示长度 0 的路径，否则为箭头名序列"""
        if len(names) == 1 and self.has_vertex(names[0]) and not self.has_arrow(names[0]):
            return Path((self.vertex_id(names[0]),))
        return self.path([self.arrow_id(n) for n in names])

    @cached_property
    def single_letter_arrows(self) -> bool:
        return all(len(a.name) == 1 for a in self.arrows)

    def format_path(self, p: Path) -> str:
        if p.is_vertex():
            return self.vertex_names[p.origin]
        names = [self.arrows[a].name for a in p.arrows]
        return ''.join(names) if self.single_letter_arrows else '*'.join(names)

    def format_vertices(self, vertices: Iterable[int]) -> List[str]:
        return [self.vertex_names[v] for v in vertices]

    def subquiver(self, removed: Iterable[int]) -> QuiverRestriction:
        """删去顶点及其关联箭头得到 Q_ê，保持剩余顶点与箭头的相对编号顺序"""
        removed = frozenset(removed)
        kept = [v for v in range(self.vertex_count) if v not in removed]
        if not kept:
            raise ValueError("不能删去全部顶点")
        vertex_map = {v: i for i, v in enumerate(kept)}
        kept_arrows = [a for a in self.arrows if a.source not in removed and a.target not in removed]
        arrow_map = {a.arrow_id: i for i, a in enumerate(kept_arrows)}
        child = Quiver(tuple(self.vertex_names[v] for v in kept),
                       tuple(Arrow(arrow_map[a.arrow_id], a.name, vertex_map[a.source], vertex_map[a.target])
                             for a in kept_arrows))
        logger.debug(f"子箭图: 删去 {self.format_vertices(sorted(removed))}, 剩余 {len(kept)} 个顶点")
        return QuiverRestriction(self, child, removed, vertex_map, arrow_map)


class OrderKind(Enum):
    """长度-字典序的两种方向"""
    LEFT = "lenlex"
    RIGHT = "lenlex-right"


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class AdmissibleOrder:
    """
    路径集合上的长度-字典序（容许序）。

    precedence 按从大到小列出全部箭头编号：precedence[0] 是最大的箭头。
    短路径在前；等长路径按箭头优先级从左（或从右）逐个比较；
    顶点路径按编号排在所有箭头之下。
    """
    kind: OrderKind
    precedence: Tuple[int, ...]

    @classmethod
    def default(cls, quiver: Quiver, kind: OrderKind = OrderKind.LEFT) -> 'AdmissibleOrder':
        """声明顺序即优先级"""
        return cls(kind, tuple(range(quiver.arrow_count)))

    @cached_property
    def _weights(self) -> Dict[int, int]:
        n = len(self.precedence)
        return {a: n - i for i, a in enumerate(self.precedence)}

    def key(self, p: Path) -> Tuple[int, Tuple[int, ...]]:
        """排序键：键越大路径越大"""
        if p.is_vertex():
            return (0, (p.origin,))
        weights = self._weights
        word = tuple(weights[a] for a in p.arrows)
        if self.kind is OrderKind.RIGHT:
            word = word[::-1]
        return (p.length, word)

    def reversed(self) -> 'AdmissibleOrder':
        return AdmissibleOrder(self.kind, self.precedence[::-1])

    def restrict(self, restriction: QuiverRestriction) -> 'AdmissibleOrder':
        """限制到子箭图上的容许序"""
        return AdmissibleOrder(self.kind, tuple(restriction.arrow_map[a] for a in self.precedence
                                                if a in restriction.arrow_map))

    def describe(self, quiver: Quiver) -> str:
        names = [quiver.arrows[a].name for a in self.precedence]
        return f"{self.kind.value} " + ' > '.join(names) if names else self.kind.value


def compare(order: AdmissibleOrder, p: Path, q: Path) -> Comparison:
    kp, kq = order.key(p), order.key(q)
    if kp == kq:
        return Comparison.EQUAL
    return Comparison.GREATER if kp > kq else Comparison.LESS


def paths_up_to_length(quiver: Quiver, d: int,
                       order: Optional[AdmissibleOrder] = None) -> List[Path]:
    """长度不超过 d 的全部路径，按容许序升序"""
    if d < 0:
        raise ValueError("长度必须非负")
    order = order or AdmissibleOrder.default(quiver)
    level = quiver.vertex_paths()
    result = list(level)
    for _ in range(d):
        level = [Path(p.vertices + (a.target,), p.arrows + (a.arrow_id,))
                 for p in level for a in quiver.out_arrows(p.end)]
        if not level:
            break
        result.extend(level)
    return sorted(result, key=order.key)
