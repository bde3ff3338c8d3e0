"""
测试辅助函数：示例文件读取、路径书写与随机呈示生成
"""
from fractions import Fraction
from pathlib import Path as FilePath
import random

from sympy.polys.domains import QQ

from models.groebner_model import TipSet, minimal_tipset
from models.path_algebra_model import Element, coefficient
from models.quiver_model import AdmissibleOrder, Quiver, compose, is_subpath, paths_up_to_length

DATA_DIR = FilePath(__file__).resolve().parent.parent / 'examples_data'

ORDER_FORWARD = "lenlex a > b > c > d > e"
ORDER_BACKWARD = "lenlex e > d > c > b > a"


def read_example(name: str) -> str:
    return (DATA_DIR / name).read_text(encoding='utf-8')


def word(quiver: Quiver, text: str):
    """'ab' 或 'v1' 形式的路径"""
    if quiver.has_vertex(text):
        return quiver.vertex_path(quiver.vertex_id(text))
    return quiver.path([quiver.arrow_id(ch) for ch in text])


def random_quiver(rng: random.Random, max_vertices: int, max_arrows: int) -> Quiver:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_arrows)
    names = [f"v{i + 1}" for i in range(n)]
    arrows = [(f"x{j}", names[rng.randrange(n)], names[rng.randrange(n)]) for j in range(m)]
    return Quiver.build(names, arrows)


def random_admissible_tips(rng: random.Random, quiver: Quiver) -> TipSet:
    """
    随机长度 2 首项，再把长度为 depth 的全部正规路径加入首项，使正规基有限。
    """
    depth = 3 if quiver.arrow_count > 6 else rng.choice([3, 4])
    paths = paths_up_to_length(quiver, depth)
    chosen = {p for p in paths if p.length == 2 and rng.random() < 0.4}
    if depth == 4:
        chosen |= {p for p in paths if p.length == 3 and rng.random() < 0.2
                   and not any(is_subpath(t, p) for t in chosen)}
    closure = {p for p in paths if p.length == depth and not any(is_subpath(t, p) for t in chosen)}
    return minimal_tipset(chosen | closure)


def perturb(rng: random.Random, quiver: Quiver, tips: TipSet, order: AdmissibleOrder,
            shorter: bool = False):
    """
    给部分首项加上同端点且更小的尾项。

    默认尾项与首项等长（齐次）；shorter=True 时尾项长度在 2 与 |t| - 1 之间，得到非齐次理想。
    两种情形下首项仍是 ≻-最大项，正规基包含于原单项式代数的正规基，因而仍然容许。
    """
    by_length = {}
    for p in paths_up_to_length(quiver, max((t.length for t in tips), default=0)):
        by_length.setdefault((p.length, p.origin, p.end), []).append(p)
    relations = []
    for t in tips.sorted(order):
        element = Element.monomial(t)
        if shorter:
            tails = [q for length in range(2, t.length)
                     for q in by_length.get((length, t.origin, t.end), [])]
        else:
            tails = [q for q in by_length[(t.length, t.origin, t.end)]
                     if order.key(q) < order.key(t)]
        if tails and rng.random() < 0.6:
            q = rng.choice(tails)
            value = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
            element = element + Element.monomial(q, coef=coefficient(element.field, value))
        relations.append(element)
    return relations


def truncated_ideal_span(quiver: Quiver, relations, length: int):
    """
    长度 <= length 的路径坐标下 span{p·g·q} 的截断向量（丢弃更长的项）。

    返回 (路径列表, 路径 -> 下标, 向量列表)，不依赖 Gröbner 机制。
    """
    paths = paths_up_to_length(quiver, length)
    index = {p: i for i, p in enumerate(paths)}
    vectors = []
    for g in relations:
        for p in paths:
            lefts = [(left, c) for left, c in ((compose(p, r), c) for r, c in g.terms.items())
                     if left is not None and left.length <= length]
            ends = {left.end for left, _ in lefts}
            for q in (q for q in paths if q.origin in ends):
                terms = {}
                for left, c in lefts:
                    full = compose(left, q)
                    if full is not None and full.length <= length:
                        terms[index[full]] = c
                if terms:
                    vectors.append(terms)
    return paths, index, vectors


def random_element(rng: random.Random, paths, field=QQ) -> Element:
    """从 paths 中随机取 1 到 4 条路径，配以随机非零有理系数"""
    total = Element.zero(field)
    for p in rng.sample(paths, min(len(paths), rng.randint(1, 4))):
        value = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.choice([1, 2, 3]))
        total = total + Element.monomial(p, field, coefficient(field, value))
    return total
