"""
共享测试夹具：两个示例呈示、随机单项式语料与带低阶尾项的扰动呈示
"""
import logging
import random
from typing import Optional

import pytest

from models.groebner_model import minimal_tipset
from models.heredity_model import greedy_ordering
from models.quiver_model import AdmissibleOrder
from utils.presentation_parser import parse_order, parse_presentation

from helpers import (
    ORDER_BACKWARD, ORDER_FORWARD, perturb, random_admissible_tips, random_quiver, read_example, word,
)


@pytest.fixture(autouse=True)
def restore_root_logger():
    """CLI 会重新配置根日志器，测试之间恢复原状"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def example1_text():
    return read_example('example1.qhd')


@pytest.fixture
def example2_text():
    return read_example('example2.qhd')


@pytest.fixture
def example1(example1_text):
    return parse_presentation(example1_text)


@pytest.fixture
def example2(example2_text):
    return parse_presentation(example2_text)


@pytest.fixture
def example1_tips(example1):
    return minimal_tipset(word(example1.quiver, t) for t in ('ab', 'be', 'de', 'eh', 'hc'))


@pytest.fixture
def forward_order(example2):
    return parse_order(ORDER_FORWARD, example2.quiver)


@pytest.fixture
def backward_order(example2):
    return parse_order(ORDER_BACKWARD, example2.quiver)


@pytest.fixture
def perturbed_example1(example1_text):
    """ab - X·cd（X ≠ 0）：首项集与单项式情形相同"""
    text = example1_text.replace('rel ab\n', 'rel ab - 5/3*cd\n')
    return parse_presentation(text)


@pytest.fixture
def example1_with_tails(example1_text):
    """按参数 (X, Y) 给 ab 与 de 加尾项：ab - X·cd, de - Y·fg；参数为 None 时不加"""
    def build(x: Optional[str], y: Optional[str]):
        text = example1_text
        if x:
            text = text.replace('rel ab\n', f'rel ab - {x}*cd\n')
        if y:
            text = text.replace('rel de\n', f'rel de - {y}*fg\n')
        return parse_presentation(text)
    return build


@pytest.fixture(scope='session')
def monomial_corpus():
    """200 个随机箭图（<= 6 个顶点，<= 10 个箭头）及随机极小容许首项集"""
    rng = random.Random(20231)
    corpus = []
    for _ in range(200):
        quiver = random_quiver(rng, 6, 10)
        corpus.append((quiver, random_admissible_tips(rng, quiver)))
    return corpus


@pytest.fixture(scope='session')
def small_monomial_corpus():
    """线性代数验证用的较小语料"""
    rng = random.Random(7331)
    corpus = []
    for _ in range(40):
        quiver = random_quiver(rng, 5, 7)
        corpus.append((quiver, random_admissible_tips(rng, quiver)))
    return corpus


@pytest.fixture(scope='session')
def perturbed_corpus():
    """(箭图, 关系, 原单项式首项) 的随机扰动语料，<= 5 个顶点"""
    rng = random.Random(4242)
    corpus = []
    while len(corpus) < 50:
        quiver = random_quiver(rng, 5, 7)
        if quiver.arrow_count == 0:
            continue
        tips = random_admissible_tips(rng, quiver)
        if not len(tips):
            continue
        order = AdmissibleOrder.default(quiver)
        corpus.append((quiver, perturb(rng, quiver, tips, order), tips))
    return corpus


@pytest.fixture(scope='session')
def shortened_corpus():
    """拟遗传单项式首项加上更短尾项得到的非齐次呈示，<= 5 个顶点"""
    rng = random.Random(5151)
    corpus = []
    while len(corpus) < 30:
        quiver = random_quiver(rng, 5, 7)
        if quiver.arrow_count == 0:
            continue
        tips = random_admissible_tips(rng, quiver)
        if not len(tips) or not greedy_ordering(quiver, tips).succeeded:
            continue
        order = AdmissibleOrder.default(quiver)
        relations = perturb(rng, quiver, tips, order, shorter=True)
        if all(g.is_monomial() for g in relations):
            continue
        corpus.append((quiver, relations, tips))
    return corpus
