"""
约化、重叠补全、首项集与正规基测试
"""
import random

import pytest
from sympy.polys.domains import GF, QQ

from models.groebner_model import (
    TipSet, associated_monomial, complete, dimension, interreduce, is_admissible, is_monomial,
    leading_term, minimal_tipset, monomial_data, normal_basis, reduce, tip,
)
from models.path_algebra_model import Element, coefficient, make_field
from models.quiver_model import AdmissibleOrder, Quiver, paths_up_to_length
from utils.error_handler import CapExceeded, NotAdmissibleError, ZeroElementError
from utils.linear_algebra import rank
from utils.presentation_parser import parse_order, parse_presentation

from helpers import ORDER_BACKWARD, truncated_ideal_span, word


def names(quiver, paths):
    return {quiver.format_path(p) for p in paths}


def monomial(quiver, text, c=1):
    return Element.monomial(word(quiver, text), QQ, coefficient(QQ, c))


@pytest.fixture
def loop_quiver():
    return Quiver.build(['v'], [('a', 'v', 'v')])


class TestLeadingTerms:
    def test_tip_depends_on_order(self, example2, forward_order, backward_order):
        x = example2.relations[0]
        quiver = example2.quiver
        assert quiver.format_path(tip(x, forward_order)) == 'ab'
        assert quiver.format_path(tip(x, backward_order)) == 'cd'

    def test_zero_has_no_tip(self, forward_order):
        with pytest.raises(ZeroElementError):
            leading_term(Element.zero(), forward_order)
        with pytest.raises(ValueError):
            tip(Element.zero(), forward_order)


class TestCompletion:
    def test_example2_forward_order(self, example2, forward_order):
        quiver = example2.quiver
        data = complete(quiver, list(example2.relations), forward_order, 8)
        assert names(quiver, data.tips) == {'ab', 'be', 'ea', 'cde', 'ecd'}
        assert len(data.basis) == 5
        by_tip = {quiver.format_path(tip(g, forward_order)): g.element for g in data.basis}
        assert by_tip['ab'] == monomial(quiver, 'ab') - monomial(quiver, 'cd')
        assert by_tip['cde'] == monomial(quiver, 'cde')
        assert by_tip['ecd'] == monomial(quiver, 'ecd')

    def test_example2_backward_order(self, example2, backward_order):
        quiver = example2.quiver
        data = complete(quiver, list(example2.relations), backward_order, 8)
        assert names(quiver, data.tips) == {'cd', 'be', 'ea'}
        elements = set(data.elements())
        assert elements == {monomial(quiver, 'cd') - monomial(quiver, 'ab'),
                            monomial(quiver, 'be'), monomial(quiver, 'ea')}
        assert names(quiver, data.normal_basis) == {
            'v1', 'v2', 'v3', 'v4', 'a', 'b', 'c', 'd', 'e', 'ab', 'de', 'ec', 'dec'}
        assert data.length_bound == 4
        assert dimension(data) == 13

    def test_normal_basis_sorted_by_order(self, example2, backward_order):
        data = complete(example2.quiver, list(example2.relations), backward_order, 8)
        keys = [backward_order.key(p) for p in data.normal_basis]
        assert keys == sorted(keys)

    def test_elements_are_uniform_and_monic(self, example2, forward_order):
        data = complete(example2.quiver, list(example2.relations), forward_order, 8)
        for g in data.basis:
            t, c = leading_term(g.element, forward_order)
            assert c == QQ.one
            assert (t.origin, t.end) == (g.origin, g.end)

    def test_non_uniform_generator_is_split(self, example2, backward_order):
        quiver = example2.quiver
        merged = example2.relations[1] + example2.relations[2]
        data = complete(quiver, [example2.relations[0], merged], backward_order, 8)
        assert names(quiver, data.tips) == {'cd', 'be', 'ea'}

    def test_length_one_term_is_not_admissible(self, example2, forward_order):
        quiver = example2.quiver
        with pytest.raises(NotAdmissibleError):
            complete(quiver, [monomial(quiver, 'ab') + monomial(quiver, 'e')], forward_order, 8)

    def test_infinite_normal_basis_exceeds_cap(self, loop_quiver):
        with pytest.raises(CapExceeded) as excinfo:
            complete(loop_quiver, [], AdmissibleOrder.default(loop_quiver), 5)
        assert excinfo.value.cap == 5

    def test_prime_field_gives_same_tips(self, example2_text):
        presentation = parse_presentation(example2_text, field_override='fp:7')
        quiver = presentation.quiver
        order = parse_order(ORDER_BACKWARD, quiver)
        data = complete(quiver, list(presentation.relations), order, 8)
        assert names(quiver, data.tips) == {'cd', 'be', 'ea'}
        assert len(data.normal_basis) == 13

    def test_field_without_relations(self):
        quiver = Quiver.build(['v1', 'v2'], [('a', 'v1', 'v2')])
        order = AdmissibleOrder.default(quiver)
        data = complete(quiver, [], order, 4, field=make_field('fp:7'))
        assert data.field == GF(7)
        assert len(data.normal_basis) == 3
        assert complete(quiver, [], order, 4).field == QQ

    def test_associated_monomial(self, example2, backward_order):
        data = complete(example2.quiver, list(example2.relations), backward_order, 8)
        assert associated_monomial(data) == data.tips


class TestReduction:
    def test_normal_forms(self, example2, backward_order):
        quiver = example2.quiver
        data = complete(quiver, list(example2.relations), backward_order, 8)
        basis = data.elements()
        assert reduce(monomial(quiver, 'cd'), basis, backward_order) == monomial(quiver, 'ab')
        assert reduce(monomial(quiver, 'cde'), basis, backward_order).is_zero()
        assert reduce(monomial(quiver, 'dec'), basis, backward_order) == monomial(quiver, 'dec')

    def test_reduce_against_empty_basis(self, example2, forward_order):
        x = monomial(example2.quiver, 'ab')
        assert reduce(x, [], forward_order) == x

    def test_interreduce(self, example2, forward_order):
        quiver = example2.quiver
        result = interreduce([monomial(quiver, 'ab', 2) - monomial(quiver, 'cd'), monomial(quiver, 'cd')],
                             forward_order)
        assert result == [monomial(quiver, 'cd'), monomial(quiver, 'ab')]


class TestTipSets:
    def test_minimal_tipset(self, example2):
        quiver = example2.quiver
        tips = minimal_tipset([word(quiver, 'ab'), word(quiver, 'abe'), word(quiver, 'ea')])
        assert names(quiver, tips) == {'ab', 'ea'}

    def test_antichain_required(self, example2):
        quiver = example2.quiver
        with pytest.raises(ValueError):
            TipSet.of([word(quiver, 'ab'), word(quiver, 'abe')])
        with pytest.raises(ValueError):
            TipSet.of([word(quiver, 'a')])

    def test_restrict(self, example1, example1_tips):
        quiver = example1.quiver
        restricted = example1_tips.restrict({quiver.vertex_id('v3')})
        assert names(quiver, restricted) == {'ab', 'be', 'eh'}

    def test_restrict_is_monotone(self, monomial_corpus):
        rng = random.Random(21)
        for quiver, tips in monomial_corpus[:80]:
            removed = {v for v in range(quiver.vertex_count) if rng.random() < 0.3}
            more = {v for v in range(quiver.vertex_count) if rng.random() < 0.3}
            smaller = tips.restrict(removed | more)
            assert set(smaller) <= set(tips.restrict(removed))
            assert set(smaller) <= set(tips.restrict(more))

    def test_is_monomial(self, example1, example2):
        assert is_monomial(example1.relations)
        assert not is_monomial(example2.relations)


class TestAdmissibility:
    def test_example1_monomial_data(self, example1, example1_tips):
        data = monomial_data(example1.quiver, example1_tips)
        assert dimension(data) == 25
        assert data.length_bound == 6
        assert len(normal_basis(example1.quiver, example1_tips, 10)) == 25

    def test_witness(self, loop_quiver):
        aa = loop_quiver.path([0, 0])
        witness = is_admissible(loop_quiver, [aa])
        assert witness
        assert witness.length_bound == 2

    def test_infinite_normal_basis(self, loop_quiver):
        witness = is_admissible(loop_quiver, [])
        assert not witness
        assert witness.length_bound is None

    def test_short_tips(self, example2):
        assert not is_admissible(example2.quiver, [word(example2.quiver, 'a')])


def corpus_data(corpus):
    """补全语料中的每个呈示，返回 (箭图, 关系, Gröbner 数据)"""
    for quiver, relations, _ in corpus:
        order = AdmissibleOrder.default(quiver)
        cap = 2 * max(g.max_length() for g in relations) + quiver.vertex_count
        yield quiver, relations, complete(quiver, relations, order, cap)


@pytest.fixture(params=['perturbed_corpus', 'shortened_corpus'])
def corpus(request):
    return request.getfixturevalue(request.param)


class TestCompletionProperties:
    def test_generators_reduce_to_zero(self, corpus):
        for _, relations, data in corpus_data(corpus):
            basis = data.elements()
            for g in relations:
                assert reduce(g, basis, data.order).is_zero()

    def test_basis_lies_in_generated_ideal(self, corpus):
        for quiver, relations, data in corpus_data(corpus[:8]):
            paths, index, vectors = truncated_ideal_span(quiver, relations, data.length_bound)
            base = rank(vectors, len(paths), QQ)
            for g in data.elements():
                vector = {index[p]: c for p, c in g.terms.items()}
                assert rank(vectors + [vector], len(paths), QQ) == base

    def test_normal_paths_and_tip_multiples_partition(self, corpus):
        for quiver, _, data in corpus_data(corpus):
            normal = set(data.normal_basis)
            paths = paths_up_to_length(quiver, data.length_bound)
            assert normal <= set(paths)
            for p in paths:
                assert (p in normal) != data.tips.divides(p)
            assert all(data.tips.divides(p) for p in paths if p.length == data.length_bound)
