"""
真内部顶点判据、顶点消去、遗传链验证与提升流程测试
"""
import pytest

from models.fd_algebra_model import build_fd_algebra
from models.groebner_model import TipSet, complete, monomial_data
from models.heredity_model import (
    Verdict, brute_force_qh, decide_monomial_qh, decide_qh, general_candidates, greedy_ordering,
    heredity_candidates, properly_internal, quotient_algebra, quotient_monomial_consistent,
    verify_chain, verify_heredity_ideal,
)
from models.path_algebra_model import Element
from models.quiver_model import AdmissibleOrder, Quiver
from utils.error_handler import PreconditionFailed, TooLarge


def vertex_ids(quiver, names):
    return [quiver.vertex_id(name) for name in names]


class TestProperlyInternal:
    def test_example1_internal_vertices(self, example1, example1_tips):
        quiver = example1.quiver
        internal = {name for name in quiver.vertex_names
                    if properly_internal(quiver.vertex_id(name), example1_tips)}
        assert internal == {'v1', 'v2', 'v4', 'v6'}

    def test_endpoints_are_not_internal(self, example1, example1_tips):
        quiver = example1.quiver
        # v3 只作为 de 的起点和 hc 的终点出现
        assert not properly_internal(quiver.vertex_id('v3'), example1_tips)

    def test_candidates(self, example1, example1_tips):
        quiver = example1.quiver
        candidates = heredity_candidates(example1_tips, range(quiver.vertex_count))
        assert quiver.format_vertices(candidates) == ['v3', 'v5']

    def test_general_candidates(self, example2, backward_order):
        data = complete(example2.quiver, list(example2.relations), backward_order, 8)
        assert example2.quiver.format_vertices(general_candidates(data)) == ['v2']


class TestEliminationOrdering:
    def test_example1_chain(self, example1, example1_tips):
        quiver = example1.quiver
        elimination = greedy_ordering(quiver, example1_tips)
        assert elimination.succeeded
        assert quiver.format_vertices(elimination.ordering) == ['v3', 'v1', 'v2', 'v4', 'v5', 'v6']
        assert quiver.format_vertices(sorted(elimination.candidates[0])) == ['v3', 'v5']

    def test_blocked_ordering(self, example2, forward_order):
        data = complete(example2.quiver, list(example2.relations), forward_order, 8)
        elimination = greedy_ordering(example2.quiver, data.tips)
        assert not elimination.succeeded
        assert elimination.failure_point == 0
        assert elimination.blocked == frozenset(range(4))
        assert elimination.surviving_tips == data.tips

    def test_backward_order_chain(self, example2, backward_order):
        data = complete(example2.quiver, list(example2.relations), backward_order, 8)
        elimination = greedy_ordering(example2.quiver, data.tips)
        assert example2.quiver.format_vertices(elimination.ordering) == ['v2', 'v1', 'v3', 'v4']

    def test_brute_force_agrees(self, example1, example1_tips):
        assert brute_force_qh(example1.quiver, example1_tips)

    def test_brute_force_limit(self):
        names = [f"v{i}" for i in range(9)]
        with pytest.raises(TooLarge):
            brute_force_qh(Quiver.build(names, []), TipSet.of([]))

    def test_loop_is_never_quasi_hereditary(self):
        quiver = Quiver.build(['v'], [('a', 'v', 'v')])
        tips = TipSet.of([quiver.path([0, 0])])
        assert not greedy_ordering(quiver, tips).succeeded
        assert not brute_force_qh(quiver, tips)


class TestVerifier:
    def test_single_step_passes(self, example1, example1_tips):
        quiver = example1.quiver
        algebra = build_fd_algebra(quiver, monomial_data(quiver, example1_tips))
        record = verify_heredity_ideal(algebra, [quiver.vertex_id('v3')])
        assert record.passed
        assert (record.ideal_dim, record.tensor_dim) == (12, 12)

    def test_internal_vertex_fails(self, example1, example1_tips):
        quiver = example1.quiver
        algebra = build_fd_algebra(quiver, monomial_data(quiver, example1_tips))
        record = verify_heredity_ideal(algebra, [quiver.vertex_id('v1')])
        assert not record.passed
        assert record.failed_condition in ('L2', 'LJL', 'proj')

    def test_example1_chain_certified(self, example1, example1_tips):
        quiver = example1.quiver
        algebra = build_fd_algebra(quiver, monomial_data(quiver, example1_tips))
        report = verify_chain(algebra, vertex_ids(quiver, ['v3', 'v1', 'v2', 'v4', 'v5', 'v6']))
        assert report.certified
        assert report.verdict is Verdict.QUASI_HEREDITARY
        assert [step.vertex for step in report.steps] == ['v3', 'v1', 'v2', 'v4', 'v5', 'v6']
        assert report.steps[0].quotient_dim == 13
        assert report.steps[-1].quotient_dim == 0
        assert all(step.monomial_consistent for step in report.steps[:-1])

    def test_rejected_chain(self, example1, example1_tips):
        quiver = example1.quiver
        algebra = build_fd_algebra(quiver, monomial_data(quiver, example1_tips))
        report = verify_chain(algebra, vertex_ids(quiver, ['v1', 'v2', 'v3', 'v4', 'v5', 'v6']))
        assert not report.certified
        assert report.ordering.failure_point == 0
        assert len(report.steps) == 1

    def test_ordering_must_be_permutation(self, example1, example1_tips):
        quiver = example1.quiver
        algebra = build_fd_algebra(quiver, monomial_data(quiver, example1_tips))
        with pytest.raises(PreconditionFailed):
            verify_chain(algebra, [0, 1, 2])


class TestQuotient:
    def test_quotient_dimension(self, example2, backward_order):
        quiver = example2.quiver
        algebra = build_fd_algebra(quiver, complete(quiver, list(example2.relations), backward_order, 8))
        quotient = quotient_algebra(algebra, [quiver.vertex_id('v2')])
        assert quotient.quiver.vertex_names == ('v1', 'v3', 'v4')
        assert quotient.dimension == 9
        assert {quotient.quiver.format_path(t) for t in quotient.data.tips} == {'cd'}
        assert quotient_monomial_consistent(quotient)
        assert quotient.is_associative()

    def test_quotient_by_nothing(self, example2, backward_order):
        quiver = example2.quiver
        algebra = build_fd_algebra(quiver, complete(quiver, list(example2.relations), backward_order, 8))
        assert quotient_algebra(algebra, []) is algebra

    def test_internal_vertex_rejected(self, example2, backward_order):
        quiver = example2.quiver
        algebra = build_fd_algebra(quiver, complete(quiver, list(example2.relations), backward_order, 8))
        with pytest.raises(PreconditionFailed):
            quotient_algebra(algebra, [quiver.vertex_id('v1')])


class TestDecision:
    def test_monomial_decision(self, example1, example1_tips):
        report = decide_monomial_qh(example1.quiver, example1_tips)
        assert report.verdict is Verdict.QUASI_HEREDITARY
        assert report.ordering_names() == ['v3', 'v1', 'v2', 'v4', 'v5', 'v6']
        assert len(report.steps) == 6

    def test_monomial_decision_without_verification(self, example1, example1_tips):
        report = decide_monomial_qh(example1.quiver, example1_tips, verify=False)
        assert report.verdict is Verdict.QUASI_HEREDITARY
        assert report.steps == ()

    def test_monomial_failure(self, example2, forward_order):
        data = complete(example2.quiver, list(example2.relations), forward_order, 8)
        report = decide_monomial_qh(example2.quiver, data.tips, order=forward_order)
        assert report.verdict is Verdict.NOT_QUASI_HEREDITARY

    def test_unknown_under_single_order(self, example2, forward_order):
        report = decide_qh(example2.quiver, list(example2.relations), [forward_order], 8)
        assert report.verdict is Verdict.UNKNOWN
        assert report.order_used == forward_order
        assert report.data.order == forward_order

    def test_second_order_succeeds(self, example2, forward_order, backward_order):
        report = decide_qh(example2.quiver, list(example2.relations), [forward_order, backward_order], 8)
        assert report.verdict is Verdict.QUASI_HEREDITARY
        assert report.order_used == backward_order
        assert report.ordering_names() == ['v2', 'v1', 'v3', 'v4']
        assert report.certified

    def test_monomial_input_can_be_rejected(self):
        quiver = Quiver.build(['v'], [('a', 'v', 'v')])
        relation = Element.monomial(quiver.path([0, 0]))
        report = decide_qh(quiver, [relation], [AdmissibleOrder.default(quiver)], 4)
        assert report.verdict is Verdict.NOT_QUASI_HEREDITARY

    def test_perturbed_example1(self, perturbed_example1):
        quiver = perturbed_example1.quiver
        order = perturbed_example1.primary_order
        data = complete(quiver, list(perturbed_example1.relations), order, 10)
        assert {quiver.format_path(t) for t in data.tips} == {'ab', 'be', 'de', 'eh', 'hc'}
        report = decide_qh(quiver, list(perturbed_example1.relations), [order], 10)
        assert report.verdict is Verdict.QUASI_HEREDITARY
        assert report.ordering_names() == ['v3', 'v1', 'v2', 'v4', 'v5', 'v6']
        assert not report.monomial

    def test_requires_an_order(self, example2):
        with pytest.raises(ValueError):
            decide_qh(example2.quiver, list(example2.relations), [], 8)
