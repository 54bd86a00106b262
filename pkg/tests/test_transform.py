"""Transform engine: side splits, escalation subsets, the constructive
inequality, and the iterated leaf-attachment traces."""

import random
from fractions import Fraction

import pytest

from domdensity import (
    DominatingSet,
    PreconditionError,
    attach_leaves,
    bipartition,
    cartesian_product,
    complete_bipartite,
    constructive_inequality_check,
    cycle_graph,
    domination_split,
    evaluate_hypothesis,
    gamma_brute,
    gamma_exact,
    gamma_value,
    iterate_leaves,
    m_star,
    path_graph,
    rho,
    star,
    to_graph,
)
from domdensity.catalog import connected_bipartite_graphs, connected_graphs
from domdensity.transform import minimum_dominating_sets


class TestDominationSplit:
    def test_c4_adjacent_pair(self):
        bg = bipartition(cycle_graph(4))
        split = domination_split(bg, DominatingSet.from_mask(0b0011))
        assert split.prop_a == split.prop_b == Fraction(1, 2)

    def test_star_center(self):
        bg = bipartition(star(9))
        split = domination_split(bg, DominatingSet.from_mask(0b1))
        assert split.prop_a == 1 and split.prop_b == 0

    def test_worked_example_split(self, rank6_matrix):
        bg = to_graph(rank6_matrix)
        d = DominatingSet.from_mask((1 << 1) | (1 << 4) | (1 << 6) | (1 << 9))
        split = domination_split(bg, d)
        assert split.prop_a == split.prop_b == Fraction(1, 3)

    def test_rejects_non_dominating_set(self):
        bg = bipartition(cycle_graph(4))
        with pytest.raises(PreconditionError):
            domination_split(bg, DominatingSet.from_mask(0b0001))


class TestMStar:
    def test_smallest_strict_fraction(self):
        assert m_star(6, 3, Fraction(1, 3)) == 3

    def test_zero_density_degenerate_guard(self):
        assert m_star(6, 1, Fraction(0)) == 1

    def test_absent_when_subset_too_small(self):
        assert m_star(6, 1, Fraction(1, 2)) is None

    def test_exact_boundary_needs_strictly_more(self):
        assert m_star(4, 2, Fraction(1, 2)) is None  # needs 3 > 2 available
        assert m_star(4, 3, Fraction(1, 2)) == 3

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            m_star(0, 0, Fraction(1, 2))
        with pytest.raises(PreconditionError):
            m_star(3, 4, Fraction(1, 2))


class TestHypothesis:
    def test_c4_at_half_density(self):
        bg = bipartition(cycle_graph(4))
        hyp = evaluate_hypothesis(bg, Fraction(1, 2))
        assert hyp.gate_met and hyp.usable
        assert hyp.chosen.m_star == 2 and hyp.chosen.side == "A"
        # the {0,1}-style splits meet the gate exactly but admit no strict subset
        assert hyp.equality_flagged

    def test_c6_vs_k2_gate_fails(self):
        bg = bipartition(cycle_graph(6))
        hyp = evaluate_hypothesis(bg, Fraction(1, 2))
        assert not hyp.gate_met and not hyp.usable
        assert hyp.swept_all_minimum_sets

    def test_c6_at_own_density_equality_gap(self):
        # every minimum set splits 1 + 1, so both sides sit exactly at 1/3
        bg = bipartition(cycle_graph(6))
        hyp = evaluate_hypothesis(bg, Fraction(1, 3))
        assert hyp.gate_met and not hyp.usable and hyp.equality_flagged

    def test_minimum_set_sweep_matches_brute(self):
        g = cycle_graph(6)
        masks = minimum_dominating_sets(g, 2)
        assert sorted(masks) == sorted([0b001001, 0b010010, 0b100100])


class TestConstructiveInequality:
    def test_star_vs_k2_trivial_slack(self):
        bg = bipartition(star(3))
        report = constructive_inequality_check(bg, complete_bipartite(1, 1))
        assert report.applicable and report.holds
        assert report.gamma_g == 1 and report.gamma_h == 1
        assert report.m_star == 1

    def test_c4_square_exact_terms(self):
        bg = bipartition(cycle_graph(4))
        h = cycle_graph(4)
        report = constructive_inequality_check(bg, h)
        product = cartesian_product(bg.graph, h)
        assert report.gamma_product == gamma_brute(product.graph) == 4
        assert report.m_star == 2
        assert report.lhs == 4 + 2 * 4 and report.rhs == 4
        assert report.holds

    def test_c6_vs_k2_out_of_hypothesis(self):
        bg = bipartition(cycle_graph(6))
        report = constructive_inequality_check(bg, complete_bipartite(1, 1))
        assert not report.applicable
        assert report.gamma_product is None and report.holds is None
        assert report.gamma_g == 2 and report.gamma_h == 1

    def test_p4_vs_k2_full_terms(self):
        bg = bipartition(path_graph(4))
        h = complete_bipartite(1, 1)
        report = constructive_inequality_check(bg, h)
        assert report.applicable
        product = cartesian_product(bg.graph, h)
        assert report.gamma_product == gamma_brute(product.graph)
        assert report.lhs == report.gamma_product + report.m_star * 2
        assert report.rhs == 2
        assert report.holds


class TestIterateLeaves:
    def test_star_already_satisfied(self):
        bg = bipartition(star(3))
        trace = iterate_leaves(bg, 2, Fraction(1, 3), max_rounds=5)
        assert trace.satisfied and trace.final_round == 0
        assert len(trace.rounds) == 1

    def test_already_satisfied_with_single_round_budget(self):
        bg = bipartition(star(3))
        trace = iterate_leaves(bg, 2, Fraction(1, 3), max_rounds=1)
        assert trace.final_round == 0

    def test_c4_multi_round_slopes(self):
        bg = bipartition(cycle_graph(4))
        trace = iterate_leaves(bg, 2, Fraction(1, 2), max_rounds=10)
        assert trace.satisfied and trace.final_round == 1
        assert trace.m_star == 2 and trace.round_bound == 2
        lhs = [r.verdict.lhs for r in trace.rounds]
        rhs = [r.verdict.rhs for r in trace.rounds]
        # lhs climbs by m*/|X| = 1 per round, rhs by at most rho = 1/2
        assert lhs[1] - lhs[0] == Fraction(2, 2)
        assert rhs[1] - rhs[0] <= Fraction(1, 2)
        assert all(r.gamma == trace.rounds[0].gamma for r in trace.rounds)

    def test_balanced_k33_out_of_hypothesis(self):
        bg = bipartition(complete_bipartite(3, 3))
        trace = iterate_leaves(bg, 2, Fraction(1), max_rounds=3)
        assert not trace.hypothesis.gate_met
        assert not trace.satisfied and trace.rounds == ()

    def test_side_b_growth_strictly_widens_gap(self):
        bg = bipartition(cycle_graph(4))
        trace = iterate_leaves(bg, 2, Fraction(1, 2), max_rounds=10)
        diffs = [r.size_b - r.size_a for r in trace.rounds]
        assert diffs == sorted(diffs) and len(set(diffs)) == len(diffs)

    def test_trace_serializes(self):
        bg = bipartition(cycle_graph(4))
        trace = iterate_leaves(bg, 2, Fraction(1, 2), max_rounds=4)
        payload = trace.to_json()
        assert payload["satisfied"] is True
        assert payload["rounds"][0]["criterion_name"] == "imbalance-arbitrary"

    def test_rejects_zero_round_budget(self):
        bg = bipartition(cycle_graph(4))
        with pytest.raises(PreconditionError):
            iterate_leaves(bg, 2, Fraction(1, 2), max_rounds=0)


class TestProofAccounting:
    def test_per_round_product_bound(self):
        # gamma(G' box H) <= gamma(G box H) + m* |V(H)| after one escalation
        h = complete_bipartite(1, 1)
        for g in (path_graph(4), cycle_graph(4), star(3)):
            bg = bipartition(g)
            report = constructive_inequality_check(bg, h)
            if not report.applicable:
                continue
            hyp = report.hypothesis
            targets = 0
            pool = hyp.chosen.d_in_side
            for _ in range(hyp.chosen.m_star):
                low = pool & -pool
                targets |= low
                pool ^= low
            grown = attach_leaves(g, targets)
            lhs = gamma_value(cartesian_product(grown, h).graph)
            assert lhs <= report.gamma_product + report.m_star * h.n

    def test_end_to_end_grown_pair_satisfies_inequality(self):
        bg = bipartition(cycle_graph(4))
        h = cycle_graph(4)
        trace = iterate_leaves(bg, 2, rho(h).value, max_rounds=10)
        assert trace.satisfied
        g = bg.graph
        for _ in range(trace.final_round):
            g = attach_leaves(g, trace.targets)
        gamma_grown = gamma_value(g)
        assert gamma_grown == trace.hypothesis.gamma
        product = cartesian_product(g, h)
        assert gamma_value(product.graph) >= gamma_grown * gamma_value(h)

    def test_termination_within_slope_bound_on_samples(self):
        rng = random.Random(101)
        pool_g = [g for n in range(2, 6) for g in connected_bipartite_graphs(n)]
        pool_h = [h for n in range(1, 5) for h in connected_graphs(n)]
        checked = 0
        for g in pool_g:
            for h in pool_h:
                bg = bipartition(g)
                r = rho(h)
                hyp = evaluate_hypothesis(bg, r.value)
                if not hyp.usable:
                    continue
                from domdensity import max_degree
                trace = iterate_leaves(bg, max_degree(h), r.value, max_rounds=64)
                assert trace.satisfied
                assert trace.final_round <= trace.round_bound
                checked += 1
        assert checked >= 20
