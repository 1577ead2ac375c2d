import itertools
from fractions import Fraction as F

import pytest

from adacover import ProductDistribution, greedy_policy, run_policy
from adacover.analysis import cost_distribution, huffman_bound, masc_objective, moment_direct
from adacover.applications import build_minsum_setcover, build_odt, build_ssc
from adacover.errors import InstanceTooLarge, NonIntegralCosts
from adacover.oracle import optimal_expected_cost, optimal_masc_sum, optimal_moment

from conftest import brute_optimum, explicit_scenarios, random_odt, random_ssc


def opt(inst, **kw):
    return optimal_expected_cost(inst.utility, inst.distribution, inst.costs, **kw)[0]


def perm_minsum(sets, costs, p=1):
    """min over set orders of sum_x (first cover time of x)^p."""
    elems = set().union(*sets)
    best = None
    for order in itertools.permutations(range(len(sets))):
        t, covered, total = F(0), set(), F(0)
        for e in order:
            t += costs[e]
            new = sets[e] - covered
            total += len(new) * t**p
            covered |= new
        best = total if best is None else min(best, total)
    assert covered == elems
    return best


class TestExamples:
    def test_m3(self, odt3):
        value, pol = optimal_expected_cost(odt3.utility, odt3.distribution, odt3.costs)
        assert value == F(5, 3) == huffman_bound(3, 1) / 3
        terminal, _ = cost_distribution(pol, odt3.distribution, odt3.utility, odt3.costs)
        assert terminal.mean == F(5, 3)

    def test_m2(self):
        assert opt(build_odt([[1], [0]])) == 1

    def test_deterministic_set_cover(self):
        cov = {(0, 0): {"x", "y"}, (1, 0): {"z"}}
        inst = build_ssc(cov, None, ProductDistribution([[1], [1]]), 3, [F(5, 2), 4])
        assert opt(inst) == F(13, 2)
        assert optimal_moment(build_ssc(cov, None, ProductDistribution([[1], [1]]), 3, [2, 4]).utility,
                              ProductDistribution([[1], [1]]), [2, 4], 3) == 6**3

    def test_m3_second_moment(self, odt3):
        assert optimal_moment(odt3.utility, odt3.distribution, odt3.costs, 2) == 3

    def test_minsum(self):
        inst = build_minsum_setcover([{1, 2}, {3}, {2, 3}])
        assert optimal_masc_sum(inst.utilities, inst.distribution, inst.costs, 1) == 4
        assert optimal_masc_sum(inst.utilities, inst.distribution, inst.costs, 2) == 6

    def test_minsum_singletons(self):
        inst = build_minsum_setcover([{i} for i in range(5)])
        assert optimal_masc_sum(inst.utilities, inst.distribution, inst.costs) == 15

    def test_single_function_masc_equals_moment(self, rng):
        for _ in range(10):
            inst = random_odt(rng, 5, 4, unit=False)
            f, d, c = inst.utility, inst.distribution, inst.costs
            for p in (1, 2):
                assert optimal_masc_sum([f], d, c, p) == optimal_moment(f, d, c, p)


class TestAgreement:
    def test_odt_against_bruteforce(self, rng):
        for _ in range(25):
            inst = random_odt(rng, 6, 4, unit=rng.random() < 0.5)
            f, d, c = inst.utility, inst.distribution, inst.costs
            scen = explicit_scenarios(d)
            assert opt(inst) == brute_optimum([f], scen, c, 1)
            assert optimal_moment(f, d, c, 2) == brute_optimum([f], scen, c, 2)

    def test_ssc_against_bruteforce(self, rng):
        for _ in range(25):
            inst = random_ssc(rng, n_max=4)
            f, d, c = inst.utility, inst.distribution, inst.costs
            scen = explicit_scenarios(d)
            assert opt(inst, max_scenarios=16) == brute_optimum([f], scen, c, 1)
            assert optimal_moment(f, d, c, 3, max_scenarios=16) == brute_optimum([f], scen, c, 3)

    def test_p1_paths_agree(self, rng):
        for _ in range(20):
            inst = random_odt(rng, 7, 5, unit=False)
            f, d, c = inst.utility, inst.distribution, inst.costs
            assert opt(inst) == optimal_moment(f, d, c, 1)

    def test_merged_and_full_keys_agree(self, rng):
        for _ in range(15):
            inst = random_odt(rng, 6, 4, unit=False)
            f, d, c = inst.utility, inst.distribution, inst.costs
            assert opt(inst) == opt(inst, full_keys=True)
            assert optimal_moment(f, d, c, 2) == optimal_moment(f, d, c, 2, full_keys=True)

    def test_extracted_policy_attains_value(self, rng):
        for _ in range(20):
            inst = random_ssc(rng) if rng.random() < 0.5 else random_odt(rng, 7, 5, unit=False)
            f, d, c = inst.utility, inst.distribution, inst.costs
            value, pol = optimal_expected_cost(f, d, c, max_scenarios=16)
            terminal, _ = cost_distribution(pol, d, f, c)
            assert terminal.mean == value

    def test_never_above_greedy(self, rng):
        for _ in range(20):
            inst = random_odt(rng, 8, 5)
            f, d, c = inst.utility, inst.distribution, inst.costs
            terminal, _ = cost_distribution(greedy_policy(f, d, c), d, f, c)
            assert opt(inst) <= terminal.mean

    def test_minsum_against_permutations(self, rng):
        for _ in range(25):
            k = rng.randint(1, 5)
            sets = [set(x for x in range(5) if rng.random() < 0.4) or {rng.randrange(5)} for _ in range(k)]
            costs = [rng.randint(1, 3) for _ in range(k)]
            inst = build_minsum_setcover(sets, costs)
            for p in (1, 2):
                assert optimal_masc_sum(inst.utilities, inst.distribution, costs, p) == perm_minsum(sets, costs, p)

    def test_masc_stochastic_against_bruteforce(self, rng):
        from adacover.applications import build_multi_quota_viral, CascadeNetwork

        net = CascadeNetwork.build([1, 2, 1], [(0, 1, F(1, 2)), (1, 2, F(1, 3)), (2, 0, F(2, 3))])
        inst = build_multi_quota_viral(net, [1, 2, 3])
        scen = explicit_scenarios(inst.distribution)
        for p in (1, 2):
            assert optimal_masc_sum(inst.utilities, inst.distribution, inst.costs, p, max_scenarios=8) == \
                brute_optimum(list(inst.utilities), scen, inst.costs, p)


class TestGuards:
    def test_scenario_cap(self):
        inst = build_odt([[a, b, c, d] for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)])
        with pytest.raises(InstanceTooLarge):
            opt(inst)
        assert opt(inst, max_scenarios=16) == 4

    def test_item_cap(self):
        inst = build_minsum_setcover([{i} for i in range(9)])
        with pytest.raises(InstanceTooLarge):
            optimal_masc_sum(inst.utilities, inst.distribution, inst.costs)

    def test_node_budget(self):
        inst = build_odt([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]])
        with pytest.raises(InstanceTooLarge):
            opt(inst, node_budget=1)

    def test_fractional_costs_rejected_for_moments(self, odt3):
        with pytest.raises(NonIntegralCosts):
            optimal_moment(odt3.utility, odt3.distribution, [F(1, 2), 1], 2)
