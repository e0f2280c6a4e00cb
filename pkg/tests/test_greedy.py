"""Greedy runs, wrong-strategy baseline, factor estimation."""

from fractions import Fraction
from itertools import combinations

import pytest

from troplab.errors import UsageError
from troplab.families import SetFamily
from troplab.generators import (
    HypergraphSpec,
    graham_sloane_matroid,
    hypergraph_matchings,
)
from troplab.greedy import (
    greedy_factor_estimate,
    greedy_run,
    matroid_failure_witness,
    wrong_strategy_run,
)

F = Fraction


def star_family(m):
    return SetFamily(m + 1, [(1,), tuple(range(2, m + 2))])


def test_star_example_exact_values():
    fam = star_family(3)
    x = [F(20, 19), 1, 1, 1]
    run = greedy_run(fam, x, "max")
    assert run.value == F(20, 19)
    assert run.optimum == 3
    assert run.ratio == F(57, 20)
    assert run.ratio > F(9, 10) * 3
    run_min = greedy_run(fam, x, "min")
    assert run_min.value == 3 and run_min.optimum == F(20, 19)
    assert run_min.ratio == F(57, 20)


def test_matroid_is_exact(rng):
    fam = SetFamily(4, list(combinations(range(1, 5), 2)))
    for _ in range(300):
        x = [rng.randint(0, 30) for _ in range(4)]
        for sense in ("max", "min"):
            assert greedy_run(fam, x, sense).ratio == 1


def test_solution_is_always_feasible(rng):
    fam = hypergraph_matchings(HypergraphSpec(3, 2))
    members = set(fam.members())
    for _ in range(200):
        x = [rng.randint(0, 9) for _ in range(fam.n)]
        for sense in ("max", "min"):
            run = greedy_run(fam, x, sense)
            assert run.solution in members


def test_determinism():
    fam = star_family(4)
    x = [2, 1, 1, 1, 1]
    runs = [greedy_run(fam, x, "max") for _ in range(3)]
    assert all(r == runs[0] for r in runs)


def test_tie_break_lowest_index_first():
    # two disjoint singletons with equal weight: index order decides
    fam = SetFamily(2, [(1,), (2,)])
    run = greedy_run(fam, [5, 5], "max")
    assert run.solution == (1,)
    assert run.order == (1, 2)


def test_antichain_required():
    with pytest.raises(UsageError):
        greedy_run(SetFamily(2, [(1,), (1, 2)]), [1, 1], "max")


def test_wrong_strategy_path_example():
    fam = SetFamily(3, [(1, 3), (2,)])
    big = 10**6
    x = [0, 1, big]
    run = wrong_strategy_run(fam, x, "max")
    assert run.value == 1 and run.optimum == big
    run_min = wrong_strategy_run(fam, x, "min")
    assert run_min.value == big and run_min.optimum == 1
    # the proper strategies are fine on the same instance
    assert greedy_run(fam, x, "max").ratio == 1
    assert greedy_run(fam, x, "min").ratio == 1


def test_wrong_strategy_on_matroid_no_guarantee():
    fam = SetFamily(4, list(combinations(range(1, 5), 2)))
    run = wrong_strategy_run(fam, [1, 2, 3, 4], "max")
    assert run.ratio >= 1  # nothing stronger is claimed


def test_factor_estimate_star_reaches_tightness():
    fam = star_family(5)
    est = greedy_factor_estimate(fam, 300, 17)
    assert est.max_ratio <= 5
    run = greedy_run(fam, [F(20, 19), 1, 1, 1, 1, 1], "max")
    assert max(est.max_ratio, run.ratio) >= F(9, 10) * 5


def test_factor_estimate_bounded_by_m(rng):
    for fam in (
        star_family(4),
        hypergraph_matchings(HypergraphSpec(3, 2)),
        graham_sloane_matroid(6, 3),
    ):
        m = max(mask.bit_count() for mask in fam.masks)
        est = greedy_factor_estimate(fam, 500, 23)
        assert est.max_ratio <= m


def test_matchings_ratio_at_most_k():
    for m, k in [(2, 2), (3, 2), (3, 3)]:
        fam = hypergraph_matchings(HypergraphSpec(m, k))
        est = greedy_factor_estimate(fam, 400, 31)
        assert est.max_ratio <= k


def test_matroid_failure_witness():
    bad = SetFamily(4, [(1, 2), (3, 4)])
    found = matroid_failure_witness(bad)
    assert found is not None
    weighting, run = found
    assert run.ratio > 1
    assert greedy_run(bad, list(weighting), "max").ratio == run.ratio
    # matroids yield no witness
    assert matroid_failure_witness(graham_sloane_matroid(6, 3)) is None


def test_zero_weights_ratio_one():
    fam = star_family(3)
    assert greedy_run(fam, [0, 0, 0, 0], "max").ratio == 1
    assert greedy_run(fam, [0, 0, 0, 0], "min").ratio == 1
