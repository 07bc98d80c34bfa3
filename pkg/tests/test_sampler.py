import math
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from selkow.bounds import caro_wei, selkow_bound
from selkow.graph import (
    CounterexampleSpec,
    complete,
    counterexample_graph,
    cycle,
    empty,
    gnp,
    path,
    star,
)
from selkow.rng import SplitMix64, mix64, trial_seed
from selkow.sampler import (
    Ordering,
    las_vegas_search,
    min_degree_greedy,
    monte_carlo,
    phase_one,
    phase_two,
    residual,
    sample_ordering,
    two_phase,
)

from _oracles import graphs, naive_sets


@st.composite
def graph_and_order(draw, max_n=8):
    g = draw(graphs(max_n=max_n))
    return g, Ordering(tuple(draw(st.permutations(range(g.n)))))


# --- rng / orderings ----------------------------------------------------------------


def test_splitmix64_reference_values():
    # first outputs for seed 1234567 from the published reference implementation
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_trial_seed_is_the_splitmix_stream():
    rng = SplitMix64(99)
    assert [trial_seed(99, i) for i in range(4)] == [rng.next() for _ in range(4)]
    assert mix64(0) == 0


def test_below_rejects_bad_range():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


def test_sample_ordering_trivial_and_deterministic():
    assert sample_ordering(1, 5).rank == (0,)
    assert sample_ordering(0, 5).rank == ()
    assert sample_ordering(3, 77) == sample_ordering(3, 77)


def test_sample_ordering_uniform_n3():
    trials = 60_000
    counts = Counter(sample_ordering(3, trial_seed(2024, t)).rank for t in range(trials))
    assert len(counts) == 6
    p = 1 / 6
    se = math.sqrt(p * (1 - p) / trials)
    for perm, c in counts.items():
        assert abs(c / trials - p) <= 4 * se, perm


def test_ordering_validation_and_restrict():
    with pytest.raises(ValueError):
        Ordering((0, 0, 1))
    order = Ordering.from_sequence([2, 0, 3, 1])
    assert order.rank == (1, 3, 0, 2)
    # kept vertices 1, 2, 3 have ranks 3, 0, 2 -> relabelled 2, 0, 1
    assert order.restrict([3, 1, 2]).rank == (2, 0, 1)


# --- the two phases -----------------------------------------------------------------


def test_phase_one_examples():
    assert phase_one(empty(4), Ordering((2, 0, 3, 1))) == [0, 1, 2, 3]
    assert phase_one(path(3), Ordering((0, 2, 1))) == [0, 2]
    assert phase_one(complete(5), Ordering((3, 1, 4, 0, 2))) == [3]


def test_residual_examples():
    assert residual(path(3), [0])[0] == [2]
    c5 = cycle(5)
    h_vertices, h = residual(c5, [0])
    assert h_vertices == [2, 3] and h.edges() == [(0, 1)]
    # {0, 2} is a maximal independent set of C5
    assert residual(c5, [0, 2])[0] == []


def test_phase_two_examples():
    assert phase_two(empty(3), Ordering((1, 2, 0))) == [0, 1, 2]
    assert phase_two(empty(0), Ordering(())) == []


def test_phase_two_smallest_counterexample():
    spec = CounterexampleSpec(empty(1))
    g = counterexample_graph(spec)
    y, v, w, x = 0, spec.v, spec.w, spec.x
    res = two_phase(g, Ordering.from_sequence([x, y, w, v]))
    assert res.i1 == (x,)
    assert res.h_vertices == (v,)
    assert res.i2 == (v,)


@pytest.mark.parametrize("f", [empty(3), complete(3), path(3), gnp(3, 0.5, 4)])
def test_counterexample_membership_condition(f):
    """v in I2 exactly when x precedes every F-vertex and x < w < v."""
    spec = CounterexampleSpec(f)
    g = counterexample_graph(spec)
    v, w, x = spec.v, spec.w, spec.x
    hits = 0
    for rank in permutations(range(g.n)):
        res = two_phase(g, Ordering(rank))
        expected = rank[x] < rank[w] < rank[v] and all(rank[x] < rank[y] for y in range(f.n))
        assert (v in res.i2) == expected
        hits += expected
    n = g.n
    assert hits == math.comb(n - 1, 2) * math.factorial(n - 3)


def test_two_phase_examples():
    res = two_phase(empty(4), Ordering((3, 1, 0, 2)))
    assert res.union_size == 4 and res.i2 == ()
    res = two_phase(complete(4), Ordering((2, 0, 3, 1)))
    assert res.i1 == (1,) and res.h_vertices == () and res.union_size == 1
    res = two_phase(path(3), Ordering((1, 0, 2)))
    assert (res.i1, res.h_vertices, res.i2, res.union_size) == ((1,), (), (), 1)


@given(graph_and_order())
def test_two_phase_matches_set_definitions(case):
    g, order = case
    res = two_phase(g, order)
    i1, h, i2 = naive_sets(g.adj, order.rank)
    assert set(res.i1) == i1 and set(res.h_vertices) == h and set(res.i2) == i2


@given(graph_and_order())
def test_two_phase_invariants(case):
    g, order = case
    res = two_phase(g, order)
    assert g.is_independent(res.i1)
    assert not set(res.i1) & set(res.i2)
    assert g.is_independent(res.i1 + res.i2)
    assert set(res.i2) <= set(res.h_vertices)
    covered = set(res.i1) | {u for x in res.i1 for u in g.adj[x]}
    assert set(res.h_vertices) == set(range(g.n)) - covered
    for v in res.h_vertices:
        assert not set(g.adj[v]) & set(res.i1)


# --- greedy and Las Vegas -------------------------------------------------------------


def test_min_degree_greedy_examples():
    # picks leaf 1, which deletes the centre; leaves 2 and 3 remain isolated
    assert min_degree_greedy(star(3)) == [1, 2, 3]
    # C5: takes 0, deletes 1 and 4; then 2 (degree 1, smaller id than 3)
    assert min_degree_greedy(cycle(5)) == [0, 2]
    assert min_degree_greedy(empty(4)) == [0, 1, 2, 3]
    assert min_degree_greedy(empty(0)) == []


@given(graphs(max_n=10))
def test_min_degree_greedy_beats_caro_wei(g):
    found = min_degree_greedy(g)
    assert g.is_independent(found)
    assert len(found) >= caro_wei(g)


def test_las_vegas_examples():
    res = las_vegas_search(empty(5))
    assert res.reached and res.trials == 1 and res.best == (0, 1, 2, 3, 4)

    res = las_vegas_search(star(3))
    assert res.target == Fraction(17, 8) and res.threshold == 3
    assert res.reached and res.best == (1, 2, 3)

    res = las_vegas_search(cycle(5))
    assert res.threshold == 2 and res.reached and len(res.best) == 2
    assert cycle(5).is_independent(res.best)


def test_las_vegas_unreachable_target_reports_flag():
    res = las_vegas_search(path(3), target=Fraction(3), max_trials=25, seed=3)
    assert not res.reached and res.trials == 25
    assert len(res.best) == 2


def test_las_vegas_rejects_zero_trials():
    with pytest.raises(ValueError):
        las_vegas_search(path(3), max_trials=0)


@settings(max_examples=40)
@given(graphs(max_n=10), st.integers(0, 2**64 - 1))
def test_las_vegas_returns_independent_sets(g, seed):
    res = las_vegas_search(g, max_trials=50, seed=seed)
    assert g.is_independent(res.best)
    assert res.reached == (len(res.best) >= math.ceil(selkow_bound(g).selkow))


# --- Monte Carlo ----------------------------------------------------------------------


def test_monte_carlo_single_trial():
    g = path(3)
    (r,) = monte_carlo(g, ["e_i1"], trials=1, seed=8)
    expected = len(two_phase(g, sample_ordering(3, trial_seed(8, 0))).i1)
    assert r.mean == expected and r.standard_error == 0.0 and r.trials == 1


def test_monte_carlo_validation():
    with pytest.raises(ValueError, match="unknown estimand"):
        monte_carlo(path(3), ["e_i3"], 10)
    with pytest.raises(ValueError, match="needs a vertex"):
        monte_carlo(path(3), ["p_i2"], 10)
    with pytest.raises(ValueError, match="needs a vertex"):
        monte_carlo(path(3), ["p_h"], 10, vertex=3)
    with pytest.raises(ValueError, match="trials"):
        monte_carlo(path(3), ["e_i1"], 0)


def test_monte_carlo_reproducible_and_worker_independent():
    g = gnp(7, 0.4, 2)
    names = ["e_i1", "e_i2", "e_union", "p_i1", "p_i2", "p_h"]
    a = monte_carlo(g, names, 2000, seed=11, vertex=3)
    b = monte_carlo(g, names, 2000, seed=11, vertex=3)
    c = monte_carlo(g, names, 2000, seed=11, vertex=3, workers=3)
    assert a == b == c
    assert monte_carlo(g, names, 2000, seed=12, vertex=3) != a


def test_monte_carlo_e_i1_near_caro_wei():
    (r,) = monte_carlo(path(3), ["e_i1"], 20_000, seed=5)
    assert abs(float(r.mean - Fraction(4, 3))) <= 4 * r.standard_error


def test_estimate_report_json():
    (r,) = monte_carlo(path(3), ["p_i2"], 10, seed=1, vertex=0)
    out = r.to_json()
    assert out["estimand"] == "p_i2" and out["vertex"] == 0
    assert Fraction(out["mean"]["num"], out["mean"]["den"]) == r.mean
