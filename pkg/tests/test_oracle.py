import math

import pytest

from noisyspan.graph import UnknownElementError
from noisyspan.instances import gen_grid
from noisyspan.oracle import ErrorModel, NoiseModel, NoisyOracle, invert, query_stats

N = 10_000


def make(kind, p, seed=0):
    g, _, real = gen_grid(3, 3, "snake")
    return NoisyOracle(ErrorModel(kind, p), real, seed), real


def edges_by_class(real):
    yes = min(real.realized)
    no = min(set(real.graph.edge_ids) - real.realized)
    return yes, no


def freq(o, e, trials=N):
    return sum(o.query(e) for _ in range(trials)) / trials


def within_3se(observed, prob, trials=N):
    se = math.sqrt(prob * (1 - prob) / trials)
    return abs(observed - prob) <= 3 * se + 1e-12


def test_error_model_bounds():
    ErrorModel("fn", 0.0)
    ErrorModel(NoiseModel.FALSE_POSITIVE, 0.49)
    with pytest.raises(ValueError):
        ErrorModel("fn", 0.5)
    with pytest.raises(ValueError):
        ErrorModel("two-sided", -0.1)


def test_fn_never_says_yes_for_missing_edge():
    o, real = make("fn", 0.4)
    _, no = edges_by_class(real)
    assert not any(o.query(no) for _ in range(2000))


def test_fp_always_says_yes_for_realized_edge():
    o, real = make("fp", 0.4)
    yes, _ = edges_by_class(real)
    assert all(o.query(yes) for _ in range(2000))


def test_noiseless_two_sided_is_truthful():
    o, real = make("two-sided", 0.0)
    for e in real.graph.edge_ids:
        assert o.query(e) == (e in real)


@pytest.mark.parametrize("kind", ["two-sided", "fn", "fp"])
def test_answer_frequencies_match_model(kind):
    p = 0.3
    o, real = make(kind, p, seed=7)
    yes, no = edges_by_class(real)
    expect_yes = {"two-sided": (1 - p, p), "fn": (1 - p, 0.0), "fp": (1.0, p)}[kind]
    assert within_3se(freq(o, yes), expect_yes[0])
    assert within_3se(freq(o, no), expect_yes[1])


def test_inverted_fp_behaves_like_fn_on_missing_edges():
    p = 0.25
    o, real = make("fp", p, seed=3)
    inv = invert(o)
    yes, no = edges_by_class(real)
    assert not any(inv.query(yes) for _ in range(2000))
    assert within_3se(freq(inv, no), 1 - p)


def test_double_inversion_restores_answers():
    a, real = make("two-sided", 0.3, seed=11)
    b, _ = make("two-sided", 0.3, seed=11)
    twice = invert(invert(b))
    seq = [e for e in real.graph.edge_ids for _ in range(20)]
    assert [a.query(e) for e in seq] == [twice.query(e) for e in seq]


def test_inverted_queries_are_counted():
    o, real = make("fp", 0.1)
    inv = invert(o)
    for _ in range(5):
        inv.query(0)
    assert query_stats(o) == (5, {0: 5})


def test_query_stats_accounting():
    o, real = make("fn", 0.2)
    assert query_stats(o) == (0, {})
    for _ in range(7):
        o.query(3)
    assert query_stats(o) == (7, {3: 7})
    for e in real.graph.edge_ids:
        o.query(e)
    total, per_edge = query_stats(o)
    assert total == sum(per_edge.values()) == 7 + real.graph.m


def test_unknown_edge_rejected():
    o, _ = make("fn", 0.2)
    with pytest.raises(UnknownElementError):
        o.query(999)
    assert o.query_count == 0


def test_same_seed_same_answers():
    a, real = make("two-sided", 0.3, seed=5)
    b, _ = make("two-sided", 0.3, seed=5)
    seq = [e for e in real.graph.edge_ids for _ in range(30)]
    assert [a.query(e) for e in seq] == [b.query(e) for e in seq]


def test_models_consume_randomness_identically():
    # one uniform per query in every model: the flip pattern on a realized edge under
    # two-sided equals the No pattern under FN with the same seed
    two, real = make("two-sided", 0.3, seed=9)
    fn, _ = make("fn", 0.3, seed=9)
    yes, _ = edges_by_class(real)
    assert [two.query(yes) for _ in range(200)] == [fn.query(yes) for _ in range(200)]


def test_streams_are_reproducible_and_distinct():
    o, real = make("two-sided", 0.3, seed=1)
    yes, _ = edges_by_class(real)
    s0 = [o.stream(0).query(yes) for _ in range(1)]
    a = o.stream(0)
    b = o.stream(0)
    c = o.stream(1)
    xs = [a.query(yes) for _ in range(100)]
    assert xs == [b.query(yes) for _ in range(100)]
    assert xs != [c.query(yes) for _ in range(100)]
    # children share the parent's accounting
    assert o.query_count == 301 and s0
