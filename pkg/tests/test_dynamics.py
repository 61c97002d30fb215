import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbeauty.analysis import phi_infinite
from pbeauty.dynamics import (
    PayoutKind,
    PayoutScheme,
    fitness,
    invasion_series,
    payouts,
    replicator_step,
    simulate,
)
from pbeauty.errors import DomainError
from pbeauty.model import GameConfig, PopulationState

AON = PayoutKind.ALL_OR_NOTHING
INV = PayoutKind.INVERSE_DISTANCE


def freqs(d):
    return PopulationState.from_freqs(d)


def test_scheme_validation():
    with pytest.raises(DomainError):
        PayoutScheme(AON, 0.0)
    with pytest.raises(DomainError):
        PayoutScheme(AON, 1.5)
    with pytest.raises(DomainError):
        PayoutScheme(INV, 0.5, epsilon=0.0)
    assert PayoutScheme("all_or_nothing").kind is AON


def tie_mix(p, m):
    # k=0 guesses c and k=m guesses c p^m; they are equidistant from the
    # target when p (x + (1-x) p^m) = (1 + p^m) / 2
    q = p**m
    return ((1 + q) / (2 * p) - q) / (1 - q)


def test_aon_tie_split():
    p, m = 0.9, 10
    x = tie_mix(p, m)
    assert 0 < x < 1
    out = payouts(freqs({0: x, m: 1 - x}), GameConfig(p, 1.0), PayoutScheme(AON))
    assert out == {0.0: 0.5, 10.0: 0.5}


def test_single_type_payouts():
    cfg = GameConfig(0.6, 50)
    pop = freqs({2: 1.0})
    assert payouts(pop, cfg, PayoutScheme(AON)) == {2.0: 1.0}
    d = abs(50 * 0.6**2 - 50 * 0.6**3)
    eps = 1e-9 * 50
    assert payouts(pop, cfg, PayoutScheme(INV))[2.0] == pytest.approx(1 / (d + eps), rel=1e-14)


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5])
@pytest.mark.parametrize("k,m", [(0, 1), (1, 2.5), (2, 7)])
def test_higher_step_wins_aon_for_small_p(p, k, m):
    cfg = GameConfig(p, 50)
    pop = freqs({k: 0.5, k + m: 0.5})
    t = p * 0.5 * (50 * p**k + 50 * p ** (k + m))
    assert abs(50 * p ** (k + m) - t) < abs(50 * p**k - t)
    out = payouts(pop, cfg, PayoutScheme(AON))
    assert out[float(k + m)] == 1.0 and out[float(k)] == 0.0


def test_extinct_types_get_nothing():
    cfg = GameConfig(0.5, 50)
    pop = freqs({0: 0.0, 1: 0.4, 30: 0.6})
    assert payouts(pop, cfg, PayoutScheme(AON))[0.0] == 0.0
    assert payouts(pop, cfg, PayoutScheme(INV))[0.0] == 0.0


def test_fitness_baseline():
    cfg = GameConfig(0.4, 50)
    f = fitness(freqs({1: 0.9, 3: 0.1}), cfg, PayoutScheme(AON, 0.25))
    assert f == {1.0: 0.75, 3.0: 1.0}


def test_replicator_step_hand_evaluation():
    cfg = GameConfig(0.4, 50)
    pop = freqs({1: 0.9, 3: 0.1})
    # guesses 20 and 3.2, target 0.4 * 18.32 = 7.328; k=3 is closer
    new = replicator_step(pop, cfg, PayoutScheme(AON, 1.0))
    assert new.weights == (0.0, 1.0)
    new = replicator_step(pop, cfg, PayoutScheme(AON, 0.5))
    # fitness 0.5 and 1.0: x3' = 0.1 / (0.9 * 0.5 + 0.1)
    assert new.weights[1] == pytest.approx(0.1 / 0.55, rel=1e-15)
    new = replicator_step(pop, cfg, PayoutScheme(INV, 0.5, epsilon=1e-9))
    d1, d3 = 20 - 7.328, 7.328 - 3.2
    f1 = 0.5 + 0.5 * (1 / (d1 + 1e-9)) / (1 / (d3 + 1e-9))
    assert new.weights[1] == pytest.approx(0.1 / (0.9 * f1 + 0.1), rel=1e-12)


def test_homogeneous_fixed_point():
    cfg = GameConfig(0.7, 50)
    pop = freqs({3: 1.0})
    for kind in PayoutKind:
        assert replicator_step(pop, cfg, PayoutScheme(kind, 1.0)).weights == (1.0,)


def test_uniform_payouts_fixed_point():
    # two types equidistant from the target get equal AON payouts
    p = 0.9
    x = tie_mix(p, 10)
    pop = freqs({0: x, 10: 1 - x})
    new = replicator_step(pop, GameConfig(p, 1.0), PayoutScheme(AON, 0.7))
    assert new.weights == pytest.approx(pop.weights, abs=1e-15)


@settings(max_examples=100)
@given(
    ks=st.lists(st.floats(0, 15), min_size=1, max_size=6, unique=True),
    raw=st.lists(st.floats(0.0, 1.0), min_size=6, max_size=6),
    p=st.floats(0.05, 0.95),
    s=st.floats(0.01, 1.0),
    kind=st.sampled_from(list(PayoutKind)),
)
def test_step_invariants(ks, raw, p, s, kind):
    weights = raw[: len(ks)]
    weights[0] += 0.1
    total = math.fsum(weights)
    pop = freqs({k: w / total for k, w in zip(ks, weights)})
    new = replicator_step(pop, GameConfig(p, 50), PayoutScheme(kind, s))
    assert abs(math.fsum(new.weights) - 1) <= 1e-9
    assert all(x >= 0 for x in new.weights)
    for old, nxt in zip(pop.weights, new.weights):
        if old == 0:
            assert nxt == 0


def test_simulate_already_fixated():
    tr = simulate(freqs({2: 1.0}), GameConfig(0.5), PayoutScheme())
    assert tr.fixation.generation == 0
    assert tr.fixation.winner.k == 2.0
    assert len(tr.steps) == 1


def test_simulate_invader_predicted_by_phi():
    for p, m in ((0.5, 4), (0.65, 2), (0.8, 5), (0.9, 10)):
        cfg = GameConfig(p, 50)
        tr = simulate(freqs({1: 0.99, 1 + m: 0.01}), cfg, PayoutScheme(INV, 0.3))
        expected = 1.0 + m if phi_infinite(p, m) > 0 else 1.0
        assert tr.fixation.winner.k == expected


def test_simulate_records_targets():
    cfg = GameConfig(0.6, 50)
    tr = simulate(freqs({0: 0.5, 2: 0.5}), cfg, PayoutScheme(AON, 0.5))
    assert len(tr.target_series) == len(tr.steps)
    for xs, t in zip(tr.steps, tr.target_series):
        assert t == pytest.approx(0.6 * (xs[0] * 50 + xs[1] * 50 * 0.36), rel=1e-14)


def test_simulate_max_steps():
    cfg = GameConfig(0.6, 50)
    tr = simulate(freqs({0: 0.5, 2: 0.5}), cfg, PayoutScheme(INV, 0.01), max_steps=3)
    assert tr.fixation is None
    assert len(tr.steps) == 4


def test_simulate_validation():
    pop = freqs({0: 0.5, 2: 0.5})
    with pytest.raises(DomainError):
        simulate(pop, GameConfig(0.5), PayoutScheme(), max_steps=0)
    with pytest.raises(DomainError):
        simulate(pop, GameConfig(0.5), PayoutScheme(), fixation_threshold=0.5)


@pytest.mark.parametrize("top", [6, 10])
def test_large_gap_winner_depends_on_initial_conditions(top):
    cfg = GameConfig(0.7, 50)
    ks = [0, 1, 2, top]
    winners = set()
    for init in ((0.25, 0.25, 0.25, 0.25), (0.05, 0.05, 0.1, 0.8), (0.1, 0.2, 0.3, 0.4)):
        for kind in PayoutKind:
            tr = simulate(freqs(dict(zip(ks, init))), cfg, PayoutScheme(kind, 0.5))
            winners.add(tr.fixation.winner.k)
    assert winners == {2.0, float(top)}


def test_invasion_series():
    cfg = GameConfig(0.7, 50)
    s = invasion_series(1, 3, 10, cfg)
    assert len(s) == 11
    assert s[0] == pytest.approx(50 * 0.7**2, rel=1e-15)
    assert s[-1] == pytest.approx(50 * 0.7**5, rel=1e-15)
    assert all(a > b for a, b in zip(s, s[1:]))
    s = invasion_series(0, 1, 2, GameConfig(0.5, 1))
    assert len(s) == 3 and s[0] > s[1] > s[2]
    with pytest.raises(DomainError):
        invasion_series(0, 1, 1, cfg)
