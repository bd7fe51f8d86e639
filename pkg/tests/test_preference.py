import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FULL, firms_low
from gen import random_arena, random_preference
from imitation_games.errors import UnknownVertex, ValidationError
from imitation_games.preference import (
    Comparison, Preference, compare_sets, lift_preference, project_muller,
)
from imitation_games.strategy import TableTransducer, product


def test_firms_low_orders():
    _, b, _ = firms_low()
    assert compare_sets(b, {1, 3, 5}, {1, 4, 5}) is Comparison.GREATER
    assert compare_sets(b, {1, 3, 5}, {1, 3, 5}) is Comparison.EQUAL
    a = firms_low()[0]
    assert compare_sets(a, FULL, {1, 3, 5}) is Comparison.GREATER
    assert compare_sets(a, {1, 3, 5}, FULL) is Comparison.LESS


def test_catch_all_appended_and_tied():
    p = Preference.from_levels(1, [[{"p"}]])
    assert p.level_count == 2 and p.catch_all_rank == 1
    assert compare_sets(p, {"q"}, {"p", "q"}) is Comparison.EQUAL


def test_catch_all_in_the_middle():
    p = Preference.from_levels(1, [[{"q"}], "others", [{"p", "q"}]])
    assert p.rank({"p"}) == 1 and p.rank({"p", "q"}) == 2


def test_validation():
    with pytest.raises(ValidationError):
        Preference.from_levels(1, [[{"p"}], [{"p"}]])
    with pytest.raises(UnknownVertex):
        Preference.from_levels(1, [[{"z"}]], universe=frozenset("pq"))
    p = Preference.from_levels(1, [[{"p"}]], universe=frozenset("pq"))
    with pytest.raises(UnknownVertex):
        compare_sets(p, {"z"}, {"p"})


def test_project_muller():
    assert project_muller({("p", "m1"), ("q", "m1")}) == {"p", "q"}
    assert project_muller({("p", "m1"), ("p", "m2")}) == {"p"}


def test_lifted_firms():
    _, b, _ = firms_low()
    lifted = lift_preference(b)
    w = {(1, "x"), (3, "y"), (5, "x")}
    w2 = {(2, "x"), (3, "x"), (4, "y"), (6, "x")}
    assert lifted.compare(w, w2) is Comparison.GREATER
    assert lifted.compare({("p", 0)}, {("p", 1)}) is Comparison.EQUAL


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_total_preorder(seed):
    rng = random.Random(seed)
    arena = random_arena(rng, vertices=rng.randint(1, 4))
    pref = random_preference(rng, arena, 1)
    vs = list(arena.vertices)
    subsets = [frozenset(c) for k in range(1, len(vs) + 1) for c in combinations(vs, k)]
    geq = lambda x, y: compare_sets(pref, x, y) is not Comparison.LESS
    for x in subsets:
        assert geq(x, x)
        for y in subsets:
            assert geq(x, y) or geq(y, x)
            for z in subsets:
                if geq(x, y) and geq(y, z):
                    assert geq(x, z)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lift_agrees_with_projection(seed):
    rng = random.Random(seed)
    arena = random_arena(rng, vertices=rng.randint(1, 4))
    pref = random_preference(rng, arena, 1)
    mem = ["s0", "s1", "s2"]
    t = TableTransducer(1, mem, "s0", {(a, m): rng.choice(mem) for a in arena.actions for m in mem},
                        {(v, m): rng.choice(arena.enabled(v)) for v in arena.owned_by(1) for m in mem})
    prod = product(arena, t)
    lifted = lift_preference(pref, prod.vertices)
    vs = list(prod.vertices)[:12]
    for _ in range(50):
        w = rng.sample(vs, rng.randint(1, len(vs)))
        w2 = rng.sample(vs, rng.randint(1, len(vs)))
        assert lifted.compare(w, w2) is compare_sets(pref, project_muller(w), project_muller(w2))
