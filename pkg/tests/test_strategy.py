import random

from hypothesis import given, settings, strategies as st

from conftest import a2, ring3
from gen import random_arena, random_transducer
from imitation_games.arena import FinitePlay, apply_word
from imitation_games.errors import UndefinedMove
from imitation_games.strategy import TableTransducer, advise, product, product_all

import pytest


def toggler():
    upd = {(a, m): ("s1" if m == "s0" else "s0") for a in "ab" for m in ("s0", "s1")}
    return TableTransducer(1, ("s0", "s1"), "s0", upd, {("p", "s0"): "a", ("p", "s1"): "b"})


def test_advise():
    arena = a2()
    pos = TableTransducer.positional(1, {"p": "a"}, arena)
    assert advise(pos, FinitePlay.of(arena, "p")) == "a"
    assert advise(toggler(), FinitePlay.of(arena, "p", "aa")) == "a"
    assert advise(toggler(), FinitePlay.of(arena, "p", "aba")) == "b"
    with pytest.raises(UndefinedMove):
        advise(pos, FinitePlay.of(arena, "p", "a"))


def test_product_positional():
    arena = a2()
    prod = product(arena, TableTransducer.positional(1, {"p": "a"}, arena))
    assert {x[0] for x in prod.vertices} == {"p", "q"}
    assert prod.enabled(("p", "m0")) == ("a",)
    assert prod.enabled(("q", "m0")) == ("a", "b")


def test_product_toggler():
    prod = product(a2(), toggler())
    assert len(prod.vertices) == 4
    assert prod.moves(("p", "s0")) == (("a", ("q", "s1")),)
    assert prod.moves(("p", "s1")) == (("b", ("p", "s0")),)


def test_product_all_examples():
    arena = a2()
    s1 = TableTransducer.positional(1, {"p": "a"}, arena)
    s2 = TableTransducer.positional(2, {"q": "a"}, arena)
    full = product_all(arena, [s1, s2])
    assert all(len(full.moves(x)) == 1 for x in full.vertices)
    assert product_all(arena, []) is arena
    r = ring3()
    t = product_all(r, [TableTransducer.positional(1, {"u1": "a"}, r), TableTransducer.positional(2, {"u2": "a"}, r)])
    assert all(len(t.moves(x)) == 1 for x in t.vertices)
    assert {x[0] for x in t.vertices} == {"u1", "u2", "u3"}
    assert full.factors == (s1, s2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_no_dead_ends_and_projection(seed):
    rng = random.Random(seed)
    arena = random_arena(rng, vertices=rng.randint(1, 8))
    owners = rng.sample(range(1, arena.n + 1), rng.randint(1, arena.n))
    ts = [random_transducer(rng, arena, i) for i in owners]
    prod = product_all(arena, ts)
    for x in prod.vertices:
        assert prod.moves(x)
        for a, y in prod.moves(x):
            assert arena.step(x[0], a) == y[0]
            for k, t in enumerate(ts):
                assert y[1 + k] == t.update(a, x[1 + k])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_plays_are_consistent_plays(seed):
    """Bounded unrolling: product paths project to consistent plays and vice versa."""
    rng = random.Random(seed)
    arena = random_arena(rng, vertices=rng.randint(1, 4), actions=2)
    t = random_transducer(rng, arena, 1, states=2)
    prod = product(arena, t)

    def consistent(word):
        m = t.initial
        v = arena.initial
        for a in word:
            g = t.move(v, m) if arena.owner[v] == 1 else None
            if g is not None and g != a:
                return False
            v = arena.step(v, a)
            if v is None:
                return False
            m = t.update(a, m)
        return True

    frontier = [((), prod.initial)]
    for _ in range(6):
        nxt = []
        for word, x in frontier:
            for a, y in prod.moves(x):
                nxt.append((word + (a,), y))
        frontier = nxt
    words = {w for w, _ in frontier}
    for w, y in frontier:
        assert consistent(w) and apply_word(arena, arena.initial, w) == y[0]
    # every consistent word of length 6 appears
    def extend(prefix):
        if len(prefix) == 6:
            yield prefix
            return
        for a in arena.actions:
            if consistent(prefix + (a,)):
                yield from extend(prefix + (a,))
    assert set(extend(())) == words
