import sys

import pytest

from imitation_games.arena import Arena
from imitation_games.imitator import ImitatorType
from imitation_games.preference import Preference


def a2(optimisers=1):
    return Arena(("1", "2"), {"p": 1, "q": 2},
                 [("p", "a", "q"), ("p", "b", "p"), ("q", "a", "p"), ("q", "b", "q")],
                 "p", actions=("a", "b"), optimisers=optimisers)


def ring3(optimisers=1):
    return Arena(("1", "2", "3"), {"u1": 1, "u2": 2, "u3": 3},
                 [("u1", "a", "u2"), ("u2", "a", "u3"), ("u3", "a", "u1")],
                 "u1", actions=("a",), optimisers=optimisers)


FIRMS_EDGES = [(1, "a", 3), (1, "b", 4), (2, "a", 3), (2, "b", 4), (3, "a", 5), (3, "b", 6),
               (4, "a", 5), (4, "b", 2), (5, "a", 1), (5, "b", 2), (6, "a", 4), (6, "b", 1)]


def firms(optimisers=1):
    return Arena(("A", "B", "C"), {1: 1, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3}, FIRMS_EDGES, 1,
                 actions=("a", "b"), optimisers=optimisers)


FULL = frozenset(range(1, 7))


def firms_low():
    return [Preference.from_levels(1, [[FULL], "others"]),
            Preference.from_levels(2, [[{1, 3, 5}], [{1, 4, 5}], [{1, 3, 4, 5}], [{2, 3, 4, 6}], "others"]),
            Preference.from_levels(3, [[{1, 3, 5}], [{1, 4, 5}], [{2, 3, 4, 6}], [{1, 3, 4, 5}], "others"])]


def firms_high():
    return [Preference.from_levels(i, [[FULL], "others"]) for i in (1, 2, 3)]


def copy_type(arena, target, fallback=None, name="copy"):
    """Single-state type that always imitates ``target``."""
    fb = fallback if fallback is not None else {v: arena.enabled(v)[0] for v in arena.vertices}
    return ImitatorType(("m",), "m", {(a, "m"): "m" for a in arena.actions}, fb, {"m": target}, name=name)


def phase_type(arena, first, then, name="phase"):
    """Imitate ``first`` for two moves, then ``then`` forever (three-state counter)."""
    upd = {}
    for a in arena.actions:
        upd[(a, "c0")] = "c1"
        upd[(a, "c1")] = "c2"
        upd[(a, "c2")] = "c2"
    fb = {v: arena.enabled(v)[0] for v in arena.vertices}
    return ImitatorType(("c0", "c1", "c2"), "c0", upd, fb, {"c0": first, "c1": first, "c2": then}, name=name)


def rotation_type(arena, first, then, name="rotation"):
    """Imitate ``first`` for two moves, then ``then`` for one, and repeat."""
    upd = {(a, m): nxt for a in arena.actions for m, nxt in (("c0", "c1"), ("c1", "c2"), ("c2", "c0"))}
    fb = {v: arena.enabled(v)[0] for v in arena.vertices}
    return ImitatorType(("c0", "c1", "c2"), "c0", upd, fb, {"c0": first, "c1": first, "c2": then}, name=name)


def a2_prefs():
    """Optimiser 1 wants alternation most; 2 dislikes it most."""
    return [Preference.from_levels(1, [[{"p", "q"}], [{"p"}], [{"q"}], "others"]),
            Preference.from_levels(2, [[{"q"}], "others", [{"p", "q"}]])]


@pytest.fixture
def fix_a2():
    return a2()


@pytest.fixture
def fix_ring3():
    return ring3()


@pytest.fixture
def fix_firms():
    return firms()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
