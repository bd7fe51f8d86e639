"""Seeded generators of small random games for tests."""
import random

from imitation_games.arena import Arena
from imitation_games.imitator import ImitatorType
from imitation_games.preference import Preference
from imitation_games.strategy import TableTransducer


def random_arena(rng, vertices=None, actions=None, players=None, optimisers=None):
    k = vertices or rng.randint(1, 6)
    acts = ["a", "b", "c"][:actions or rng.randint(1, 3)]
    n = players or rng.randint(1, 3)
    names = [f"v{i}" for i in range(k)]
    owner = {v: rng.randint(1, n) for v in names}
    edges = []
    for v in names:
        out = rng.sample(acts, rng.randint(1, len(acts)))
        for a in sorted(out):
            edges.append((v, a, rng.choice(names)))
    r = optimisers if optimisers is not None else rng.randint(1, n)
    return Arena([str(i) for i in range(1, n + 1)], owner, edges, names[0], actions=acts, optimisers=r)


def random_transducer(rng, arena, owner, states=None):
    mem = [f"s{i}" for i in range(states or rng.randint(1, 4))]
    update = {(a, m): rng.choice(mem) for a in arena.actions for m in mem}
    move = {(v, m): rng.choice(arena.enabled(v)) for v in arena.owned_by(owner) for m in mem}
    return TableTransducer(owner, mem, mem[0], update, move)


def random_imitator_type(rng, arena, states=None, name="t"):
    mem = [f"m{i}" for i in range(states or rng.randint(1, 2))]
    update = {(a, m): rng.choice(mem) for a in arena.actions for m in mem}
    imitate = {m: rng.randint(1, arena.n) for m in mem}
    fallback = {v: rng.choice(arena.enabled(v)) for v in arena.vertices}
    return ImitatorType(tuple(mem), mem[0], update, fallback, imitate, name=name)


def random_preference(rng, arena, owner, levels=None):
    """A few random vertex sets spread over levels, plus the catch-all somewhere."""
    vs = list(arena.vertices)
    sets = set()
    for _ in range(rng.randint(1, 4)):
        sets.add(frozenset(rng.sample(vs, rng.randint(1, len(vs)))))
    sets = sorted(sets, key=sorted)
    rng.shuffle(sets)
    groups = [[s] for s in sets]
    groups.insert(rng.randint(0, len(groups)), "others")
    return Preference.from_levels(owner, groups, frozenset(vs))


def random_game(rng, vertices=None, players=None, types=2):
    """Arena, preferences and bound imitator types drawn from at most ``types`` definitions."""
    arena = random_arena(rng, vertices=vertices, players=players)
    prefs = [random_preference(rng, arena, i) for i in range(1, arena.n + 1)]
    pool = [random_imitator_type(rng, arena, name=f"t{k}") for k in range(rng.randint(1, types))]
    bound = [rng.choice(pool).bind(j) for j in range(arena.optimisers + 1, arena.n + 1)]
    return arena, prefs, bound


def seeds(count, base=0):
    return [random.Random(base + k) for k in range(count)]
