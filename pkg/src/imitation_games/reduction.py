"""Reduction of a game with imitators to a game among optimisers plus a dummy.

The arena is multiplied with every compiled imitator; vertices that
belonged to imitators go to a single dummy player, who always has exactly
one move there.  Preferences are read through the projection onto base
vertices.  Latest appearance records (LARs) provide the finite memory
used to solve the resulting Muller conditions.
"""
from dataclasses import dataclass

from .arena import Arena, canonical
from .errors import ValidationError
from .imitator import CompiledImitator
from .preference import LiftedPreference
from .strategy import product_all

DUMMY = "#dummy"


class _Hash:
    __slots__ = ()

    def __repr__(self):
        return "#"

    def __reduce__(self):
        return "HASH"


HASH = _Hash()


@dataclass
class ReducedGame:
    base: Arena
    preferences: tuple        # base preferences of players 1..n
    imitators: tuple          # compiled imitators of players r+1..n, in order
    product: Arena            # base x R_{r+1} x ... x R_n, reachable part
    arena: Arena              # same graph, owned by optimisers 1..r and the dummy r+1
    lifted: tuple             # lifted preferences of players 1..r+1

    @property
    def r(self):
        return self.base.optimisers

    @property
    def dummy(self):
        return self.r + 1

    @staticmethod
    def colour(x):
        """Base vertex of a reduced-game vertex."""
        return x[0]

    def dummy_vertices(self):
        return [x for x in self.arena.vertices if self.arena.owner[x] == self.dummy]

    def check(self):
        """Assert the structural guarantees of the construction."""
        for x in self.arena.vertices:
            v = x[0]
            if self.arena.owner[x] == self.dummy:
                if len(self.arena.moves(x)) != 1:
                    raise AssertionError(f"dummy vertex {x!r} has {len(self.arena.moves(x))} moves")
            elif set(self.arena.enabled(x)) != set(self.base.enabled(v)):
                raise AssertionError(f"optimiser vertex {x!r} lost actions")
        return self


def build_reduced_game(arena, preferences, imitator_types):
    """Multiply ``arena`` with the compiled imitators and hand their vertices to a dummy.

    ``imitator_types`` holds one bound :class:`ImitatorType` per imitator,
    for players ``r+1 .. n`` in order.
    """
    r, n = arena.optimisers, arena.n
    owners = [t.owner for t in imitator_types]
    if owners != list(range(r + 1, n + 1)):
        raise ValidationError(f"imitator types must cover players {r + 1}..{n} in order, got {owners}")
    if len(preferences) != n:
        raise ValidationError(f"expected {n} preferences, got {len(preferences)}")
    compiled = tuple(CompiledImitator(t.check(arena), arena) for t in imitator_types)
    prod = product_all(arena, compiled)
    if not compiled:
        # zero imitators: keep the flat tuple shape of product vertices
        vertices = [(v,) for v in arena.reachable()]
        edges = {(x, a): (w,) for x in vertices for a, w in arena.moves(x[0])}
        prod = Arena(arena.players, {x: arena.owner[x[0]] for x in vertices}, edges,
                     (arena.initial,), actions=arena.actions, optimisers=r, vertices=vertices)
    dummy = r + 1
    owner = {x: (arena.owner[x[0]] if arena.owner[x[0]] <= r else dummy) for x in prod.vertices}
    reduced = Arena(tuple(arena.players[:r]) + (DUMMY,), owner, prod.succ, prod.initial,
                    actions=arena.actions, optimisers=r, vertices=prod.vertices)
    universe = frozenset(prod.vertices)
    lifted = tuple(LiftedPreference(p, universe) for p in preferences[:r])
    lifted += (LiftedPreference(preferences[n - 1], universe),)
    return ReducedGame(arena, tuple(preferences), compiled, prod, reduced, lifted)


def initial_lar(vertices):
    """The record ``(#, v1, v2, ...)`` with vertices in canonical order."""
    return (HASH,) + tuple(canonical(vertices))


def lar_update(record, v):
    """Move ``v`` to the front; ``#`` is placed so that exactly the
    vertices that followed ``v`` in the old record still follow ``#``.
    """
    i = record.index(v)
    rest = [x for x in record if x is not HASH and x != v]
    tail = len(record) - i - 1 - (1 if record.index(HASH) > i else 0)
    cut = len(rest) - tail
    return (v,) + tuple(rest[:cut]) + (HASH,) + tuple(rest[cut:])


def hit_set(record):
    """Vertices ahead of ``#``: the latest visit plus everything seen since its previous visit."""
    return frozenset(record[:record.index(HASH)])


def in_lar_space(record, vertices):
    """Membership in L: every vertex and ``#`` exactly once."""
    vertices = set(vertices)
    if len(record) != len(vertices) + 1 or record.count(HASH) != 1:
        return False
    rest = [x for x in record if x is not HASH]
    return len(set(rest)) == len(rest) and set(rest) == vertices
