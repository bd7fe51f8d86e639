"""Two-player Muller games solved through latest appearance records.

A node of the parity game is ``(x, record)`` where ``record`` is the LAR
over vertex colours after visiting ``x``.  With ``h`` vertices ahead of
``#`` the node gets priority ``2h`` when those vertices form an accepted
set and ``2h + 1`` otherwise.
"""
from collections import deque

from ..arena import canonical
from ..reduction import HASH, initial_lar, lar_update
from .parity import ParityGame, solve_parity


class MullerCondition:
    """Winning family for the protagonist, given explicitly or as a predicate on colour sets."""

    def __init__(self, family=None, accepts=None):
        if (family is None) == (accepts is None):
            raise ValueError("give exactly one of family and accepts")
        if family is not None:
            self.family = frozenset(frozenset(s) for s in family)
            if frozenset() in self.family:
                raise ValueError("Muller sets are nonempty")
            self._accepts = self.family.__contains__
        else:
            self.family = None
            self._accepts = accepts

    def __contains__(self, colour_set):
        return self._accepts(frozenset(colour_set))

    def complement(self):
        return MullerCondition(accepts=lambda s: not self._accepts(s))


class LarProduct:
    """Reachable ``(vertex, LAR)`` pairs, starting fresh from every vertex."""

    def __init__(self, arena, colour=None):
        self.arena = arena
        self.colour = colour or (lambda x: x)
        colours = canonical({self.colour(x) for x in arena.vertices})
        self.colours = tuple(colours)
        fresh = initial_lar(colours)
        self.nodes = []
        self.index = {}
        self.edges = []
        self.start = {}
        queue = deque()

        def node(x, rec):
            key = (x, rec)
            k = self.index.get(key)
            if k is None:
                k = len(self.nodes)
                self.index[key] = k
                self.nodes.append(key)
                self.edges.append(None)
                queue.append(k)
            return k

        for x in arena.vertices:
            self.start[x] = node(x, lar_update(fresh, self.colour(x)))
        while queue:
            k = queue.popleft()
            x, rec = self.nodes[k]
            self.edges[k] = [(a, node(y, lar_update(rec, self.colour(y)))) for a, y in arena.moves(x)]
        self.hits = []
        for _, rec in self.nodes:
            h = rec.index(HASH)
            self.hits.append((h, frozenset(rec[:h])))

    def __len__(self):
        return len(self.nodes)

    def parity_game(self, protagonist, condition):
        """Parity game in which player 0 is the protagonist of ``condition``."""
        if not callable(protagonist):
            members = frozenset(protagonist)
            protagonist = members.__contains__
        memo = {}
        priority = []
        for h, hit in self.hits:
            ok = memo.get(hit)
            if ok is None:
                ok = memo[hit] = hit in condition
            priority.append(2 * h if ok else 2 * h + 1)
        owner = [0 if protagonist(x) else 1 for x, _ in self.nodes]
        return ParityGame(self.nodes, owner, priority, self.edges)


def muller_to_parity(arena, protagonist, condition, colour=None):
    """Parity game for ``condition`` on ``arena``; returns it with the LAR product."""
    lar = LarProduct(arena, colour)
    return lar.parity_game(protagonist, condition), lar


class MullerSolution:
    def __init__(self, lar, solution):
        self.lar = lar
        self.parity = solution

    def winner(self, x):
        """0 when the protagonist wins the Muller condition from vertex ``x``."""
        return 0 if self.lar.start[x] in self.parity.regions[0] else 1

    def region(self, player):
        return frozenset(x for x, k in self.lar.start.items() if k in self.parity.regions[player])

    def choice(self, x, record):
        """Winning action at ``(x, record)`` for whoever owns and wins it, else ``None``."""
        k = self.lar.index.get((x, record))
        if k is None:
            return None
        w = self.parity.strategy.get(k)
        return None if w is None else self.parity.game.edge_label[k][w]


def solve_muller(arena, protagonist, condition, colour=None, lar=None):
    lar = lar or LarProduct(arena, colour)
    pg = lar.parity_game(protagonist, condition)
    return MullerSolution(lar, solve_parity(pg))
