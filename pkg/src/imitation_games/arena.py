"""Game arenas: player-owned vertices joined by action-labelled edges.

An arena never has two edges with the same label leaving one vertex and
never has a dead end.  Vertices, actions and players are opaque hashable
identifiers; players are addressed by 1-based index, optimisers first.
"""
from collections import deque
from dataclasses import dataclass

import networkx as nx

from .errors import (
    DeadEnd,
    DisabledAction,
    DuplicateActionEdge,
    UnknownAction,
    UnknownOwner,
    UnknownVertex,
    ValidationError,
)


class _Unset:
    __slots__ = ()

    def __repr__(self):
        return "-"

    def __reduce__(self):
        return "UNSET"


UNSET = _Unset()


def sort_key(x):
    """Total order over the nested identifiers used as vertices and memory states."""
    if isinstance(x, tuple):
        return (3, tuple(sort_key(e) for e in x))
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, frozenset):
        return (4, tuple(sorted(sort_key(e) for e in x)))
    if x is None or x is UNSET:
        return (-1,)
    return (2, repr(x))


def canonical(items):
    return sorted(items, key=sort_key)


class Arena:
    """Initialised n-player game arena.

    ``owner`` maps every vertex to a player index in ``1..len(players)``;
    ``edges`` is either a mapping ``(vertex, action) -> target`` or an
    iterable of ``(vertex, action, target)`` triples.
    """

    def __init__(self, players, owner, edges, initial, actions=None,
                 optimisers=None, vertices=None):
        self.players = tuple(players)
        n = len(self.players)
        self.optimisers = n if optimisers is None else int(optimisers)
        if not 1 <= self.optimisers <= n:
            raise ValidationError(f"optimiser count {self.optimisers} outside 1..{n}")
        self.owner = dict(owner)
        self.vertices = tuple(vertices) if vertices is not None else tuple(self.owner)
        for v in self.vertices:
            if v not in self.owner:
                raise UnknownOwner(None, v)
        for v, i in self.owner.items():
            if not (isinstance(i, int) and 1 <= i <= n):
                raise UnknownOwner(i, v)

        if hasattr(edges, "items"):
            triples = [(v, a, w) for (v, a), w in edges.items()]
        else:
            triples = list(edges)
        self.succ = {}
        seen_actions = []
        for v, a, w in triples:
            if v not in self.owner:
                raise UnknownVertex(v, "edge source")
            if w not in self.owner:
                raise UnknownVertex(w, "edge target")
            if (v, a) in self.succ:
                raise DuplicateActionEdge(v, a)
            self.succ[(v, a)] = w
            if a not in seen_actions:
                seen_actions.append(a)

        if actions is None:
            self.actions = tuple(seen_actions)
        else:
            self.actions = tuple(actions)
            known = set(self.actions)
            for a in seen_actions:
                if a not in known:
                    raise UnknownAction(a)
        order = {a: k for k, a in enumerate(self.actions)}

        moves = {v: [] for v in self.vertices}
        for (v, a), w in self.succ.items():
            moves[v].append((a, w))
        self._moves = {v: tuple(sorted(ms, key=lambda m: order[m[0]])) for v, ms in moves.items()}
        for v in self.vertices:
            if not self._moves[v]:
                raise DeadEnd(v)

        if initial not in self.owner:
            raise UnknownVertex(initial, "initial position")
        self.initial = initial

    @property
    def n(self):
        return len(self.players)

    def moves(self, v):
        """Outgoing ``(action, target)`` pairs of ``v`` in action order."""
        return self._moves[v]

    def enabled(self, v):
        return tuple(a for a, _ in self._moves[v])

    def step(self, v, a):
        """``v[a]``, or ``None`` when ``a`` is not enabled at ``v``."""
        return self.succ.get((v, a))

    def successors(self, v):
        return [w for _, w in self._moves[v]]

    def owned_by(self, i):
        return [v for v in self.vertices if self.owner[v] == i]

    def player_index(self, name):
        try:
            return self.players.index(name) + 1
        except ValueError:
            raise UnknownOwner(name) from None

    def is_optimiser(self, i):
        return i <= self.optimisers

    def edge_list(self):
        return [(v, a, w) for v in self.vertices for a, w in self._moves[v]]

    def with_optimisers(self, r):
        """Same arena with a different optimiser/imitator split."""
        return Arena(self.players, self.owner, self.succ, self.initial,
                     actions=self.actions, optimisers=r, vertices=self.vertices)

    def with_initial(self, v):
        return Arena(self.players, self.owner, self.succ, v,
                     actions=self.actions, optimisers=self.optimisers, vertices=self.vertices)

    def reachable(self, start=None):
        start = self.initial if start is None else start
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, w in self._moves[v]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return (f"{type(self).__name__}(players={len(self.players)}, "
                f"vertices={len(self.vertices)}, edges={len(self.succ)})")


def validate_arena(raw):
    """Build an :class:`Arena` from a plain description.

    ``raw`` has keys ``players``, ``optimisers``, ``vertices`` (list of
    ``[id, owner-name]``), ``edges`` (list of ``[src, action, dst]``),
    ``initial`` and optionally ``actions``.
    """
    players = list(raw["players"])
    if len(set(players)) != len(players):
        raise ValidationError("duplicate player identifiers", "players")
    index = {p: k + 1 for k, p in enumerate(players)}
    owner = {}
    order = []
    for entry in raw["vertices"]:
        v, who = entry
        if who not in index:
            raise UnknownOwner(who, v)
        if v in owner:
            raise ValidationError(f"vertex {v!r} listed twice", "vertices")
        owner[v] = index[who]
        order.append(v)
    edges = [tuple(e) for e in raw["edges"]]
    return Arena(players, owner, edges, raw["initial"], actions=raw.get("actions"),
                 optimisers=raw.get("optimisers"), vertices=order)


def apply_word(arena, v, word):
    """``v[u]``: the vertex reached by following ``word`` from ``v``, or ``None``."""
    for a in word:
        v = arena.step(v, a)
        if v is None:
            return None
    return v


@dataclass(frozen=True)
class FinitePlay:
    """A finite play: start vertex plus an enabled action sequence."""

    arena: Arena
    start: object
    actions: tuple
    trace: tuple

    @classmethod
    def of(cls, arena, start, actions=()):
        if start not in arena.owner:
            raise UnknownVertex(start)
        actions = tuple(actions)
        trace = [start]
        for a in actions:
            w = arena.step(trace[-1], a)
            if w is None:
                raise DisabledAction(trace[-1], a)
            trace.append(w)
        return cls(arena, start, actions, tuple(trace))

    @property
    def last(self):
        return self.trace[-1]

    def extend(self, a):
        w = self.arena.step(self.last, a)
        if w is None:
            raise DisabledAction(self.last, a)
        return FinitePlay(self.arena, self.start, self.actions + (a,), self.trace + (w,))

    def __len__(self):
        return len(self.actions)


def last_move_of(play, i):
    """Most recent action chosen by player ``i`` along ``play``, or ``None``."""
    owner = play.arena.owner
    for k in range(len(play.actions) - 1, -1, -1):
        if owner[play.trace[k]] == i:
            return play.actions[k]
    return None


@dataclass(frozen=True)
class Lasso:
    """Eventually periodic play: ``stem`` then ``cycle`` repeated forever.

    ``stem`` holds vertices ``v0 .. vs`` (``vs`` is the cycle entry) and
    ``cycle`` holds ``c0 .. ck`` with ``c0 == ck``.
    """

    stem: tuple
    stem_actions: tuple
    cycle: tuple
    cycle_actions: tuple

    @property
    def terminal_set(self):
        return frozenset(self.cycle)

    def project(self, fn):
        return Lasso(tuple(fn(v) for v in self.stem), self.stem_actions,
                     tuple(fn(v) for v in self.cycle), self.cycle_actions)

    def unroll(self, repeats):
        """Vertex sequence of the stem followed by ``repeats`` cycle traversals."""
        seq = list(self.stem)
        for _ in range(repeats):
            seq.extend(self.cycle[1:])
        return seq


def lasso_from(arena, start=None):
    """Walk a graph in which every vertex has out-degree one until a vertex repeats."""
    v = arena.initial if start is None else start
    seen = {}
    trace = [v]
    acts = []
    while v not in seen:
        seen[v] = len(trace) - 1
        moves = arena.moves(v)
        if len(moves) != 1:
            raise ValueError(f"vertex {v!r} has {len(moves)} moves; profile is not full")
        a, v = moves[0]
        acts.append(a)
        trace.append(v)
    k = seen[v]
    return Lasso(tuple(trace[:k + 1]), tuple(acts[:k]), tuple(trace[k:]), tuple(acts[k:]))


@dataclass(frozen=True)
class SCC:
    members: frozenset
    reachable: bool
    terminal: bool
    # single vertex without a self-loop: cannot be visited infinitely often
    trivial: bool = False

    def __contains__(self, v):
        return v in self.members

    def __len__(self):
        return len(self.members)


def scc_decomposition(nodes, successors, start=None):
    """Maximal strongly connected components in canonical order.

    ``successors`` maps a node to an iterable of nodes.  Components are
    flagged as reachable from ``start`` (all are, when ``start`` is None)
    and as terminal when no edge leaves them.
    """
    nodes = list(nodes)
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    for v in nodes:
        for w in successors(v):
            g.add_edge(v, w)
    reach = None if start is None else nx.descendants(g, start) | {start}
    out = []
    for comp in nx.strongly_connected_components(g):
        members = frozenset(comp)
        terminal = all(w in members for v in members for w in g.successors(v))
        v = next(iter(members))
        trivial = len(members) == 1 and not g.has_edge(v, v)
        out.append(SCC(members, reach is None or bool(members & reach), terminal, trivial))
    out.sort(key=lambda c: sort_key(min(c.members, key=sort_key)))
    return out


def arena_sccs(arena, start=None):
    return scc_decomposition(arena.vertices, arena.successors,
                             arena.initial if start is None else start)
