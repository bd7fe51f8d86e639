"""Bounded-memory strategies as finite state transducers, and arena products."""
from collections import deque

from .arena import Arena, sort_key
from .errors import DisabledAction, StrategyError, UndefinedMove, ValidationError


class Transducer:
    """Strategy transducer ``(M, update, move, initial)`` for player ``owner``.

    ``update(action, memory)`` is the memory update; ``move(vertex, memory)``
    returns the advised action, or ``None`` where the move function is not
    defined (always the case at vertices of other players).
    """

    owner = None
    initial = None

    def update(self, action, memory):
        raise NotImplementedError

    def move(self, vertex, memory):
        raise NotImplementedError

    def run(self, actions, memory=None):
        m = self.initial if memory is None else memory
        for a in actions:
            m = self.update(a, m)
        return m


class TableTransducer(Transducer):
    """Transducer given by explicit tables; the form read from game files."""

    def __init__(self, owner, memory, initial, update, move):
        self.owner = owner
        self.memory = tuple(memory)
        self.initial = initial
        self.delta = dict(update)
        self.table = dict(move)
        if initial not in self.memory:
            raise ValidationError(f"initial memory {initial!r} not among {list(self.memory)}")

    @classmethod
    def positional(cls, owner, choice, arena=None):
        """Memoryless strategy playing ``choice[v]`` at every owned vertex ``v``."""
        m = "m0"
        actions = arena.actions if arena is not None else sorted({a for a in choice.values()}, key=sort_key)
        return cls(owner, (m,), m, {(a, m): m for a in actions},
                   {(v, m): a for v, a in choice.items()})

    @property
    def memoryless(self):
        return len(self.memory) == 1

    def update(self, action, memory):
        try:
            return self.delta[(action, memory)]
        except KeyError:
            raise StrategyError(f"memory update undefined for action {action!r}, memory {memory!r}") from None

    def move(self, vertex, memory):
        return self.table.get((vertex, memory))

    def check(self, arena):
        """Raise unless the update is total and every defined move is enabled."""
        for a in arena.actions:
            for m in self.memory:
                nxt = self.delta.get((a, m))
                if nxt is None:
                    raise ValidationError(f"memory update undefined for action {a!r}, memory {m!r}")
                if nxt not in self.memory:
                    raise ValidationError(f"memory update leads to unknown state {nxt!r}")
        for (v, m), a in self.table.items():
            if v not in arena.owner:
                raise ValidationError(f"move defined at unknown vertex {v!r}")
            if arena.owner[v] != self.owner:
                raise ValidationError(f"move defined at vertex {v!r} of another player")
            if arena.step(v, a) is None:
                raise DisabledAction(v, a)
        for v in arena.owned_by(self.owner):
            for m in self.memory:
                if (v, m) not in self.table:
                    raise UndefinedMove(v, m)
        return self


def advise(strategy, play):
    """Action the strategy prescribes after ``play``."""
    m = strategy.run(play.actions)
    a = strategy.move(play.last, m)
    if a is None:
        raise UndefinedMove(play.last, m)
    return a


class ProductArena(Arena):
    """Reachable part of ``source x A_1 x ... x A_k``.

    Vertices are flat tuples ``(v, m_1, ..., m_k)`` with ``v`` a vertex of
    ``source``; ``factors`` lists the multiplied transducers in order.
    """

    def __init__(self, source, factors, owner, edges, initial, vertices):
        super().__init__(source.players, owner, edges, initial, actions=source.actions,
                         optimisers=source.optimisers, vertices=vertices)
        self.source = source
        self.factors = tuple(factors)

    @staticmethod
    def base(x):
        return x[0]

    def memory_of(self, x, factor):
        """Memory coordinate of the ``factor``-th multiplied transducer."""
        return x[1 + factor]


def product(arena, transducer):
    """Restrict ``arena`` to plays consistent with ``transducer``.

    Where the move function is defined only the advised edge survives;
    elsewhere every edge survives.  Memory follows the transducer's update.
    """
    if isinstance(arena, ProductArena):
        root, factors = arena.source, arena.factors

        def wrap(x, m):
            return x + (m,)

        def base(x):
            return x[0]
    else:
        root, factors = arena, ()

        def wrap(x, m):
            return (x, m)

        def base(x):
            return x

    start = (arena.initial, transducer.initial)
    seen = {start: wrap(*start)}
    order = [start]
    queue = deque(order)
    edges = {}
    while queue:
        x, m = queue.popleft()
        here = seen[(x, m)]
        advised = transducer.move(base(x), m)
        for a, y in arena.moves(x):
            if advised is not None and a != advised:
                continue
            nxt = (y, transducer.update(a, m))
            if nxt not in seen:
                seen[nxt] = wrap(*nxt)
                order.append(nxt)
                queue.append(nxt)
            edges[(here, a)] = seen[nxt]
        if advised is not None and (here, advised) not in edges:
            raise DisabledAction(base(x), advised)
    vertices = [seen[s] for s in order]
    owner = {v: root.owner[v[0]] for v in vertices}
    return ProductArena(root, factors + (transducer,), owner, edges, vertices[0], vertices)


def product_all(arena, transducers):
    """Left fold of :func:`product`; the empty list yields ``arena`` itself."""
    owners = [t.owner for t in transducers]
    if len(set(owners)) != len(owners):
        raise ValidationError("transducers must have distinct owners")
    out = arena
    for t in transducers:
        out = product(out, t)
    return out


def reachable_memory(arena, transducer):
    """Memory states the transducer can reach along plays of ``arena`` it is consistent with."""
    prod = product(arena, transducer)
    return {x[-1] for x in prod.vertices}
