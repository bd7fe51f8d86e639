"""Imitator types and their compilation into last-move-tracking transducers.

An imitator type ``(M, fallback, imitate, update, m0)`` tells its player
whom to imitate in each memory state.  Imitating player ``i`` means
replaying ``i``'s most recent move when it is enabled at the current
vertex; otherwise the positional fallback is played.
"""
from collections import deque
from dataclasses import dataclass, field, replace

from .arena import UNSET, last_move_of, scc_decomposition, sort_key
from .errors import DisabledAction, StrategyError, UndefinedMove, ValidationError
from .strategy import Transducer


@dataclass(frozen=True)
class ImitatorType:
    memory: tuple
    initial: object
    update: dict = field(hash=False)      # (action, memory) -> memory
    fallback: dict = field(hash=False)    # vertex -> action
    imitate: dict = field(hash=False)     # memory -> player index
    owner: int = None
    name: str = None

    def bind(self, owner):
        """The same type played by player ``owner``."""
        return replace(self, owner=owner)

    def step(self, action, memory):
        try:
            return self.update[(action, memory)]
        except KeyError:
            raise StrategyError(f"imitator memory update undefined for {action!r}, {memory!r}") from None

    def check(self, arena):
        where = f"imitator type {self.name or ''}".strip()
        if self.initial not in self.memory:
            raise ValidationError(f"initial memory {self.initial!r} unknown", where)
        for a in arena.actions:
            for m in self.memory:
                if self.update.get((a, m)) not in self.memory:
                    raise ValidationError(f"memory update undefined or invalid for action {a!r}, memory {m!r}", where)
        for m in self.memory:
            i = self.imitate.get(m)
            if not (isinstance(i, int) and 1 <= i <= arena.n):
                raise ValidationError(f"imitation map undefined or invalid at memory {m!r}", where)
        for v, a in self.fallback.items():
            if v not in arena.owner:
                raise ValidationError(f"fallback defined at unknown vertex {v!r}", where)
            if arena.step(v, a) is None:
                raise ValidationError(f"fallback action {a!r} is not enabled at vertex {v!r}", where)
        if self.owner is not None:
            for v in arena.owned_by(self.owner):
                if v not in self.fallback:
                    raise ValidationError(f"fallback undefined at vertex {v!r} of player {self.owner}", where)
        return self


def advise_imitator(tau, play):
    """Move of the strategy induced by ``tau`` after ``play``."""
    m = tau.initial
    for a in play.actions:
        m = tau.step(a, m)
    here = play.last
    a = last_move_of(play, tau.imitate[m])
    if a is not None and play.arena.step(here, a) is not None:
        return a
    try:
        return tau.fallback[here]
    except KeyError:
        raise UndefinedMove(here, m) from None


class CompiledImitator(Transducer):
    """Transducer over states ``(vertex, memory, last-move registers)``.

    Register ``i`` holds the latest action of player ``i`` or ``UNSET``
    while ``i`` has not moved.  Only states reachable from the initial
    state are ever materialised.
    """

    def __init__(self, tau, arena):
        if tau.owner is None:
            raise ValidationError("imitator type is not bound to a player")
        self.tau = tau
        self.arena = arena
        self.owner = tau.owner
        self.name = tau.name
        self.initial = (arena.initial, tau.initial, (UNSET,) * arena.n)
        self._states = None

    def update(self, action, state):
        v, m, regs = state
        w = self.arena.step(v, action)
        if w is None:
            raise DisabledAction(v, action)
        i = self.arena.owner[v]
        return (w, self.tau.step(action, m), regs[:i - 1] + (action,) + regs[i:])

    def move(self, vertex, state):
        if self.arena.owner[vertex] != self.owner:
            return None
        v, m, regs = state
        if v != vertex:
            raise StrategyError(f"compiled state {state!r} is not at vertex {vertex!r}")
        a = regs[self.tau.imitate[m] - 1]
        if a is not UNSET and self.arena.step(vertex, a) is not None:
            return a
        return self.tau.fallback[vertex]

    def successors(self, state):
        return [self.update(a, state) for a in self.arena.enabled(state[0])]

    @property
    def states(self):
        if self._states is None:
            seen = {self.initial}
            order = [self.initial]
            queue = deque(order)
            while queue:
                s = queue.popleft()
                for t in self.successors(s):
                    if t not in seen:
                        seen.add(t)
                        order.append(t)
                        queue.append(t)
            self._states = tuple(order)
        return self._states

    def state_bound(self):
        """Size of the full state space ``V x M x (A + unset)^n``."""
        a = self.arena
        return len(a.vertices) * len(self.tau.memory) * (len(a.actions) + 1) ** a.n


def compile_imitator(tau, arena):
    tau.check(arena)
    return CompiledImitator(tau, arena)


@dataclass(frozen=True)
class Subtype:
    parent: str
    states: frozenset
    terminal: bool

    def __contains__(self, state):
        return state in self.states

    def memories(self):
        return sorted({s[1] for s in self.states}, key=sort_key)


def subtypes_of(compiled):
    """Strongly connected components of the compiled transducer's transition graph."""
    comps = scc_decomposition(compiled.states, compiled.successors, compiled.initial)
    return [Subtype(compiled.name, c.members, c.terminal) for c in comps]


def subtype_containing(subtypes, states):
    """The unique subtype containing every state in ``states``, else ``None``."""
    states = set(states)
    for st in subtypes:
        if states <= st.states:
            return st
    return None
