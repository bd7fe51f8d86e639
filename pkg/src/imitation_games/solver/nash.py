"""Equilibria of reduced games and their transfer back to the original game.

Equilibrium outcomes are found by the folk construction for turn-based
games with prefix-independent objectives: a play is sustainable when
every vertex a deviation can lead to lies where the other players can
hold the deviator to an outcome no better than the play's.  The witness
profile follows the play and, after a deviation, switches for good to
the coalition strategy punishing the deviator.
"""
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from ..arena import Lasso, sort_key
from ..errors import NoCandidateFound
from ..reduction import initial_lar, lar_update
from ..strategy import Transducer, reachable_memory
from .muller import LarProduct, MullerCondition, solve_muller
from .oracle import DEFAULT_ORACLE_BOUND, achievable_outcomes, check_deviations


class Punisher:
    """Solves, per optimiser ``i`` and level ``l``, the game where ``i`` tries to
    reach an outcome of rank at most ``l`` against everyone else.
    """

    def __init__(self, rg):
        self.rg = rg
        self.lar = LarProduct(rg.arena, rg.colour)
        self.fresh = initial_lar(self.lar.colours)
        self._solutions = {}

    def solution(self, i, level):
        key = (i, level)
        sol = self._solutions.get(key)
        if sol is None:
            pref = self.rg.preferences[i - 1]
            owner = self.rg.arena.owner
            cond = MullerCondition(accepts=lambda s: pref.rank(s) <= level)
            sol = solve_muller(self.rg.arena, lambda x: owner[x] == i, cond, lar=self.lar)
            self._solutions[key] = sol
        return sol

    def forcing_region(self, i, level):
        """Vertices from which ``i`` can force rank ``<= level``."""
        if level >= self.rg.preferences[i - 1].level_count - 1:
            return frozenset(self.rg.arena.vertices)
        if level < 0:
            return frozenset()
        return self.solution(i, level).region(0)

    def value(self, i, x):
        """Best rank player ``i`` can guarantee from ``x``."""
        worst = self.rg.preferences[i - 1].level_count - 1
        for level in range(worst):
            if x in self.forcing_region(i, level):
                return level
        return worst

    def start_record(self, x):
        return lar_update(self.fresh, self.rg.colour(x))

    def punish_memory(self, i, x):
        """Coalition memory on entering ``x`` after a deviation by ``i``."""
        return ("punish", i, self.value(i, x), x, self.start_record(x))

    def coalition_action(self, i, threshold, x, record):
        """Move at ``(x, record)`` keeping ``i`` from ranks below ``threshold``."""
        if threshold > 0:
            a = self.solution(i, threshold - 1).choice(x, record)
            if a is not None:
                return a
        return self.rg.arena.enabled(x)[0]


@dataclass(frozen=True)
class PunishmentValue:
    player: int
    rank: int
    level: tuple


def punishment_value(rg, i, punisher=None):
    punisher = punisher or Punisher(rg)
    rank = punisher.value(i, rg.arena.initial)
    return PunishmentValue(i, rank, rg.preferences[i - 1].levels[rank])


class _Plan:
    """Shared knowledge of a grim-trigger profile."""

    def __init__(self, rg, lasso, ranks, punisher):
        self.rg = rg
        self.arena = rg.arena
        self.lasso = lasso
        self.ranks = ranks
        self.punisher = punisher
        steps = list(zip(lasso.stem[:-1], lasso.stem_actions))
        steps += list(zip(lasso.cycle[:-1], lasso.cycle_actions))
        self.steps = steps
        self.loop = len(lasso.stem_actions)


# memory after a move the reduced arena does not allow, i.e. an imitator
# breaking its type; only seen while intermediate products are explored
OFF = ("off",)


class GrimTrigger(Transducer):
    """Follow the agreed lasso; after a deviation by ``i`` punish ``i`` forever.

    Memory is ``("follow", k)`` with ``k`` the position along the lasso, or
    ``("punish", i, t, x, record)``: ``i`` is held to ranks ``>= t`` (its
    punishment value where the deviation landed), ``x`` is the current
    vertex and ``record`` the LAR used by the punishing strategy.
    """

    def __init__(self, plan, owner, initial=None):
        self.plan = plan
        self.owner = owner
        self.initial = ("follow", 0) if initial is None else initial

    def update(self, action, memory):
        plan = self.plan
        if memory == OFF:
            return OFF
        if memory[0] == "follow":
            k = memory[1]
            x, expected = plan.steps[k]
            if action == expected:
                k += 1
                return ("follow", plan.loop if k == len(plan.steps) else k)
            y = plan.arena.step(x, action)
            if y is None:
                return OFF
            return plan.punisher.punish_memory(plan.arena.owner[x], y)
        _, i, t, x, record = memory
        y = plan.arena.step(x, action)
        if y is None:
            return OFF
        return ("punish", i, t, y, lar_update(record, plan.rg.colour(y)))

    def move(self, vertex, memory):
        plan = self.plan
        if memory == OFF:
            return None
        if plan.arena.owner[vertex] != self.owner:
            return None
        if memory[0] == "follow":
            return plan.steps[memory[1]][1]
        _, i, t, x, record = memory
        if i == self.owner:
            # only reached after our own deviation; any move will do
            return plan.arena.enabled(x)[0]
        return plan.punisher.coalition_action(i, t, x, record)


@dataclass
class Profile:
    rg: object
    strategies: dict          # optimiser index -> transducer over the reduced arena
    outcome: Lasso            # on the reduced arena
    ranks: dict = field(default_factory=dict)

    @property
    def outcome_set(self):
        return frozenset(self.rg.colour(x) for x in self.outcome.cycle)

    def transducers(self):
        return [self.strategies[i] for i in sorted(self.strategies)]


def joint_key(rg, x_set):
    ranks = tuple(rg.preferences[i - 1].rank(x_set) for i in range(1, rg.r + 1))
    return (sum(ranks), ranks, sort_key(x_set))


def _bfs_path(arena, allowed, src, goals):
    """Shortest action path from ``src`` to any vertex in ``goals`` inside ``allowed``."""
    parent = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x in goals and x != src:
            break
        for a, y in arena.moves(x):
            if y in allowed and y not in parent:
                parent[y] = (x, a)
                queue.append(y)
    else:
        return None
    verts, acts = [x], []
    while parent[verts[-1]] is not None:
        p, a = parent[verts[-1]]
        verts.append(p)
        acts.append(a)
    return verts[::-1], acts[::-1]


def _closed_walk(arena, colour, comp):
    """Closed walk inside ``comp`` from its least vertex, meeting every colour of ``comp``."""
    c0 = min(comp, key=sort_key)
    verts, acts = [c0], []
    missing = {colour(x) for x in comp} - {colour(c0)}
    while missing:
        goals = {x for x in comp if colour(x) in missing}
        vs, as_ = _bfs_path(arena, comp, verts[-1], goals)
        verts += vs[1:]
        acts += as_
        missing -= {colour(x) for x in vs}
    if verts[-1] == c0:
        moves = [(a, y) for a, y in arena.moves(c0) if y in comp]
        a, y = next(((a, y) for a, y in moves if y == c0), moves[0])
        verts.append(y)
        acts.append(a)
        if y == c0:
            return verts, acts
    vs, as_ = _bfs_path(arena, comp, verts[-1], {c0})
    return verts + vs[1:], acts + as_


def _lasso_for(arena, colour, allowed, x_set):
    """Least lasso from the initial vertex inside ``allowed`` whose cycle projects onto ``x_set``."""
    start = arena.initial
    reach = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in arena.successors(x):
            if y in allowed and y not in reach:
                reach.add(y)
                queue.append(y)
    part = [x for x in reach if colour(x) in x_set]
    g = nx.DiGraph()
    g.add_nodes_from(part)
    for x in part:
        for y in arena.successors(x):
            if y in g:
                g.add_edge(x, y)
    best = None
    for comp in nx.strongly_connected_components(g):
        if len(comp) == 1:
            (x,) = comp
            if not g.has_edge(x, x):
                continue
        if frozenset(colour(x) for x in comp) != x_set:
            continue
        cyc, cyc_acts = _closed_walk(arena, colour, comp)
        key = tuple(sort_key(x) for x in cyc)
        if best is None or key < best[0]:
            best = (key, cyc, cyc_acts)
    if best is None:
        return None
    _, cyc, cyc_acts = best
    if start == cyc[0]:
        stem, stem_acts = [start], []
    else:
        stem, stem_acts = _bfs_path(arena, reach, start, {cyc[0]})
    return Lasso(tuple(stem), tuple(stem_acts), tuple(cyc), tuple(cyc_acts))


def find_nash(rg, punisher=None, max_candidates=None):
    """Nash equilibrium of the reduced game in grim-trigger strategies.

    Candidate outcomes are tried best first by the sum of optimiser ranks,
    then the rank vector, then canonical set order.
    """
    punisher = punisher or Punisher(rg)
    arena, r = rg.arena, rg.r
    candidates = sorted(achievable_outcomes(arena, arena.initial, rg.colour),
                        key=lambda s: joint_key(rg, s))
    if max_candidates is not None:
        candidates = candidates[:max_candidates]
    reach = arena.reachable()
    for x_set in candidates:
        ranks = {i: rg.preferences[i - 1].rank(x_set) for i in range(1, r + 1)}
        safe = set()
        for x in reach:
            i = arena.owner[x]
            if i <= r and ranks[i] > 0:
                better = punisher.forcing_region(i, ranks[i] - 1)
                if any(y in better for y in arena.successors(x)):
                    continue
            safe.add(x)
        if arena.initial not in safe:
            continue
        lasso = _lasso_for(arena, rg.colour, safe, x_set)
        if lasso is None:
            continue
        plan = _Plan(rg, lasso, ranks, punisher)
        strategies = {i: GrimTrigger(plan, i) for i in range(1, r + 1)}
        return Profile(rg, strategies, lasso, ranks)
    raise NoCandidateFound("no sustainable outcome found in the reduced game")


def punishing_strategies(profile, i):
    """The other optimisers' strategies, already in punishment mode against ``i``."""
    plan = next(iter(profile.strategies.values())).plan
    x0 = plan.arena.initial
    start = plan.punisher.punish_memory(i, x0)
    return {j: GrimTrigger(plan, j, start) for j in profile.strategies if j != i}


def _ranks(preferences, players):
    return {i: preferences[i - 1].rank for i in players}


def verify_profile(rg, profile, bound=DEFAULT_ORACLE_BOUND):
    """Oracle check of a reduced-game profile: list every profitable deviation."""
    players = range(1, rg.r + 1)
    return check_deviations(rg.arena, _ranks(rg.preferences, players), profile.strategies,
                            players, rg.colour, bound)


class ExtractedStrategy(Transducer):
    """Strategy in the original game built from one in the reduced game.

    Memory is ``(s_{r+1}, ..., s_n, m)``: the states of every compiled
    imitator, run in lockstep, plus the reduced-game strategy's memory.
    """

    def __init__(self, inner, imitators, base):
        self.inner = inner
        self.base = base
        self.imitators = tuple(imitators)
        self.owner = inner.owner
        self.initial = tuple(R.initial for R in self.imitators) + (inner.initial,)

    def update(self, action, memory):
        states = tuple(R.update(action, s) for R, s in zip(self.imitators, memory))
        return states + (self.inner.update(action, memory[-1]),)

    def move(self, vertex, memory):
        if memory[-1] == OFF:
            if self.base.owner[vertex] != self.owner:
                return None
            return self.base.enabled(vertex)[0]
        return self.inner.move((vertex,) + memory[:-1], memory[-1])


def extract_imitation_equilibrium(rg, profile):
    """Optimiser strategies for the original game, one per optimiser in order."""
    return [ExtractedStrategy(profile.strategies[i], rg.imitators, rg.base) for i in range(1, rg.r + 1)]


def check_imitation_equilibrium(rg, strategies, bound=DEFAULT_ORACLE_BOUND):
    """Optimiser-only deviation oracle with imitators held to their types."""
    players = range(1, rg.r + 1)
    fixed = {s.owner: s for s in strategies}
    fixed.update({R.owner: R for R in rg.imitators})
    return check_deviations(rg.base, _ranks(rg.preferences, players), fixed, players,
                            lambda v: v, bound)


def memory_size(arena, strategy):
    """Number of memory states the strategy actually uses along plays of ``arena``."""
    return len(reachable_memory(arena, strategy))


def imitation_equilibrium(rg, punisher=None):
    profile = find_nash(rg, punisher)
    return profile, extract_imitation_equilibrium(rg, profile)
