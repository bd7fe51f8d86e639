"""Parity games and Zielonka's recursive algorithm.

Max-parity convention: player 0 wins a play when the largest priority
seen infinitely often is even.
"""
from collections import deque
from dataclasses import dataclass

import networkx as nx


class ParityGame:
    """Parity game over integer nodes ``0..N-1`` carrying arbitrary labels.

    ``edges[k]`` lists ``(label, successor)`` pairs of node ``k``; edge
    labels let a positional strategy be read back as actions.
    """

    def __init__(self, nodes, owner, priority, edges):
        self.nodes = list(nodes)
        self.index = {x: k for k, x in enumerate(self.nodes)}
        self.owner = list(owner)
        self.priority = list(priority)
        self.succ = []
        self.edge_label = []
        for k, out in enumerate(edges):
            labels = {}
            for label, w in out:
                labels.setdefault(w, label)
            if not labels:
                raise ValueError(f"node {self.nodes[k]!r} has no successor")
            self.succ.append(sorted(labels))
            self.edge_label.append(labels)
        self.pred = [[] for _ in self.nodes]
        for k, out in enumerate(self.succ):
            for w in out:
                self.pred[w].append(k)

    @classmethod
    def from_edges(cls, owner, priority, edges):
        """Build from label-level dicts and ``(u, w)`` or ``(u, label, w)`` edges."""
        nodes = list(owner)
        index = {x: k for k, x in enumerate(nodes)}
        out = [[] for _ in nodes]
        for e in edges:
            u, w = e[0], e[-1]
            label = e[1] if len(e) == 3 else None
            out[index[u]].append((label, index[w]))
        return cls(nodes, [owner[x] for x in nodes], [priority[x] for x in nodes], out)

    def __len__(self):
        return len(self.nodes)

    @property
    def max_priority(self):
        return max(self.priority, default=0)


@dataclass(frozen=True)
class ParitySolution:
    game: ParityGame
    regions: tuple      # (frozenset, frozenset) of node indices won by players 0 and 1
    strategy: dict      # node index -> successor index, for nodes in their owner's region

    def winner(self, node):
        return 0 if self.game.index[node] in self.regions[0] else 1

    def region(self, player):
        return frozenset(self.game.nodes[k] for k in self.regions[player])

    def choice(self, node):
        """Label of the strategy edge at ``node``, or ``None`` if its owner loses there."""
        k = self.game.index[node]
        w = self.strategy.get(k)
        return None if w is None else self.game.edge_label[k][w]


def attractor(pg, sub, target, player):
    """Nodes of ``sub`` from which ``player`` forces a visit to ``target``, plus witness moves."""
    attr = set(target)
    strat = {}
    pending = {}
    queue = deque(sorted(attr))
    while queue:
        w = queue.popleft()
        for v in pg.pred[w]:
            if v not in sub or v in attr:
                continue
            if pg.owner[v] == player:
                attr.add(v)
                strat[v] = w
                queue.append(v)
            else:
                left = pending.get(v)
                if left is None:
                    left = sum(1 for u in pg.succ[v] if u in sub)
                left -= 1
                pending[v] = left
                if left == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strat


def _zielonka(pg, sub):
    win = (set(), set())
    strat = {}
    while sub:
        d = max(pg.priority[v] for v in sub)
        p = d % 2
        top = {v for v in sub if pg.priority[v] == d}
        a, a_strat = attractor(pg, sub, top, p)
        inner, inner_strat = _zielonka(pg, sub - a)
        if not inner[1 - p]:
            win[p].update(sub)
            strat.update(inner_strat)
            strat.update(a_strat)
            for v in top:
                if pg.owner[v] == p:
                    strat[v] = next(u for u in pg.succ[v] if u in sub)
            break
        b, b_strat = attractor(pg, sub, inner[1 - p], 1 - p)
        win[1 - p].update(b)
        strat.update({v: u for v, u in inner_strat.items() if v in inner[1 - p]})
        strat.update(b_strat)
        sub = sub - b
    return win, strat


def solve_parity(pg):
    """Winning regions of both players with positional winning strategies."""
    win, strat = _zielonka(pg, set(range(len(pg))))
    strat = {v: u for v, u in strat.items() if v in win[pg.owner[v]]}
    return ParitySolution(pg, (frozenset(win[0]), frozenset(win[1])), strat)


def check_strategy(pg, region, strategy, player):
    """Run-check a positional strategy: ``region`` is closed under it and every
    cycle of the restricted graph has a maximal priority of ``player``'s parity.
    """
    region = set(region)
    g = nx.DiGraph()
    for v in region:
        if pg.owner[v] == player:
            if v not in strategy or strategy[v] not in region:
                return False
            g.add_edge(v, strategy[v])
        else:
            for u in pg.succ[v]:
                if u not in region:
                    return False
                g.add_edge(v, u)
    for q in sorted({pg.priority[v] for v in region}):
        if q % 2 == player:
            continue
        low = g.subgraph([v for v in region if pg.priority[v] <= q])
        for comp in nx.strongly_connected_components(low):
            if not any(pg.priority[v] == q for v in comp):
                continue
            if len(comp) > 1 or any(low.has_edge(v, v) for v in comp):
                return False
    return True
