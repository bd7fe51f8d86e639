"""Deviation oracle: which Muller sets can a lone player bring about?

Once every other player is fixed by a product, the remaining graph gives
choices to one player only, and the achievable outcomes are exactly the
vertex sets of reachable strongly connected subgraphs.  Outcomes are
reported through a projection (typically onto base-arena vertices).
"""
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from ..arena import lasso_from, sort_key
from ..errors import InstanceTooLarge
from ..strategy import ProductArena, product_all

DEFAULT_ORACLE_BOUND = 16


def _digraph(graph, nodes):
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    for x in nodes:
        for y in graph.successors(x):
            g.add_edge(x, y)
    return g


def _cyclic(g, comp):
    if len(comp) > 1:
        return True
    (x,) = comp
    return g.has_edge(x, x)


def achievable_outcomes(graph, start, project=None, bound=None):
    """Projected inf-sets of all infinite paths of ``graph`` from ``start``.

    ``bound`` caps the number of distinct projected vertices, the quantity
    the enumeration is exponential in.
    """
    project = project or (lambda x: x)
    reach = graph.reachable(start)
    colours = {project(x) for x in reach}
    if bound is not None and len(colours) > bound:
        raise InstanceTooLarge(len(colours), bound)
    g = _digraph(graph, reach)
    found = set()
    seen = set()
    stack = [frozenset(reach)]
    while stack:
        part = stack.pop()
        if part in seen:
            continue
        seen.add(part)
        sub = g.subgraph(part)
        for comp in nx.strongly_connected_components(sub):
            if not _cyclic(sub, comp):
                continue
            x_set = frozenset(project(x) for x in comp)
            found.add(x_set)
            if len(x_set) > 1:
                for c in x_set:
                    rest = frozenset(x for x in comp if project(x) != c)
                    stack.append(rest)
    return found


def brute_force_inf_sets(graph, start, limit=12):
    """Every reachable vertex subset that is strongly connected with an internal
    out-edge at each member, by exhaustive enumeration; for small graphs only.
    """
    reach = graph.reachable(start)
    if len(reach) > limit:
        raise InstanceTooLarge(len(reach), limit)
    g = _digraph(graph, reach)
    out = set()
    for size in range(1, len(reach) + 1):
        for subset in combinations(reach, size):
            sub = g.subgraph(subset)
            if all(any(True for _ in sub.successors(x)) for x in subset) and nx.is_strongly_connected(sub):
                out.add(frozenset(subset))
    return out


@dataclass
class Verdict:
    outcome: frozenset
    outcome_lasso: object
    deviations: list = field(default_factory=list)   # (player, muller set, rank, outcome rank)

    @property
    def equilibrium(self):
        return not self.deviations


def _projector(graph, project):
    if isinstance(graph, ProductArena):
        return lambda y: project(y[0])
    return project


def profile_outcome(arena, transducers, project):
    """Lasso and projected inf-set of the unique play of a full profile."""
    full = product_all(arena, transducers)
    lasso = lasso_from(full)
    proj = _projector(full, project)
    return lasso, frozenset(proj(y) for y in lasso.cycle)


def check_deviations(arena, ranks, transducers, players, project=None, bound=DEFAULT_ORACLE_BOUND):
    """Look for profitable unilateral deviations.

    ``transducers`` maps player index to a transducer and must fix every
    player with a real choice; ``ranks`` maps each checked player to a
    function from projected Muller sets to preference rank (lower is better).
    """
    project = project or (lambda x: x)
    order = sorted(transducers)
    lasso, outcome = profile_outcome(arena, [transducers[p] for p in order], project)
    verdict = Verdict(outcome, lasso)
    for i in players:
        others = [transducers[p] for p in order if p != i]
        residual = product_all(arena, others)
        base = ranks[i](outcome)
        for x_set in sorted(achievable_outcomes(residual, residual.initial,
                                                _projector(residual, project), bound), key=sort_key):
            rk = ranks[i](x_set)
            if rk < base:
                verdict.deviations.append((i, x_set, rk, base))
    return verdict
