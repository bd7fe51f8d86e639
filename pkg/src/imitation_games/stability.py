"""Questions about a fixed profile of optimisers and imitators.

Given one strategy per player, the play is unique.  We ask what it
settles down to, which imitation modes survive along it, and how an
imitator fares compared with an equilibrium in which every player
optimises.
"""
from dataclasses import dataclass, field

from .arena import Lasso, lasso_from, sort_key
from .errors import GameError, UnknownVertex, ValidationError
from .imitator import CompiledImitator, subtype_containing, subtypes_of
from .preference import Comparison, compare_sets
from .reduction import build_reduced_game
from .solver.nash import find_nash, verify_profile
from .solver.oracle import DEFAULT_ORACLE_BOUND
from .strategy import product_all

_VERDICT = {Comparison.GREATER: "better", Comparison.EQUAL: "equal-rank", Comparison.LESS: "worse"}


@dataclass
class FullProfile:
    arena: object
    strategies: list          # transducers of optimisers 1..r, in order
    imitator_types: list      # bound imitator types of players r+1..n, in order
    preferences: list = None  # optional, one per player

    def __post_init__(self):
        r, n = self.arena.optimisers, self.arena.n
        owners = [s.owner for s in self.strategies]
        if owners != list(range(1, r + 1)):
            raise ValidationError(f"optimiser strategies must cover players 1..{r} in order, got {owners}")
        owners = [t.owner for t in self.imitator_types]
        if owners != list(range(r + 1, n + 1)):
            raise ValidationError(f"imitator types must cover players {r + 1}..{n} in order, got {owners}")
        for t in self.imitator_types:
            t.check(self.arena)
        self.compiled = [CompiledImitator(t, self.arena) for t in self.imitator_types]
        self._full = None

    @property
    def full_product(self):
        if self._full is None:
            self._full = product_all(self.arena, list(self.strategies) + self.compiled)
        return self._full

    def product_lasso(self):
        return lasso_from(self.full_product)

    def imitator_coordinate(self, j):
        """Position of imitator ``j``'s compiled state in a full-product vertex."""
        r = self.arena.optimisers
        return 1 + r + (j - r - 1)


@dataclass
class StabilityReport:
    lasso: Lasso                 # on base vertices
    product_cycle: frozenset     # terminal product states
    projected: frozenset
    subtypes: dict = field(default_factory=dict)   # imitator index -> Subtype
    worse_off: dict = field(default_factory=dict)


def shortest_lasso(lasso):
    """Same infinite play with the shortest cycle and then the shortest stem."""
    cyc = list(zip(lasso.cycle[:-1], lasso.cycle_actions))
    k = len(cyc)
    period = next(p for p in range(1, k + 1) if k % p == 0 and cyc == cyc[p:] + cyc[:p])
    cyc = cyc[:period]
    stem = list(zip(lasso.stem[:-1], lasso.stem_actions))
    while stem and stem[-1] == cyc[-1]:
        stem.pop()
        cyc = [cyc[-1]] + cyc[:-1]
    entry = cyc[0][0]
    return Lasso(tuple(v for v, _ in stem) + (entry,), tuple(a for _, a in stem),
                 tuple(v for v, _ in cyc) + (entry,), tuple(a for _, a in cyc))


def simulate(profile):
    """The unique play of the profile as a lasso over base vertices."""
    return shortest_lasso(profile.product_lasso().project(lambda x: x[0]))


def terminal_set(profile):
    return simulate(profile).terminal_set


def settles_to(profile, target):
    """Whether the set of vertices visited infinitely often equals ``target``."""
    target = frozenset(target)
    unknown = target - set(profile.arena.vertices)
    if unknown:
        raise UnknownVertex(min(unknown, key=sort_key), "target set")
    return terminal_set(profile) == target


def surviving_subtypes(profile):
    """For each imitator, the subtype of its compiled transducer holding the states
    it visits infinitely often."""
    cycle = profile.product_lasso().cycle
    out = {}
    for R in profile.compiled:
        k = profile.imitator_coordinate(R.owner)
        states = {x[k] for x in cycle}
        st = subtype_containing(subtypes_of(R), states)
        if st is None:
            raise GameError(f"recurrent states of imitator {R.owner} span several subtypes")
        out[R.owner] = st
    return out


@dataclass(frozen=True)
class WorseOff:
    player: int
    verdict: str
    imitation_set: frozenset
    imitation_rank: int
    equilibrium_set: frozenset
    equilibrium_rank: int


def all_optimiser_equilibrium(arena, preferences, bound=DEFAULT_ORACLE_BOUND):
    """A verified Nash equilibrium of the game in which every player optimises."""
    rg = build_reduced_game(arena.with_optimisers(arena.n), list(preferences), [])
    profile = find_nash(rg)
    verdict = verify_profile(rg, profile, bound)
    if not verdict.equilibrium:
        raise GameError(f"equilibrium failed verification: {verdict.deviations}")
    return profile


def worse_off(profile, j, preferences=None, bound=DEFAULT_ORACLE_BOUND):
    """Compare imitator ``j``'s outcome with that of an all-optimiser equilibrium."""
    prefs = preferences or profile.preferences
    if prefs is None:
        raise ValidationError("worse-off needs preferences")
    if not profile.arena.optimisers < j <= profile.arena.n:
        raise ValidationError(f"player {j} is not an imitator")
    f = terminal_set(profile)
    mu = all_optimiser_equilibrium(profile.arena, prefs, bound).outcome_set
    pref = prefs[j - 1]
    cmp = compare_sets(pref, f, mu)
    return WorseOff(j, _VERDICT[cmp], f, pref.rank(f), mu, pref.rank(mu))


def report(profile, preferences=None, bound=DEFAULT_ORACLE_BOUND):
    pl = profile.product_lasso()
    lasso = simulate(profile)
    rep = StabilityReport(lasso, frozenset(pl.cycle), lasso.terminal_set,
                          surviving_subtypes(profile))
    if preferences or profile.preferences:
        for R in profile.compiled:
            rep.worse_off[R.owner] = worse_off(profile, R.owner, preferences, bound)
    return rep
