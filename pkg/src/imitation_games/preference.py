"""Total preorders over Muller sets, ranked best-first.

A preference is a list of levels; each level is a group of tied vertex
sets, and one level is the catch-all that holds every set not listed
explicitly.  A smaller rank is better.
"""
import enum
from dataclasses import dataclass

from .arena import sort_key
from .errors import UnknownVertex, ValidationError

OTHERS = "others"


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal-rank"
    GREATER = "greater"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Preference:
    owner: int
    levels: tuple          # tuple of tuples of frozensets, best first
    catch_all_rank: int
    universe: frozenset = None

    @classmethod
    def from_levels(cls, owner, levels, universe=None):
        """Build from best-first ``levels``; a level equal to ``"others"`` is the catch-all.

        Without an explicit catch-all one is appended as the worst level.
        """
        groups = []
        catch_all = None
        seen = {}
        for k, level in enumerate(levels):
            if isinstance(level, str):
                if level != OTHERS:
                    raise ValidationError(f"unknown level marker {level!r}", f"preference of player {owner}")
                if catch_all is not None:
                    raise ValidationError("two catch-all levels", f"preference of player {owner}")
                catch_all = k
                groups.append(())
                continue
            group = []
            for s in level:
                s = frozenset(s)
                if s in seen:
                    raise ValidationError(f"set {sorted(s, key=sort_key)} listed twice",
                                          f"preference of player {owner}")
                if universe is not None and not s <= universe:
                    bad = min(s - universe, key=sort_key)
                    raise UnknownVertex(bad, f"preference of player {owner}")
                seen[s] = k
                group.append(s)
            groups.append(tuple(group))
        if catch_all is None:
            catch_all = len(groups)
            groups.append(())
        return cls(owner, tuple(groups), catch_all, None if universe is None else frozenset(universe))

    @classmethod
    def indifferent(cls, owner, universe=None):
        return cls.from_levels(owner, [OTHERS], universe)

    def __post_init__(self):
        ranks = {}
        for k, group in enumerate(self.levels):
            for s in group:
                ranks[frozenset(s)] = k
        object.__setattr__(self, "_rank", ranks)

    @property
    def level_count(self):
        return len(self.levels)

    def rank(self, muller_set):
        return self._rank.get(frozenset(muller_set), self.catch_all_rank)

    def check(self, muller_set):
        if self.universe is not None:
            extra = frozenset(muller_set) - self.universe
            if extra:
                raise UnknownVertex(min(extra, key=sort_key), "Muller set")

    def as_levels(self):
        """Best-first levels with ``"others"`` marking the catch-all, sets canonically sorted."""
        out = []
        for k, group in enumerate(self.levels):
            if k == self.catch_all_rank:
                out.append(OTHERS)
            else:
                out.append([sorted(s, key=sort_key) for s in sorted(group, key=sort_key)])
        return out


def compare_sets(pref, x, y):
    """Compare Muller sets ``x`` and ``y``; GREATER means ``x`` is strictly preferred."""
    pref.check(x)
    pref.check(y)
    rx, ry = pref.rank(x), pref.rank(y)
    if rx < ry:
        return Comparison.GREATER
    if rx > ry:
        return Comparison.LESS
    return Comparison.EQUAL


def project_muller(product_vertices):
    """The base Muller set ``F(W)``: first coordinates of product vertices."""
    return frozenset(w[0] for w in product_vertices)


class LiftedPreference:
    """Preference over subsets of a product arena, read through ``project_muller``."""

    def __init__(self, base, universe=None, project=project_muller):
        self.base = base
        self.owner = base.owner
        self.universe = None if universe is None else frozenset(universe)
        self._project = project

    def project(self, w):
        return self._project(w)

    def rank(self, w):
        return self.base.rank(self._project(w))

    @property
    def level_count(self):
        return self.base.level_count

    def compare(self, w, w2):
        return compare_sets(self.base, self._project(w), self._project(w2))


def lift_preference(pref, universe=None):
    return LiftedPreference(pref, universe)
