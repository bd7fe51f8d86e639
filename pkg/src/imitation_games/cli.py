"""Command-line front end and the ``.game`` file format.

A ``.game`` file is one JSON document::

    {"players": ["A", "B"], "optimisers": 1, "actions": ["a", "b"],
     "vertices": [["p", "A"], ["q", "B"]],
     "edges": [["p", "a", "q"], ...], "initial": "p",
     "preferences": {"A": [[["p", "q"]], [["p"]], "others"]},
     "scenarios": {"name": {"preferences": {...}}},
     "strategies": {"A": {"memory": [...], "initial": ..., "update": {m: {a: m2}},
                          "move": {v: {m: a}}}},
     "imitator_types": {"copy": {"memory": [...], "initial": ..., "update": {...},
                                 "imitate": {m: player}, "fallback": {v: a}}},
     "assignments": {"B": "copy"}}

Players are listed optimisers first.  A strategy may instead be given as
``{"positional": {v: a}}``; a type without ``memory`` has the single
state ``"m0"``.
"""
import argparse
import json
import sys
from collections import deque
from dataclasses import dataclass, field

from .arena import Arena, sort_key
from .errors import GameError, ParseError, UnsupportedObject, ValidationError
from .imitator import CompiledImitator, ImitatorType
from .preference import OTHERS, Preference
from .reduction import build_reduced_game
from .solver.nash import check_imitation_equilibrium, find_nash, extract_imitation_equilibrium
from .solver.oracle import DEFAULT_ORACLE_BOUND, check_deviations
from .solver.parity import ParityGame
from .stability import FullProfile, settles_to, simulate, surviving_subtypes, worse_off
from .strategy import TableTransducer, product_all

SHAPES = ("circle", "box", "triangle", "diamond", "pentagon", "hexagon", "octagon")
SINGLE = "m0"


def _ids(xs):
    return [str(x) for x in xs]


def _require(doc, key, where):
    if key not in doc:
        raise ValidationError(f"missing field {key!r}", where)
    return doc[key]


@dataclass
class GameSpec:
    players: list
    optimisers: int
    actions: list
    vertices: list                 # [vertex, owner name]
    edges: list                    # [source, action, target]
    initial: str
    preferences: dict = field(default_factory=dict)     # player -> raw levels
    scenarios: dict = field(default_factory=dict)       # name -> {player -> raw levels}
    strategies: dict = field(default_factory=dict)      # player -> raw transducer
    imitator_types: dict = field(default_factory=dict)  # name -> raw type
    assignments: dict = field(default_factory=dict)     # player -> type name
    source: str = "<memory>"

    # -- construction ------------------------------------------------------

    @classmethod
    def from_dict(cls, doc, source="<memory>"):
        if not isinstance(doc, dict):
            raise ParseError(f"{source}: top level must be an object")
        known = {"players", "optimisers", "actions", "vertices", "edges", "initial", "preferences",
                 "scenarios", "strategies", "imitator_types", "assignments", "description"}
        extra = sorted(set(doc) - known)
        if extra:
            raise ValidationError(f"unknown field {extra[0]!r}", source)
        players = _ids(_require(doc, "players", source))
        spec = cls(
            players=players,
            optimisers=int(doc.get("optimisers", len(players))),
            actions=_ids(_require(doc, "actions", source)),
            vertices=[[str(v), str(o)] for v, o in _require(doc, "vertices", source)],
            edges=[[str(v), str(a), str(w)] for v, a, w in _require(doc, "edges", source)],
            initial=str(_require(doc, "initial", source)),
            preferences={str(p): lv for p, lv in doc.get("preferences", {}).items()},
            scenarios={str(k): {str(p): lv for p, lv in s.get("preferences", {}).items()}
                       for k, s in doc.get("scenarios", {}).items()},
            strategies={str(p): s for p, s in doc.get("strategies", {}).items()},
            imitator_types={str(k): t for k, t in doc.get("imitator_types", {}).items()},
            assignments={str(p): str(t) for p, t in doc.get("assignments", {}).items()},
            source=source,
        )
        spec.validate()
        return spec

    def to_dict(self):
        doc = {
            "players": list(self.players),
            "optimisers": self.optimisers,
            "actions": list(self.actions),
            "vertices": [list(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "initial": self.initial,
        }
        if self.preferences:
            doc["preferences"] = self.preferences
        if self.scenarios:
            doc["scenarios"] = {k: {"preferences": p} for k, p in self.scenarios.items()}
        for key in ("strategies", "imitator_types", "assignments"):
            if getattr(self, key):
                doc[key] = getattr(self, key)
        return doc

    def __eq__(self, other):
        return isinstance(other, GameSpec) and self.to_dict() == other.to_dict()

    # -- validation and building --------------------------------------------

    def validate(self):
        where = self.source
        if len(set(self.players)) != len(self.players):
            raise ValidationError("duplicate player names", f"{where}: players")
        for p in list(self.strategies) + list(self.assignments):
            self.index(p)
        self.arena
        for name in self.scenarios:
            self.preference_list(name)
        self.preference_list()
        for name in self.imitator_types:
            self.imitator_type(name)
        for p, t in self.assignments.items():
            if t not in self.imitator_types:
                raise ValidationError(f"unknown imitator type {t!r}", f"{where}: assignments.{p}")
            if self.index(p) <= self.optimisers:
                raise ValidationError(f"player {p!r} is an optimiser", f"{where}: assignments.{p}")
            self.imitator_type(t).bind(self.index(p)).check(self.arena)
        for p in self.strategies:
            if self.index(p) > self.optimisers:
                raise ValidationError(f"player {p!r} is an imitator", f"{where}: strategies.{p}")
            self.strategy(p).check(self.arena)
        return self

    def index(self, player):
        try:
            return self.players.index(str(player)) + 1
        except ValueError:
            raise ValidationError(f"unknown player {player!r}", self.source) from None

    @property
    def arena(self):
        owner = {}
        for v, o in self.vertices:
            if o not in self.players:
                raise ValidationError(f"vertex {v!r} owned by unknown player {o!r}", f"{self.source}: vertices")
            owner[v] = self.index(o)
        try:
            return Arena(self.players, owner, self.edges, self.initial, actions=self.actions,
                         optimisers=self.optimisers, vertices=[v for v, _ in self.vertices])
        except GameError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(str(e), f"{self.source}: arena") from e

    def preference_list(self, scenario=None):
        raw = dict(self.preferences)
        if scenario is not None:
            if scenario not in self.scenarios:
                raise ValidationError(f"unknown scenario {scenario!r}", self.source)
            raw.update(self.scenarios[scenario])
        universe = frozenset(v for v, _ in self.vertices)
        out = []
        for k, p in enumerate(self.players, 1):
            levels = raw.get(p, [OTHERS])
            where = f"{self.source}: preferences.{p}"
            parsed = []
            for level in levels:
                if isinstance(level, str):
                    parsed.append(level)
                elif isinstance(level, list) and all(isinstance(s, list) for s in level):
                    parsed.append([frozenset(_ids(s)) for s in level])
                else:
                    raise ValidationError("a level is a list of vertex lists or \"others\"", where)
            try:
                out.append(Preference.from_levels(k, parsed, universe))
            except ValidationError as e:
                raise ValidationError(e.message, where) from e
            except GameError as e:
                raise ValidationError(str(e), where) from e
        unknown = set(raw) - set(self.players)
        if unknown:
            raise ValidationError(f"preference for unknown player {min(unknown)!r}", self.source)
        return out

    def _memory(self, raw, where):
        memory = _ids(raw.get("memory", [SINGLE]))
        initial = str(raw.get("initial", memory[0]))
        update = {}
        table = raw.get("update")
        for m in memory:
            for a in self.actions:
                if table is None:
                    update[(a, m)] = m
                else:
                    try:
                        update[(a, m)] = str(table[m][a])
                    except (KeyError, TypeError):
                        raise ValidationError(f"memory update undefined for memory {m!r}, action {a!r}",
                                              where) from None
        return memory, initial, update

    def imitator_type(self, name):
        raw = self.imitator_types[name]
        where = f"{self.source}: imitator_types.{name}"
        memory, initial, update = self._memory(raw, where)
        imitate = {}
        for m in memory:
            target = raw.get("imitate", {}).get(m)
            if target is None:
                raise ValidationError(f"imitation map undefined at memory {m!r}", where)
            imitate[m] = self.index(target)
        fallback = {str(v): str(a) for v, a in raw.get("fallback", {}).items()}
        tau = ImitatorType(tuple(memory), initial, update, fallback, imitate, name=name)
        try:
            return tau.check(self.arena)
        except ValidationError as e:
            raise ValidationError(e.message, where) from e

    def strategy(self, player):
        raw = self.strategies[player]
        i = self.index(player)
        where = f"{self.source}: strategies.{player}"
        if "positional" in raw:
            choice = {str(v): str(a) for v, a in raw["positional"].items()}
            t = TableTransducer.positional(i, choice, self.arena)
        else:
            memory, initial, update = self._memory(raw, where)
            move = {(str(v), str(m)): str(a) for v, row in raw.get("move", {}).items() for m, a in row.items()}
            t = TableTransducer(i, memory, initial, update, move)
        try:
            return t.check(self.arena)
        except ValidationError as e:
            raise ValidationError(e.message, where) from e
        except GameError as e:
            raise ValidationError(str(e), where) from e

    def bound_types(self):
        arena = self.arena
        out = []
        for j in range(arena.optimisers + 1, arena.n + 1):
            p = self.players[j - 1]
            if p not in self.assignments:
                raise ValidationError(f"no imitator type assigned to {p!r}", f"{self.source}: assignments")
            out.append(self.imitator_type(self.assignments[p]).bind(j))
        return out

    def full_profile(self, scenario=None):
        arena = self.arena
        strategies = []
        for i in range(1, arena.optimisers + 1):
            p = self.players[i - 1]
            if p not in self.strategies:
                raise ValidationError(f"no strategy given for optimiser {p!r}", f"{self.source}: strategies")
            strategies.append(self.strategy(p))
        return FullProfile(arena, strategies, self.bound_types(), self.preference_list(scenario))


def parse_game_spec(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return GameSpec.from_dict(doc, str(path))


def serialize_game_spec(spec):
    return json.dumps(spec.to_dict(), indent=2) + "\n"


# -- strategy tables -----------------------------------------------------------

def tabulate(arena, strategy, imitators=()):
    """Finite table for ``strategy`` over the memory it reaches while imitators keep to type.

    Memory states are renamed ``m0, m1, ...`` in discovery order; updates
    that cannot occur on such plays loop in place.
    """
    prod = product_all(arena, [strategy] + list(imitators))
    order = []
    seen = set()
    queue = deque([prod.initial])
    visited = {prod.initial}
    while queue:
        x = queue.popleft()
        m = x[1]
        if m not in seen:
            seen.add(m)
            order.append(m)
        for _, y in prod.moves(x):
            if y not in visited:
                visited.add(y)
                queue.append(y)
    name = {m: f"m{k}" for k, m in enumerate(order)}
    update = {name[m]: {a: name[m] for a in arena.actions} for m in order}
    move = {}
    for x in prod.vertices:
        v, m = x[0], x[1]
        for a, y in prod.moves(x):
            update[name[m]][a] = name[y[1]]
        if arena.owner[v] == strategy.owner:
            move.setdefault(v, {})[name[m]] = strategy.move(v, m)
    for v in arena.owned_by(strategy.owner):
        row = move.setdefault(v, {})
        for m in order:
            row.setdefault(name[m], arena.enabled(v)[0])
    move = {v: dict(sorted(row.items(), key=lambda kv: int(kv[0][1:])))
            for v, row in sorted(move.items(), key=lambda kv: sort_key(kv[0]))}
    return {"memory": [name[m] for m in order], "initial": name[order[0]],
            "update": update, "move": move}


# -- graph export --------------------------------------------------------------

def _q(x):
    s = x if isinstance(x, str) else repr(x)
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(obj, name="G"):
    """DOT text for an arena, product arena, compiled imitator or parity game."""
    lines = [f"digraph {name} {{"]
    if isinstance(obj, Arena):
        for v in obj.vertices:
            shape = SHAPES[(obj.owner[v] - 1) % len(SHAPES)]
            extra = ", peripheries=2" if v == obj.initial else ""
            lines.append(f"  {_q(v)} [shape={shape}{extra}];")
        for v, a, w in obj.edge_list():
            lines.append(f"  {_q(v)} -> {_q(w)} [label={_q(a)}];")
    elif isinstance(obj, CompiledImitator):
        states = obj.states
        ids = {s: f"s{k}" for k, s in enumerate(states)}
        for s in states:
            shape = SHAPES[(obj.arena.owner[s[0]] - 1) % len(SHAPES)]
            extra = ", peripheries=2" if s == obj.initial else ""
            lines.append(f"  {ids[s]} [shape={shape}, label={_q(repr(s))}{extra}];")
        for s in states:
            for a in obj.arena.enabled(s[0]):
                lines.append(f"  {ids[s]} -> {ids[obj.update(a, s)]} [label={_q(a)}];")
    elif isinstance(obj, ParityGame):
        for k, node in enumerate(obj.nodes):
            shape = SHAPES[obj.owner[k] % 2]
            lines.append(f"  n{k} [shape={shape}, label={_q(f'{node!r} : {obj.priority[k]}')}];")
        for k in range(len(obj.nodes)):
            for w in obj.succ[k]:
                lines.append(f"  n{k} -> n{w};")
    else:
        raise UnsupportedObject(f"cannot export {type(obj).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------

def _set(xs):
    return sorted(xs, key=sort_key)


def _lasso_json(lasso):
    return {"stem": list(lasso.stem), "stem_actions": list(lasso.stem_actions),
            "cycle": list(lasso.cycle), "cycle_actions": list(lasso.cycle_actions),
            "inf": _set(lasso.terminal_set)}


def _path_text(verts, acts):
    out = str(verts[0])
    for a, v in zip(acts, verts[1:]):
        out += f" -{a}-> {v}"
    return out


def _player_arg(spec, name):
    """Player by name, or by 1-based position when the name is unknown."""
    if name not in spec.players and name.isdigit() and 1 <= int(name) <= len(spec.players):
        return int(name)
    return spec.index(name)


def cmd_simulate(spec, args):
    lasso = simulate(spec.full_profile(args.scenario))
    text = [f"stem: {_path_text(lasso.stem, lasso.stem_actions)}",
            f"cycle: {_path_text(lasso.cycle, lasso.cycle_actions)}",
            "inf: {" + ", ".join(_set(lasso.terminal_set)) + "}"]
    return _lasso_json(lasso), text, 0


def cmd_settles_to(spec, args):
    target = frozenset(t.strip() for t in args.target.split(",") if t.strip())
    profile = spec.full_profile(args.scenario)
    ok = settles_to(profile, target)
    lasso = simulate(profile)
    doc = {"target": _set(target), "settles": ok, "inf": _set(lasso.terminal_set),
           "cycle": list(lasso.cycle), "cycle_actions": list(lasso.cycle_actions)}
    text = [f"settles-to {{{', '.join(_set(target))}}}: {'true' if ok else 'false'}",
            f"cycle: {_path_text(lasso.cycle, lasso.cycle_actions)}"]
    return doc, text, 0 if ok else 2


def cmd_subtypes(spec, args):
    profile = spec.full_profile(args.scenario)
    doc, text = [], []
    for j, st in surviving_subtypes(profile).items():
        states = sorted(st.states, key=sort_key)
        doc.append({"player": spec.players[j - 1], "type": st.parent, "terminal": st.terminal,
                    "size": len(states), "memories": st.memories(),
                    "states": [[s[0], s[1], [a if isinstance(a, str) else "-" for a in s[2]]]
                               for s in states]})
        text.append(f"{spec.players[j - 1]}: type {st.parent}, {len(states)} states, "
                    f"memories {{{', '.join(map(str, st.memories()))}}}, "
                    f"{'terminal' if st.terminal else 'transient'}")
    return doc, text, 0


def cmd_worse_off(spec, args):
    profile = spec.full_profile(args.scenario)
    j = _player_arg(spec, args.imitator)
    w = worse_off(profile, j, bound=args.oracle_bound)
    doc = {"imitator": spec.players[j - 1], "verdict": w.verdict,
           "imitation": {"set": _set(w.imitation_set), "rank": w.imitation_rank},
           "equilibrium": {"set": _set(w.equilibrium_set), "rank": w.equilibrium_rank}}
    text = [f"{spec.players[j - 1]}: {w.verdict}",
            f"imitation outcome {{{', '.join(_set(w.imitation_set))}}} at level {w.imitation_rank}",
            f"equilibrium outcome {{{', '.join(_set(w.equilibrium_set))}}} at level {w.equilibrium_rank}"]
    return doc, text, 0


def cmd_equilibrium(spec, args):
    arena = spec.arena
    rg = build_reduced_game(arena, spec.preference_list(args.scenario), spec.bound_types())
    profile = find_nash(rg)
    strategies = extract_imitation_equilibrium(rg, profile)
    verdict = check_imitation_equilibrium(rg, strategies, args.oracle_bound)
    if not verdict.equilibrium:
        raise GameError(f"extracted profile failed verification: {verdict.deviations}")
    tables = {spec.players[s.owner - 1]: tabulate(arena, s, rg.imitators) for s in strategies}
    doc = {"outcome": _set(verdict.outcome), "reduced_vertices": len(rg.arena.vertices),
           "strategies": tables}
    text = [f"outcome: {{{', '.join(_set(verdict.outcome))}}}",
            f"reduced game: {len(rg.arena.vertices)} vertices"]
    for p, t in tables.items():
        text.append(f"{p}: {len(t['memory'])} memory states")
    return doc, text, 0


def cmd_verify(spec, args):
    if args.strategies:
        try:
            with open(args.strategies) as fh:
                extra = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"{args.strategies}: {e}") from None
        spec.strategies = {**spec.strategies, **extra.get("strategies", extra)}
        spec.validate()
    profile = spec.full_profile(args.scenario)
    prefs = profile.preferences
    arena = profile.arena
    players = range(1, arena.optimisers + 1)
    fixed = {s.owner: s for s in profile.strategies}
    fixed.update({R.owner: R for R in profile.compiled})
    verdict = check_deviations(arena, {i: prefs[i - 1].rank for i in players}, fixed, players,
                               None, args.oracle_bound)
    devs = [{"player": spec.players[i - 1], "set": _set(s), "rank": rk, "outcome_rank": base}
            for i, s, rk, base in verdict.deviations]
    doc = {"equilibrium": verdict.equilibrium, "outcome": _set(verdict.outcome), "deviations": devs}
    text = [f"equilibrium: {'yes' if verdict.equilibrium else 'no'}",
            f"outcome: {{{', '.join(_set(verdict.outcome))}}}"]
    for d in devs:
        text.append(f"{d['player']} can reach {{{', '.join(d['set'])}}} (level {d['rank']} < {d['outcome_rank']})")
    return doc, text, 0 if verdict.equilibrium else 2


def cmd_export(spec, args):
    what = args.object
    arena = spec.arena
    if what == "arena":
        obj = arena
    elif what == "product":
        obj = spec.full_profile(args.scenario).full_product
    elif what == "reduced":
        obj = build_reduced_game(arena, spec.preference_list(args.scenario), spec.bound_types()).arena
    elif what == "imitator":
        if args.player is None:
            raise ValidationError("export imitator needs --player")
        j = _player_arg(spec, args.player)
        types = {t.owner: t for t in spec.bound_types()}
        if j not in types:
            raise ValidationError(f"player {args.player!r} is not an imitator")
        obj = CompiledImitator(types[j], arena)
    else:
        raise UnsupportedObject(f"cannot export {what!r}")
    return None, export_graph(obj), 0


COMMANDS = {
    "simulate": cmd_simulate,
    "settles-to": cmd_settles_to,
    "subtypes": cmd_subtypes,
    "worse-off": cmd_worse_off,
    "equilibrium": cmd_equilibrium,
    "verify": cmd_verify,
    "export": cmd_export,
}


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; exit code 2 is reserved for negative answers
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="imitation-games",
                                     description="Analyse games with optimising and imitating players.")
    common = _Parser(add_help=False)
    common.add_argument("spec", help="path to a .game file")
    common.add_argument("--scenario", help="named preference scenario")
    common.add_argument("--format", choices=("text", "json", "dot"), default=None)
    common.add_argument("--oracle-bound", type=int, default=DEFAULT_ORACLE_BOUND,
                        help="largest number of vertices the deviation oracle will enumerate over")
    common.add_argument("--seed", type=int, default=None, help="accepted for harness use; analyses are deterministic")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("simulate", parents=[common], help="play the fixed profile")
    p = sub.add_parser("settles-to", parents=[common], help="does the play settle to a vertex set")
    p.add_argument("--target", required=True, help="comma-separated vertex ids")
    sub.add_parser("subtypes", parents=[common], help="surviving imitator subtypes")
    p = sub.add_parser("worse-off", parents=[common], help="compare an imitator with an all-optimiser equilibrium")
    p.add_argument("--imitator", required=True)
    sub.add_parser("equilibrium", parents=[common], help="compute an imitation equilibrium")
    p = sub.add_parser("verify", parents=[common], help="check the profile for profitable deviations")
    p.add_argument("--strategies", help="JSON file with optimiser strategies (e.g. equilibrium output)")
    p = sub.add_parser("export", parents=[common], help="write a graph in DOT")
    p.add_argument("--object", choices=("arena", "product", "reduced", "imitator"), default="arena")
    p.add_argument("--player", help="imitator to export")
    return parser


def run(argv):
    """Run one command; returns ``(output text, exit code)``."""
    args = build_parser().parse_args(argv)
    fmt = args.format or ("dot" if args.command == "export" else "text")
    if (fmt == "dot") != (args.command == "export"):
        raise ValidationError(f"format {fmt!r} does not apply to {args.command}")
    spec = parse_game_spec(args.spec)
    doc, text, code = COMMANDS[args.command](spec, args)
    if fmt == "dot":
        return text, code
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n", code
    return "\n".join(text) + "\n", code


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        out, code = run(argv)
    except GameError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
