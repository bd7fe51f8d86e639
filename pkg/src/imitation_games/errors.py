"""Exception hierarchy shared by all modules."""


class GameError(Exception):
    """Base class for every error raised by this package."""


class ArenaError(GameError):
    pass


class DuplicateActionEdge(ArenaError):
    def __init__(self, vertex, action):
        super().__init__(f"vertex {vertex!r} has two outgoing edges labelled {action!r}")
        self.vertex = vertex
        self.action = action


class DeadEnd(ArenaError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex!r} has no outgoing edge")
        self.vertex = vertex


class UnknownVertex(ArenaError):
    def __init__(self, vertex, where="arena"):
        super().__init__(f"unknown vertex {vertex!r} in {where}")
        self.vertex = vertex


class UnknownOwner(ArenaError):
    def __init__(self, owner, vertex=None):
        msg = f"unknown player {owner!r}"
        if vertex is not None:
            msg += f" owning vertex {vertex!r}"
        super().__init__(msg)
        self.owner = owner
        self.vertex = vertex


class UnknownAction(ArenaError):
    def __init__(self, action):
        super().__init__(f"unknown action {action!r}")
        self.action = action


class DisabledAction(ArenaError):
    def __init__(self, vertex, action):
        super().__init__(f"action {action!r} is not enabled at vertex {vertex!r}")
        self.vertex = vertex
        self.action = action


class StrategyError(GameError):
    pass


class UndefinedMove(StrategyError):
    def __init__(self, vertex, memory):
        super().__init__(f"move function undefined at vertex {vertex!r}, memory {memory!r}")
        self.vertex = vertex
        self.memory = memory


class NoCandidateFound(GameError):
    """No stable outcome was found; equilibria always exist, so this is a bug."""


class InstanceTooLarge(GameError):
    def __init__(self, size, bound):
        super().__init__(f"oracle instance has {size} vertices, bound is {bound}")
        self.size = size
        self.bound = bound


class ParseError(GameError):
    pass


class ValidationError(GameError):
    def __init__(self, message, location=None):
        self.message = message
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class UnsupportedObject(GameError):
    pass
