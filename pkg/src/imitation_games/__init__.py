"""Turn-based infinite games on graphs with optimising and imitating players."""
from .arena import Arena, FinitePlay, Lasso, apply_word, last_move_of, lasso_from, scc_decomposition, validate_arena
from .errors import GameError
from .imitator import CompiledImitator, ImitatorType, Subtype, advise_imitator, compile_imitator, subtypes_of
from .preference import Comparison, Preference, compare_sets, lift_preference, project_muller
from .reduction import ReducedGame, build_reduced_game, initial_lar, lar_update
from .stability import FullProfile, settles_to, simulate, surviving_subtypes, worse_off
from .strategy import TableTransducer, Transducer, advise, product, product_all

__version__ = "0.1.0"
