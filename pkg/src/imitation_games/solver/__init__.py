from .muller import LarProduct, MullerCondition, MullerSolution, muller_to_parity, solve_muller
from .nash import (
    ExtractedStrategy,
    GrimTrigger,
    Profile,
    Punisher,
    PunishmentValue,
    check_imitation_equilibrium,
    extract_imitation_equilibrium,
    find_nash,
    imitation_equilibrium,
    punishment_value,
    verify_profile,
)
from .oracle import DEFAULT_ORACLE_BOUND, Verdict, achievable_outcomes, check_deviations
from .parity import ParityGame, ParitySolution, attractor, check_strategy, solve_parity
