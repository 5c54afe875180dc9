"""Exact analysis of linear congestion games with altruistic weight matrices.

Core surface: exact scalars (:mod:`congames.numerics`), the game model
(:mod:`congames.game`), weight-matrix classification
(:mod:`congames.contexts`), equilibrium computation
(:mod:`congames.equilibria`), potential functions
(:mod:`congames.potentials`), ratio-program certificates
(:mod:`congames.certificates`), instance generators
(:mod:`congames.instances`), and the game file format
(:mod:`congames.gamefile`).
"""

from .contexts import (
    AltruismVector,
    ContextClassError,
    ContextFlags,
    NonNormalizableError,
    SocialContext,
    classify,
    identity_context,
    make_context,
    make_gamma_v,
    normalize,
)
from .equilibria import (
    AnalysisReport,
    BudgetExceededError,
    DynamicsOutcome,
    best_response_dynamics,
    best_responses,
    enumerate_nash,
    is_pure_nash,
    ratios,
    social_optimum,
)
from .game import (
    Game,
    Profile,
    altruistic_cost,
    congestion,
    deviation_delta,
    make_game,
    player_cost,
    social_cost,
)
from .gamefile import GameFileError, emit_game, parse_game_file, parse_game_text
from .numerics import QuadExt, MixedRadicalError, Rational, SQRT2, SQRT3, qeval, qsign, rational
from .potentials import check_exact_potential, phi_gamma_v, phi_restricted_symmetric

__version__ = "0.1.0"

__all__ = [
    "AltruismVector",
    "AnalysisReport",
    "BudgetExceededError",
    "ContextClassError",
    "ContextFlags",
    "DynamicsOutcome",
    "Game",
    "GameFileError",
    "MixedRadicalError",
    "NonNormalizableError",
    "Profile",
    "QuadExt",
    "Rational",
    "SQRT2",
    "SQRT3",
    "SocialContext",
    "altruistic_cost",
    "best_response_dynamics",
    "best_responses",
    "check_exact_potential",
    "classify",
    "congestion",
    "deviation_delta",
    "emit_game",
    "enumerate_nash",
    "identity_context",
    "is_pure_nash",
    "make_context",
    "make_game",
    "make_gamma_v",
    "normalize",
    "parse_game_file",
    "parse_game_text",
    "phi_gamma_v",
    "phi_restricted_symmetric",
    "player_cost",
    "qeval",
    "qsign",
    "ratios",
    "rational",
    "social_cost",
    "social_optimum",
]
