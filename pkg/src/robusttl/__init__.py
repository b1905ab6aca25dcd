"""Verification and synthesis toolkit for robust temporal logics."""

from .apa import APA, apa_accepts_lasso, from_rldl
from .formulas import Formula, Guard, LogicId, LogicViolationError
from .games import (
    GameResult,
    LabeledGameGraph,
    MealyStrategy,
    ParityGame,
    parse_labeled_game,
    solve_parity,
    solve_prompt_game,
    solve_rldl_game,
    solve_rprompt_game,
)
from .hoa import dpa_to_hoa, nba_to_hoa
from .modelcheck import (
    McResult,
    TransitionSystem,
    mc_fragment,
    mc_rldl,
    mc_rprompt_ltl,
    parse_transition_system,
    prompt_mc,
)
from .omega import (
    DPA,
    NBA,
    apa_to_nba,
    dpa_accepts_lasso,
    nba_accepts_lasso,
    nba_to_dpa,
    rldl_to_dpa,
    rldl_to_nba,
)
from .parser import FormulaSyntaxError, parse, parse_guard
from .semantics import (
    eval_ldl,
    eval_ltl,
    eval_prompt_ldl,
    eval_prompt_ltl,
    eval_rldl,
    eval_rltl,
    eval_rprompt_ldl,
    eval_rprompt_ltl,
    evaluate,
)
from .traces import LassoTrace, parse_trace
from .translate import (
    check_fragment,
    embed_ldl_in_rldl,
    embed_rltl_in_rldl,
    fragment_translate,
    ltl_surface_to_ldl,
    rprompt_to_prompt,
)
from .truth import (
    ALL_VALUES,
    BOTTOM,
    TOP,
    NonMonotoneBitsError,
    TruthValue4,
)

__all__ = [
    "ALL_VALUES",
    "APA",
    "BOTTOM",
    "DPA",
    "Formula",
    "FormulaSyntaxError",
    "GameResult",
    "Guard",
    "LabeledGameGraph",
    "LassoTrace",
    "LogicId",
    "LogicViolationError",
    "McResult",
    "MealyStrategy",
    "NBA",
    "NonMonotoneBitsError",
    "ParityGame",
    "TOP",
    "TransitionSystem",
    "TruthValue4",
    "apa_accepts_lasso",
    "apa_to_nba",
    "check_fragment",
    "dpa_accepts_lasso",
    "dpa_to_hoa",
    "embed_ldl_in_rldl",
    "embed_rltl_in_rldl",
    "eval_ldl",
    "eval_ltl",
    "eval_prompt_ldl",
    "eval_prompt_ltl",
    "eval_rldl",
    "eval_rltl",
    "eval_rprompt_ldl",
    "eval_rprompt_ltl",
    "evaluate",
    "fragment_translate",
    "from_rldl",
    "ltl_surface_to_ldl",
    "mc_fragment",
    "mc_rldl",
    "mc_rprompt_ltl",
    "nba_accepts_lasso",
    "nba_to_dpa",
    "nba_to_hoa",
    "parse",
    "parse_guard",
    "parse_labeled_game",
    "parse_trace",
    "parse_transition_system",
    "prompt_mc",
    "rldl_to_dpa",
    "rldl_to_nba",
    "rprompt_to_prompt",
    "solve_parity",
    "solve_prompt_game",
    "solve_rldl_game",
    "solve_rprompt_game",
]
