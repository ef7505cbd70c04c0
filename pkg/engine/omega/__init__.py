from .buchi import BuchiAutomaton, FiniteAutomaton, finite_automaton, to_buchi
from .expression import Lasso, OmegaExpr, nullable, parse_omega, render, universal_omega

__all__ = [
    "BuchiAutomaton",
    "FiniteAutomaton",
    "Lasso",
    "OmegaExpr",
    "finite_automaton",
    "nullable",
    "parse_omega",
    "render",
    "to_buchi",
    "universal_omega",
]
