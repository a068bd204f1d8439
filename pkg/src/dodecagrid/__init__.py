"""Verification-grade simulator for a 3-state cellular automaton on the dodecagrid."""

from .rules import B, CellState, Context, R, Rule, RuleTable, W

__all__ = ["B", "CellState", "Context", "R", "Rule", "RuleTable", "W"]
__version__ = "0.1.0"
