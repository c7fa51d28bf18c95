from backjump.explain.explanation import Explanation, Residual, deepest_decision, merge
from backjump.explain.rules import Modif, RuleEntry, RuleSet, covers

__all__ = [
    "Explanation", "Modif", "Residual", "RuleEntry", "RuleSet",
    "covers", "deepest_decision", "merge",
]
