from backjump.propagation.engine import PropagationEngine, PropagationStatus
from backjump.propagation.propagator import Propagator, Rule, bounds, dom, lower, removed, upper

__all__ = [
    "PropagationEngine", "PropagationStatus", "Propagator", "Rule",
    "bounds", "dom", "lower", "removed", "upper",
]
