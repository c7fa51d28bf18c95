"""Finite-domain CSP solver with explanation-based backjumping (CBJ, CBJ on incomplete explanations, DBT)."""
from backjump.frontend import generate, load_model, parse_model, print_model
from backjump.models import Branching, Engine, Goal, ModelFile, SearchResult, Status
from backjump.search import SearchLimits, Solver, solve

__version__ = "1.0.0"

__all__ = [
    "Branching", "Engine", "Goal", "ModelFile", "SearchLimits", "SearchResult", "Solver", "Status",
    "generate", "load_model", "parse_model", "print_model", "solve",
]
