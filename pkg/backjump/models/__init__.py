from backjump.models.model import (
    ConstraintKind, ConstraintSpec, InvalidModelError, ModelFile, SolveGoal, VariableDecl,
)
from backjump.models.report import (
    CSV_FIELDS, Branching, Engine, EschemaMode, Goal, OutputFormat, RunReport, SearchResult, SearchStats,
    Status,
)
