from pydantic import BaseModel, field_validator
from typing import Optional
from enum import Enum


class InvalidModelError(ValueError):
    pass


class ConstraintKind(str, Enum):
    eq = "eq"
    neq = "neq"
    leq = "leq"
    linear_leq = "linear_leq"
    linear_eq = "linear_eq"
    alldifferent = "alldifferent"
    forbidden = "forbidden"


OFFSET_KINDS = (ConstraintKind.eq, ConstraintKind.neq, ConstraintKind.leq)
LINEAR_KINDS = (ConstraintKind.linear_leq, ConstraintKind.linear_eq)


class SolveGoal(str, Enum):
    satisfy = "satisfy"
    all = "all"


class VariableDecl(BaseModel):
    name: str
    values: list[int]
    # declared as lo..hi rather than an explicit set (kept for printing)
    is_range: bool = False

    @field_validator("values")
    @classmethod
    def _sorted(cls, values: list[int]) -> list[int]:
        return sorted(set(values))


class ConstraintSpec(BaseModel):
    """
    One constraint statement over variable names.

    Offset kinds read `scope[0] ◊ scope[1] + constant`; linear kinds read
    Σ coefficients[i]·scope[i] (<= | =) constant; forbidden lists the excluded
    (scope[0], scope[1]) tuples.
    """
    kind: ConstraintKind
    scope: list[str]
    constant: int = 0
    coefficients: list[int] = []
    tuples: list[tuple[int, int]] = []

    def check(self):
        kind = self.kind
        if kind in OFFSET_KINDS or kind == ConstraintKind.forbidden:
            if len(self.scope) != 2:
                raise InvalidModelError(f"{kind.value} takes exactly 2 variables, got {len(self.scope)}")
            if self.scope[0] == self.scope[1]:
                raise InvalidModelError(f"{kind.value} over a repeated variable {self.scope[0]}")
        elif kind in LINEAR_KINDS:
            if not self.scope:
                raise InvalidModelError("linear constraint without variables")
            if len(self.coefficients) != len(self.scope):
                raise InvalidModelError("linear constraint: coefficient and variable counts differ")
            if any(a == 0 for a in self.coefficients):
                raise InvalidModelError("linear constraint: zero coefficient")
        elif kind == ConstraintKind.alldifferent and len(self.scope) < 2:
            raise InvalidModelError("alldifferent needs at least 2 variables")


class ModelFile(BaseModel):
    variables: list[VariableDecl] = []
    constraints: list[ConstraintSpec] = []
    goal: SolveGoal = SolveGoal.satisfy
    name: Optional[str] = None

    def check(self) -> "ModelFile":
        """Raise InvalidModelError on the first structural problem, else return self."""
        seen = set()
        for decl in self.variables:
            if not decl.values:
                raise InvalidModelError(f"variable {decl.name} has an empty domain")
            if decl.name in seen:
                raise InvalidModelError(f"variable {decl.name} declared twice")
            seen.add(decl.name)
        for c in self.constraints:
            for v in c.scope:
                if v not in seen:
                    raise InvalidModelError(f"undeclared variable {v}")
            c.check()
        return self

    def index(self) -> dict[str, int]:
        return {decl.name: i for i, decl in enumerate(self.variables)}

    def domains(self) -> list[list[int]]:
        return [list(decl.values) for decl in self.variables]

    @property
    def num_vars(self) -> int:
        return len(self.variables)
