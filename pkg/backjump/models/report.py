from pydantic import BaseModel
from typing import Optional
from enum import Enum


class Engine(str, Enum):
    std = "std"
    cbj = "cbj"
    cbj_i = "cbj-i"
    dbt = "dbt"


class Goal(str, Enum):
    first = "first"
    all = "all"
    decide = "decide"


class Status(str, Enum):
    sat = "SAT"
    unsat = "UNSAT"
    unknown = "UNKNOWN"


class Branching(str, Enum):
    mindom = "mindom"
    input = "input"


class EschemaMode(str, Enum):
    specific = "specific"
    default = "default"


class OutputFormat(str, Enum):
    human = "human"
    json = "json"
    csv = "csv"


# Column order of one bench row; fixed.
CSV_FIELDS = [
    "instance", "engine", "status", "nodes", "fails", "backjumps", "max_jump",
    "peak_depth", "solutions", "elapsed_ms", "timed_out",
]


class SearchStats(BaseModel):
    nodes: int = 0
    fails: int = 0
    backjumps: int = 0
    max_jump: int = 0
    peak_depth: int = 0
    solutions: int = 0
    elapsed_ms: float = 0.0
    timed_out: bool = False
    # explanation cost, reported in JSON only
    explanations: int = 0
    events_visited: int = 0


class SearchResult(BaseModel):
    status: Status
    stats: SearchStats
    solution: Optional[dict[str, int]] = None
    solutions: list[dict[str, int]] = []


class RunReport(BaseModel):
    instance: str
    engine: Engine
    status: Status
    nodes: int = 0
    fails: int = 0
    backjumps: int = 0
    max_jump: int = 0
    peak_depth: int = 0
    solutions: int = 0
    elapsed_ms: float = 0.0
    timed_out: bool = False
    explanations: int = 0
    events_visited: int = 0
    solution: Optional[dict[str, int]] = None

    @classmethod
    def from_result(cls, instance: str, engine: Engine, result: SearchResult) -> "RunReport":
        return cls(instance=instance, engine=engine, status=result.status,
                   solution=result.solution, **result.stats.model_dump())

    def csv_row(self) -> dict:
        data = self.model_dump(mode="json")
        return {k: data[k] for k in CSV_FIELDS}

    def json_dict(self) -> dict:
        return self.model_dump(mode="json")
