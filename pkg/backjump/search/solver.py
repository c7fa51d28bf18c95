"""
Depth-first search with 2-way decisions and four ways of handling a failure.

STD backtracks chronologically. CBJ explains the failure (complete scan) and
jumps back to the deepest explaining decision, refuting it with the rest of the
explanation as label. CBJ-I does the same with an early-stopped scan. DBT jumps
like CBJ-I but keeps the intervening decisions, and the intervening refutations
whose labels do not depend on the refuted decision.
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, Optional

from backjump.constraints import build_propagators
from backjump.explain.explainer import Dependency, Explainer
from backjump.explain.explanation import Explanation, deepest_decision
from backjump.kernel.events import Cause, Outcome
from backjump.kernel.state import Kernel
from backjump.models.model import ConstraintKind, ModelFile
from backjump.models.report import (
    Branching, Engine, EschemaMode, Goal, SearchResult, SearchStats, Status,
)
from backjump.propagation.engine import PropagationEngine, PropagationStatus
from backjump.search.branching import select_value, select_variable

logger = logging.getLogger(__name__)


@dataclass
class SearchLimits:
    timeout_ms: Optional[int] = None
    max_nodes: Optional[int] = None


@dataclass
class Decision:
    var: int
    value: int
    position: int
    id: int
    # store index of the event this entry posted (assignment or refutation), None if it changed nothing
    event_index: Optional[int] = None


@dataclass
class PathEntry:
    decision: Decision
    refuted: bool = False
    record: Optional[Explanation] = None


Observer = Callable[["Solver", Explanation], None]


class Solver:
    """
    One search over one model. Path entries map one-to-one onto kernel worlds:
    the entry at position p lives in world p and holds either the decision taken
    there or its refutation.
    """

    def __init__(self, model: ModelFile, engine: Engine = Engine.cbj,
                 branching: Branching = Branching.mindom, goal: Goal = Goal.first,
                 limits: Optional[SearchLimits] = None,
                 eschema_mode: EschemaMode = EschemaMode.specific,
                 observer: Optional[Observer] = None, record_scans: bool = False):
        engine = Engine(engine)
        goal = Goal(goal)
        if goal == Goal.all and engine != Engine.std:
            raise ValueError(f"all-solutions search requires the std engine, got {engine.value}")
        self.model = model
        self.engine = engine
        self.branching = Branching(branching)
        self.goal = goal
        self.limits = limits or SearchLimits()
        self.observer = observer
        self.kernel = Kernel(model.domains())
        self.propagators = build_propagators(model, eschema_mode)
        self.propagation = PropagationEngine(self.kernel, self.propagators)
        self.explainer = Explainer(self.kernel, self.propagators, self, record_scans=record_scans)
        self.path: list[PathEntry] = []
        self.by_id: dict[int, PathEntry] = {}
        self.stats = SearchStats()
        self.failed = False
        self.certificate: Optional[Explanation] = None
        self.solutions: list[dict[str, int]] = []
        self._next_id = 0
        self._names = [decl.name for decl in model.variables]

    # ---- decision lookup used by the explainer ----

    def position_of(self, decision_id: int) -> int:
        return self.by_id[decision_id].decision.position

    def event_index_of(self, decision_id: int) -> Optional[int]:
        return self.by_id[decision_id].decision.event_index

    def record_of(self, decision_id: int) -> Explanation:
        record = self.by_id[decision_id].record
        return record if record is not None else Explanation()

    def decisions_of(self, e: Explanation) -> list[tuple[int, int]]:
        """(var, value) of the path decisions whose positions are set in `e`."""
        out = []
        for p in e.positions():
            d = self.path[p - 1].decision
            out.append((d.var, d.value))
        return out

    # ---- path primitives ----

    @property
    def depth(self) -> int:
        return len(self.path)

    def _push_entry(self, entry: PathEntry):
        self.kernel.push_world()
        self.path.append(entry)
        self.by_id[entry.decision.id] = entry
        entry.decision.position = len(self.path)
        if self.depth > self.stats.peak_depth:
            self.stats.peak_depth = self.depth

    def _pop_entry(self) -> PathEntry:
        entry = self.path.pop()
        del self.by_id[entry.decision.id]
        self.kernel.pop_world()
        return entry

    def _settle(self, outcome: Outcome) -> bool:
        if outcome is Outcome.FAILURE:
            self.failed = True
            return False
        if self.propagation.propagate() is PropagationStatus.FAILURE:
            self.failed = True
            return False
        return True

    def root_propagate(self) -> bool:
        if self.propagation.propagate_all() is PropagationStatus.FAILURE:
            self.failed = True
            return False
        return True

    def decide(self, var: int, value: int, decision: Optional[Decision] = None) -> bool:
        """Open a world and post var = value; False if this or its propagation fails."""
        if decision is None:
            decision = Decision(var, value, 0, self._next_id)
            self._next_id += 1
        entry = PathEntry(decision)
        self._push_entry(entry)
        store = self.kernel.store
        before = len(store)
        outcome = self.kernel.instantiate(var, value, Cause.decision(decision.id))
        decision.event_index = before if len(store) > before else None
        return self._settle(outcome)

    def refute(self, decision: Decision, record: Optional[Explanation]) -> bool:
        """Open a world and post var ≠ value, labeled with `record`."""
        entry = PathEntry(decision, refuted=True, record=record)
        self._push_entry(entry)
        store = self.kernel.store
        before = len(store)
        if record is not None and record.residual is not None:
            # the label's scan continues below the refutation event
            record.residual.scan_index = before
        outcome = self.kernel.remove_value(decision.var, decision.value, Cause.refutation(decision.id))
        decision.event_index = before if len(store) > before else None
        return self._settle(outcome)

    # ---- failure handling ----

    def _explain(self, pe: bool) -> tuple[Optional[int], Explanation]:
        e = self.explainer.explain(pe)
        q = deepest_decision(e)
        if q is None and pe:
            self.explainer.resume(e)
            q = deepest_decision(e)
        if self.observer is not None:
            self.observer(self, e)
        if q is None:
            self.certificate = e
        return q, e

    def _jump_stats(self, q: int):
        jump = self.depth - q
        if jump >= 1:
            self.stats.backjumps += 1
            self.stats.max_jump = max(self.stats.max_jump, jump)

    def backtrack_std(self) -> bool:
        """Refute the deepest positive decision; False when none is left."""
        while self.path and self.path[-1].refuted:
            self._pop_entry()
        if not self.path:
            return False
        entry = self._pop_entry()
        self.failed = False
        self.refute(entry.decision, None)
        return True

    def backjump(self, pe: bool) -> bool:
        q, e = self._explain(pe)
        if q is None:
            return False
        self._jump_stats(q)
        target = self.path[q - 1]
        logger.debug("backjump from depth %d to %d on v%d=%d", self.depth, q,
                     target.decision.var, target.decision.value)
        while self.depth >= q:
            self._pop_entry()
        self.failed = False
        self.refute(target.decision, e.without(q))
        return True

    def dynamic_backtrack(self) -> bool:
        q, e = self._explain(True)
        if q is None:
            return False
        self._jump_stats(q)
        target = self.path[q - 1]
        kept: list[PathEntry] = []
        for entry in self.path[q:]:
            if not entry.refuted:
                kept.append(entry)
                continue
            if entry.record.residual is None:
                dependency = Dependency.DEPENDS if entry.record.has_decision(q) else Dependency.INDEPENDENT
            else:
                dependency = self.explainer.resume(entry.record, target.decision.id)
            if dependency is Dependency.INDEPENDENT:
                kept.append(entry)
            else:
                logger.debug("dbt: v%d!=%d depends on position %d, reopened",
                             entry.decision.var, entry.decision.value, q)
        while self.depth >= q:
            self._pop_entry()
        self.failed = False
        if not self.refute(target.decision, e.without(q)):
            return True
        mapping: dict[int, int] = {}
        for entry in kept:
            d = entry.decision
            mapping[d.position] = self.depth + 1
            if entry.refuted:
                ok = self.refute(d, entry.record.remap(mapping))
            else:
                ok = self.decide(d.var, d.value, d)
            if not ok:
                break
        return True

    def handle_failure(self) -> bool:
        """Dispatch on the engine; False when the search space is exhausted."""
        self.stats.fails += 1
        if self.engine == Engine.std:
            return self.backtrack_std()
        if self.engine == Engine.cbj:
            return self.backjump(False)
        if self.engine == Engine.cbj_i:
            return self.backjump(True)
        return self.dynamic_backtrack()

    # ---- main loop ----

    def _limit_reached(self, started: float) -> bool:
        limits = self.limits
        if limits.max_nodes is not None and self.stats.nodes >= limits.max_nodes:
            return True
        if limits.timeout_ms is not None:
            return (time.perf_counter() - started) * 1000 > limits.timeout_ms
        return False

    def current_solution(self) -> dict[str, int]:
        kernel = self.kernel
        return {name: kernel.lb(v) for v, name in enumerate(self._names)}

    def _finish(self, status: Status, started: float) -> SearchResult:
        stats = self.stats
        stats.solutions = len(self.solutions)
        stats.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
        stats.explanations = self.explainer.calls
        stats.events_visited = self.explainer.visited
        solution = None
        if status == Status.sat and self.goal != Goal.decide:
            solution = self.solutions[0]
        logger.info("%s: %s after %d nodes, %d fails", self.engine.value, status.value,
                    stats.nodes, stats.fails)
        return SearchResult(status=status, stats=stats, solution=solution,
                            solutions=self.solutions if self.goal == Goal.all else [])

    def solve(self) -> SearchResult:
        started = time.perf_counter()
        logger.info("solving %s with %s (%s, %s)", self.model.name or "model", self.engine.value,
                    self.branching.value, self.goal.value)
        kernel = self.kernel
        if not self.root_propagate():
            self.stats.fails += 1
            if self.engine != Engine.std:
                self._explain(False)
            return self._finish(Status.unsat, started)

        while True:
            if self._limit_reached(started):
                self.stats.timed_out = True
                return self._finish(Status.unknown, started)
            if self.failed:
                if not self.handle_failure():
                    status = Status.sat if self.solutions else Status.unsat
                    return self._finish(status, started)
                continue
            var = select_variable(kernel, self.branching)
            if var is None:
                solution = self.current_solution()
                self.solutions.append(solution)
                if self.goal != Goal.all:
                    return self._finish(Status.sat, started)
                if not self.backtrack_std():
                    return self._finish(Status.sat, started)
                continue
            self.stats.nodes += 1
            self.decide(var, select_value(kernel, var))


def solve(model: ModelFile, engine: Engine = Engine.cbj, branching: Branching = Branching.mindom,
          goal: Goal = Goal.first, limits: Optional[SearchLimits] = None,
          eschema_mode: EschemaMode = EschemaMode.specific) -> SearchResult:
    return Solver(model, engine, branching, goal, limits, eschema_mode).solve()


def replay_fails(model: ModelFile, decisions: list[tuple[int, int]]) -> bool:
    """Post `decisions` from the root of a fresh solver; True iff propagation fails on the way."""
    solver = Solver(model, Engine.std)
    if not solver.root_propagate():
        return True
    for var, value in decisions:
        if not solver.decide(var, value):
            return True
    return False


def check_solution(model: ModelFile, solution: dict[str, int]) -> bool:
    """Evaluate every constraint statement directly on `solution`, without propagators."""
    for decl in model.variables:
        if solution.get(decl.name) not in decl.values:
            return False
    for spec in model.constraints:
        vals = [solution[name] for name in spec.scope]
        kind = spec.kind
        if kind == ConstraintKind.eq:
            ok = vals[0] == vals[1] + spec.constant
        elif kind == ConstraintKind.neq:
            ok = vals[0] != vals[1] + spec.constant
        elif kind == ConstraintKind.leq:
            ok = vals[0] <= vals[1] + spec.constant
        elif kind == ConstraintKind.linear_leq:
            ok = sum(a * v for a, v in zip(spec.coefficients, vals)) <= spec.constant
        elif kind == ConstraintKind.linear_eq:
            ok = sum(a * v for a, v in zip(spec.coefficients, vals)) == spec.constant
        elif kind == ConstraintKind.alldifferent:
            ok = len(set(vals)) == len(vals)
        else:
            ok = (vals[0], vals[1]) not in {tuple(t) for t in spec.tuples}
        if not ok:
            return False
    return True
