"""
Backward scan of the event store selecting the events relevant to a failure.

Starting from a DOM rule on the emptied variable, events are visited newest
first; an event satisfying the current rule set charges its cause: decisions are
added to the explanation, refutations merge their stored explanation (rules
included) and constraints extend the rule set with their e-schema. With
`pe=True` the scan stops at the first decision and keeps its rule set so the
scan can be resumed later.
"""
import logging
from enum import Enum
from typing import TYPE_CHECKING, Optional, Protocol, Sequence

from backjump.explain.explanation import Explanation, Residual
from backjump.explain.rules import Modif, RuleSet
from backjump.kernel.events import CauseKind, EventType
from backjump.kernel.state import Kernel

if TYPE_CHECKING:
    from backjump.propagation.propagator import Propagator, Rule

logger = logging.getLogger(__name__)


class Dependency(str, Enum):
    DEPENDS = "depends"
    INDEPENDENT = "independent"


class DecisionLookup(Protocol):
    """What the explainer needs to know about the decisions on the current path."""

    def position_of(self, decision_id: int) -> int: ...

    def event_index_of(self, decision_id: int) -> Optional[int]: ...

    def record_of(self, decision_id: int) -> Explanation: ...


class Explainer:

    def __init__(self, kernel: Kernel, propagators: Sequence["Propagator"], lookup: DecisionLookup,
                 record_scans: bool = False):
        self.kernel = kernel
        self.propagators = propagators
        self.lookup = lookup
        self.visited = 0
        self.calls = 0
        # when set, indices visited by the latest explain/resume call are kept in last_scan
        self.record_scans = record_scans
        self.last_scan: list[int] = []

    def _add_rules(self, rules: RuleSet, additions: Sequence["Rule"]):
        domains = self.kernel.domains
        for rule in additions:
            if rule.mask:
                d = domains[rule.var]
                rules.add_mask(rule.var, rule.mask, d.lb, d.ub)
            if rule.removed is not None:
                rules.add_removed(rule.var, rule.removed)

    def _merge_refutation(self, e: Explanation, rules: RuleSet, decision_id: int):
        record = self.lookup.record_of(decision_id)
        e.decisions |= record.decisions
        e.constraints |= record.constraints
        if record.residual is not None:
            rules.union(record.residual.rules)

    def explain(self, pe: bool) -> Explanation:
        """Explain the failure held in the kernel's failure context."""
        failure = self.kernel.failure
        if failure is None:
            raise ValueError("no failure to explain")
        self.calls += 1
        self.last_scan = []
        e = Explanation()
        rules = RuleSet()
        rules.add_mask(failure.var, Modif.DOM)
        cause = failure.cause
        start = len(self.kernel.store) - 1
        if cause.kind is CauseKind.DECISION:
            e.add_decision(self.lookup.position_of(cause.ref))
            if pe:
                e.residual = Residual(rules, start + 1)
                return e
        elif cause.kind is CauseKind.REFUTATION:
            self._merge_refutation(e, rules, cause.ref)
        else:
            prop = self.propagators[cause.ref]
            e.constraints.add(prop.id)
            self._add_rules(rules, prop.explain_wipe(self.kernel, failure.var))

        stopped_at = self._scan(e, rules, start, pe, None)
        if pe:
            e.residual = Residual(rules, stopped_at)
        logger.debug("explained failure on v%d: %s", failure.var, e)
        return e

    def resume(self, e: Explanation, until: Optional[int] = None) -> Dependency:
        """
        Continue an early-stopped scan.

        With `until` (a decision id) the scan stops at that decision's event and
        reports whether the explanation depends on it; without it the scan runs to
        the bottom of the store and the explanation becomes complete.
        """
        if e.residual is None:
            raise ValueError("explanation has no residual scan state")
        self.last_scan = []
        residual = e.residual
        target = None
        if until is not None:
            position = self.lookup.position_of(until)
            if e.has_decision(position):
                return Dependency.DEPENDS
            target = self.lookup.event_index_of(until)
            if target is None or target > residual.scan_index - 1 or not residual.rules:
                return Dependency.INDEPENDENT
        elif not residual.rules:
            residual.scan_index = 0
            return Dependency.INDEPENDENT

        residual.scan_index = self._scan(e, residual.rules, residual.scan_index - 1, False, target)
        if until is not None and e.has_decision(self.lookup.position_of(until)):
            return Dependency.DEPENDS
        return Dependency.INDEPENDENT

    def _scan(self, e: Explanation, rules: RuleSet, start: int, pe: bool,
              target: Optional[int]) -> int:
        """Visit store[start] down to store[0] (or to store[target]); return the last visited index."""
        store = self.kernel.store
        props = self.propagators
        lookup = self.lookup
        record = self.record_scans
        last = start + 1
        for i in range(start, -1, -1):
            ev = store[i]
            self.visited += 1
            if record:
                self.last_scan.append(i)
            last = i
            if rules.satisfies(ev):
                cause = ev.cause
                if cause.kind is CauseKind.DECISION:
                    e.add_decision(lookup.position_of(cause.ref))
                    if pe:
                        break
                elif cause.kind is CauseKind.REFUTATION:
                    self._merge_refutation(e, rules, cause.ref)
                else:
                    prop = props[cause.ref]
                    e.constraints.add(prop.id)
                    self._add_rules(rules, prop.explain_event(self.kernel, ev))
                if ev.type is EventType.REM:
                    rules.discard_removed(ev.var, ev.value)
            if i == target:
                break
        return last
