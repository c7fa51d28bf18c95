"""Trailed variable state: mutation operations, worlds and the failure context."""
import logging
from typing import Callable, Iterable, Optional, Sequence

from backjump.kernel.domain import SparseDomain
from backjump.kernel.events import Cause, Event, EventType, FailureContext, Outcome
from backjump.kernel.store import EventStore

logger = logging.getLogger(__name__)

UNCHANGED = Outcome.UNCHANGED
CHANGED = Outcome.CHANGED
FAILURE = Outcome.FAILURE


class WorldStackError(RuntimeError):
    pass


class Kernel:
    """
    Owns every domain, the event store and the trail.

    Each mutation records exactly one event of the strongest applicable type, or
    sets the failure context and records nothing when it would empty a domain.
    """

    def __init__(self, domains: Sequence[Iterable[int]]):
        self.domains: list[SparseDomain] = [SparseDomain(d) for d in domains]
        self.store = EventStore()
        self.failure: Optional[FailureContext] = None
        self.listener: Optional[Callable[[Event], None]] = None
        self._trail: list[tuple[int, int, int, int]] = []
        self._worlds: list[tuple[int, int, int]] = []
        self._stamp = [-1] * len(self.domains)
        self._world_id = 0
        self._next_world_id = 1

    # ---- read access ----

    @property
    def num_vars(self) -> int:
        return len(self.domains)

    def lb(self, v: int) -> int:
        return self.domains[v].lb

    def ub(self, v: int) -> int:
        return self.domains[v].ub

    def size(self, v: int) -> int:
        return self.domains[v].size

    def contains(self, v: int, x: int) -> bool:
        return x in self.domains[v]

    def values(self, v: int) -> list[int]:
        return self.domains[v].values()

    def is_fixed(self, v: int) -> bool:
        return self.domains[v].size == 1

    def snapshot(self) -> list[tuple[int, ...]]:
        return [tuple(d.values()) for d in self.domains]

    # ---- worlds ----

    @property
    def depth(self) -> int:
        return len(self._worlds)

    def push_world(self) -> int:
        self._worlds.append((len(self._trail), len(self.store), self._world_id))
        self._world_id = self._next_world_id
        self._next_world_id += 1
        return len(self._worlds)

    def pop_world(self):
        if not self._worlds:
            raise WorldStackError("pop_world at depth 0")
        mark, length, parent_id = self._worlds.pop()
        trail = self._trail
        domains = self.domains
        while len(trail) > mark:
            v, size, lb, ub = trail.pop()
            domains[v].restore(size, lb, ub)
        self.store.truncate(length)
        self._world_id = parent_id
        self.failure = None

    def _save(self, v: int, d: SparseDomain):
        if self._stamp[v] != self._world_id:
            self._stamp[v] = self._world_id
            self._trail.append((v, d.size, d.lb, d.ub))

    def _fail(self, v: int, cause: Cause) -> Outcome:
        self.failure = FailureContext(v, cause, self.store.tail)
        return FAILURE

    def _record(self, etype: EventType, v: int, cause: Cause, value: int,
                lo_old: int, up_old: int, d: SparseDomain):
        event = Event(etype, v, cause, value, lo_old, d.lb, up_old, d.ub)
        self.store.append(event)
        if self.listener is not None:
            self.listener(event)

    # ---- mutations ----

    def remove_value(self, v: int, x: int, cause: Cause) -> Outcome:
        d = self.domains[v]
        if x not in d:
            return UNCHANGED
        if d.size == 1:
            return self._fail(v, cause)
        self._save(v, d)
        lo, up = d.lb, d.ub
        d.remove(x)
        if d.size == 1:
            self._record(EventType.ASG, v, cause, d.lb, lo, up, d)
        elif x == lo:
            self._record(EventType.LOW, v, cause, d.lb, lo, up, d)
        elif x == up:
            self._record(EventType.UPP, v, cause, d.ub, lo, up, d)
        else:
            self._record(EventType.REM, v, cause, x, lo, up, d)
        return CHANGED

    def update_lower(self, v: int, b: int, cause: Cause) -> Outcome:
        d = self.domains[v]
        if b <= d.lb:
            return UNCHANGED
        if b > d.ub:
            return self._fail(v, cause)
        self._save(v, d)
        lo, up = d.lb, d.ub
        d.remove_below(b)
        if d.size == 1:
            self._record(EventType.ASG, v, cause, d.lb, lo, up, d)
        else:
            self._record(EventType.LOW, v, cause, d.lb, lo, up, d)
        return CHANGED

    def update_upper(self, v: int, b: int, cause: Cause) -> Outcome:
        d = self.domains[v]
        if b >= d.ub:
            return UNCHANGED
        if b < d.lb:
            return self._fail(v, cause)
        self._save(v, d)
        lo, up = d.lb, d.ub
        d.remove_above(b)
        if d.size == 1:
            self._record(EventType.ASG, v, cause, d.ub, lo, up, d)
        else:
            self._record(EventType.UPP, v, cause, d.ub, lo, up, d)
        return CHANGED

    def instantiate(self, v: int, a: int, cause: Cause) -> Outcome:
        d = self.domains[v]
        if a not in d:
            return self._fail(v, cause)
        if d.size == 1:
            return UNCHANGED
        self._save(v, d)
        lo, up = d.lb, d.ub
        d.assign(a)
        self._record(EventType.ASG, v, cause, a, lo, up, d)
        return CHANGED

    def events_backward(self, start: Optional[int] = None):
        return self.store.events_backward(start)
