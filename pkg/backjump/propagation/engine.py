"""Event-driven propagation to a fixpoint."""
import logging
from collections import deque
from enum import Enum
from typing import Iterable, Optional, Sequence

from backjump.kernel.events import CauseKind, Event
from backjump.kernel.state import Kernel
from backjump.propagation.propagator import Propagator

logger = logging.getLogger(__name__)


class PropagationStatus(str, Enum):
    FIXPOINT = "fixpoint"
    FAILURE = "failure"


class PropagationEngine:
    """
    FIFO queue of propagators, without duplicates.

    The kernel calls `on_event` for every recorded event; every propagator watching
    the event's variable is scheduled, except the one that produced the event.
    """

    def __init__(self, kernel: Kernel, propagators: Sequence[Propagator]):
        self.kernel = kernel
        self.propagators = list(propagators)
        self.watchers: list[list[int]] = [[] for _ in range(kernel.num_vars)]
        for p in self.propagators:
            for v in dict.fromkeys(p.scope):
                self.watchers[v].append(p.id)
        self.queue: deque[int] = deque()
        self._queued = [False] * len(self.propagators)
        self.filter_calls = 0
        kernel.listener = self.on_event

    def on_event(self, event: Event):
        cause = event.cause
        own = cause.ref if cause.kind is CauseKind.CONSTRAINT else -1
        queued = self._queued
        for pid in self.watchers[event.var]:
            if pid != own and not queued[pid]:
                queued[pid] = True
                self.queue.append(pid)

    def schedule(self, propagators: Iterable[Propagator]):
        for p in propagators:
            if not self._queued[p.id]:
                self._queued[p.id] = True
                self.queue.append(p.id)

    def clear(self):
        for pid in self.queue:
            self._queued[pid] = False
        self.queue.clear()

    def propagate(self, seed: Optional[Iterable[Propagator]] = None) -> PropagationStatus:
        if seed is not None:
            self.schedule(seed)
        kernel = self.kernel
        props = self.propagators
        queue = self.queue
        while queue:
            pid = queue.popleft()
            self._queued[pid] = False
            self.filter_calls += 1
            if not props[pid].filter(kernel):
                self.clear()
                return PropagationStatus.FAILURE
        return PropagationStatus.FIXPOINT

    def propagate_all(self) -> PropagationStatus:
        return self.propagate(self.propagators)
