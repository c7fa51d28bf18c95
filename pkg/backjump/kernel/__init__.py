from backjump.kernel.domain import SparseDomain
from backjump.kernel.events import Cause, CauseKind, Event, EventType, FailureContext, Outcome
from backjump.kernel.state import Kernel, WorldStackError
from backjump.kernel.store import EventStore

__all__ = [
    "Cause", "CauseKind", "Event", "EventStore", "EventType", "FailureContext",
    "Kernel", "Outcome", "SparseDomain", "WorldStackError",
]
