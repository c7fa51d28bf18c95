"""Domain-change events, their causes and mutation outcomes."""
from enum import Enum, IntEnum
from typing import NamedTuple


class EventType(IntEnum):
    REM = 0
    ASG = 1
    LOW = 2
    UPP = 3


class CauseKind(IntEnum):
    CONSTRAINT = 0
    DECISION = 1
    REFUTATION = 2


class Outcome(Enum):
    UNCHANGED = "unchanged"
    CHANGED = "changed"
    FAILURE = "failure"


class Cause(NamedTuple):
    """Origin of an event: a constraint id, or the id of a decision / refuted decision."""
    kind: CauseKind
    ref: int

    @classmethod
    def constraint(cls, pid: int) -> "Cause":
        return cls(CauseKind.CONSTRAINT, pid)

    @classmethod
    def decision(cls, did: int) -> "Cause":
        return cls(CauseKind.DECISION, did)

    @classmethod
    def refutation(cls, did: int) -> "Cause":
        return cls(CauseKind.REFUTATION, did)


class Event(NamedTuple):
    """
    One recorded domain change.

    Every event carries the bounds of its variable before and after the change.
    `value` is the removed value for REM, the assigned value for ASG and the new
    bound for LOW/UPP.
    """
    type: EventType
    var: int
    cause: Cause
    value: int
    lo_old: int
    lo_new: int
    up_old: int
    up_new: int

    def removed_value(self) -> int:
        """The single value removed by a `remove_value` mutation that produced this event."""
        if self.type is EventType.REM:
            return self.value
        if self.type is EventType.LOW:
            return self.lo_old
        if self.type is EventType.UPP:
            return self.up_old
        # ASG from a two-value domain: the removed value is the other bound
        return self.lo_old if self.value == self.up_old else self.up_old

    def describe(self) -> str:
        if self.type is EventType.REM:
            payload = f"x={self.value}"
        elif self.type is EventType.LOW:
            payload = f"{self.lo_old}->{self.lo_new}"
        elif self.type is EventType.UPP:
            payload = f"{self.up_old}->{self.up_new}"
        else:
            payload = f"a={self.value} [{self.lo_old}..{self.up_old}]"
        return f"{self.type.name}(v{self.var}, {payload}, {self.cause.kind.name}:{self.cause.ref})"


class FailureContext(NamedTuple):
    var: int
    cause: Cause
    store_tail: int
