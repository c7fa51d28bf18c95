"""Propagator contract: filtering, explanation schemas and a direct checker."""
from abc import ABC, abstractmethod
from typing import NamedTuple, Optional, Sequence

from backjump.explain.rules import Modif
from backjump.kernel.events import Cause, Event
from backjump.kernel.state import Kernel


class Rule(NamedTuple):
    """One rule addition returned by an e-schema: a modification mask or a tracked value."""
    var: int
    mask: Modif = Modif.NONE
    removed: Optional[int] = None


def dom(v: int) -> Rule:
    return Rule(v, Modif.DOM)


def lower(v: int) -> Rule:
    return Rule(v, Modif.LB)


def upper(v: int) -> Rule:
    return Rule(v, Modif.UB)


def bounds(v: int) -> Rule:
    return Rule(v, Modif.LB | Modif.UB)


def removed(v: int, x: int) -> Rule:
    return Rule(v, Modif.NONE, x)


class Propagator(ABC):
    """
    A constraint's filtering procedure.

    `filter` runs to its own local fixpoint and returns False as soon as a kernel
    mutation reports FAILURE. `eschema` maps an event this propagator produced to
    the rules selecting the earlier events that entailed it.
    """

    kind = "constraint"

    def __init__(self, pid: int, scope: Sequence[int]):
        self.id = pid
        self.scope = list(scope)
        self.cause = Cause.constraint(pid)
        self.use_default_eschema = False

    @abstractmethod
    def filter(self, kernel: Kernel) -> bool:
        ...

    @abstractmethod
    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        """Evaluate the constraint on a full assignment, independently of filtering."""

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return self.eschema_default(event)

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        """Rules explaining a failure of this propagator that would have emptied `var`."""
        return [dom(v) for v in self.scope]

    def eschema_default(self, event: Optional[Event] = None) -> list[Rule]:
        return [dom(v) for v in self.scope]

    def explain_event(self, kernel: Kernel, event: Event) -> list[Rule]:
        if self.use_default_eschema:
            return self.eschema_default(event)
        return self.eschema(kernel, event)

    def explain_wipe(self, kernel: Kernel, var: int) -> list[Rule]:
        if self.use_default_eschema:
            return self.eschema_default()
        return self.wipe_rules(kernel, var)

    def __repr__(self) -> str:
        return f"{self.kind}#{self.id}{tuple(self.scope)}"
