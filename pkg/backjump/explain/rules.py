"""Event selection rules and the covering test between a rule entry and an event."""
from enum import IntFlag
from typing import Iterator, Optional

from backjump.kernel.events import Event, EventType

_REM = EventType.REM
_ASG = EventType.ASG
_LOW = EventType.LOW
_UPP = EventType.UPP


class Modif(IntFlag):
    NONE = 0
    DOM = 1
    LB = 2
    UB = 4


class RuleEntry:
    """
    All rules on one variable: a modification mask plus a set of tracked removed values.

    `lb_mark`/`ub_mark` are the variable's bounds when the LB/UB rule was added;
    a REM event is relevant to LB (UB) iff it removed a value below (above) the mark.
    """

    __slots__ = ("var", "mask", "removed", "lb_mark", "ub_mark")

    def __init__(self, var: int, mask: Modif = Modif.NONE, removed: Optional[set[int]] = None,
                 lb_mark: Optional[int] = None, ub_mark: Optional[int] = None):
        self.var = var
        self.mask = mask
        self.removed = set(removed) if removed else set()
        self.lb_mark = lb_mark
        self.ub_mark = ub_mark

    def __bool__(self) -> bool:
        return bool(self.mask) or bool(self.removed)

    def copy(self) -> "RuleEntry":
        return RuleEntry(self.var, self.mask, self.removed, self.lb_mark, self.ub_mark)

    def add_mask(self, mask: Modif, lb: int, ub: int):
        if self.mask & Modif.DOM:
            return
        if mask & Modif.DOM:
            self.mask = Modif.DOM
            self.removed.clear()
            self.lb_mark = self.ub_mark = None
            return
        if mask & Modif.LB:
            self.lb_mark = lb if self.lb_mark is None else max(self.lb_mark, lb)
        if mask & Modif.UB:
            self.ub_mark = ub if self.ub_mark is None else min(self.ub_mark, ub)
        self.mask |= mask

    def add_removed(self, x: int):
        if not self.mask & Modif.DOM:
            self.removed.add(x)

    def absorb(self, other: "RuleEntry"):
        if self.mask & Modif.DOM:
            return
        if other.mask & Modif.DOM:
            self.mask = Modif.DOM
            self.removed.clear()
            self.lb_mark = self.ub_mark = None
            return
        if other.mask & Modif.LB:
            self.lb_mark = other.lb_mark if self.lb_mark is None else max(self.lb_mark, other.lb_mark)
        if other.mask & Modif.UB:
            self.ub_mark = other.ub_mark if self.ub_mark is None else min(self.ub_mark, other.ub_mark)
        self.mask |= other.mask
        self.removed |= other.removed

    def describe(self) -> str:
        parts = []
        if self.mask & Modif.DOM:
            parts.append("DOM")
        else:
            if self.mask & Modif.LB:
                parts.append(f"LB<{self.lb_mark}")
            if self.mask & Modif.UB:
                parts.append(f"UB>{self.ub_mark}")
            if self.removed:
                parts.append("r{" + ",".join(map(str, sorted(self.removed))) + "}")
        return f"v{self.var}:" + "|".join(parts)

    def __repr__(self) -> str:
        return f"RuleEntry({self.describe()})"


def covers(entry: RuleEntry, ev: Event) -> bool:
    """True iff `ev` may have contributed a modification tracked by `entry` (same variable)."""
    mask = entry.mask
    if mask & Modif.DOM:
        return True
    t = ev.type
    if mask & Modif.LB:
        if t is _LOW:
            return True
        if t is _ASG:
            if ev.lo_old < ev.value:
                return True
        elif t is _REM and ev.value < entry.lb_mark:
            return True
    if mask & Modif.UB:
        if t is _UPP:
            return True
        if t is _ASG:
            if ev.up_old > ev.value:
                return True
        elif t is _REM and ev.value > entry.ub_mark:
            return True
    removed = entry.removed
    if removed:
        if t is _REM:
            return ev.value in removed
        if t is _LOW:
            lo, hi = ev.lo_old, ev.lo_new - 1
        elif t is _UPP:
            lo, hi = ev.up_new + 1, ev.up_old
        else:
            lo, hi = ev.lo_old, ev.up_old
            a = ev.value
            return any(lo <= x <= hi and x != a for x in removed)
        return any(lo <= x <= hi for x in removed)
    return False


class RuleSet:
    """Per-variable rule entries. Adding is monotone; only satisfied removed values shrink it."""

    def __init__(self):
        self.entries: dict[int, RuleEntry] = {}

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RuleEntry]:
        return iter(self.entries.values())

    def get(self, var: int) -> Optional[RuleEntry]:
        return self.entries.get(var)

    def _entry(self, var: int) -> RuleEntry:
        entry = self.entries.get(var)
        if entry is None:
            entry = self.entries[var] = RuleEntry(var)
        return entry

    def add_mask(self, var: int, mask: Modif, lb: int = 0, ub: int = 0):
        self._entry(var).add_mask(mask, lb, ub)

    def add_removed(self, var: int, x: int):
        self._entry(var).add_removed(x)

    def discard_removed(self, var: int, x: int):
        entry = self.entries.get(var)
        if entry is not None and x in entry.removed:
            entry.removed.discard(x)
            if not entry:
                del self.entries[var]

    def satisfies(self, ev: Event) -> bool:
        entry = self.entries.get(ev.var)
        return entry is not None and covers(entry, ev)

    def union(self, other: "RuleSet"):
        for var, entry in other.entries.items():
            mine = self.entries.get(var)
            if mine is None:
                self.entries[var] = entry.copy()
            else:
                mine.absorb(entry)

    def copy(self) -> "RuleSet":
        clone = RuleSet()
        clone.entries = {v: e.copy() for v, e in self.entries.items()}
        return clone

    def describe(self) -> str:
        return "; ".join(self.entries[v].describe() for v in sorted(self.entries))
