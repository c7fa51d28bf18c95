"""Explanations: decision bitset, constraint set and optional residual scan state."""
from dataclasses import dataclass, field
from typing import Optional

from backjump.explain.rules import RuleSet


@dataclass
class Residual:
    rules: RuleSet
    scan_index: int

    def copy(self) -> "Residual":
        return Residual(self.rules.copy(), self.scan_index)


@dataclass
class Explanation:
    """
    Decisions are a bitset over path positions (bit p = decision at depth p).
    `residual` is present only for explanations computed with an early stop.
    """
    decisions: int = 0
    constraints: set[int] = field(default_factory=set)
    residual: Optional[Residual] = None

    def add_decision(self, position: int):
        self.decisions |= 1 << position

    def has_decision(self, position: int) -> bool:
        return bool(self.decisions >> position & 1)

    def positions(self) -> list[int]:
        bits = self.decisions
        out = []
        p = 0
        while bits:
            if bits & 1:
                out.append(p)
            bits >>= 1
            p += 1
        return out

    def copy(self) -> "Explanation":
        return Explanation(self.decisions, set(self.constraints),
                           self.residual.copy() if self.residual else None)

    def without(self, position: int) -> "Explanation":
        clone = self.copy()
        clone.decisions &= ~(1 << position)
        return clone

    def remap(self, mapping: dict[int, int]) -> "Explanation":
        """Renumber decision positions; positions absent from `mapping` keep their number."""
        clone = self.copy()
        bits = 0
        for p in self.positions():
            bits |= 1 << mapping.get(p, p)
        clone.decisions = bits
        return clone

    def is_complete(self) -> bool:
        return self.residual is None or not self.residual.rules

    def dump(self) -> str:
        if self.residual is None:
            residual = "{}"
        else:
            rules = self.residual.rules.describe()
            residual = "{scan=" + str(self.residual.scan_index) + ("; " + rules if rules else "") + "}"
        return (f"decisions={self.positions()}, constraints={sorted(self.constraints)}, "
                f"residual={residual}")

    def __str__(self) -> str:
        return self.dump()


def merge(target: Explanation, source: Explanation):
    """Union `source` into `target`, rules included."""
    target.decisions |= source.decisions
    target.constraints |= source.constraints
    if source.residual is None:
        return
    if target.residual is None:
        target.residual = source.residual.copy()
    else:
        target.residual.rules.union(source.residual.rules)
        target.residual.scan_index = min(target.residual.scan_index, source.residual.scan_index)


def deepest_decision(e: Explanation) -> Optional[int]:
    if not e.decisions:
        return None
    return e.decisions.bit_length() - 1

