"""Sparse-set integer domain with O(1) membership and removal."""
from typing import Iterable


class SparseDomain:
    """
    Finite integer set stored as a dense array plus a position index.

    Live values occupy dense[0:size]. Removing a value swaps it behind the live
    prefix, so restoring `size` (with the saved bounds) restores the set exactly.
    The index is a dict, so memory follows the number of values, not their span.
    """

    __slots__ = ("dense", "where", "size", "lb", "ub")

    def __init__(self, values: Iterable[int]):
        vals = sorted(set(values))
        if not vals:
            raise ValueError("domain must not be empty")
        self.dense = list(vals)
        self.where = {v: i for i, v in enumerate(vals)}
        self.size = len(vals)
        self.lb = vals[0]
        self.ub = vals[-1]

    def __contains__(self, x: int) -> bool:
        pos = self.where.get(x)
        return pos is not None and pos < self.size

    def __len__(self) -> int:
        return self.size

    def initially_contains(self, x: int) -> bool:
        return x in self.where

    def values(self) -> list[int]:
        return sorted(self.dense[:self.size])

    def _swap_out(self, x: int):
        pos = self.where[x]
        last = self.size - 1
        y = self.dense[last]
        self.dense[last], self.dense[pos] = x, y
        self.where[x] = last
        self.where[y] = pos
        self.size = last

    def _lowest_from(self, v: int) -> int:
        """Smallest live value >= v; every live value must be >= v."""
        # short gaps are walked, long ones fall back to the live values
        for _ in range(self.size):
            if v in self:
                return v
            v += 1
        return min(self.dense[:self.size])

    def _highest_from(self, v: int) -> int:
        for _ in range(self.size):
            if v in self:
                return v
            v -= 1
        return max(self.dense[:self.size])

    def _live_between(self, lo: int, hi: int) -> list[int]:
        """Live values in [lo, hi], by whichever walk is shorter."""
        if hi - lo + 1 <= self.size:
            return [v for v in range(lo, hi + 1) if v in self]
        return [v for v in self.dense[:self.size] if lo <= v <= hi]

    def remove(self, x: int):
        """Remove a member, keeping at least one value. Bounds are updated."""
        self._swap_out(x)
        if x == self.lb:
            self.lb = self._lowest_from(x + 1)
        elif x == self.ub:
            self.ub = self._highest_from(x - 1)

    def remove_below(self, b: int):
        """Remove every value < b; at least one value >= b must exist."""
        for v in self._live_between(self.lb, b - 1):
            self._swap_out(v)
        self.lb = self._lowest_from(b)

    def remove_above(self, b: int):
        for v in self._live_between(b + 1, self.ub):
            self._swap_out(v)
        self.ub = self._highest_from(b)

    def assign(self, a: int):
        pos = self.where[a]
        y = self.dense[0]
        self.dense[0], self.dense[pos] = a, y
        self.where[a] = 0
        self.where[y] = pos
        self.size = 1
        self.lb = self.ub = a

    def restore(self, size: int, lb: int, ub: int):
        self.size = size
        self.lb = lb
        self.ub = ub

    def __repr__(self) -> str:
        vals = self.values()
        if vals and vals[-1] - vals[0] + 1 == len(vals):
            return f"[{vals[0]}..{vals[-1]}]"
        return "{" + ",".join(map(str, vals)) + "}"
