"""Linear constraints Σ aᵢ·vᵢ ≤ b and Σ aᵢ·vᵢ = b, bounds consistent."""
from typing import Sequence

from backjump.kernel.events import Event, EventType, Outcome
from backjump.kernel.state import Kernel
from backjump.propagation.propagator import Propagator, Rule, bounds, lower, upper

FAILURE = Outcome.FAILURE
CHANGED = Outcome.CHANGED


def merge_terms(coefficients: Sequence[int], variables: Sequence[int]) -> list[tuple[int, int]]:
    """Sum coefficients of repeated variables; drop the terms that cancel out."""
    merged: dict[int, int] = {}
    for a, v in zip(coefficients, variables):
        merged[v] = merged.get(v, 0) + a
    return [(a, v) for v, a in merged.items() if a != 0]


def _min_term(kernel: Kernel, a: int, v: int) -> int:
    return a * kernel.lb(v) if a > 0 else a * kernel.ub(v)


def _filter_leq(kernel: Kernel, terms: list[tuple[int, int]], b: int, cause) -> bool:
    """Tighten Σ a·v ≤ b until no bound moves."""
    while True:
        total = sum(_min_term(kernel, a, v) for a, v in terms)
        progress = False
        for a, v in terms:
            slack = b - (total - _min_term(kernel, a, v))
            if a > 0:
                out = kernel.update_upper(v, slack // a, cause)
            else:
                out = kernel.update_lower(v, -((-slack) // a), cause)
            if out is FAILURE:
                return False
            if out is CHANGED:
                progress = True
                total = sum(_min_term(kernel, a2, v2) for a2, v2 in terms)
        if not progress:
            return True


def _support_rules(terms: list[tuple[int, int]], var: int, sign: int) -> list[Rule]:
    """
    Rules selecting the bounds that made up the minimum of the other terms.

    `sign` is +1 for the ≤ direction and -1 for the ≥ direction (coefficients negated).
    """
    rules = []
    for a, v in terms:
        if v == var:
            continue
        rules.append(lower(v) if a * sign > 0 else upper(v))
    return rules


class LinearLeq(Propagator):

    kind = "linear_leq"

    def __init__(self, pid: int, coefficients: Sequence[int], variables: Sequence[int], b: int):
        self.terms = merge_terms(coefficients, variables)
        super().__init__(pid, [v for _, v in self.terms])
        self.b = b

    def filter(self, kernel: Kernel) -> bool:
        return _filter_leq(kernel, self.terms, self.b, self.cause)

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return sum(a * assignment[v] for a, v in self.terms) <= self.b

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        return _support_rules(self.terms, event.var, 1)

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        return _support_rules(self.terms, var, 1)

    def __repr__(self) -> str:
        lhs = " + ".join(f"{a}*v{v}" for a, v in self.terms)
        return f"{self.kind}#{self.id}({lhs} <= {self.b})"


class LinearEq(Propagator):
    """Filtered as the two directions ≤ b and ≥ b."""

    kind = "linear_eq"

    def __init__(self, pid: int, coefficients: Sequence[int], variables: Sequence[int], b: int):
        self.terms = merge_terms(coefficients, variables)
        super().__init__(pid, [v for _, v in self.terms])
        self.b = b
        self.negated = [(-a, v) for a, v in self.terms]
        self.coefficient = {v: a for a, v in self.terms}

    def filter(self, kernel: Kernel) -> bool:
        while True:
            before = len(kernel.store)
            if not _filter_leq(kernel, self.terms, self.b, self.cause):
                return False
            if not _filter_leq(kernel, self.negated, -self.b, self.cause):
                return False
            if len(kernel.store) == before:
                return True

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        return sum(a * assignment[v] for a, v in self.terms) == self.b

    def eschema(self, kernel: Kernel, event: Event) -> list[Rule]:
        a = self.coefficient[event.var]
        if event.type is EventType.UPP:
            # an upper bound comes from ≤ when a > 0 and from ≥ when a < 0
            return _support_rules(self.terms, event.var, 1 if a > 0 else -1)
        if event.type is EventType.LOW:
            return _support_rules(self.terms, event.var, -1 if a > 0 else 1)
        return [bounds(v) for _, v in self.terms if v != event.var]

    def wipe_rules(self, kernel: Kernel, var: int) -> list[Rule]:
        return [bounds(v) for _, v in self.terms if v != var]

    def __repr__(self) -> str:
        lhs = " + ".join(f"{a}*v{v}" for a, v in self.terms)
        return f"{self.kind}#{self.id}({lhs} = {self.b})"
