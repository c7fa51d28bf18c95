"""Compiles the constraint statements of a model into propagators."""
import logging

from backjump.constraints.alldifferent import AllDifferent
from backjump.constraints.forbidden import Forbidden
from backjump.constraints.linear import LinearEq, LinearLeq, merge_terms
from backjump.constraints.offset import EqOffset, LeqOffset, NeqOffset
from backjump.models.model import ConstraintKind, ConstraintSpec, InvalidModelError, ModelFile
from backjump.models.report import EschemaMode
from backjump.propagation.propagator import Propagator

logger = logging.getLogger(__name__)

OFFSET_CLASSES = {
    ConstraintKind.eq: EqOffset,
    ConstraintKind.neq: NeqOffset,
    ConstraintKind.leq: LeqOffset,
}


def _build(pid: int, spec: ConstraintSpec, index: dict[str, int]) -> Propagator:
    scope = [index[name] for name in spec.scope]
    kind = spec.kind
    if kind in OFFSET_CLASSES:
        return OFFSET_CLASSES[kind](pid, scope[0], scope[1], spec.constant)
    if kind == ConstraintKind.linear_leq:
        return LinearLeq(pid, spec.coefficients, scope, spec.constant)
    if kind == ConstraintKind.linear_eq:
        return LinearEq(pid, spec.coefficients, scope, spec.constant)
    if kind == ConstraintKind.alldifferent:
        return AllDifferent(pid, scope)
    return Forbidden(pid, scope[0], scope[1], spec.tuples)


def _constant_linear(spec: ConstraintSpec, index: dict[str, int]) -> bool:
    """True when every term of a linear statement cancels out; raises if the statement is then false."""
    if spec.kind not in (ConstraintKind.linear_leq, ConstraintKind.linear_eq):
        return False
    if merge_terms(spec.coefficients, [index[n] for n in spec.scope]):
        return False
    holds = 0 <= spec.constant if spec.kind == ConstraintKind.linear_leq else spec.constant == 0
    if not holds:
        raise InvalidModelError("linear constraint reduces to a false constant")
    return True


def build_propagators(model: ModelFile, eschema_mode: EschemaMode = EschemaMode.specific) -> list[Propagator]:
    model.check()
    index = model.index()
    propagators: list[Propagator] = []
    for spec in model.constraints:
        if _constant_linear(spec, index):
            logger.debug("dropping constant linear statement %s", spec)
            continue
        prop = _build(len(propagators), spec, index)
        prop.use_default_eschema = eschema_mode == EschemaMode.default
        propagators.append(prop)
    return propagators


__all__ = [
    "AllDifferent", "EqOffset", "Forbidden", "LeqOffset", "LinearEq", "LinearLeq", "NeqOffset",
    "build_propagators",
]
