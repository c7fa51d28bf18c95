"""Tests for the propagation engine: fixpoints, scheduling and failure."""
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hypothesis import given, settings, strategies as st

from backjump.constraints import AllDifferent, EqOffset, LeqOffset, LinearLeq, NeqOffset
from backjump.kernel import Cause, EventType, Kernel
from backjump.propagation import PropagationEngine, PropagationStatus


def test_leq_fixpoint_and_events():
    k = Kernel([range(1, 9), range(1, 9)])
    engine = PropagationEngine(k, [LeqOffset(0, 0, 1, -1)])
    assert engine.propagate_all() is PropagationStatus.FIXPOINT
    assert k.values(0) == list(range(1, 8)) and k.values(1) == list(range(2, 9))
    events = list(k.store)
    assert [(ev.type, ev.var) for ev in events] == [(EventType.UPP, 0), (EventType.LOW, 1)]
    assert (events[0].up_old, events[0].up_new) == (8, 7)
    assert (events[1].lo_old, events[1].lo_new) == (1, 2)
    assert all(ev.cause == Cause.constraint(0) for ev in events)
    # own events do not wake the producer up again
    assert engine.filter_calls == 1


def test_no_constraints_is_fixpoint():
    k = Kernel([range(1, 4)])
    engine = PropagationEngine(k, [])
    assert engine.propagate_all() is PropagationStatus.FIXPOINT
    assert len(k.store) == 0


def test_direct_violation_fails():
    k = Kernel([[1], [1]])
    engine = PropagationEngine(k, [NeqOffset(0, 0, 1, 0)])
    assert engine.propagate_all() is PropagationStatus.FAILURE
    assert k.failure.var in (0, 1)
    assert k.failure.cause == Cause.constraint(0)
    assert not engine.queue


def test_on_event_scheduling():
    k = Kernel([range(1, 5), range(1, 5), range(1, 5), range(1, 5)])
    p0 = NeqOffset(0, 0, 1, 0)
    p1 = LeqOffset(1, 0, 2, 0)
    engine = PropagationEngine(k, [p0, p1])
    # variable 3 is in no scope
    k.remove_value(3, 2, Cause.decision(0))
    assert not engine.queue
    # variable 1 is only in p0's scope and p0 caused the event
    k.remove_value(1, 2, p0.cause)
    assert not engine.queue
    # a decision on variable 0 wakes both, once each
    k.remove_value(0, 3, Cause.decision(1))
    k.remove_value(0, 2, Cause.decision(1))
    assert list(engine.queue) == [0, 1]


def test_propagation_chains_through_constraints():
    k = Kernel([range(1, 4), range(1, 4), range(1, 4)])
    engine = PropagationEngine(k, [AllDifferent(0, [0, 1, 2]), EqOffset(1, 0, 1, 1)])
    assert engine.propagate_all() is PropagationStatus.FIXPOINT
    # x = y + 1 keeps x in 2..3 and y in 1..2
    assert k.values(0) == [2, 3] and k.values(1) == [1, 2]
    k.push_world()
    k.instantiate(0, 2, Cause.decision(0))
    assert engine.propagate() is PropagationStatus.FIXPOINT
    assert (k.values(0), k.values(1), k.values(2)) == ([2], [1], [3])


# ============================================================
# Confluence: any seed order and naive saturation agree on domains
# ============================================================

constraint = st.one_of(
    st.tuples(st.just("eq"), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)),
    st.tuples(st.just("neq"), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)),
    st.tuples(st.just("leq"), st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)),
    st.tuples(st.just("lin"), st.lists(st.sampled_from([-2, -1, 1, 2]), min_size=3, max_size=3),
              st.integers(-4, 8)),
    st.tuples(st.just("alldiff")),
)


def build(specs):
    props = []
    for spec in specs:
        pid = len(props)
        if spec[0] == "lin":
            props.append(LinearLeq(pid, spec[1], [0, 1, 2], spec[2]))
        elif spec[0] == "alldiff":
            props.append(AllDifferent(pid, [0, 1, 2]))
        elif spec[1] != spec[2]:
            cls = {"eq": EqOffset, "neq": NeqOffset, "leq": LeqOffset}[spec[0]]
            props.append(cls(pid, spec[1], spec[2], spec[3]))
    return props


def saturate(domains, props):
    """Round-robin every filter until nothing changes."""
    k = Kernel(domains)
    while True:
        before = len(k.store)
        for p in props:
            if not p.filter(k):
                return None
        if len(k.store) == before:
            return k.snapshot()


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sets(st.integers(0, 4), min_size=1), min_size=3, max_size=3),
       st.lists(constraint, min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_fixpoint_is_order_independent(domains, specs, rnd):
    domains = [sorted(d) for d in domains]
    props = build(specs)
    expected = saturate(domains, props)
    fresh = build(specs)
    order = list(fresh)
    rnd.shuffle(order)
    k = Kernel(domains)
    status = PropagationEngine(k, fresh).propagate(order)
    if expected is None:
        assert status is PropagationStatus.FAILURE
    else:
        assert status is PropagationStatus.FIXPOINT
        assert k.snapshot() == expected


if __name__ == "__main__":
    from tests.runner import run_module
    sys.exit(run_module(globals(), "PROPAGATION TESTS"))
