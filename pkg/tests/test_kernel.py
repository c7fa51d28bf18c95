"""Unit and property tests for domains, mutations, worlds and the event store."""
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import given, settings, strategies as st

from backjump.kernel import Cause, EventType, Kernel, Outcome, SparseDomain, WorldStackError

C = Cause.constraint(0)


def kernel_with(*domains):
    return Kernel([list(d) for d in domains])


def last_event(k: Kernel):
    return k.store[len(k.store) - 1]


# ============================================================
# Sparse domain
# ============================================================

def test_sparse_domain_remove_and_restore():
    d = SparseDomain([1, 2, 3, 5, 8])
    size, lb, ub = d.size, d.lb, d.ub
    d.remove(1)
    d.remove(8)
    assert (d.lb, d.ub, d.values()) == (2, 5, [2, 3, 5])
    assert 1 not in d and 8 not in d and 3 in d
    assert d.initially_contains(8) and not d.initially_contains(4)
    d.restore(size, lb, ub)
    assert d.values() == [1, 2, 3, 5, 8]


def test_sparse_domain_bounds_skip_holes():
    d = SparseDomain([1, 2, 7, 9])
    d.remove_below(3)
    assert d.lb == 7 and d.values() == [7, 9]
    d.remove_above(8)
    assert d.values() == [7] and d.ub == 7
    assert repr(SparseDomain(range(1, 9))) == "[1..8]"
    assert repr(SparseDomain([1, 3])) == "{1,3}"


def test_sparse_domain_with_wide_span():
    # two billion apart: the index must not grow with the span
    d = SparseDomain([-10**9, 0, 7, 10**9])
    assert len(d.where) == 4
    assert 10**9 in d and 1 not in d and not d.initially_contains(10**9 - 1)
    d.remove(-10**9)
    assert d.lb == 0
    d.remove_below(1)
    assert d.lb == 7 and d.values() == [7, 10**9]
    d.remove_above(10**9 - 1)
    assert d.values() == [7] and d.lb == d.ub == 7

    k = Kernel([[0, 10**9], [0, 10**9, 2 * 10**9]])
    assert k.update_lower(1, 1, C) is Outcome.CHANGED
    assert k.lb(1) == 10**9 and k.ub(1) == 2 * 10**9
    assert k.remove_value(1, 2 * 10**9, C) is Outcome.CHANGED
    assert k.is_fixed(1) and k.values(1) == [10**9]
    assert k.update_upper(0, 10**9 - 1, C) is Outcome.CHANGED and k.values(0) == [0]


def test_sparse_domain_rejects_empty():
    with pytest.raises(ValueError):
        SparseDomain([])


# ============================================================
# remove_value
# ============================================================

def test_remove_interior_is_rem():
    k = kernel_with(range(1, 9))
    assert k.remove_value(0, 5, C) is Outcome.CHANGED
    ev = last_event(k)
    assert ev.type is EventType.REM and ev.value == 5
    assert (ev.lo_old, ev.lo_new, ev.up_old, ev.up_new) == (1, 1, 8, 8)


def test_remove_last_value_fails_without_event():
    k = kernel_with([3])
    assert k.remove_value(0, 3, C) is Outcome.FAILURE
    assert len(k.store) == 0
    assert k.failure.var == 0 and k.failure.cause == C
    assert k.values(0) == [3]


def test_remove_lower_bound_is_low():
    k = kernel_with(range(1, 9))
    assert k.remove_value(0, 1, C) is Outcome.CHANGED
    ev = last_event(k)
    assert ev.type is EventType.LOW and (ev.lo_old, ev.lo_new) == (1, 2)


def test_remove_to_singleton_is_asg():
    k = kernel_with([2, 5])
    k.remove_value(0, 2, C)
    ev = last_event(k)
    assert ev.type is EventType.ASG
    assert (ev.value, ev.lo_old, ev.up_old) == (5, 2, 5)
    assert ev.removed_value() == 2


def test_remove_absent_value_unchanged():
    k = kernel_with([1, 3])
    assert k.remove_value(0, 2, C) is Outcome.UNCHANGED
    assert k.remove_value(0, 42, C) is Outcome.UNCHANGED
    assert len(k.store) == 0


# ============================================================
# update_lower / update_upper / instantiate
# ============================================================

def test_update_lower():
    k = kernel_with(range(1, 9), [1, 2, 7, 9], range(1, 9))
    assert k.update_lower(0, 4, C) is Outcome.CHANGED
    assert (last_event(k).type, last_event(k).lo_old, last_event(k).lo_new) == (EventType.LOW, 1, 4)
    k.update_lower(1, 3, C)
    assert last_event(k).lo_new == 7
    assert k.update_lower(2, 9, C) is Outcome.FAILURE
    assert k.update_lower(0, 2, C) is Outcome.UNCHANGED


def test_update_upper():
    k = kernel_with(range(1, 9), [1, 3, 8, 9], range(1, 9))
    assert k.update_upper(0, 5, C) is Outcome.CHANGED
    ev = last_event(k)
    assert ev.type is EventType.UPP and (ev.up_old, ev.up_new) == (8, 5)
    k.update_upper(1, 7, C)
    assert last_event(k).up_new == 3
    assert k.update_upper(2, 0, C) is Outcome.FAILURE


def test_bound_update_to_singleton_is_asg():
    k = kernel_with([1, 2, 7, 9])
    k.update_lower(0, 8, C)
    ev = last_event(k)
    assert ev.type is EventType.ASG and ev.value == 9 and (ev.lo_old, ev.up_old) == (1, 9)


def test_instantiate():
    k = kernel_with(range(1, 9), [4], [1, 3])
    assert k.instantiate(0, 3, C) is Outcome.CHANGED
    ev = last_event(k)
    assert (ev.type, ev.value, ev.lo_old, ev.up_old) == (EventType.ASG, 3, 1, 8)
    assert k.instantiate(1, 4, C) is Outcome.UNCHANGED
    assert k.instantiate(2, 2, C) is Outcome.FAILURE


# ============================================================
# Worlds and the event store
# ============================================================

def test_push_pop_restores_domain_and_tail():
    k = kernel_with(range(1, 9))
    k.push_world()
    k.remove_value(0, 5, C)
    k.update_lower(0, 3, C)
    k.pop_world()
    assert k.values(0) == list(range(1, 9))
    assert len(k.store) == 0 and k.depth == 0


def test_nested_worlds():
    k = kernel_with(range(1, 9), range(1, 4))
    k.remove_value(0, 8, C)
    k.push_world()
    k.remove_value(1, 2, C)
    k.push_world()
    k.instantiate(0, 4, C)
    k.pop_world()
    assert k.values(0) == list(range(1, 8)) and k.values(1) == [1, 3]
    k.pop_world()
    assert k.values(1) == [1, 2, 3]
    assert [ev.type for ev in k.store] == [EventType.UPP]


def test_pop_at_depth_zero_raises():
    with pytest.raises(WorldStackError):
        Kernel([[1]]).pop_world()


def test_pop_clears_failure():
    k = kernel_with([1])
    k.push_world()
    k.remove_value(0, 1, C)
    assert k.failure is not None
    k.pop_world()
    assert k.failure is None


def test_events_backward():
    k = kernel_with(range(1, 9))
    assert list(k.events_backward()) == []
    for x in (4, 5, 6):
        k.remove_value(0, x, C)
    seen = [(i, ev.value) for i, ev in k.events_backward()]
    assert seen == [(2, 6), (1, 5), (0, 4)]
    assert [i for i, _ in k.events_backward(1)] == [1, 0]
    with pytest.raises(IndexError):
        list(k.events_backward(5))


def test_listener_sees_every_event():
    k = kernel_with(range(1, 9))
    seen = []
    k.listener = seen.append
    k.remove_value(0, 3, C)
    k.update_upper(0, 6, C)
    assert [ev.type for ev in seen] == [EventType.REM, EventType.UPP]


# ============================================================
# Properties: classifier oracle and restore completeness
# ============================================================

def classify(before: set, after: set):
    """Independent classification of one mutation from the before/after sets."""
    if after == before:
        return Outcome.UNCHANGED, None
    if len(after) == 1:
        return Outcome.CHANGED, EventType.ASG
    if min(after) > min(before):
        return Outcome.CHANGED, EventType.LOW
    if max(after) < max(before):
        return Outcome.CHANGED, EventType.UPP
    return Outcome.CHANGED, EventType.REM


domains = st.sets(st.integers(0, 9), min_size=1, max_size=8)
ops = st.lists(st.tuples(st.sampled_from(["rem", "low", "upp", "asg", "push", "pop"]),
                         st.integers(0, 2), st.integers(-1, 10)), max_size=40)


def check_mutations(doms, sequence, scale: int):
    k = Kernel([sorted(y * scale for y in d) for d in doms])
    snapshots = []
    for op, v, x in sequence:
        x *= scale
        if op == "push":
            snapshots.append((k.snapshot(), len(k.store)))
            k.push_world()
            continue
        if op == "pop":
            if snapshots:
                k.pop_world()
                snap, length = snapshots.pop()
                assert k.snapshot() == snap and len(k.store) == length
            continue
        before = set(k.values(v))
        length = len(k.store)
        if op == "rem":
            out = k.remove_value(v, x, C)
            expected_after = before - {x}
        elif op == "low":
            out = k.update_lower(v, x, C)
            expected_after = {y for y in before if y >= x}
        elif op == "upp":
            out = k.update_upper(v, x, C)
            expected_after = {y for y in before if y <= x}
        else:
            out = k.instantiate(v, x, C)
            expected_after = {x} & before
        if not expected_after:
            assert out is Outcome.FAILURE
            assert len(k.store) == length and set(k.values(v)) == before
            if snapshots:
                k.pop_world()
                snap, length = snapshots.pop()
                assert k.snapshot() == snap and len(k.store) == length
            else:
                k.failure = None
            continue
        outcome, etype = classify(before, expected_after)
        assert out is outcome
        assert set(k.values(v)) == expected_after
        if etype is None:
            assert len(k.store) == length
            continue
        assert len(k.store) == length + 1
        ev = last_event(k)
        assert ev.type is etype and ev.var == v
        assert (ev.lo_old, ev.up_old) == (min(before), max(before))
        assert (ev.lo_new, ev.up_new) == (min(expected_after), max(expected_after))
    while snapshots:
        k.pop_world()
        snap, length = snapshots.pop()
        assert k.snapshot() == snap and len(k.store) == length


@settings(max_examples=300, deadline=None)
@given(st.lists(domains, min_size=3, max_size=3), ops)
def test_mutations_match_classifier_and_restore(doms, sequence):
    check_mutations(doms, sequence, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(domains, min_size=3, max_size=3), ops)
def test_mutations_on_widely_spaced_values(doms, sequence):
    # gaps of a hundred million between neighbours
    check_mutations(doms, sequence, 10**8)


if __name__ == "__main__":
    from tests.runner import run_module
    sys.exit(run_module(globals(), "KERNEL TESTS"))
