"""Product operator against the literal three-rule oracle."""

from __future__ import annotations

import random

import pytest

from reoc import ca
from reoc.ca import DataDomain, EMPTY, TRUE
from reoc.errors import DomainMismatch, TransitionBudgetExceeded
from conftest import (
    make_fifo1,
    make_sync,
    oracle_product,
    random_automaton,
    semantic_transitions,
)


def assert_matches_oracle(a, b):
    got = ca.product(a, b)
    want_states, want_trans = oracle_product(a, b)
    assert got.ports == a.ports | b.ports
    assert got.states == frozenset(want_states)
    assert got.initial == ca.pair_state(a.initial, b.initial)
    assert semantic_transitions(got) == want_trans


def test_two_disjoint_buffers_counts(agnostic):
    """Frozen from the oracle: 4 states, 8 lone steps + 4 concurrent pairs."""
    f1 = make_fifo1("I1", "O1", agnostic)
    f2 = make_fifo1("I2", "O2", agnostic)
    _, want_trans = oracle_product(f1, f2)
    assert len(want_trans) == 12
    got = ca.product(f1, f2)
    assert ca.counts(got) == (4, 12)
    assert_matches_oracle(f1, f2)


def test_product_with_empty_is_identity(agnostic):
    f1 = make_fifo1("I", "O", agnostic)
    prod = ca.product(f1, EMPTY)
    assert prod.ports == f1.ports
    assert ca.bisimilar(prod, f1)


def test_shared_port_forces_agreement(agnostic):
    """With a shared port, only agreeing transitions combine."""
    s1 = make_sync("A", "B", agnostic)
    s2 = make_sync("B", "C", agnostic)
    got = ca.product(s1, s2)
    assert ca.counts(got) == (1, 1)
    (t,) = got.transitions
    assert t.sync == frozenset({"A", "B", "C"})
    assert_matches_oracle(s1, s2)


def test_blocked_when_no_agreement(agnostic):
    """A transition on a shared port cannot fire without its partner."""
    s1 = make_sync("A", "B", agnostic)
    lonely = ca.automaton(["B"], ["q"], "q", [], agnostic)
    got = ca.product(s1, lonely)
    assert ca.counts(got) == (1, 0)


def test_unsatisfiable_joint_guard_dropped(dom2):
    left = ca.automaton(
        ["A", "S"],
        ["q"],
        "q",
        [("q", ["A", "S"], ca.constraint(ca.eq_literal(S := "S", "a")), "q")],
        dom2,
    )
    right = ca.automaton(
        ["S", "B"],
        ["q"],
        "q",
        [("q", ["S", "B"], ca.constraint(ca.eq_literal("S", "b")), "q")],
        dom2,
    )
    got = ca.product(left, right)
    assert ca.counts(got) == (1, 0)
    assert_matches_oracle(left, right)


def test_domain_mismatch_rejected(dom2, dom3):
    a = make_sync("A", "B", dom2)
    b = make_sync("B", "C", dom3)
    with pytest.raises(DomainMismatch):
        ca.product(a, b)


def test_randomized_against_oracle(dom2):
    rng = random.Random(20250810)
    pool_a = ["a1", "a2", "x", "y"]
    pool_b = ["b1", "b2", "x", "y"]
    for _ in range(60):
        a = random_automaton(rng, pool_a, dom2)
        b = random_automaton(rng, pool_b, dom2)
        assert_matches_oracle(a, b)


def test_randomized_agnostic_against_oracle(agnostic):
    rng = random.Random(42)
    pool_a = ["a1", "a2", "x", "y"]
    pool_b = ["b1", "b2", "x", "y"]
    for _ in range(60):
        a = random_automaton(rng, pool_a, agnostic)
        b = random_automaton(rng, pool_b, agnostic)
        assert_matches_oracle(a, b)


def test_budget_aborts_product(agnostic):
    f1 = make_fifo1("I1", "O1", agnostic)
    f2 = make_fifo1("I2", "O2", agnostic)
    with pytest.raises(TransitionBudgetExceeded) as exc:
        ca.product(f1, f2, max_transitions=5)
    assert exc.value.size == 6
    assert exc.value.budget == 5


def test_reachability_restriction():
    """Product keeps only state pairs reachable from the initial pair."""
    dom = DataDomain.agnostic()
    a = ca.automaton(
        ["x"], ["s0", "s1"], "s0", [("s1", ["x"], TRUE, "s1")], dom
    )
    b = make_sync("x", "y", dom)
    got = ca.product(a, b)
    # s1 is unreachable in a, so (s1, q) never materializes
    assert got.states == frozenset({"s0|q"})
    assert ca.counts(got) == (1, 0)
