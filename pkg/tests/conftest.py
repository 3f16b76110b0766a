"""Shared fixtures: tiny automata, a seeded corpus, brute-force oracles.

The oracles here re-derive semantics by raw enumeration, independently of
the implementation paths they check: guard satisfaction enumerates every
assignment of domain values to sync ports, and the product oracle applies
the three composition rules literally over all state pairs before a
reachability pass.
"""

from __future__ import annotations

import itertools
import random

import pytest

from reoc import ca
from reoc.ca import (
    ConstraintAutomaton,
    DataConstraint,
    DataDomain,
    TRUE,
    Transition,
)


def oracle_assignments(guard, sync, domain):
    """Raw enumeration of satisfying assignments over the sync ports."""
    ports = sorted(sync)
    out = []
    for combo in itertools.product(domain.values, repeat=len(ports)):
        asg = dict(zip(ports, combo))
        ok = True
        for atom in guard.atoms:
            if atom.kind == "pp":
                ok = asg[atom.a] == asg[atom.b]
            else:
                ok = asg[atom.a] == atom.b
            if not ok:
                break
        if ok:
            out.append(asg)
    return out


def semantic_transitions(a: ConstraintAutomaton):
    """Transitions as (source, sync, assignment-set, target) for comparison."""
    out = set()
    for t in a.transitions:
        assigns = frozenset(
            frozenset(asg.items())
            for asg in oracle_assignments(t.guard, t.sync, a.domain)
        )
        out.add((t.source, t.sync, assigns, t.target))
    return out


def oracle_product(a: ConstraintAutomaton, b: ConstraintAutomaton):
    """Three-rule product over all state pairs, then reachability restriction.

    Returns the semantic transition set and the reachable state set; kept
    deliberately naive and separate from reoc.ca.product.
    """
    assert a.domain == b.domain
    dom = a.domain
    trans: set[tuple] = set()

    def guard_assigns(guard, sync):
        return frozenset(
            frozenset(asg.items()) for asg in oracle_assignments(guard, sync, dom)
        )

    for qa, qb in itertools.product(sorted(a.states), sorted(b.states)):
        src = ca.pair_state(qa, qb)
        ts_a = [t for t in a.transitions if t.source == qa]
        ts_b = [t for t in b.transitions if t.source == qb]
        # rule (ii): lone step of one side, other side untouched
        for ta in ts_a:
            if not (ta.sync & b.ports):
                assigns = guard_assigns(ta.guard, ta.sync)
                if assigns:
                    trans.add((src, ta.sync, assigns, ca.pair_state(ta.target, qb)))
        for tb in ts_b:
            if not (tb.sync & a.ports):
                assigns = guard_assigns(tb.guard, tb.sync)
                if assigns:
                    trans.add((src, tb.sync, assigns, ca.pair_state(qa, tb.target)))
        for ta in ts_a:
            ia = ta.sync & b.ports
            for tb in ts_b:
                ib = tb.sync & a.ports
                joint = ia == ib and bool(ia)  # rule (i): agree on shared ports
                concurrent = (
                    not ia and not ib and not (ta.sync & tb.sync)
                )  # rule (iii): true concurrency
                if not (joint or concurrent):
                    continue
                sync = ta.sync | tb.sync
                assigns = guard_assigns(ta.guard.conjoin(tb.guard), sync)
                if assigns:
                    trans.add(
                        (src, sync, assigns, ca.pair_state(ta.target, tb.target))
                    )

    # reachability restriction
    start = ca.pair_state(a.initial, b.initial)
    reached = {start}
    frontier = [start]
    while frontier:
        q = frontier.pop()
        for src, _, _, tgt in trans:
            if src == q and tgt not in reached:
                reached.add(tgt)
                frontier.append(tgt)
    trans = {t for t in trans if t[0] in reached}
    return reached, trans


def visible_traces(a: ConstraintAutomaton, depth: int):
    """All semantic step sequences of length <= depth, by exhaustive walk."""
    out = {()}
    frontier = [(a.initial, ())]
    while frontier:
        state, prefix = frontier.pop()
        if len(prefix) == depth:
            continue
        for t in a.transitions:
            if t.source != state:
                continue
            for asg in oracle_assignments(t.guard, t.sync, a.domain):
                step = (t.sync, frozenset(asg.items()))
                trace = prefix + (step,)
                if trace not in out:
                    out.add(trace)
                frontier.append((t.target, trace))
    return out


def make_fifo1(in_port: str, out_port: str, domain: DataDomain) -> ConstraintAutomaton:
    states = ["e"] + [f"f[{v}]" for v in domain.values]
    transitions = []
    for v in domain.values:
        transitions.append(("e", [in_port], ca.constraint(ca.eq_literal(in_port, v)), f"f[{v}]"))
        transitions.append((f"f[{v}]", [out_port], ca.constraint(ca.eq_literal(out_port, v)), "e"))
    return ca.automaton([in_port, out_port], states, "e", transitions, domain)


def make_sync(src: str, snk: str, domain: DataDomain) -> ConstraintAutomaton:
    return ca.automaton(
        [src, snk],
        ["q"],
        "q",
        [("q", [src, snk], ca.constraint(ca.eq_ports(src, snk)), "q")],
        domain,
    )


def random_automaton(
    rng: random.Random,
    port_pool: list[str],
    domain: DataDomain,
    max_states: int = 3,
    max_transitions: int = 4,
) -> ConstraintAutomaton:
    ports = rng.sample(port_pool, rng.randint(1, min(3, len(port_pool))))
    n_states = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n_states)]
    transitions = []
    for _ in range(rng.randint(1, max_transitions)):
        sync = rng.sample(ports, rng.randint(1, len(ports)))
        atoms = []
        if len(sync) >= 2 and rng.random() < 0.5:
            a, b = rng.sample(sync, 2)
            atoms.append(ca.eq_ports(a, b))
        if rng.random() < 0.3:
            atoms.append(ca.eq_literal(rng.choice(sync), rng.choice(domain.values)))
        transitions.append(
            (rng.choice(states), sync, ca.constraint(*atoms), rng.choice(states))
        )
    return ca.automaton(ports, states, states[0], transitions, domain)


@pytest.fixture
def dom2() -> DataDomain:
    return DataDomain.of("a", "b")


@pytest.fixture
def dom3() -> DataDomain:
    return DataDomain.of("a", "b", "c")


@pytest.fixture
def agnostic() -> DataDomain:
    return DataDomain.agnostic()
