"""Family generators: structure, round-trips, and behavioral witnesses."""

from __future__ import annotations

import pytest

from reoc import ca
from reoc.connector import parse_connector, primitive_automata, serialize_connector
from reoc.errors import InvalidSize
from reoc.families import (
    FamilySpec,
    gen_alternator,
    gen_asyncmerger,
    gen_family,
    gen_sequencer,
    gen_sync_chain,
)


def test_alternator_structure():
    c = gen_alternator(3)
    kinds = [ch.kind for ch in c.channels]
    assert kinds.count("fifo1") == 2
    assert kinds.count("syncdrain") == 2
    assert kinds.count("sync") == 4
    assert len(c.nodes) == 7  # P1..P3, Z, M, N1, N2
    assert c.sources == ("P1", "P2", "P3")
    assert c.sinks == ("Z",)


def test_asyncmerger_structure():
    c = gen_asyncmerger(3)
    fifos = [ch for ch in c.channels if ch.kind == "fifo1"]
    assert len(fifos) == 3
    assert all(ch.snk == "M" for ch in fifos)


def test_sequencer_structure():
    c = gen_sequencer(4)
    full = [ch for ch in c.channels if ch.kind == "fifo1full"]
    assert len(full) == 1
    assert (full[0].src, full[0].snk) == ("R1", "R2")
    ring = [ch for ch in c.channels if ch.kind in ("fifo1", "fifo1full")]
    assert len(ring) == 4
    assert len(c.sinks) == 4


def test_sync_chain_base_case_is_primitive_sync():
    c = gen_sync_chain(1)
    assert len(c.channels) == 1
    assert c.channels[0].kind == "sync"
    assert c.internals == ()


def test_invalid_sizes():
    for family, bad in (
        ("alternator", 1),
        ("asyncmerger", 0),
        ("sequencer", 1),
        ("sync_chain", 0),
    ):
        with pytest.raises(InvalidSize):
            gen_family(FamilySpec(family, bad))


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("alternator", 3),
        FamilySpec("alternator", 10),
        FamilySpec("asyncmerger", 4),
        FamilySpec("sequencer", 3),
        FamilySpec("sync_chain", 5),
    ],
    ids=lambda s: f"{s.family}{s.size}",
)
def test_round_trip(spec):
    c = gen_family(spec)
    assert parse_connector(serialize_connector(c)) == c


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_port_occurrence_invariant(k):
    for spec in (FamilySpec("alternator", k), FamilySpec("asyncmerger", k)):
        prims = primitive_automata(gen_family(spec))
        occurrences: dict[str, int] = {}
        for p in prims:
            for port in p.automaton.ports:
                occurrences[port] = occurrences.get(port, 0) + 1
        for port, n in occurrences.items():
            expected = 1 if port.endswith(".ext") else 2
            assert n == expected, (port, n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_sync_chain_hides_to_sync(n):
    from reoc.pipeline import compile_connector

    cp = compile_connector(gen_sync_chain(n), "centralized")
    unit = cp.units[0].automaton
    target = ca.automaton(
        ["A.ext", "B.ext"],
        ["q"],
        "q",
        [("q", ["A.ext", "B.ext"], ca.constraint(ca.eq_ports("A.ext", "B.ext")), "q")],
        ca.DataDomain.agnostic(),
    )
    assert ca.bisimilar(unit, target)
