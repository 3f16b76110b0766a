"""Compilation strategies over a connector's primitive automata.

Four strategies span the implementation spectrum:

* ``distributed``: one protocol unit per primitive automaton, nothing
  hidden; maximal parallelism, expensive run-time synchronization.
* ``middleground``: one unit per region, hiding region-internal ports.
* ``mixed``: middleground after absorbing single-neighbor asynchronous
  regions into their synchronous region.
* ``centralized``: one unit for the whole connector, hiding everything
  except the external ports.

Products are folded in a greedy order (next operand = most shared ports
with the accumulator, ties by owner id) with hide and prune interleaved:
a port is hidden as soon as no remaining operand mentions it.  Every
intermediate automaton must stay within the transition budget, the
deterministic stand-in for a compile-time timeout.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import ca
from .ca import ConstraintAutomaton, DataDomain
from .connector import Connector, PrimitiveCA, primitive_automata, validate_connector
from .errors import (
    BudgetExceeded,
    InvalidConnector,
    ReocError,
    TransitionBudgetExceeded,
)
from .regions import ASYNCHRONOUS, MIXED, SYNCHRONOUS, RegionPartition, classify, merge_mixed, split

STRATEGIES = ("centralized", "distributed", "middleground", "mixed")

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class FoldStep:
    """One fold-log line: sizes after absorbing `operand` into the unit."""

    unit: str
    step: int
    operand: str
    states: int
    transitions: int
    exceeded: bool = False

    def format(self) -> str:
        mark = " EXCEEDED" if self.exceeded else ""
        return (
            f"{self.unit} step {self.step}: +{self.operand} -> "
            f"{self.states} states, {self.transitions} transitions{mark}"
        )


@dataclass(frozen=True)
class ProtocolUnit:
    uid: str
    role: str
    automaton: ConstraintAutomaton


@dataclass(frozen=True)
class CompileStats:
    m1: int
    m2: int
    per_unit: tuple[tuple[str, int, int], ...]  # (uid, states, transitions)
    total_states: int
    total_transitions: int
    fold_log: tuple[FoldStep, ...]
    wall_ms: float
    budget: int

    @property
    def max_states(self) -> int:
        return max((s for _, s, _ in self.per_unit), default=0)

    @property
    def max_transitions(self) -> int:
        return max((t for _, _, t in self.per_unit), default=0)


@dataclass(frozen=True)
class CompiledProtocol:
    connector: str
    strategy: str
    units: tuple[ProtocolUnit, ...]
    shared_ports: dict[str, tuple[str, str]]
    external_ports: frozenset[str]
    domain: DataDomain
    stats: CompileStats

    def unit(self, uid: str) -> ProtocolUnit:
        for u in self.units:
            if u.uid == uid:
                return u
        raise KeyError(uid)


def fold_region(
    members: Sequence[tuple[str, ConstraintAutomaton]],
    hide_set: Iterable[str],
    budget: int = DEFAULT_BUDGET,
    unit_id: str = "unit",
    log: Optional[list[FoldStep]] = None,
) -> ConstraintAutomaton:
    """Fold member automata into one, hiding `hide_set` ports eagerly.

    Greedy order: the next operand shares the most ports with the
    accumulator; ties prefer synchronous operands (all-singleton-sync
    buffers fold last, once their surroundings gate them), then owner id.
    Folding a buffer before its fill-side routing leaves its input port
    ungated, which makes intermediate state spaces genuinely exponential,
    so the buffer-last tie-break is load-bearing.

    A hide-set port is dropped as soon as it no longer occurs in any
    remaining operand (it then occurs only in the accumulator, so hiding
    commutes with the outstanding products).  Raises
    TransitionBudgetExceeded if any intermediate crosses the budget.
    """
    if not members:
        raise ReocError("cannot fold an empty region")
    hide_set = frozenset(hide_set)
    log_sink = log if log is not None else []
    ordered = sorted(members, key=lambda m: m[0])
    remaining = {owner: aut for owner, aut in ordered}
    occurrences: dict[str, int] = {}
    for _, aut in ordered:
        for port in aut.ports:
            occurrences[port] = occurrences.get(port, 0) + 1

    def consume(owner: str) -> ConstraintAutomaton:
        aut = remaining.pop(owner)
        for port in aut.ports:
            occurrences[port] -= 1
        return aut

    first_owner = ordered[0][0]
    acc = consume(first_owner)

    def reap(aut: ConstraintAutomaton) -> ConstraintAutomaton:
        ready = frozenset(
            p for p in aut.ports if p in hide_set and occurrences[p] == 0
        )
        if ready:
            aut = ca.hide(aut, ready)
        else:
            aut = ca.prune_unreachable(aut)
        if len(aut.transitions) > budget:
            raise TransitionBudgetExceeded(len(aut.transitions), budget)
        return aut

    acc = reap(acc)
    step = 0
    log_sink.append(
        FoldStep(unit_id, step, first_owner, len(acc.states), len(acc.transitions))
    )
    is_buffer = {
        owner: all(len(t.sync) <= 1 for t in aut.transitions)
        for owner, aut in ordered
    }
    while remaining:
        step += 1
        best_owner = None
        best_key = None
        for owner in sorted(remaining):
            shared = len(acc.ports & remaining[owner].ports)
            key = (-shared, is_buffer[owner], owner)
            if best_key is None or key < best_key:
                best_owner, best_key = owner, key
        operand = consume(best_owner)
        try:
            acc = ca.product(acc, operand, max_transitions=budget)
        except TransitionBudgetExceeded as exc:
            log_sink.append(
                FoldStep(unit_id, step, best_owner, -1, exc.size, exceeded=True)
            )
            raise
        try:
            acc = reap(acc)
        except TransitionBudgetExceeded as exc:
            log_sink.append(
                FoldStep(unit_id, step, best_owner, len(acc.states), exc.size, exceeded=True)
            )
            raise
        log_sink.append(
            FoldStep(unit_id, step, best_owner, len(acc.states), len(acc.transitions))
        )
    return acc


def _external_ports(primitives: Sequence[PrimitiveCA]) -> frozenset[str]:
    seen: dict[str, int] = {}
    for p in primitives:
        for port in p.automaton.ports:
            seen[port] = seen.get(port, 0) + 1
    return frozenset(port for port, n in seen.items() if n == 1)


def compile_connector(
    c: Connector,
    strategy: str,
    domain: Optional[DataDomain] = None,
    budget: int = DEFAULT_BUDGET,
) -> CompiledProtocol:
    """Compile `c` under `strategy` into protocol units plus statistics."""
    if strategy not in STRATEGIES:
        raise ReocError(f"unknown strategy {strategy!r}")
    if budget < 1:
        raise ReocError("budget must be >= 1")
    validate_connector(c)
    d = domain or c.domain()
    t0 = time.perf_counter()
    prims = primitive_automata(c, d)
    by_owner = {p.owner: p for p in prims}
    part = split(prims)
    external = _external_ports(prims)

    if strategy == "mixed":
        part = merge_mixed(part, prims)

    # (uid, role, member owners, hide set) per protocol unit
    plans: list[tuple[str, str, tuple[str, ...], frozenset[str]]] = []
    if strategy == "distributed":
        for p in prims:
            plans.append((p.owner, classify(p), (p.owner,), frozenset()))
    elif strategy == "centralized":
        owners = tuple(sorted(by_owner))
        all_ports = frozenset(
            port for p in prims for port in p.automaton.ports
        )
        plans.append(("whole", "whole", owners, all_ports - external))
    else:
        for region in part.regions:
            plans.append(
                (f"r{region.id}", region.kind, region.members, region.internal_ports)
            )

    fold_log: list[FoldStep] = []
    units: list[ProtocolUnit] = []
    for uid, role, owners, hide_set in plans:
        members = [(o, by_owner[o].automaton) for o in owners]
        try:
            aut = fold_region(members, hide_set, budget, uid, fold_log)
        except TransitionBudgetExceeded as exc:
            raise BudgetExceeded(
                uid, fold_log[-1].step, exc.size, budget, tuple(fold_log)
            ) from exc
        units.append(ProtocolUnit(uid, role, aut))

    unit_ports: dict[str, list[str]] = {}
    for u in units:
        for port in u.automaton.ports:
            unit_ports.setdefault(port, []).append(u.uid)
    shared = {
        port: tuple(sorted(uids))
        for port, uids in unit_ports.items()
        if len(uids) == 2
    }
    over = {port: uids for port, uids in unit_ports.items() if len(uids) > 2}
    if over:
        raise ReocError(f"ports shared by more than two units: {over}")

    wall_ms = (time.perf_counter() - t0) * 1000.0
    per_unit = tuple(
        (u.uid, len(u.automaton.states), len(u.automaton.transitions))
        for u in units
    )
    stats = CompileStats(
        m1=part.m1,
        m2=part.m2,
        per_unit=per_unit,
        total_states=sum(s for _, s, _ in per_unit),
        total_transitions=sum(t for _, _, t in per_unit),
        fold_log=tuple(fold_log),
        wall_ms=wall_ms,
        budget=budget,
    )
    return CompiledProtocol(
        c.name,
        strategy,
        tuple(units),
        shared,
        frozenset(p for p in external if any(p in u.automaton.ports for u in units)),
        d,
        stats,
    )


# -- permanently-disabled transition scan --------------------------------------


@dataclass(frozen=True)
class ScanReport:
    """Containment of composed buffer-move patterns, full product vs region CA.

    A chained pattern i is the union of two consecutive buffer moves,
    {in_i, out_{i+1}, in_{i+1}, out_{i+2}}: firing it would require buffer
    i+1 to drain and refill in one step, which no one-place buffer can do,
    so the full product must not contain it.  The per-region automaton,
    blind to buffer state, does contain such unions.
    """

    connector: str
    buffers: tuple[str, ...]
    full_states: int
    full_transitions: int
    same_buffer_hits: tuple[tuple[str, bool], ...]
    chained_hits: tuple[tuple[int, bool], ...]
    region_unit: str
    region_transitions: int
    region_same_buffer_hits: tuple[tuple[str, bool], ...]
    region_chained_hits: tuple[tuple[int, bool], ...]

    def to_json_dict(self) -> dict:
        return {
            "connector": self.connector,
            "buffers": list(self.buffers),
            "full_product": {
                "states": self.full_states,
                "transitions": self.full_transitions,
                "same_buffer_hits": {b: hit for b, hit in self.same_buffer_hits},
                "chained_hits": {str(i): hit for i, hit in self.chained_hits},
            },
            "region_ca": {
                "unit": self.region_unit,
                "transitions": self.region_transitions,
                "same_buffer_hits": {
                    b: hit for b, hit in self.region_same_buffer_hits
                },
                "chained_hits": {
                    str(i): hit for i, hit in self.region_chained_hits
                },
            },
        }


def disabled_transition_scan(
    c: Connector,
    pattern_range: Optional[range] = None,
    budget: int = DEFAULT_BUDGET,
) -> ScanReport:
    """Check composed buffer-move patterns against the unhidden full product.

    Intended for buffer-chain connectors at oracle scale (at most 8
    buffers); the full product is computed with nothing hidden.
    """
    buffers = sorted(
        (ch for ch in c.channels if ch.kind in ("fifo1", "fifo1full")),
        key=lambda ch: ch.id,
    )
    if not buffers:
        raise InvalidConnector("scan needs at least one buffered channel")
    if len(buffers) > 8:
        raise InvalidConnector("scan is an oracle-scale check (at most 8 buffers)")
    d = c.domain()
    prims = primitive_automata(c, d)
    full = fold_region(
        [(p.owner, p.automaton) for p in prims], frozenset(), budget, "full"
    )

    ins = [b.src_port for b in buffers]
    outs = [b.snk_port for b in buffers]
    n = len(buffers)
    if pattern_range is None:
        pattern_range = range(0, max(0, n - 2))

    def hits(aut: ConstraintAutomaton):
        same = []
        for i, b in enumerate(buffers):
            pat = {ins[i], outs[i]}
            same.append(
                (b.id, any(pat <= t.sync for t in aut.transitions))
            )
        chained = []
        for i in pattern_range:
            if i + 2 >= n:
                continue
            pat = {ins[i], outs[i + 1], ins[i + 1], outs[i + 2]}
            chained.append(
                (i + 1, any(pat <= t.sync for t in aut.transitions))
            )
        return tuple(same), tuple(chained)

    full_same, full_chained = hits(full)

    mg = compile_connector(c, "middleground", d, budget)
    region_unit = max(
        (u for u in mg.units if u.role in (SYNCHRONOUS, MIXED)),
        key=lambda u: (len(u.automaton.transitions), u.uid),
        default=mg.units[0],
    )
    region_same, region_chained = hits(region_unit.automaton)

    return ScanReport(
        connector=c.name,
        buffers=tuple(b.id for b in buffers),
        full_states=len(full.states),
        full_transitions=len(full.transitions),
        same_buffer_hits=full_same,
        chained_hits=full_chained,
        region_unit=region_unit.uid,
        region_transitions=len(region_unit.automaton.transitions),
        region_same_buffer_hits=region_same,
        region_chained_hits=region_chained,
    )
