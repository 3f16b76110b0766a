"""Region partitioning of a connector's primitive automata.

Classification is purely syntactic on the small automata: a primitive all
of whose transitions fire at most one port is asynchronous (a buffer);
everything else is synchronous.  Synchronous primitives sharing ports are
grouped into maximal synchronous regions; each asynchronous primitive is a
region of its own.  The mixed-region rule then absorbs every asynchronous
region whose only neighbor is a single synchronous (or already mixed)
region and which owns no external port, iterating to a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .connector import PrimitiveCA

SYNCHRONOUS = "synchronous"
ASYNCHRONOUS = "asynchronous"
MIXED = "mixed"


@dataclass(frozen=True)
class Region:
    id: int
    kind: str
    members: tuple[str, ...]
    internal_ports: frozenset[str]
    boundary_ports: frozenset[str]

    @property
    def ports(self) -> frozenset[str]:
        return self.internal_ports | self.boundary_ports


@dataclass(frozen=True)
class RegionPartition:
    regions: tuple[Region, ...]
    adjacency: frozenset[tuple[int, int]]
    m1: int  # asynchronous regions
    m2: int  # synchronous-or-mixed regions

    def region_of(self, member: str) -> Region:
        for r in self.regions:
            if member in r.members:
                return r
        raise KeyError(member)

    def neighbors(self, rid: int) -> set[int]:
        out = set()
        for a, b in self.adjacency:
            if a == rid:
                out.add(b)
            elif b == rid:
                out.add(a)
        return out


def classify(p: PrimitiveCA) -> str:
    """asynchronous iff every transition fires at most one port."""
    if all(len(t.sync) <= 1 for t in p.automaton.transitions):
        return ASYNCHRONOUS
    return SYNCHRONOUS


def _port_owners(primitives: Sequence[PrimitiveCA]) -> dict[str, list[str]]:
    owners: dict[str, list[str]] = {}
    for p in primitives:
        for port in p.automaton.ports:
            owners.setdefault(port, []).append(p.owner)
    for port in owners:
        owners[port].sort()
    return owners


def _build_partition(
    groups: list[tuple[str, tuple[str, ...]]],
    primitives: Sequence[PrimitiveCA],
) -> RegionPartition:
    """Assemble regions + adjacency from (kind, members) groups."""
    owners = _port_owners(primitives)
    by_owner = {p.owner: p for p in primitives}
    regions = []
    for rid, (kind, members) in enumerate(groups):
        member_set = set(members)
        ports = set()
        for m in members:
            ports |= by_owner[m].automaton.ports
        internal = frozenset(
            port
            for port in ports
            if len(owners[port]) == 2 and set(owners[port]) <= member_set
        )
        regions.append(
            Region(rid, kind, tuple(sorted(members)), internal, frozenset(ports) - internal)
        )
    edges = set()
    for i, r in enumerate(regions):
        for s in regions[i + 1:]:
            if r.boundary_ports & s.boundary_ports:
                edges.add((r.id, s.id))
    m1 = sum(1 for r in regions if r.kind == ASYNCHRONOUS)
    return RegionPartition(tuple(regions), frozenset(edges), m1, len(regions) - m1)


def split(primitives: Sequence[PrimitiveCA]) -> RegionPartition:
    """Partition primitives into asynchronous and synchronous regions."""
    sync_prims = [p for p in primitives if classify(p) == SYNCHRONOUS]
    async_prims = [p for p in primitives if classify(p) == ASYNCHRONOUS]

    # connected components of the port-sharing graph over synchronous primitives
    parent = {p.owner: p.owner for p in sync_prims}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    port_map: dict[str, str] = {}
    for p in sync_prims:
        for port in p.automaton.ports:
            if port in port_map:
                ra, rb = find(port_map[port]), find(p.owner)
                if ra != rb:
                    parent[ra] = rb
            else:
                port_map[port] = p.owner
    components: dict[str, list[str]] = {}
    for p in sync_prims:
        components.setdefault(find(p.owner), []).append(p.owner)

    groups: list[tuple[str, tuple[str, ...]]] = []
    for members in components.values():
        groups.append((SYNCHRONOUS, tuple(sorted(members))))
    for p in async_prims:
        groups.append((ASYNCHRONOUS, (p.owner,)))
    groups.sort(key=lambda g: g[1])
    return _build_partition(groups, primitives)


def merge_mixed(
    pt: RegionPartition, primitives: Sequence[PrimitiveCA]
) -> RegionPartition:
    """Absorb single-neighbor asynchronous regions into their synchronous
    neighbor, making it mixed; iterate in ascending region-id order until
    no region qualifies.  The fixpoint is order-independent (the test suite
    compares against a descending-order pass)."""
    owners = _port_owners(primitives)
    external = {port for port, who in owners.items() if len(who) == 1}
    groups = {r.id: [r.kind, list(r.members)] for r in pt.regions}
    current = pt
    changed = True
    while changed:
        changed = False
        for region in sorted(current.regions, key=lambda r: r.id):
            if region.kind != ASYNCHRONOUS:
                continue
            if region.boundary_ports & external:
                continue
            neigh = current.neighbors(region.id)
            if len(neigh) != 1:
                continue
            target_id = next(iter(neigh))
            target_kind = groups[target_id][0]
            if target_kind not in (SYNCHRONOUS, MIXED):
                continue
            groups[target_id][0] = MIXED
            groups[target_id][1].extend(region.members)
            del groups[region.id]
            ordered = [
                (kind, tuple(sorted(members)))
                for _, (kind, members) in sorted(groups.items())
            ]
            rebuilt = _build_partition(ordered, primitives)
            # _build_partition renumbers; keep stable external ids by mapping
            # back through member sets
            id_map = {}
            for r in rebuilt.regions:
                for old_id, (kind, members) in groups.items():
                    if set(members) == set(r.members):
                        id_map[r.id] = old_id
            regions = tuple(
                replace(r, id=id_map[r.id]) for r in rebuilt.regions
            )
            edges = frozenset(
                tuple(sorted((id_map[a], id_map[b]))) for a, b in rebuilt.adjacency
            )
            current = RegionPartition(regions, edges, rebuilt.m1, rebuilt.m2)
            changed = True
            break
    return current
