"""Connector source language: grammar, validation, primitive automata.

A connector is a graph of named nodes joined by typed channels.  Boundary
nodes carry an external port where a computation thread attaches; internal
nodes only route data.  The textual grammar is line-oriented:

    connector <name>
    boundary_source <node> [, <node> ...]
    boundary_sink   <node> [, <node> ...]
    node            <node> [, <node> ...]
    sync      <id> <src> -> <snk>
    syncdrain <id> <a> -- <b>
    fifo1     <id> <src> -> <snk>
    fifo1full <id> <src> -> <snk> init <literal>
    domain    <lit> [, <lit> ...]        # optional; absent = data-agnostic

Ports are channel-end identifiers "<channelId>.src" / "<channelId>.snk"
plus "<nodeName>.ext" for boundary nodes; each channel-end port occurs in
exactly two primitive automata (its channel and its node), each external
port in exactly one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import ca
from .ca import ConstraintAutomaton, DataConstraint, DataDomain, TRUE
from .errors import (
    ConnectorSyntaxError,
    DomainMismatch,
    ReocError,
    ValidationError,
)

CHANNEL_KINDS = ("sync", "syncdrain", "fifo1", "fifo1full")

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LITERAL = re.compile(r"^[A-Za-z0-9_*.\-]+$")


@dataclass(frozen=True)
class Channel:
    """A typed channel; `init` is the preloaded literal of fifo1full."""

    id: str
    kind: str
    src: str
    snk: str
    init: Optional[str] = None

    @property
    def src_port(self) -> str:
        return f"{self.id}.src"

    @property
    def snk_port(self) -> str:
        return f"{self.id}.snk"


@dataclass(frozen=True)
class Connector:
    """Validated connector: nodes, channels, optional declared data domain."""

    name: str
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    internals: tuple[str, ...]
    channels: tuple[Channel, ...]
    declared_domain: Optional[tuple[str, ...]] = None

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(sorted(self.sources + self.sinks + self.internals))

    @property
    def external_ports(self) -> frozenset[str]:
        return frozenset(f"{n}.ext" for n in self.sources + self.sinks)

    def domain(self) -> DataDomain:
        if self.declared_domain is None:
            return DataDomain.agnostic()
        return DataDomain(self.declared_domain)

    def ext_port(self, node: str) -> str:
        return f"{node}.ext"


@dataclass(frozen=True)
class PrimitiveCA:
    """Small automaton for one channel or one node."""

    owner: str
    kind: str  # "channel" | "node"
    automaton: ConstraintAutomaton


def _syntax(msg: str, line: int, col: int = 1):
    raise ConnectorSyntaxError(msg, line, col)


def _split_names(rest: str, lineno: int) -> list[str]:
    names = [n.strip() for n in rest.split(",")]
    if any(not n for n in names):
        _syntax("empty name in list", lineno)
    for n in names:
        if not _NAME.match(n):
            _syntax(f"invalid name {n!r}", lineno)
    return names


def parse_connector(text: str) -> Connector:
    """Parse and validate connector source; diagnostics carry positions."""
    name: Optional[str] = None
    sources: list[str] = []
    sinks: list[str] = []
    internals: list[str] = []
    channels: list[Channel] = []
    domain: Optional[tuple[str, ...]] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1].strip() if len(parts) > 1 else ""
        if keyword == "connector":
            if name is not None:
                _syntax("duplicate connector declaration", lineno)
            if not _NAME.match(rest):
                _syntax(f"invalid connector name {rest!r}", lineno)
            name = rest
        elif keyword in ("boundary_source", "boundary_sink", "node"):
            if not rest:
                _syntax(f"{keyword} needs at least one node name", lineno)
            target = {
                "boundary_source": sources,
                "boundary_sink": sinks,
                "node": internals,
            }[keyword]
            target.extend(_split_names(rest, lineno))
        elif keyword == "domain":
            if domain is not None:
                _syntax("duplicate domain declaration", lineno)
            lits = [v.strip() for v in rest.split(",")]
            if any(not _LITERAL.match(v) for v in lits):
                _syntax("invalid domain literal", lineno)
            domain = tuple(lits)
        elif keyword in CHANNEL_KINDS:
            arrow = "--" if keyword == "syncdrain" else "->"
            m = re.match(
                rf"^(\S+)\s+(\S+)\s*{re.escape(arrow)}\s*(\S+?)(?:\s+init\s+(\S+))?$",
                rest,
            )
            if not m:
                _syntax(f"malformed {keyword} declaration", lineno, len(keyword) + 2)
            cid, src, snk, init = m.groups()
            for nm in (cid, src, snk):
                if not _NAME.match(nm):
                    _syntax(f"invalid name {nm!r}", lineno)
            if keyword == "fifo1full":
                if init is None:
                    _syntax("fifo1full requires an init literal", lineno)
                if not _LITERAL.match(init):
                    _syntax(f"invalid init literal {init!r}", lineno)
            elif init is not None:
                _syntax(f"{keyword} does not take an init literal", lineno)
            channels.append(Channel(cid, keyword, src, snk, init))
        else:
            _syntax(f"unknown keyword {keyword!r}", lineno)

    if name is None:
        raise ConnectorSyntaxError("missing connector declaration", 1)
    conn = Connector(
        name,
        tuple(sorted(sources)),
        tuple(sorted(sinks)),
        tuple(sorted(internals)),
        tuple(channels),
        domain,
    )
    validate_connector(conn)
    return conn


def validate_connector(c: Connector) -> None:
    """Raise ValidationError on dangling ends, boundary violations,
    duplicate names, unknown literals, or a disconnected graph."""
    declared = list(c.sources) + list(c.sinks) + list(c.internals)
    if not declared:
        raise ValidationError("connector declares no nodes")
    seen = set()
    for n in declared:
        if n in seen:
            raise ValidationError(f"node {n!r} declared more than once")
        seen.add(n)
    ids = set()
    for ch in c.channels:
        if ch.id in ids:
            raise ValidationError(f"channel id {ch.id!r} declared more than once")
        if ch.id in seen:
            raise ValidationError(f"channel id {ch.id!r} collides with a node name")
        ids.add(ch.id)
        for end, node in (("src", ch.src), ("snk", ch.snk)):
            if node not in seen:
                raise ValidationError(
                    f"channel {ch.id!r} {end} end attaches to undeclared node {node!r}"
                )
    if c.declared_domain is not None:
        if len(set(c.declared_domain)) != len(c.declared_domain):
            raise ValidationError("domain literals must be distinct")
    dom = c.domain()
    for ch in c.channels:
        if ch.kind == "fifo1full" and ch.init not in dom:
            raise ValidationError(
                f"channel {ch.id!r} init literal {ch.init!r} not in the data domain"
            )
    # boundary discipline: sources take no data in, sinks give none out
    for ch in c.channels:
        if ch.kind == "syncdrain":
            for node in (ch.src, ch.snk):
                if node in c.sinks:
                    raise ValidationError(
                        f"boundary sink {node!r} has an outgoing end of {ch.id!r}"
                    )
        else:
            if ch.snk in c.sources:
                raise ValidationError(
                    f"boundary source {ch.snk!r} has an incoming end of {ch.id!r}"
                )
            if ch.src in c.sinks:
                raise ValidationError(
                    f"boundary sink {ch.src!r} has an outgoing end of {ch.id!r}"
                )
    # connectivity over the node/channel graph
    adj: dict[str, set[str]] = {n: set() for n in seen}
    for ch in c.channels:
        adj[ch.src].add(ch.snk)
        adj[ch.snk].add(ch.src)
    start = declared[0]
    reached = {start}
    stack = [start]
    while stack:
        n = stack.pop()
        for m in adj[n]:
            if m not in reached:
                reached.add(m)
                stack.append(m)
    if reached != seen:
        missing = sorted(seen - reached)
        raise ValidationError(f"connector graph is disconnected: {missing}")


def serialize_connector(c: Connector) -> str:
    """Canonical source text; parse(serialize(c)) == c."""
    lines = [f"connector {c.name}"]
    if c.sources:
        lines.append("boundary_source " + ", ".join(c.sources))
    if c.sinks:
        lines.append("boundary_sink " + ", ".join(c.sinks))
    if c.internals:
        lines.append("node " + ", ".join(c.internals))
    if c.declared_domain is not None:
        lines.append("domain " + ", ".join(c.declared_domain))
    for ch in c.channels:
        arrow = "--" if ch.kind == "syncdrain" else "->"
        line = f"{ch.kind} {ch.id} {ch.src} {arrow} {ch.snk}"
        if ch.kind == "fifo1full":
            line += f" init {ch.init}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# -- primitive automata -------------------------------------------------------


def _channel_automaton(ch: Channel, dom: DataDomain) -> ConstraintAutomaton:
    src, snk = ch.src_port, ch.snk_port
    if ch.kind == "sync":
        return ca.automaton(
            [src, snk],
            ["q"],
            "q",
            [("q", [src, snk], ca.constraint(ca.eq_ports(src, snk)), "q")],
            dom,
        )
    if ch.kind == "syncdrain":
        return ca.automaton(
            [src, snk], ["q"], "q", [("q", [src, snk], TRUE, "q")], dom
        )
    # fifo1 / fifo1full: one-place buffer, content encoded in the state
    states = ["e"] + [f"f[{v}]" for v in dom.values]
    transitions = []
    for v in dom.values:
        transitions.append(
            ("e", [src], ca.constraint(ca.eq_literal(src, v)), f"f[{v}]")
        )
        transitions.append(
            (f"f[{v}]", [snk], ca.constraint(ca.eq_literal(snk, v)), "e")
        )
    initial = "e" if ch.kind == "fifo1" else f"f[{ch.init}]"
    return ca.automaton([src, snk], states, initial, transitions, dom)


def _node_automaton(
    c: Connector, node: str, dom: DataDomain
) -> ConstraintAutomaton:
    """Merger-replicator node: each input port feeds every output port.

    Incoming ends deliver data into the node (snk ends of directed
    channels); outgoing ends take data out (src ends, plus both ends of a
    syncdrain).  A boundary source contributes its external port as the
    node's one input; a boundary sink contributes it as the one output.
    """
    inputs: list[str] = []
    outputs: list[str] = []
    for ch in c.channels:
        if ch.kind == "syncdrain":
            if ch.src == node:
                outputs.append(ch.src_port)
            if ch.snk == node:
                outputs.append(ch.snk_port)
        else:
            if ch.src == node:
                outputs.append(ch.src_port)
            if ch.snk == node:
                inputs.append(ch.snk_port)
    if node in c.sources:
        inputs.append(c.ext_port(node))
    if node in c.sinks:
        outputs.append(c.ext_port(node))
    inputs.sort()
    outputs.sort()
    transitions = []
    for i in inputs:
        sync = [i] + outputs
        guard = ca.constraint(*(ca.eq_ports(i, o) for o in outputs))
        transitions.append(("q", sync, guard, "q"))
    return ca.automaton(inputs + outputs, ["q"], "q", transitions, dom)


def primitive_automata(
    c: Connector, dom: Optional[DataDomain] = None
) -> list[PrimitiveCA]:
    """One small automaton per channel and per node, in owner-name order."""
    d = dom or c.domain()
    for ch in c.channels:
        if ch.kind == "fifo1full" and ch.init not in d:
            raise DomainMismatch(
                f"channel {ch.id!r} init literal {ch.init!r} not in domain"
            )
    prims = [
        PrimitiveCA(ch.id, "channel", _channel_automaton(ch, d))
        for ch in c.channels
    ]
    prims.extend(
        PrimitiveCA(node, "node", _node_automaton(c, node, d))
        for node in c.nodes
    )
    prims.sort(key=lambda p: p.owner)
    return prims
