"""Constraint-automata algebra.

A constraint automaton is a finite-state machine whose transitions carry a
synchronization set of ports plus a data constraint (a conjunction of
equalities over a finite data domain).  This module provides the
representation and the composition algebra: product, hide (with silent-
transition elimination), reachability pruning, renaming, and bisimilarity.

Everything here is a pure value transformation; automata are immutable.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    DomainMismatch,
    PortMismatch,
    ReocError,
    TransitionBudgetExceeded,
    UnknownPort,
)

#: literal used by the data-agnostic (singleton) domain
AGNOSTIC_VALUE = "*"

#: cap on enumerated satisfying assignments in semantic comparisons
_ASSIGNMENT_CAP = 100_000


@dataclass(frozen=True)
class DataDomain:
    """Finite, ordered set of data literals.

    A singleton domain is the data-agnostic mode: every guard collapses to
    the trivially-true constraint.
    """

    values: tuple[str, ...]

    def __post_init__(self):
        if not self.values:
            raise ReocError("data domain needs at least one value")
        if len(set(self.values)) != len(self.values):
            raise ReocError("data domain values must be distinct")

    @classmethod
    def agnostic(cls) -> "DataDomain":
        return cls((AGNOSTIC_VALUE,))

    @classmethod
    def of(cls, *values: str) -> "DataDomain":
        return cls(tuple(values))

    @property
    def is_agnostic(self) -> bool:
        return len(self.values) == 1

    def __contains__(self, literal: str) -> bool:
        return literal in self.values


@dataclass(frozen=True, order=True)
class Atom:
    """One equality: port = port (kind "pp") or port = literal (kind "pl")."""

    kind: str
    a: str
    b: str

    def __post_init__(self):
        if self.kind not in ("pp", "pl"):
            raise ReocError(f"unknown atom kind {self.kind!r}")


def eq_ports(a: str, b: str) -> Atom:
    lo, hi = sorted((a, b))
    return Atom("pp", lo, hi)


def eq_literal(port: str, literal: str) -> Atom:
    return Atom("pl", port, literal)


class DataConstraint:
    """Conjunction of equality atoms; the empty conjunction is true.

    Hash-cached plain class: guards sit on every transition and get hashed
    heavily during product folds.
    """

    __slots__ = ("atoms", "_hash")

    def __init__(self, atoms: tuple[Atom, ...] = ()):
        self.atoms = atoms
        self._hash = hash(atoms)

    @property
    def is_true(self) -> bool:
        return not self.atoms

    def ports(self) -> frozenset[str]:
        out = set()
        for atom in self.atoms:
            out.add(atom.a)
            if atom.kind == "pp":
                out.add(atom.b)
        return frozenset(out)

    def conjoin(self, other: "DataConstraint") -> "DataConstraint":
        if not self.atoms:
            return other
        if not other.atoms:
            return self
        return DataConstraint(tuple(sorted(set(self.atoms) | set(other.atoms))))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, DataConstraint) and self.atoms == other.atoms

    def __repr__(self):
        return f"DataConstraint(atoms={self.atoms!r})"


TRUE = DataConstraint()


def constraint(*atoms: Atom) -> DataConstraint:
    return DataConstraint(tuple(sorted(set(atoms))))


# -- guard semantics ----------------------------------------------------------
#
# Equality conjunctions are handled through their equivalence classes:
# ports mentioned together are grouped, each group optionally pinned to one
# literal.  A class pinned twice (or pinned outside the domain) is
# unsatisfiable.  The solution set of a guard is the independent choice of
# one domain value per free class, which makes satisfiability, counting,
# projection, and sampling cheap even for wide synchronization sets.  The
# test suite checks these against raw brute-force enumeration.


def _guard_classes(
    atoms: Iterable[Atom], ports: Iterable[str]
) -> Optional[list[tuple[tuple[str, ...], Optional[str]]]]:
    """Group `ports` into equality classes; None if contradictory pins."""
    parent: dict[str, str] = {p: p for p in ports}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    pins: dict[str, str] = {}
    pl_atoms = []
    for atom in atoms:
        if atom.kind == "pp":
            if atom.a not in parent or atom.b not in parent:
                raise UnknownPort(f"guard mentions unknown port in {atom}")
            union(atom.a, atom.b)
        else:
            if atom.a not in parent:
                raise UnknownPort(f"guard mentions unknown port in {atom}")
            pl_atoms.append(atom)
    for atom in pl_atoms:
        root = find(atom.a)
        if root in pins and pins[root] != atom.b:
            return None
        pins[root] = atom.b

    groups: dict[str, list[str]] = {}
    for p in parent:
        groups.setdefault(find(p), []).append(p)
    classes = [
        (tuple(sorted(members)), pins.get(root))
        for root, members in groups.items()
    ]
    classes.sort(key=lambda c: c[0][0])
    return classes


def normalize_guard(
    guard: DataConstraint, sync: frozenset[str], domain: DataDomain
) -> Optional[DataConstraint]:
    """Canonical equivalent of `guard` over `sync`, or None if unsatisfiable.

    In a singleton domain every satisfiable guard normalizes to true.
    """
    if guard.is_true:
        return TRUE
    classes = _guard_classes(guard.atoms, sync)
    if classes is None:
        return None
    for _, pin in classes:
        if pin is not None and pin not in domain:
            return None
    if domain.is_agnostic:
        return TRUE
    atoms: list[Atom] = []
    for members, pin in classes:
        rep = members[0]
        atoms.extend(eq_ports(rep, other) for other in members[1:])
        if pin is not None:
            atoms.append(eq_literal(rep, pin))
    return DataConstraint(tuple(sorted(atoms)))


def guard_satisfiable(
    guard: DataConstraint, sync: frozenset[str], domain: DataDomain
) -> bool:
    return normalize_guard(guard, sync, domain) is not None


def count_assignments(
    guard: DataConstraint, sync: frozenset[str], domain: DataDomain
) -> int:
    classes = _guard_classes(guard.atoms, sync)
    if classes is None:
        return 0
    n = 1
    for _, pin in classes:
        if pin is None:
            n *= len(domain.values)
        elif pin not in domain:
            return 0
    return n


def iter_assignments(
    guard: DataConstraint, sync: frozenset[str], domain: DataDomain
) -> Iterator[dict[str, str]]:
    """All satisfying assignments of `guard` over `sync`, sorted order."""
    classes = _guard_classes(guard.atoms, sync)
    if classes is None:
        return
    choices = []
    for members, pin in classes:
        if pin is None:
            choices.append([(members, v) for v in domain.values])
        elif pin in domain:
            choices.append([(members, pin)])
        else:
            return
    for combo in itertools.product(*choices):
        out: dict[str, str] = {}
        for members, value in combo:
            for p in members:
                out[p] = value
        yield out


def solve_guard(
    guard: DataConstraint,
    sync: frozenset[str],
    domain: DataDomain,
    pinned: Optional[Mapping[str, str]] = None,
) -> Optional[dict[str, str]]:
    """One canonical satisfying assignment, or None.

    `pinned` adds extra port=literal constraints (e.g. pending writes).
    Free classes take the first domain value.
    """
    atoms = list(guard.atoms)
    if pinned:
        for port, value in pinned.items():
            atoms.append(eq_literal(port, value))
    classes = _guard_classes(atoms, sync)
    if classes is None:
        return None
    out: dict[str, str] = {}
    for members, pin in classes:
        if pin is not None and pin not in domain:
            return None
        value = pin if pin is not None else domain.values[0]
        for p in members:
            out[p] = value
    return out


def project_guard(
    guard: DataConstraint,
    sync: frozenset[str],
    hidden: frozenset[str],
    domain: DataDomain,
) -> Optional[DataConstraint]:
    """Existentially quantify `hidden` ports out of `guard` over `sync`.

    Equality conjunctions are closed under projection: dropping the hidden
    members of each equality class leaves another equality conjunction with
    the same solutions on the remaining ports.
    """
    if guard.is_true:
        return TRUE
    classes = _guard_classes(guard.atoms, sync)
    if classes is None:
        return None
    atoms: list[Atom] = []
    for members, pin in classes:
        if pin is not None and pin not in domain:
            return None
        kept = [p for p in members if p not in hidden]
        if not kept:
            continue
        rep = kept[0]
        atoms.extend(eq_ports(rep, other) for other in kept[1:])
        if pin is not None:
            atoms.append(eq_literal(rep, pin))
    return normalize_guard(
        DataConstraint(tuple(sorted(atoms))), sync - hidden, domain
    )


# -- automata -----------------------------------------------------------------


class Transition:
    """One step: fire every port in `sync`, data constrained by `guard`."""

    __slots__ = ("source", "sync", "guard", "target", "_hash")

    def __init__(self, source: str, sync: frozenset[str], guard: DataConstraint, target: str):
        self.source = source
        self.sync = sync
        self.guard = guard
        self.target = target
        self._hash = hash((source, sync, guard, target))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Transition)
            and self.source == other.source
            and self.sync == other.sync
            and self.guard == other.guard
            and self.target == other.target
        )

    def __repr__(self):
        return (
            f"Transition({self.source!r}, {set(self.sync)!r}, "
            f"{self.guard!r}, {self.target!r})"
        )

    def sort_key(self):
        return (self.source, tuple(sorted(self.sync)), self.target, self.guard.atoms)


@dataclass(frozen=True)
class ConstraintAutomaton:
    """Immutable constraint automaton over a fixed data domain."""

    ports: frozenset[str]
    states: frozenset[str]
    initial: str
    transitions: frozenset[Transition]
    domain: DataDomain = field(default_factory=DataDomain.agnostic)

    def __post_init__(self):
        if self.initial not in self.states:
            raise ReocError(f"initial state {self.initial!r} not a state")
        states, ports = self.states, self.ports
        for t in self.transitions:
            if t.source not in states or t.target not in states:
                raise ReocError(f"transition {t} has undeclared endpoint")
            if not t.sync:
                raise ReocError("exported automata may not contain silent transitions")
            if not t.sync <= ports:
                raise ReocError(f"sync set {sorted(t.sync)} not within ports")
            if t.guard.atoms and not t.guard.ports() <= t.sync:
                raise ReocError(f"guard of {t} mentions ports outside its sync set")

    def transitions_from(self, state: str) -> list[Transition]:
        return sorted(
            (t for t in self.transitions if t.source == state),
            key=Transition.sort_key,
        )

    def sorted_transitions(self) -> list[Transition]:
        return sorted(self.transitions, key=Transition.sort_key)


def automaton(
    ports: Iterable[str],
    states: Iterable[str],
    initial: str,
    transitions: Iterable[tuple[str, Iterable[str], DataConstraint, str]],
    domain: Optional[DataDomain] = None,
) -> ConstraintAutomaton:
    """Convenience constructor from plain tuples; normalizes guards."""
    dom = domain or DataDomain.agnostic()
    built = set()
    for source, sync, guard, target in transitions:
        fsync = frozenset(sync)
        norm = normalize_guard(guard, fsync, dom)
        if norm is None:
            continue
        built.add(Transition(source, fsync, norm, target))
    return ConstraintAutomaton(
        frozenset(ports), frozenset(states), initial, frozenset(built), dom
    )


EMPTY = ConstraintAutomaton(
    frozenset(), frozenset({"q"}), "q", frozenset(), DataDomain.agnostic()
)


def counts(a: ConstraintAutomaton) -> tuple[int, int]:
    """Exact (state count, transition count)."""
    return (len(a.states), len(a.transitions))


def pair_state(qa: str, qb: str) -> str:
    return f"{qa}|{qb}"


def product(
    a: ConstraintAutomaton,
    b: ConstraintAutomaton,
    max_transitions: Optional[int] = None,
) -> ConstraintAutomaton:
    """Compose two automata over the union of their ports.

    From a pair of states, three kinds of step exist: a transition of one
    side whose sync set avoids the other side's ports fires alone; two
    transitions agreeing on the ports they share fire jointly; and two
    transitions touching none of the other side's ports fire simultaneously
    (true concurrency).  The last two collapse into one rule: t_a and t_b
    combine iff sync(t_a) ∩ ports(b) == sync(t_b) ∩ ports(a).  Only state
    pairs reachable from the initial pair are kept; combined guards that
    are unsatisfiable over the domain are dropped.
    """
    if a.domain != b.domain:
        raise DomainMismatch(
            f"operand domains differ: {a.domain.values} vs {b.domain.values}"
        )
    dom = a.domain
    a_ports, b_ports = a.ports, b.ports
    a_by_src: dict[str, list[Transition]] = {}
    for t in a.transitions:
        a_by_src.setdefault(t.source, []).append(t)
    b_by_src: dict[str, list[Transition]] = {}
    for t in b.transitions:
        b_by_src.setdefault(t.source, []).append(t)
    overlap_a = {t: t.sync & b_ports for ts in a_by_src.values() for t in ts}
    overlap_b = {t: t.sync & a_ports for ts in b_by_src.values() for t in ts}

    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    # dedup on plain tuples; Transition objects built once at the end
    keys: set[tuple] = set()
    names: dict[tuple[str, str], str] = {start: pair_state(*start)}

    def name_of(pair):
        s = names.get(pair)
        if s is None:
            s = names[pair] = pair_state(*pair)
        return s

    def emit(src, sync, guard, ta, tb):
        nxt = (ta, tb)
        key = (src, sync, guard, name_of(nxt))
        if key not in keys:
            keys.add(key)
            if max_transitions is not None and len(keys) > max_transitions:
                raise TransitionBudgetExceeded(len(keys), max_transitions)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    while queue:
        pair = queue.popleft()
        qa, qb = pair
        src = name_of(pair)
        ts_a = a_by_src.get(qa, [])
        ts_b = b_by_src.get(qb, [])
        for ta in ts_a:
            if not overlap_a[ta]:
                emit(src, ta.sync, ta.guard, ta.target, qb)
        for tb in ts_b:
            if not overlap_b[tb]:
                emit(src, tb.sync, tb.guard, qa, tb.target)
        for ta in ts_a:
            ov_a = overlap_a[ta]
            ta_sync, ta_guard, ta_target = ta.sync, ta.guard, ta.target
            for tb in ts_b:
                if ov_a != overlap_b[tb]:
                    continue
                sync = ta_sync | tb.sync
                if ta_guard.is_true and tb.guard.is_true:
                    guard = TRUE
                else:
                    guard = normalize_guard(ta_guard.conjoin(tb.guard), sync, dom)
                    if guard is None:
                        continue
                emit(src, sync, guard, ta_target, tb.target)

    states = frozenset(names[pair] for pair in seen)
    return ConstraintAutomaton(
        a_ports | b_ports,
        states,
        pair_state(a.initial, b.initial),
        frozenset(Transition(*key) for key in keys),
        dom,
    )


def prune_unreachable(a: ConstraintAutomaton) -> ConstraintAutomaton:
    """Drop states and transitions not reachable from the initial state."""
    by_src: dict[str, list[Transition]] = {}
    for t in a.transitions:
        by_src.setdefault(t.source, []).append(t)
    reachable = {a.initial}
    stack = [a.initial]
    while stack:
        q = stack.pop()
        for t in by_src.get(q, []):
            if t.target not in reachable:
                reachable.add(t.target)
                stack.append(t.target)
    if reachable == a.states:
        return a
    return ConstraintAutomaton(
        a.ports,
        frozenset(reachable),
        a.initial,
        frozenset(t for t in a.transitions if t.source in reachable),
        a.domain,
    )


def _confluent_normal_forms(
    silent_edges: dict[str, set[str]],
    visible_by_src: dict[str, list[tuple[frozenset[str], DataConstraint, str]]],
    states: Iterable[str],
) -> Optional[dict[str, str]]:
    """Map each state to its silent normal form, if every silent step is
    strongly confluent and the silent relation is acyclic; None otherwise.

    Strong confluence: for q -tau-> q1 and any other step q -> q2, either
    both are the same silent step, or the moves commute in one step (for a
    visible step, q1 offers the same label toward q2's silent successor;
    for a silent step, q1 and q2 share a one-step silent successor).
    """
    for q, succs in silent_edges.items():
        q_visible = visible_by_src.get(q, [])
        for q1 in succs:
            for q2 in succs:
                if q2 == q1:
                    continue
                s1 = silent_edges.get(q1, set())
                s2 = silent_edges.get(q2, set())
                if not (q2 in s1 or q1 in s2 or (s1 & s2)):
                    return None
            for nsync, nguard, q2 in q_visible:
                joins = False
                for msync, mguard, r in visible_by_src.get(q1, []):
                    if (
                        msync == nsync
                        and mguard == nguard
                        and (r == q2 or r in silent_edges.get(q2, set()))
                    ):
                        joins = True
                        break
                if not joins:
                    return None

    # topological pass over the (acyclic) silent DAG
    nf: dict[str, str] = {}

    def resolve(q: str, trail: set[str]) -> Optional[str]:
        if q in nf:
            return nf[q]
        if q in trail:
            return None  # silent cycle
        succs = silent_edges.get(q)
        if not succs:
            nf[q] = q
            return q
        trail.add(q)
        res = resolve(min(succs), trail)
        trail.discard(q)
        if res is None:
            return None
        nf[q] = res
        return res

    for q in states:
        if resolve(q, set()) is None:
            return None
    return nf


def hide(a: ConstraintAutomaton, hidden: Iterable[str]) -> ConstraintAutomaton:
    """Remove `hidden` ports from every label and eliminate silent steps.

    Guards are existentially quantified over the hidden ports; transitions
    whose sync set empties out become silent.  When every silent step is
    strongly confluent (and acyclic), silent steps are committed eagerly:
    states collapse onto their silent normal forms, which preserves
    branching structure and keeps buffer-shift chains from materializing
    exponentially many interleavings.  Otherwise the general rule applies:
    for every state q and every visible transition leaving the silent
    closure of q, the result gets that transition re-rooted at q.  Either
    way all silent transitions are removed and unreachable states pruned.
    """
    hidden = frozenset(hidden)
    unknown = hidden - a.ports
    if unknown:
        raise UnknownPort(f"cannot hide unknown ports {sorted(unknown)}")
    if not hidden:
        return a
    dom = a.domain
    silent_edges: dict[str, set[str]] = {}
    visible_by_src: dict[str, list[tuple[frozenset[str], DataConstraint, str]]] = {}
    for t in a.transitions:
        nsync = t.sync - hidden
        nguard = project_guard(t.guard, t.sync, hidden, dom)
        if nguard is None:
            continue
        if nsync:
            visible_by_src.setdefault(t.source, []).append((nsync, nguard, t.target))
        else:
            silent_edges.setdefault(t.source, set()).add(t.target)

    keys: set[tuple] = set()
    initial = a.initial
    if not silent_edges:
        for q, steps in visible_by_src.items():
            for nsync, nguard, target in steps:
                keys.add((q, nsync, nguard, target))
    else:
        nf = _confluent_normal_forms(silent_edges, visible_by_src, a.states)
        if nf is not None:
            initial = nf[a.initial]
            for q, steps in visible_by_src.items():
                if q in silent_edges:
                    continue  # reducible state; its behavior lives at nf targets
                for nsync, nguard, target in steps:
                    keys.add((q, nsync, nguard, nf[target]))
        else:

            def closure(q: str) -> set[str]:
                out = {q}
                stack = [q]
                while stack:
                    s = stack.pop()
                    for nxt in silent_edges.get(s, ()):
                        if nxt not in out:
                            out.add(nxt)
                            stack.append(nxt)
                return out

            for q in a.states:
                for p in closure(q):
                    for nsync, nguard, target in visible_by_src.get(p, []):
                        keys.add((q, nsync, nguard, target))

    result = ConstraintAutomaton(
        a.ports - hidden,
        a.states,
        initial,
        frozenset(Transition(*key) for key in keys),
        dom,
    )
    return prune_unreachable(result)


def rename_ports(
    a: ConstraintAutomaton, mapping: Mapping[str, str]
) -> ConstraintAutomaton:
    """Rename ports; `mapping` entries must stay injective on a's ports."""
    unknown = set(mapping) - set(a.ports)
    if unknown:
        raise UnknownPort(f"cannot rename unknown ports {sorted(unknown)}")

    def ren(p: str) -> str:
        return mapping.get(p, p)

    new_ports = frozenset(ren(p) for p in a.ports)
    if len(new_ports) != len(a.ports):
        raise ReocError("port renaming must be injective")
    transitions = set()
    for t in a.transitions:
        atoms = []
        for atom in t.guard.atoms:
            if atom.kind == "pp":
                atoms.append(eq_ports(ren(atom.a), ren(atom.b)))
            else:
                atoms.append(eq_literal(ren(atom.a), atom.b))
        transitions.add(
            Transition(
                t.source,
                frozenset(ren(p) for p in t.sync),
                DataConstraint(tuple(sorted(atoms))),
                t.target,
            )
        )
    return ConstraintAutomaton(
        new_ports, a.states, a.initial, frozenset(transitions), a.domain
    )


def _semantic_label(t: Transition, dom: DataDomain, cache: dict):
    key = (t.sync, t.guard)
    label = cache.get(key)
    if label is None:
        if count_assignments(t.guard, t.sync, dom) > _ASSIGNMENT_CAP:
            raise ReocError("domain too large for semantic transition labels")
        assigns = frozenset(
            frozenset(a.items()) for a in iter_assignments(t.guard, t.sync, dom)
        )
        label = (t.sync, assigns)
        cache[key] = label
    return label


def bisimilar(a: ConstraintAutomaton, b: ConstraintAutomaton) -> bool:
    """Strong bisimilarity on semantic labels (sync set + assignment set).

    Both automata must range over the same ports and domain; rename first
    if they do not.  Hidden automata contain no silent transitions, so
    strong bisimilarity here doubles as observational equivalence.
    """
    if a.ports != b.ports:
        raise PortMismatch(
            f"port sets differ: {sorted(a.ports)} vs {sorted(b.ports)}"
        )
    if a.domain != b.domain:
        raise DomainMismatch("cannot compare automata over different domains")
    dom = a.domain
    cache: dict = {}
    label_ids: dict = {}

    def label_id(t: Transition) -> int:
        lab = _semantic_label(t, dom, cache)
        if lab not in label_ids:
            label_ids[lab] = len(label_ids)
        return label_ids[lab]

    states = [("a", q) for q in sorted(a.states)] + [("b", q) for q in sorted(b.states)]
    outgoing: dict[tuple[str, str], list[tuple[int, tuple[str, str]]]] = {
        s: [] for s in states
    }
    for tag, aut in (("a", a), ("b", b)):
        for t in aut.sorted_transitions():
            outgoing[(tag, t.source)].append((label_id(t), (tag, t.target)))

    block = {s: 0 for s in states}
    nblocks = 1
    while True:
        sigs = {
            s: (block[s], frozenset((lid, block[tgt]) for lid, tgt in outgoing[s]))
            for s in states
        }
        mapping: dict = {}
        for s in states:
            mapping.setdefault(sigs[s], len(mapping))
        new_block = {s: mapping[sigs[s]] for s in states}
        if len(mapping) == nblocks:
            block = new_block
            break
        block, nblocks = new_block, len(mapping)
    return block[("a", a.initial)] == block[("b", b.initial)]


# -- serialization ------------------------------------------------------------


def to_json_dict(a: ConstraintAutomaton) -> dict:
    """CA JSON object: sorted everywhere so output bytes are stable."""
    return {
        "ports": sorted(a.ports),
        "states": sorted(a.states),
        "initial": a.initial,
        "transitions": [
            {
                "from": t.source,
                "sync": sorted(t.sync),
                "guard": [
                    {"kind": atom.kind, "a": atom.a, "b": atom.b}
                    for atom in t.guard.atoms
                ],
                "to": t.target,
            }
            for t in a.sorted_transitions()
        ],
        "domain": list(a.domain.values),
    }


def to_json(a: ConstraintAutomaton) -> str:
    return json.dumps(to_json_dict(a), indent=2, sort_keys=True)


def from_json_dict(d: dict) -> ConstraintAutomaton:
    dom = DataDomain(tuple(d["domain"]))
    transitions = []
    for t in d["transitions"]:
        guard = DataConstraint(
            tuple(sorted(Atom(g["kind"], g["a"], g["b"]) for g in t["guard"]))
        )
        transitions.append(
            Transition(t["from"], frozenset(t["sync"]), guard, t["to"])
        )
    return ConstraintAutomaton(
        frozenset(d["ports"]),
        frozenset(d["states"]),
        d["initial"],
        frozenset(transitions),
        dom,
    )


def from_json(text: str) -> ConstraintAutomaton:
    return from_json_dict(json.loads(text))


def to_dot(a: ConstraintAutomaton, name: str = "ca") -> str:
    """GraphViz rendering: one node per state, edge label = sorted sync set."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;"]
    lines.append('  __start [shape=point, label=""];')
    for q in sorted(a.states):
        lines.append(f"  {json.dumps(q)} [shape=circle];")
    lines.append(f"  __start -> {json.dumps(a.initial)};")
    for t in a.sorted_transitions():
        label = "{" + " ".join(sorted(t.sync)) + "}"
        lines.append(
            f"  {json.dumps(t.source)} -> {json.dumps(t.target)} "
            f"[label={json.dumps(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
