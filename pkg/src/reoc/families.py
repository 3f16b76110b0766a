"""Generators for the benchmark connector families.

Four parametric constructions used throughout the tests and the CLI:

* ``alternator(k)``: k producers whose items the consumer must receive in
  top-to-bottom order; the producers synchronize collectively through a
  chain of syncdrains, and k-1 one-place buffers stage the lower items.
* ``asyncmerger(k)``: k producers feeding one consumer through independent
  buffers; delivery order is arbitrary.
* ``sequencer(k)``: a token ring of k buffers (one initially full) driving
  k consumers strictly in round-robin order.
* ``sync_chain(n)``: n synchronous channels in series, behaviorally a
  single synchronous channel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ca import AGNOSTIC_VALUE
from .connector import Channel, Connector, validate_connector
from .errors import InvalidSize

FAMILIES = ("alternator", "asyncmerger", "sequencer", "sync_chain")


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its size parameter."""

    family: str
    size: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSize(f"unknown family {self.family!r}")
        minimum = 1 if self.family == "sync_chain" else 2
        if self.size < minimum:
            raise InvalidSize(
                f"{self.family} needs size >= {minimum}, got {self.size}"
            )


def _idx(i: int, k: int) -> str:
    width = len(str(k))
    return f"{i:0{width}d}" if width > 1 else str(i)


def gen_alternator(k: int) -> Connector:
    """Producers P1..Pk, sink Z, merge node M, chain nodes N1..N(k-1).

    Syncdrains pair consecutive producers so all k fire together; P1's item
    goes straight through M to Z while P(i+1)'s enters buffer Fi; buffered
    items then drain downward one step at a time.
    """
    spec = FamilySpec("alternator", k)
    n = spec.size
    P = [f"P{_idx(i, n)}" for i in range(1, n + 1)]
    N = [f"N{_idx(i, n)}" for i in range(1, n)]
    channels = []
    for i in range(n - 1):
        channels.append(Channel(f"D{_idx(i + 1, n)}", "syncdrain", P[i], P[i + 1]))
    channels.append(Channel(f"S{_idx(0, n)}", "sync", P[0], "M"))
    for i in range(n - 1):
        channels.append(Channel(f"S{_idx(i + 1, n)}", "sync", P[i + 1], N[i]))
    for i in range(n - 1):
        below = "M" if i == 0 else N[i - 1]
        channels.append(Channel(f"F{_idx(i + 1, n)}", "fifo1", N[i], below))
    channels.append(Channel("SZ", "sync", "M", "Z"))
    c = Connector(
        f"alternator{n}",
        tuple(sorted(P)),
        ("Z",),
        tuple(sorted(["M"] + N)),
        tuple(channels),
    )
    validate_connector(c)
    return c


def gen_asyncmerger(k: int) -> Connector:
    """Producers P1..Pk each buffering into merge node M, sync M -> Z."""
    spec = FamilySpec("asyncmerger", k)
    n = spec.size
    P = [f"P{_idx(i, n)}" for i in range(1, n + 1)]
    channels = [
        Channel(f"F{_idx(i + 1, n)}", "fifo1", P[i], "M") for i in range(n)
    ]
    channels.append(Channel("SZ", "sync", "M", "Z"))
    c = Connector(
        f"asyncmerger{n}", tuple(sorted(P)), ("Z",), ("M",), tuple(channels)
    )
    validate_connector(c)
    return c


def gen_sequencer(k: int) -> Connector:
    """Ring R1..Rk of buffers (first preloaded) with a sink Bi at each stop."""
    spec = FamilySpec("sequencer", k)
    n = spec.size
    R = [f"R{_idx(i, n)}" for i in range(1, n + 1)]
    B = [f"B{_idx(i, n)}" for i in range(1, n + 1)]
    channels = []
    for i in range(n):
        succ = R[(i + 1) % n]
        cid = f"F{_idx(i + 1, n)}"
        if i == 0:
            channels.append(Channel(cid, "fifo1full", R[0], succ, AGNOSTIC_VALUE))
        else:
            channels.append(Channel(cid, "fifo1", R[i], succ))
    for i in range(n):
        channels.append(Channel(f"S{_idx(i + 1, n)}", "sync", R[i], B[i]))
    c = Connector(
        f"sequencer{n}", (), tuple(sorted(B)), tuple(sorted(R)), tuple(channels)
    )
    validate_connector(c)
    return c


def gen_sync_chain(n: int) -> Connector:
    """Source A to sink B through n synchronous channels in series."""
    spec = FamilySpec("sync_chain", n)
    size = spec.size
    X = [f"X{_idx(i, size)}" for i in range(1, size)]
    nodes = ["A"] + X + ["B"]
    channels = [
        Channel(f"C{_idx(i + 1, size)}", "sync", nodes[i], nodes[i + 1])
        for i in range(size)
    ]
    c = Connector(
        f"sync_chain{size}", ("A",), ("B",), tuple(sorted(X)), tuple(channels)
    )
    validate_connector(c)
    return c


def gen_family(spec: FamilySpec) -> Connector:
    """Dispatch on the family name; sizes are validated by FamilySpec."""
    builder = {
        "alternator": gen_alternator,
        "asyncmerger": gen_asyncmerger,
        "sequencer": gen_sequencer,
        "sync_chain": gen_sync_chain,
    }[spec.family]
    return builder(spec.size)
