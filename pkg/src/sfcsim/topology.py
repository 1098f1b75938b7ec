"""Physical infrastructure model: data centers, links, delay-weighted paths.

A topology is immutable after construction. Propagation delay on a link is
fiber length divided by the propagation speed (3e8 m/s); shortest paths
minimize cumulative propagation delay with a deterministic lexicographic
tie-break over node-id sequences.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import yaml

from .errors import (
    ConfigError,
    DanglingLinkError,
    DisconnectedGraphError,
    DuplicateIdError,
    NoSuchLinkError,
)

PROPAGATION_SPEED = 3.0e8  # m/s


@dataclass(frozen=True)
class DataCenterSpec:
    id: int
    cpu_capacity: float    # cycles/s
    storage_capacity: float  # GB

    def __post_init__(self):
        if self.cpu_capacity <= 0:
            raise ConfigError(f"DC {self.id}: cpu_capacity must be > 0")
        if self.storage_capacity <= 0:
            raise ConfigError(f"DC {self.id}: storage_capacity must be > 0")


@dataclass(frozen=True)
class LinkSpec:
    endpoints: tuple[int, int]
    bandwidth: float     # Mbps
    fiber_length: float  # meters

    def __post_init__(self):
        a, b = self.endpoints
        if a == b:
            raise ConfigError(f"link ({a},{b}): endpoints must be distinct")
        if self.bandwidth <= 0:
            raise ConfigError(f"link ({a},{b}): bandwidth must be > 0")
        if self.fiber_length < 0:
            raise ConfigError(f"link ({a},{b}): fiber_length must be >= 0")
        # canonical endpoint order so (a, b) and (b, a) denote the same link
        if a > b:
            object.__setattr__(self, "endpoints", (b, a))


@dataclass(frozen=True)
class Topology:
    data_centers: tuple[DataCenterSpec, ...]
    links: tuple[LinkSpec, ...]
    _by_id: dict = field(repr=False, hash=False, compare=False, default_factory=dict)
    _adj: dict = field(repr=False, hash=False, compare=False, default_factory=dict)
    _link_map: dict = field(repr=False, hash=False, compare=False, default_factory=dict)

    @property
    def dc_ids(self) -> list[int]:
        return [dc.id for dc in self.data_centers]

    def dc(self, dc_id: int) -> DataCenterSpec:
        return self._by_id[dc_id]

    def neighbors(self, dc_id: int) -> list[int]:
        return self._adj[dc_id]

    def link(self, i: int, j: int) -> LinkSpec:
        key = (i, j) if i < j else (j, i)
        try:
            return self._link_map[key]
        except KeyError:
            raise NoSuchLinkError(f"no link between DC {i} and DC {j}") from None


def build_topology(dcs: list[DataCenterSpec], links: list[LinkSpec]) -> Topology:
    """Validate and assemble a topology; raises on duplicate ids, links that
    reference unknown DCs, or a disconnected graph."""
    if not dcs:
        raise ConfigError("topology needs at least one data center")
    ids = [dc.id for dc in dcs]
    seen: set[int] = set()
    for i in ids:
        if i in seen:
            raise DuplicateIdError(f"duplicate DC id {i}")
        seen.add(i)

    link_map: dict[tuple[int, int], LinkSpec] = {}
    adj: dict[int, list[int]] = {i: [] for i in ids}
    for ln in links:
        a, b = ln.endpoints
        for end in (a, b):
            if end not in seen:
                raise DanglingLinkError(f"link ({a},{b}) references unknown DC {end}")
        if (a, b) in link_map:
            raise DuplicateIdError(f"duplicate link ({a},{b})")
        link_map[(a, b)] = ln
        adj[a].append(b)
        adj[b].append(a)
    for i in adj:
        adj[i].sort()

    # connectivity check (BFS from the smallest id)
    reached = {min(ids)}
    frontier = [min(ids)]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in reached:
                    reached.add(v)
                    nxt.append(v)
        frontier = nxt
    missing = sorted(set(ids) - reached)
    if missing:
        raise DisconnectedGraphError(f"DCs unreachable from DC {min(ids)}: {missing}")

    dcs_sorted = tuple(sorted(dcs, key=lambda d: d.id))
    return Topology(
        data_centers=dcs_sorted,
        links=tuple(link_map[k] for k in sorted(link_map)),
        _by_id={dc.id: dc for dc in dcs_sorted},
        _adj=adj,
        _link_map=link_map,
    )


def propagation_delay(t: Topology, i: int, j: int) -> float:
    """Link propagation delay in seconds: fiber length / 3e8; zero when i == j."""
    if i == j:
        return 0.0
    return t.link(i, j).fiber_length / PROPAGATION_SPEED


def shortest_path(t: Topology, src: int, dst: int) -> list[int]:
    """Minimum cumulative propagation-delay path from src to dst.

    Equal-cost ties resolve to the lexicographically smallest id sequence, so
    results are stable across runs and platforms.
    """
    if src not in t._by_id or dst not in t._by_id:
        raise NoSuchLinkError(f"unknown DC in path query ({src}, {dst})")
    if src == dst:
        return [src]
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (src,))]
    settled: set[int] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node == dst:
            return list(path)
        if node in settled:
            continue
        settled.add(node)
        for nb in t.neighbors(node):
            if nb not in settled:
                heapq.heappush(heap, (cost + propagation_delay(t, node, nb), path + (nb,)))
    raise DisconnectedGraphError(f"no path {src} -> {dst}")  # unreachable by invariant


def path_delay(t: Topology, path: list[int]) -> float:
    """Total propagation delay along consecutive hops of a path."""
    return sum(propagation_delay(t, a, b) for a, b in zip(path, path[1:]))


def load_topology(source) -> Topology:
    """Load a topology from a YAML file path or an already-parsed mapping.

    Expected sections: ``data_centers`` (id, cpu_capacity, storage_capacity)
    and ``links`` (endpoints, bandwidth, fiber_length).
    """
    if isinstance(source, dict):
        doc = source
    else:
        with open(source) as fh:
            doc = yaml.safe_load(fh)
    if not isinstance(doc, dict) or "data_centers" not in doc:
        raise ConfigError("topology config needs a 'data_centers' section")
    try:
        dcs = [
            DataCenterSpec(
                id=int(row["id"]),
                cpu_capacity=float(row["cpu_capacity"]),
                storage_capacity=float(row["storage_capacity"]),
            )
            for row in doc["data_centers"]
        ]
        links = [
            LinkSpec(
                endpoints=(int(row["endpoints"][0]), int(row["endpoints"][1])),
                bandwidth=float(row["bandwidth"]),
                fiber_length=float(row["fiber_length"]),
            )
            for row in doc.get("links", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed topology config: {exc}") from exc
    return build_topology(dcs, links)
