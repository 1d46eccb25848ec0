"""Discretized interval, proximal paths, and exact homotopy decision.

The continuum unit interval is replaced by the chain on ``{0, ..., n}``
with ``i`` near ``j`` iff they differ by at most one.  A homotopy between
two pc-maps is then a sequence of pc-map slices whose consecutive members
satisfy the step-edge relation; existence is decided exactly by
breadth-first reachability in the mapping-space step graph, which subsumes
every chain resolution because the witness length is the resolution.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import Space, bits, graph_components, near, space_from_pairs
from .errors import DomainNotInterval, EnumerationCapExceeded, NotPcInput
from .maps import MapSpace, SpaceMap, Verdict, is_pc_map, map_space, step_edge


def digital_interval(n: int) -> Space:
    """The chain space on ``{0, ..., n}``; near means within one step.

    Connected and Cech for every ``n``; the separation axiom fails for
    ``n >= 2`` because the chain is not transitive.
    """
    if n < 1:
        raise ValueError("the interval resolution must be at least 1")
    pts = [str(i) for i in range(n + 1)]
    return space_from_pairs(
        pts, [(str(i), str(i + 1)) for i in range(n)], provenance="interval"
    )


def is_digital_interval(space: Space) -> bool:
    """Structural test: the points form a chain in their given order."""
    n = space.n
    for i in range(n):
        expected = 1 << i
        if i > 0:
            expected |= 1 << (i - 1)
        if i + 1 < n:
            expected |= 1 << (i + 1)
        if space.rows[i] != expected:
            return False
    return True


def path_map(interval: Space, space: Space, stops: Sequence[str]) -> SpaceMap:
    """The step path visiting ``stops`` along the given interval."""
    if len(stops) != interval.n:
        raise ValueError(f"{len(stops)} stops for a {interval.n}-point interval")
    return SpaceMap(interval, space, tuple(space.index(s) for s in stops))


def is_path(f: SpaceMap, x0: str, x1: str) -> Verdict:
    """``f`` is a proximal path from ``x0`` to ``x1``: its domain is a chain,
    it is pc, and its endpoints match."""
    if not is_digital_interval(f.domain):
        raise DomainNotInterval("the domain of a path must be a digital interval")
    pc = is_pc_map(f)
    if not pc:
        return Verdict(False, pc.witness, "path is not pc")
    start = f.codomain.points[f.assignment[0]]
    end = f.codomain.points[f.assignment[-1]]
    if start != x0:
        return Verdict(False, (start,), f"path starts at {start!r}, not {x0!r}")
    if end != x1:
        return Verdict(False, (end,), f"path ends at {end!r}, not {x1!r}")
    return Verdict(True)


@dataclass(frozen=True)
class HomotopyWitness:
    """A homotopy as its sequence of slices."""

    slices: tuple[SpaceMap, ...]

    def __post_init__(self):
        if not self.slices:
            raise ValueError("a homotopy needs at least one slice")
        object.__setattr__(self, "slices", tuple(self.slices))

    @property
    def length(self) -> int:
        return len(self.slices) - 1

    @property
    def start(self) -> SpaceMap:
        return self.slices[0]

    @property
    def end(self) -> SpaceMap:
        return self.slices[-1]

    def validate(self) -> Verdict:
        for i, s in enumerate(self.slices):
            pc = is_pc_map(s)
            if not pc:
                return Verdict(False, (i,) + (pc.witness or ()), f"slice {i} is not pc")
        for i in range(len(self.slices) - 1):
            if not step_edge(self.slices[i], self.slices[i + 1]):
                return Verdict(False, (i,), f"slices {i} and {i + 1} are not one step apart")
        return Verdict(True)

    def reversed(self) -> "HomotopyWitness":
        return HomotopyWitness(tuple(reversed(self.slices)))

    def concatenate(self, other: "HomotopyWitness") -> "HomotopyWitness":
        if self.end.assignment != other.start.assignment:
            raise ValueError("witness endpoints do not meet")
        return HomotopyWitness(self.slices + other.slices[1:])

    def as_product_map(self) -> SpaceMap:
        """The same homotopy as a single pc-map on ``domain x I_k``."""
        from .core import product_space

        dom = self.start.domain
        k = max(self.length, 1)
        interval = digital_interval(k)
        prod = product_space(dom, interval)
        slices = self.slices if self.length >= 1 else (self.start, self.start)
        assignment = []
        for i in range(dom.n):
            for t in range(k + 1):
                assignment.append(slices[t].assignment[i])
        return SpaceMap(prod, self.start.codomain, tuple(assignment))


def homotopic(f: SpaceMap, g: SpaceMap, cap: int = 10**6) -> HomotopyWitness | None:
    """Exact homotopy decision by reachability in the step graph.

    Returns a slice witness (of minimal length) or None when the maps lie
    in different components of the mapping space.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("homotopy needs maps with common domain and codomain")
    for m, tag in ((f, "first"), (g, "second")):
        pc = is_pc_map(m)
        if not pc:
            raise NotPcInput(f"the {tag} map is not pc at {pc.witness}")
    if f.assignment == g.assignment:
        return HomotopyWitness((f,))
    ms = map_space(f.domain, f.codomain, cap)
    start = ms.index(f)
    goal = ms.index(g)
    parent: dict[int, int] = {start: -1}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            chain = [u]
            while parent[chain[-1]] != -1:
                chain.append(parent[chain[-1]])
            chain.reverse()
            return HomotopyWitness(tuple(ms.maps[i] for i in chain))
        fu = ms.maps[u]
        for v in range(len(ms.maps)):
            if v not in parent and step_edge(fu, ms.maps[v]):
                parent[v] = u
                queue.append(v)
    return None


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    path_connected: bool
    split: tuple[int, int] | None = None
    far_points: tuple[str, str] | None = None


def connectivity(space: Space, *, exhaustive_cap: int = 12) -> ConnectivityReport:
    """Connectedness (every complementary split is near) and proximal
    path-connectedness (all constant maps homotopic), decided exactly.

    The split scan is exhaustive up to ``exhaustive_cap`` points and falls
    back to component analysis beyond it; the two agree (a property the
    test suite asserts).
    """
    n = space.n
    connected = True
    split = None
    if n <= exhaustive_cap:
        for e in range(1, space.full):
            f = space.full ^ e
            if not near(space, e, f):
                connected = False
                split = (e, f)
                break
    else:
        comps = graph_components(space)
        if len(comps) > 1:
            connected = False
            split = (comps[0], space.full ^ comps[0])

    from .core import discrete_space

    point = discrete_space(["*"])
    path_connected = True
    far_points = None
    base = space.points[0]
    from .maps import constant_map

    for other in space.points[1:]:
        w = homotopic(
            constant_map(point, space, base), constant_map(point, space, other)
        )
        if w is None:
            path_connected = False
            far_points = (base, other)
            break
    return ConnectivityReport(connected, path_connected, split, far_points)
