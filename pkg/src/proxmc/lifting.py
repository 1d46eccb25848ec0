"""Exact homotopy lifting and extension properties on finite spaces.

Both properties reduce to one abstract question.  Write ``U`` and ``V``
for the mapping-space step graphs involved and ``proj : U -> V`` for the
graph homomorphism induced by the map under test (post-composition for
lifting, pre-composition for extension).  A downstairs homotopy is a walk
in ``V``; the property holds iff every walk starting at ``proj(u)`` lifts
to a walk in ``U`` starting at ``u``, for every node ``u``.

The decision runs in two tiers:

1. a greatest-fixpoint simulation over pairs ``(u, proj u)`` — when the
   simulation survives, step-by-step responses exist and every walk lifts;
2. for nodes the simulation rejects, an exact determinized reachability
   over live-lift sets: a walk is unliftable iff the set of reachable lift
   positions becomes empty.  This tier is complete (the simulation alone
   may reject nodes whose walks are all liftable, because a walk commits
   to its future while a simulation opponent does not).

Counterexamples are shortest unliftable walks and re-verify by brute
force.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .core import Space, bits, product_space, subspace
from .errors import EnumerationCapExceeded, NotPcInput, SearchCapExceeded
from .homotopy import HomotopyWitness, digital_interval
from .maps import (
    MapSpace,
    SpaceMap,
    Verdict,
    compose,
    identity_map,
    inclusion_map,
    is_pc_map,
    map_space,
)


@dataclass(frozen=True)
class LiftingProblem:
    """One commuting lifting square: lift ``downstairs`` through ``p``
    starting from ``k``."""

    p: SpaceMap
    test_space: Space
    k: SpaceMap                   # test_space -> p.domain
    downstairs: HomotopyWitness   # slices test_space -> p.codomain

    def __post_init__(self):
        if self.k.domain != self.test_space:
            raise ValueError("k must start at the test space")
        if self.k.codomain != self.p.domain:
            raise ValueError("k must land in the total space")
        first = self.downstairs.start
        if first.domain != self.test_space or first.codomain != self.p.codomain:
            raise ValueError("the downstairs homotopy has the wrong signature")
        if compose(self.p, self.k).assignment != first.assignment:
            raise ValueError("the square does not commute: p . k != first slice")


@dataclass(frozen=True)
class ExtensionProblem:
    """One commuting extension square: extend ``base`` along ``h``
    starting from ``k``."""

    h: SpaceMap
    test_space: Space
    k: SpaceMap              # h.codomain -> test_space
    base: HomotopyWitness    # slices h.domain -> test_space

    def __post_init__(self):
        if self.k.domain != self.h.codomain or self.k.codomain != self.test_space:
            raise ValueError("k must map the target of h into the test space")
        first = self.base.start
        if first.domain != self.h.domain or first.codomain != self.test_space:
            raise ValueError("the base homotopy has the wrong signature")
        if compose(self.k, self.h).assignment != first.assignment:
            raise ValueError("the square does not commute: k . h != first slice")


@dataclass(frozen=True)
class LiftVerdict:
    holds: bool
    witness: HomotopyWitness | None = None
    counterexample: LiftingProblem | ExtensionProblem | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


# -- the shared engine ---------------------------------------------------------

class _WalkLiftInstance:
    """Step graphs, the projection homomorphism, and fibers."""

    def __init__(self, u_space: MapSpace, v_space: MapSpace, proj: list[int]):
        self.u_maps = u_space.maps
        self.v_maps = v_space.maps
        self.u_adj = u_space.step_adjacency()
        self.v_adj = v_space.step_adjacency()
        self.proj = proj
        self.fibers: dict[int, list[int]] = {}
        for u, v in enumerate(proj):
            self.fibers.setdefault(v, []).append(u)

    def simulation_alive(self) -> list[bool]:
        """Greatest fixpoint of the step-response condition."""
        alive = [True] * len(self.u_maps)
        changed = True
        while changed:
            changed = False
            for u in range(len(self.u_maps)):
                if not alive[u]:
                    continue
                v = self.proj[u]
                ok = True
                for v2 in bits(self.v_adj[v]):
                    if not any(
                        alive[u2] and self.proj[u2] == v2
                        for u2 in bits(self.u_adj[u])
                    ):
                        ok = False
                        break
                if not ok:
                    alive[u] = False
                    changed = True
        return alive

    def killer_walk(self, start_u: int) -> list[int] | None:
        """Shortest downstairs walk from ``proj(start_u)`` with no lift from
        ``start_u``, or None when every walk lifts.  Determinized search
        over (position, live-lift-set) states."""
        v0 = self.proj[start_u]
        init = (v0, frozenset([start_u]))
        parent: dict[tuple[int, frozenset[int]], tuple | None] = {init: None}
        queue = deque([init])
        while queue:
            state = queue.popleft()
            v, live = state
            for v2 in bits(self.v_adj[v]):
                live2 = frozenset(
                    u2
                    for u2 in self.fibers.get(v2, ())
                    if any(self.u_adj[u] >> u2 & 1 for u in live)
                )
                nxt = (v2, live2)
                if not live2:
                    walk = [v2]
                    back = state
                    while back is not None:
                        walk.append(back[0])
                        back = parent[back]
                    walk.reverse()
                    return walk
                if nxt not in parent:
                    parent[nxt] = state
                    queue.append(nxt)
        return None

    def lift_walk(self, start_u: int, v_walk: Sequence[int]) -> list[int] | None:
        """A lift of the given downstairs walk, as node indices, chosen
        deterministically; None when no lift exists."""
        live = [{start_u}]
        for v2 in v_walk[1:]:
            nxt = {
                u2
                for u2 in self.fibers.get(v2, ())
                if any(self.u_adj[u] >> u2 & 1 for u in live[-1])
            }
            if not nxt:
                return None
            live.append(nxt)
        chain = [min(live[-1])]
        for t in range(len(live) - 2, -1, -1):
            chain.append(
                min(u for u in live[t] if self.u_adj[u] >> chain[-1] & 1)
            )
        chain.reverse()
        return chain

    def decide(self) -> tuple[int, list[int]] | None:
        """None when every start lifts every walk; otherwise the first
        failing start with its shortest killer walk."""
        alive = self.simulation_alive()
        for u in range(len(self.u_maps)):
            if alive[u]:
                continue
            walk = self.killer_walk(u)
            if walk is not None:
                return u, walk
        return None


def _phlp_instance(p: SpaceMap, test_space: Space, cap: int) -> _WalkLiftInstance:
    u_space = map_space(test_space, p.domain, cap)
    v_space = map_space(test_space, p.codomain, cap)
    proj = [v_space.index(compose(p, u)) for u in u_space.maps]
    return _WalkLiftInstance(u_space, v_space, proj)


def _phep_instance(h: SpaceMap, test_space: Space, cap: int) -> _WalkLiftInstance:
    u_space = map_space(h.codomain, test_space, cap)
    v_space = map_space(h.domain, test_space, cap)
    proj = [v_space.index(compose(u, h)) for u in u_space.maps]
    return _WalkLiftInstance(u_space, v_space, proj)


def has_phlp(p: SpaceMap, test_space: Space, cap: int = 10**6) -> LiftVerdict:
    """Decide the homotopy lifting property of ``p`` with respect to one
    test space, over all problems at once.  On failure the verdict carries
    a concrete shortest unliftable square."""
    pc = is_pc_map(p)
    if not pc:
        raise NotPcInput(f"p is not pc at {pc.witness}")
    inst = _phlp_instance(p, test_space, cap)
    failure = inst.decide()
    if failure is None:
        return LiftVerdict(True, detail="all lifting squares over this test space lift")
    start_u, walk = failure
    problem = LiftingProblem(
        p,
        test_space,
        inst.u_maps[start_u],
        HomotopyWitness(tuple(inst.v_maps[v] for v in walk)),
    )
    return LiftVerdict(
        False,
        counterexample=problem,
        detail=f"unliftable homotopy of length {len(walk) - 1}",
    )


def has_phep(h: SpaceMap, test_space: Space, cap: int = 10**6) -> LiftVerdict:
    """Decide the homotopy extension property of ``h`` with respect to one
    test space; the dual of :func:`has_phlp` under pre-composition."""
    pc = is_pc_map(h)
    if not pc:
        raise NotPcInput(f"h is not pc at {pc.witness}")
    inst = _phep_instance(h, test_space, cap)
    failure = inst.decide()
    if failure is None:
        return LiftVerdict(True, detail="all extension squares over this test space extend")
    start_u, walk = failure
    problem = ExtensionProblem(
        h,
        test_space,
        inst.u_maps[start_u],
        HomotopyWitness(tuple(inst.v_maps[v] for v in walk)),
    )
    return LiftVerdict(
        False,
        counterexample=problem,
        detail=f"unextendable homotopy of length {len(walk) - 1}",
    )


def solve_lifting(problem: LiftingProblem, cap: int = 10**6) -> LiftVerdict:
    """Solve one lifting square: produce the lifted homotopy or report the
    problem itself as its counterexample."""
    inst = _phlp_instance(problem.p, problem.test_space, cap)
    u_index = {m.assignment: i for i, m in enumerate(inst.u_maps)}
    v_index = {m.assignment: i for i, m in enumerate(inst.v_maps)}
    start = u_index[problem.k.assignment]
    walk = [v_index[s.assignment] for s in problem.downstairs.slices]
    chain = inst.lift_walk(start, walk)
    if chain is None:
        return LiftVerdict(False, counterexample=problem, detail="no lift exists")
    witness = HomotopyWitness(tuple(inst.u_maps[u] for u in chain))
    return LiftVerdict(True, witness=witness)


def solve_extension(problem: ExtensionProblem, cap: int = 10**6) -> LiftVerdict:
    """Solve one extension square: produce the extended homotopy or report
    the problem itself as its counterexample."""
    inst = _phep_instance(problem.h, problem.test_space, cap)
    u_index = {m.assignment: i for i, m in enumerate(inst.u_maps)}
    v_index = {m.assignment: i for i, m in enumerate(inst.v_maps)}
    start = u_index[problem.k.assignment]
    walk = [v_index[s.assignment] for s in problem.base.slices]
    chain = inst.lift_walk(start, walk)
    if chain is None:
        return LiftVerdict(False, counterexample=problem, detail="no extension exists")
    witness = HomotopyWitness(tuple(inst.u_maps[u] for u in chain))
    return LiftVerdict(True, witness=witness)


# -- fibrations and cofibrations relative to a catalog --------------------------

def default_catalog() -> tuple[tuple[str, Space], ...]:
    from .fixtures import default_catalog as _cat

    return _cat()


def _run_catalog(
    check, target: SpaceMap, catalog: Sequence[tuple[str, Space]] | None, cap: int
) -> LiftVerdict:
    cat = tuple(catalog) if catalog is not None else default_catalog()
    names = ",".join(name for name, _ in cat)
    for name, z in cat:
        verdict = check(target, z, cap)
        if not verdict:
            return LiftVerdict(
                False,
                counterexample=verdict.counterexample,
                detail=f"fails for catalog space {name!r} (catalog: {names})",
            )
    return LiftVerdict(True, detail=f"holds relative to catalog: {names}")


def is_fibration(
    p: SpaceMap, catalog: Sequence[tuple[str, Space]] | None = None, cap: int = 10**6
) -> LiftVerdict:
    """Lifting property over every catalog space.  The universal quantifier
    over all proximity spaces is not finitely checkable; verdicts name the
    catalog they are relative to."""
    return _run_catalog(has_phlp, p, catalog, cap)


def is_cofibration(
    h: SpaceMap, catalog: Sequence[tuple[str, Space]] | None = None, cap: int = 10**6
) -> LiftVerdict:
    """Extension property over every catalog space, labeled with the
    catalog identity."""
    return _run_catalog(has_phep, h, catalog, cap)


# -- pullbacks -----------------------------------------------------------------

@dataclass(frozen=True)
class Pullback:
    space: Space
    to_base: SpaceMap    # the pulled-back map, onto g's domain
    to_total: SpaceMap   # projection onto p's domain


def pullback(p: SpaceMap, g: SpaceMap) -> Pullback:
    """Fiber product ``{(x, y') : p(x) = g(y')}`` inside the point-level
    product, with its two projections (both pc by construction)."""
    if p.codomain != g.codomain:
        raise ValueError("pullback needs maps into a common base")
    x, yp = p.domain, g.domain
    pairs = [
        (i, j)
        for i in range(x.n)
        for j in range(yp.n)
        if p.assignment[i] == g.assignment[j]
    ]
    names = tuple(f"({x.points[i]},{yp.points[j]})" for i, j in pairs)
    rows = []
    for i, j in pairs:
        mask = 0
        for k, (i2, j2) in enumerate(pairs):
            if x.rows[i] >> i2 & 1 and yp.rows[j] >> j2 & 1:
                mask |= 1 << k
        rows.append(mask)
    space = Space(names, tuple(rows), "pullback")
    to_base = SpaceMap(space, yp, tuple(j for _, j in pairs))
    to_total = SpaceMap(space, x, tuple(i for i, _ in pairs))
    return Pullback(space, to_base, to_total)


# -- retract characterisation ---------------------------------------------------

def mapping_cylinder_boundary(ambient: Space, carrier: int, n: int) -> tuple[Space, int]:
    """The product ``ambient x I_n`` and the mask of its boundary wedge
    ``(ambient x {0}) union (carrier x I_n)``."""
    interval = digital_interval(n)
    cyl = product_space(ambient, interval)
    width = interval.n
    mask = 0
    for i in range(ambient.n):
        base = i * width
        mask |= 1 << base  # (x, 0)
        if carrier >> i & 1:
            for t in range(width):
                mask |= 1 << (base + t)
    return cyl, mask


def find_retraction(
    h: SpaceMap, n: int, *, search_budget: int = 2_000_000
) -> SpaceMap | None:
    """A pc retraction of ``codomain x I_n`` onto its boundary wedge
    ``(codomain x 0) union (image(h) x I_n)``, or None when none exists.

    ``h`` must be an inclusion of a subspace.
    """
    if n < 1:
        raise ValueError("the interval resolution must be at least 1")
    ambient = h.codomain
    for p in h.domain.points:
        if h(p) != p:
            raise ValueError("h must be an inclusion (points map to themselves)")
    carrier = h.image_mask(h.domain.full)
    if subspace(ambient, carrier).rows != h.domain.rows:
        raise ValueError("h must be the inclusion of a subspace")
    cyl, wedge = mapping_cylinder_boundary(ambient, carrier, n)
    free = [i for i in range(cyl.n) if not wedge >> i & 1]
    targets = list(bits(wedge))
    assignment = {i: i for i in bits(wedge)}
    budget = [search_budget]

    def consistent(i: int, v: int) -> bool:
        for j in bits(cyl.rows[i]):
            w = assignment.get(j)
            if w is not None and not cyl.rows[v] >> w & 1:
                return False
        return True

    def search(k: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchCapExceeded("retraction search budget exhausted")
        if k == len(free):
            return True
        i = free[k]
        for v in targets:
            if consistent(i, v):
                assignment[i] = v
                if search(k + 1):
                    return True
                del assignment[i]
        return False

    if not search(0):
        return None
    sub = subspace(cyl, wedge)
    retraction = SpaceMap(
        cyl, sub, tuple(sub.index(cyl.points[assignment[i]]) for i in range(cyl.n))
    )
    from .maps import is_retraction

    check = is_retraction(retraction, wedge)
    if not check:  # pragma: no cover - guarded by the search invariant
        raise AssertionError(f"search produced an invalid retraction: {check.detail}")
    return retraction


def retract_characterization(
    h: SpaceMap, n: int, *, search_budget: int = 2_000_000
) -> Verdict:
    """Whether the boundary wedge of the mapping cylinder of ``h`` is a
    proximal retract of ``codomain x I_n``.

    Agreement with the extension property is a recorded cross-check, not
    an assumption: the two can disagree on finite fixtures and any
    disagreement is reported by the test suite rather than suppressed.
    """
    retraction = find_retraction(h, n, search_budget=search_budget)
    if retraction is None:
        return Verdict(False, None, f"no pc retraction exists at resolution {n}")
    return Verdict(True, detail=f"retraction found at resolution {n}")
