"""Maps between proximity spaces and the mapping-space structure.

Two relations between maps matter and they are kept apart deliberately:

* ``step_edge(f, g)`` — for every near pair ``x ~ x'`` of the domain,
  ``f(x)`` is near ``g(x')``.  This is exactly the condition making the
  two-slice map on ``domain x I_1`` proximally continuous, so it is the
  one-step-homotopy relation.  Every pc-map has a step edge to itself.

* ``pointwise_near(f, g)`` — ``f(x)`` is near ``g(x)`` for every single
  ``x``.  On the continuum two distinct parameter singletons are never
  near, so pointwise agreement is the faithful finite rendering of the
  nearness evaluation used for the worked path examples.  It is strictly
  weaker than ``step_edge``.

Mapping spaces expose both; homotopy and lifting machinery uses step
edges, nearness queries default to the pointwise reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .core import Space, bits, near, product_space, subspace
from .errors import (
    CarrierNotInDomain,
    CodomainMismatch,
    DisagreeOnIntersection,
    EnumerationCapExceeded,
    SliceNotPc,
    UnknownPointReference,
)


@dataclass(frozen=True)
class SpaceMap:
    """Total function between the ground sets of two spaces."""

    domain: Space
    codomain: Space
    assignment: tuple[int, ...]  # domain index -> codomain index

    def __post_init__(self):
        if len(self.assignment) != self.domain.n:
            raise ValueError(
                f"assignment covers {len(self.assignment)} of {self.domain.n} points"
            )
        for v in self.assignment:
            if not 0 <= v < self.codomain.n:
                raise UnknownPointReference(f"image index {v} outside the codomain")
        object.__setattr__(self, "assignment", tuple(self.assignment))

    def __call__(self, name: str) -> str:
        return self.codomain.points[self.assignment[self.domain.index(name)]]

    def apply_index(self, i: int) -> int:
        return self.assignment[i]

    def image_mask(self, mask: int) -> int:
        self.domain.require_mask(mask)
        out = 0
        for i in bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def preimage_mask(self, mask: int) -> int:
        self.codomain.require_mask(mask)
        out = 0
        for i, v in enumerate(self.assignment):
            if mask >> v & 1:
                out |= 1 << i
        return out

    def as_dict(self) -> dict[str, str]:
        return {
            p: self.codomain.points[v]
            for p, v in zip(self.domain.points, self.assignment)
        }

    def is_surjective(self) -> bool:
        return self.image_mask(self.domain.full) == self.codomain.full

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == self.domain.n


def space_map(domain: Space, codomain: Space, mapping: Mapping[str, str]) -> SpaceMap:
    assignment = []
    for p in domain.points:
        if p not in mapping:
            raise UnknownPointReference(f"assignment missing domain point {p!r}")
        assignment.append(codomain.index(mapping[p]))
    return SpaceMap(domain, codomain, tuple(assignment))


def identity_map(space: Space) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n)))


def constant_map(domain: Space, codomain: Space, point: str) -> SpaceMap:
    v = codomain.index(point)
    return SpaceMap(domain, codomain, tuple(v for _ in range(domain.n)))


def compose(outer: SpaceMap, inner: SpaceMap) -> SpaceMap:
    if inner.codomain != outer.domain:
        raise CodomainMismatch("composition needs matching middle spaces")
    return SpaceMap(
        inner.domain,
        outer.codomain,
        tuple(outer.assignment[v] for v in inner.assignment),
    )


def product_map(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """``(f x g)(x, y) = (f x, g y)`` between the point-level products."""
    dom = product_space(f.domain, g.domain)
    cod = product_space(f.codomain, g.codomain)
    gn = g.domain.n
    gcn = g.codomain.n
    assignment = []
    for i in range(f.domain.n):
        for j in range(gn):
            assignment.append(f.assignment[i] * gcn + g.assignment[j])
    return SpaceMap(dom, cod, tuple(assignment))


def inclusion_map(sub: Space, ambient: Space) -> SpaceMap:
    """Inclusion of a subspace given by shared point names."""
    return SpaceMap(sub, ambient, tuple(ambient.index(p) for p in sub.points))


def inverse_map(f: SpaceMap) -> SpaceMap:
    if not (f.is_injective() and f.is_surjective()):
        raise ValueError("only bijections can be inverted")
    inv = [0] * f.codomain.n
    for i, v in enumerate(f.assignment):
        inv[v] = i
    return SpaceMap(f.codomain, f.domain, tuple(inv))


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple | None = None
    detail: str = ""

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a holding verdict cannot carry a counterexample")

    def __bool__(self) -> bool:
        return self.holds


def is_pc_map(f: SpaceMap) -> Verdict:
    """Proximal continuity, decided on point pairs by point determination."""
    dom, cod = f.domain, f.codomain
    for i in range(dom.n):
        row = dom.rows[i]
        fi = f.assignment[i]
        for j in bits(row):
            if j < i:
                continue
            if not cod.rows[fi] >> f.assignment[j] & 1:
                return Verdict(
                    False,
                    (dom.points[i], dom.points[j]),
                    f"{dom.points[i]!r} near {dom.points[j]!r} but images are far",
                )
    return Verdict(True)


def is_isomorphism(f: SpaceMap) -> Verdict:
    if not f.is_injective() or not f.is_surjective():
        return Verdict(False, ("bijection",), "not a bijection")
    forward = is_pc_map(f)
    if not forward:
        return Verdict(False, forward.witness, "forward map not pc")
    backward = is_pc_map(inverse_map(f))
    if not backward:
        return Verdict(False, backward.witness, "inverse map not pc")
    return Verdict(True)


def graph_isomorphism_check(f: SpaceMap) -> bool:
    """Direct characterisation: bijective and edge-preserving both ways."""
    if not (f.is_injective() and f.is_surjective()):
        return False
    dom, cod = f.domain, f.codomain
    for i in range(dom.n):
        for j in range(dom.n):
            if bool(dom.rows[i] >> j & 1) != bool(
                cod.rows[f.assignment[i]] >> f.assignment[j] & 1
            ):
                return False
    return True


def glue(f1: SpaceMap, f2: SpaceMap) -> SpaceMap:
    """Union map on the union space (union of point sets and of nearness
    graphs).  The inputs must share a codomain and agree on shared points."""
    if f1.codomain != f2.codomain:
        raise CodomainMismatch("glued maps must share a codomain")
    d1, d2 = f1.domain, f2.domain
    d1names = set(d1.points)
    for p in d2.points:
        if p in d1names and f1(p) != f2(p):
            raise DisagreeOnIntersection(
                f"maps disagree on shared point {p!r}: {f1(p)!r} vs {f2(p)!r}"
            )
    points = list(d1.points) + [p for p in d2.points if p not in d1names]
    index = {p: i for i, p in enumerate(points)}
    rows = [0] * len(points)
    for space in (d1, d2):
        for i in range(space.n):
            gi = index[space.points[i]]
            for j in bits(space.rows[i]):
                gj = index[space.points[j]]
                rows[gi] |= 1 << gj
                rows[gj] |= 1 << gi
    union = Space(tuple(points), tuple(rows), "union")
    assignment = []
    for p in points:
        src = f1 if p in d1names else f2
        assignment.append(src.codomain.index(src(p)))
    return SpaceMap(union, f1.codomain, tuple(assignment))


def is_retraction(k: SpaceMap, carrier: int) -> Verdict:
    """``k`` retracts its domain onto the subspace on ``carrier``: it is pc,
    lands in the carrier, and fixes every carrier point."""
    ambient = k.domain
    try:
        ambient.require_mask(carrier)
    except Exception as exc:
        raise CarrierNotInDomain(str(exc)) from None
    if carrier == 0:
        raise CarrierNotInDomain("the carrier must be nonempty")
    carrier_names = set(ambient.names(carrier))
    if set(k.codomain.points) - set(ambient.points):
        raise CarrierNotInDomain("the codomain must reuse ambient point names")
    for p in ambient.points:
        img = k(p)
        if img not in carrier_names:
            return Verdict(False, (p,), f"{p!r} maps outside the carrier")
    for p in carrier_names:
        if k(p) != p:
            return Verdict(False, (p,), f"carrier point {p!r} is moved")
    pc = is_pc_map(k)
    if not pc:
        return Verdict(False, pc.witness, "retraction candidate is not pc")
    return Verdict(True)


# -- map-level nearness relations ---------------------------------------------

def step_edge(f: SpaceMap, g: SpaceMap) -> bool:
    """One-step homotopy relation: near domain pairs map to near images in
    every orientation.  Equivalent to the two-slice map on ``dom x I_1``
    being pc."""
    dom = f.domain
    cod = f.codomain
    fa, ga = f.assignment, g.assignment
    rows = cod.rows
    for i in range(dom.n):
        for j in bits(dom.rows[i]):
            if j < i:
                continue
            if not rows[fa[i]] >> ga[j] & 1:
                return False
            if not rows[fa[j]] >> ga[i] & 1:
                return False
    return True


def pointwise_near(f: SpaceMap, g: SpaceMap) -> Verdict:
    """Per-parameter nearness with all failing parameters as witness."""
    dom, cod = f.domain, f.codomain
    failures = tuple(
        (dom.points[i], cod.points[f.assignment[i]], cod.points[g.assignment[i]])
        for i in range(dom.n)
        if not cod.rows[f.assignment[i]] >> g.assignment[i] & 1
    )
    if failures:
        return Verdict(False, failures, "parameters where the images are far")
    return Verdict(True)


def near_maps(
    first: Sequence[SpaceMap],
    second: Sequence[SpaceMap],
    *,
    relation: str = "pointwise",
    reading: str = "forall",
) -> Verdict:
    """Set-level nearness between two families of maps.

    ``reading='forall'`` requires every cross pair to be related (the
    quantifier used in the worked examples); ``reading='exists'`` requires
    some pair.  ``relation`` selects the pair relation.
    """
    if relation == "pointwise":
        rel = lambda a, b: pointwise_near(a, b).holds
    elif relation == "step":
        rel = step_edge
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if not first or not second:
        return Verdict(False, ((),), "empty families are near nothing")
    if reading == "forall":
        for a in first:
            for b in second:
                if not rel(a, b):
                    return Verdict(False, (a.as_dict(), b.as_dict()), "unrelated pair")
        return Verdict(True)
    if reading == "exists":
        for a in first:
            for b in second:
                if rel(a, b):
                    return Verdict(True)
        return Verdict(False, ((),), "no related pair")
    raise ValueError(f"unknown reading {reading!r}")


# -- mapping spaces -----------------------------------------------------------

def enumerate_pc_maps(domain: Space, codomain: Space, cap: int = 10**6) -> list[SpaceMap]:
    """All pc-maps, enumerated by pruned depth-first search in lexicographic
    assignment order.  ``cap`` bounds ``|codomain| ** |domain|``."""
    if codomain.n == 0 or domain.n == 0:
        raise ValueError("spaces must be nonempty")
    if codomain.n ** domain.n > cap:
        raise EnumerationCapExceeded(
            f"{codomain.n}^{domain.n} candidate maps exceed the cap of {cap}"
        )
    n = domain.n
    rows = domain.rows
    crows = codomain.rows
    out: list[SpaceMap] = []
    partial = [0] * n

    def extend(i: int) -> None:
        if i == n:
            out.append(SpaceMap(domain, codomain, tuple(partial)))
            return
        earlier = rows[i] & ((1 << i) - 1)
        for v in range(codomain.n):
            ok = True
            for j in bits(earlier):
                if not crows[partial[j]] >> v & 1:
                    ok = False
                    break
            if ok:
                partial[i] = v
                extend(i + 1)

    extend(0)
    return out


@dataclass(frozen=True)
class MapSpace:
    """All pc-maps between two spaces, with both map-level relations."""

    domain: Space
    codomain: Space
    maps: tuple[SpaceMap, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {m.assignment: i for i, m in enumerate(self.maps)}
        )

    def __len__(self) -> int:
        return len(self.maps)

    def index(self, f: SpaceMap) -> int:
        try:
            return self._index[f.assignment]
        except KeyError:
            raise UnknownPointReference(
                "map is not a node of this mapping space (is it pc?)"
            ) from None

    def node_name(self, i: int) -> str:
        m = self.maps[i]
        return ",".join(self.codomain.points[v] for v in m.assignment)

    def step_adjacency(self) -> list[int]:
        """Step-edge masks over node indices (reflexive by construction).

        The pairwise condition is packed into one bigint comparison per
        pair: over the ordered near pairs ``(i, j)`` of the domain, map
        ``g`` contributes the one-hot of ``g(j)`` and map ``f`` the allowed
        set ``rows[f(i)]``; ``f ~ g`` iff the one-hot profile is contained
        in the allowed profile.  Agrees with :func:`step_edge` pair by
        pair (asserted in the test suite).
        """
        dom, cod = self.domain, self.codomain
        ordered = [
            (i, j) for i in range(dom.n) for j in bits(dom.rows[i])
        ]
        c = cod.n
        profiles = []
        allowed = []
        for m in self.maps:
            a = m.assignment
            p_acc = 0
            m_acc = 0
            for t, (i, j) in enumerate(ordered):
                p_acc |= 1 << (t * c + a[j])
                m_acc |= cod.rows[a[i]] << (t * c)
            profiles.append(p_acc)
            allowed.append(m_acc)
        n = len(self.maps)
        masks = [1 << i for i in range(n)]
        for i in range(n):
            mi = allowed[i]
            for j in range(i + 1, n):
                if profiles[j] & ~mi == 0:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return masks

    def as_space(self, relation: str = "step") -> Space:
        """The mapping space as a Space under the chosen relation."""
        names = tuple(self.node_name(i) for i in range(len(self.maps)))
        if relation == "step":
            rows = tuple(self.step_adjacency())
        elif relation == "pointwise":
            rows = []
            for i, f in enumerate(self.maps):
                mask = 0
                for j, g in enumerate(self.maps):
                    if pointwise_near(f, g).holds:
                        mask |= 1 << j
                rows.append(mask)
            rows = tuple(rows)
        else:
            raise ValueError(f"unknown relation {relation!r}")
        return Space(names, rows, "mapping-space")


def map_space(domain: Space, codomain: Space, cap: int = 10**6) -> MapSpace:
    return MapSpace(domain, codomain, tuple(enumerate_pc_maps(domain, codomain, cap)))


# -- evaluation, currying, exponential laws ------------------------------------

def evaluation_map(sx: Space, sy: Space, cap: int = 10**6) -> tuple[SpaceMap, MapSpace]:
    """The map ``(alpha, x) -> alpha(x)`` on ``map_space(sx, sy) x sx``."""
    ms = map_space(sx, sy, cap)
    dom = product_space(ms.as_space("step"), sx)
    assignment = []
    for a in ms.maps:
        assignment.extend(a.assignment)
    return SpaceMap(dom, sy, tuple(assignment)), ms


def initial_evaluation_map(ms: MapSpace, at: str | None = None) -> SpaceMap:
    """Restriction of evaluation to a fixed parameter (default: the first
    domain point), from the mapping space to the codomain."""
    i = ms.domain.index(at) if at is not None else 0
    space = ms.as_space("step")
    return SpaceMap(space, ms.codomain, tuple(m.assignment[i] for m in ms.maps))


def curry(
    g: SpaceMap, sx: Space, sy: Space, cap: int = 10**6
) -> tuple[SpaceMap, MapSpace]:
    """Transpose ``g : sx x sy -> z`` to ``sx -> (z ** sy)``.

    Every slice must be pc to be a node of the mapping space; a failing
    slice is reported (and implies ``g`` itself was not pc).
    """
    if g.domain != product_space(sx, sy):
        raise ValueError("the domain of g is not the product of the given factors")
    sz = g.codomain
    ms = map_space(sy, sz, cap)
    assignment = []
    ny = sy.n
    for i in range(sx.n):
        slice_assignment = tuple(g.assignment[i * ny + j] for j in range(ny))
        slice_map = SpaceMap(sy, sz, slice_assignment)
        if not is_pc_map(slice_map).holds:
            raise SliceNotPc(
                f"slice at {sx.points[i]!r} is not pc, so the curried map does "
                "not land in the mapping space (the input was not pc)"
            )
        assignment.append(ms.index(slice_map))
    return SpaceMap(sx, ms.as_space("step"), tuple(assignment)), ms


def uncurry(h: SpaceMap, ms: MapSpace, sx: Space, sy: Space) -> SpaceMap:
    """Inverse transpose: ``h : sx -> (z ** sy)`` back to the product."""
    dom = product_space(sx, sy)
    assignment = []
    for i in range(sx.n):
        slice_map = ms.maps[h.assignment[i]]
        assignment.extend(slice_map.assignment)
    return SpaceMap(dom, ms.codomain, tuple(assignment))


def exponential_iso_check(sx: Space, sy: Space, sz: Space, cap: int = 10**6) -> Verdict:
    """Verify both exponential-law bijections as proximal isomorphisms.

    Law 1: ``z ** (x x y)  ~=  (z ** y) ** x`` via currying.
    Law 2: ``(y x z) ** x  ~=  (y ** x) x (z ** x)`` via post-composition
    with the projections.
    """
    # law 1
    ms_left = map_space(product_space(sx, sy), sz, cap)
    ms_inner = map_space(sy, sz, cap)
    inner_space = ms_inner.as_space("step")
    ms_right = map_space(sx, inner_space, cap)
    left_space = ms_left.as_space("step")
    right_space = ms_right.as_space("step")
    if len(ms_left) != len(ms_right):
        return Verdict(False, ("law1", "count"), "mapping-space sizes differ")
    assignment = []
    ny = sy.n
    for gmap in ms_left.maps:
        slices = tuple(
            ms_inner.index(
                SpaceMap(sy, sz, tuple(gmap.assignment[i * ny + j] for j in range(ny)))
            )
            for i in range(sx.n)
        )
        assignment.append(ms_right._index[slices])
    law1 = is_isomorphism(SpaceMap(left_space, right_space, tuple(assignment)))
    if not law1:
        return Verdict(False, ("law1",) + (law1.witness or ()), "currying is not an isomorphism")

    # law 2
    ms_pair = map_space(sx, product_space(sy, sz), cap)
    ms_y = map_space(sx, sy, cap)
    ms_z = map_space(sx, sz, cap)
    pair_space = ms_pair.as_space("step")
    prod_space = product_space(ms_y.as_space("step"), ms_z.as_space("step"))
    if len(ms_pair) != len(ms_y) * len(ms_z):
        return Verdict(False, ("law2", "count"), "mapping-space sizes differ")
    nz = sz.n
    assignment = []
    for amap in ms_pair.maps:
        ya = tuple(v // nz for v in amap.assignment)
        za = tuple(v % nz for v in amap.assignment)
        iy = ms_y._index[ya]
        iz = ms_z._index[za]
        assignment.append(iy * len(ms_z) + iz)
    law2 = is_isomorphism(SpaceMap(pair_space, prod_space, tuple(assignment)))
    if not law2:
        return Verdict(False, ("law2",) + (law2.witness or ()), "projection pairing is not an isomorphism")
    return Verdict(True)


def pc_via_neighborhoods(f: SpaceMap) -> bool:
    """The neighborhood formulation of proximal continuity: preimages of
    delta-neighborhood pairs stay delta-neighborhood pairs.  Exponential in
    the codomain size; used to cross-check ``is_pc_map``."""
    from .core import is_delta_neighborhood

    cod = f.codomain
    for e in range(cod.full + 1):
        for g in range(cod.full + 1):
            if is_delta_neighborhood(cod, e, g):
                if not is_delta_neighborhood(
                    f.domain, f.preimage_mask(e), f.preimage_mask(g)
                ):
                    return False
    return True
