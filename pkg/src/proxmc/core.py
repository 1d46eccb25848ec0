"""Finite proximity spaces with exact subset-nearness checking.

A space is a finite ordered ground set together with a reflexive, symmetric
point-nearness relation stored as bitmask rows.  Subset nearness is point
determined: two subsets are near exactly when they contain a near point pair.
On finite ground sets this is forced by the additivity axiom, so the point
graph is a complete description of the proximity.

Subsets are plain ints interpreted as bitmasks over the ordered point list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicatePoint,
    EmptyCarrier,
    GroundSetTooLarge,
    NonSymmetricInput,
    PreconditionUnmet,
    SubsetDimensionMismatch,
    TableNotPointDetermined,
    TheoremViolation,
    UnknownPointReference,
)

EF_LABEL = "EF-proximity"
CECH_LABEL = "Cech-proximity"
NOT_PROXIMITY_LABEL = "not-a-proximity"


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Space:
    """Finite ground set plus point-nearness relation.

    ``rows[i]`` is the bitmask of points near point ``i``.  The relation is
    symmetric and reflexive (the diagonal is forced by the overlap axiom and
    is added automatically).
    """

    points: tuple[str, ...]
    rows: tuple[int, ...]
    provenance: str = field(default="explicit", compare=False)

    def __post_init__(self):
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            seen = set()
            for p in pts:
                if p in seen:
                    raise DuplicatePoint(f"duplicate point identifier {p!r}")
                seen.add(p)
        n = len(pts)
        if len(self.rows) != n:
            raise SubsetDimensionMismatch(
                f"expected {n} nearness rows, got {len(self.rows)}"
            )
        full = (1 << n) - 1
        rows = tuple((r | (1 << i)) & full for i, r in enumerate(self.rows))
        for i in range(n):
            for j in bits(rows[i]):
                if not rows[j] >> i & 1:
                    raise NonSymmetricInput(
                        f"nearness must be symmetric: {pts[i]!r} near {pts[j]!r} "
                        f"but not conversely"
                    )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(pts)})

    # -- ground set helpers ---------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownPointReference(f"unknown point {name!r}") from None

    def point_mask(self, name: str) -> int:
        return 1 << self.index(name)

    def subset(self, names: str | Iterable[str]) -> int:
        if isinstance(names, str):
            return self.point_mask(names)
        mask = 0
        for name in names:
            mask |= self.point_mask(name)
        return mask

    def names(self, mask: int) -> tuple[str, ...]:
        self.require_mask(mask)
        return tuple(self.points[i] for i in bits(mask))

    def complement(self, mask: int) -> int:
        self.require_mask(mask)
        return self.full ^ mask

    def require_mask(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise SubsetDimensionMismatch(
                f"mask {mask:#x} does not fit a {self.n}-point ground set"
            )
        return mask

    def near_points(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Unordered near pairs of point indices, diagonal included."""
        out = []
        for i, row in enumerate(self.rows):
            for j in bits(row):
                if j >= i:
                    out.append((i, j))
        return out


# -- subset-level nearness ---------------------------------------------------

def nbr_mask(space: Space, mask: int) -> int:
    """Union of the nearness rows of ``mask``'s points: everything near it."""
    space.require_mask(mask)
    out = 0
    for i in bits(mask):
        out |= space.rows[i]
    return out


def near(space: Space, e: int, f: int) -> bool:
    """Subset nearness: true iff some point of ``e`` is near some point of
    ``f``.  Empty subsets are near nothing."""
    space.require_mask(e)
    space.require_mask(f)
    if e == 0 or f == 0:
        return False
    return bool(nbr_mask(space, e) & f)


def closure(space: Space, e: int) -> int:
    """Points near ``e``; by symmetry this is exactly ``nbr_mask``."""
    return nbr_mask(space, e)


def is_delta_neighborhood(space: Space, f: int, e: int) -> bool:
    """``f << e``: ``f`` is far from the complement of ``e``."""
    return not near(space, f, space.complement(e))


def neighborhood_lattice_check(space: Space, pairs: Sequence[tuple[int, int]]) -> bool:
    """Check that ``<<`` is closed under finite intersections and unions.

    Every ``(e_k, f_k)`` must already satisfy ``e_k << f_k``; if the
    conclusion fails for valid input the core is broken, so that is raised
    as :class:`TheoremViolation` rather than returned.
    """
    if not pairs:
        raise PreconditionUnmet("at least one pair is required")
    for e, f in pairs:
        if not is_delta_neighborhood(space, e, f):
            raise PreconditionUnmet(
                f"{space.names(e)} is not inside a delta-neighborhood {space.names(f)}"
            )
    inter_e = inter_f = space.full
    union_e = union_f = 0
    for e, f in pairs:
        inter_e &= e
        inter_f &= f
        union_e |= e
        union_f |= f
    ok = is_delta_neighborhood(space, inter_e, inter_f) and is_delta_neighborhood(
        space, union_e, union_f
    )
    if not ok:
        raise TheoremViolation(
            "the delta-neighborhood lattice law failed on valid input"
        )
    return True


# -- axiom checking ----------------------------------------------------------

@dataclass(frozen=True)
class AxiomVerdict:
    holds: bool
    counterexample: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.holds and self.counterexample is not None:
            raise ValueError("a holding verdict cannot carry a counterexample")


@dataclass(frozen=True)
class AxiomReport:
    axioms: dict[str, AxiomVerdict]
    classification: str
    method: str

    def holds(self, name: str) -> bool:
        return self.axioms[name].holds


def _classify(axioms: Mapping[str, AxiomVerdict], separation: str) -> str:
    others = [k for k in axioms if k != separation]
    if all(axioms[k].holds for k in others):
        return EF_LABEL if axioms[separation].holds else CECH_LABEL
    return NOT_PROXIMITY_LABEL


def transitivity_counterexample(space: Space) -> tuple[int, int] | None:
    """A far pair ``({i},{k})`` with a common neighbor, or None if the point
    relation is transitively closed."""
    for i in range(space.n):
        for j in bits(space.rows[i]):
            extra = space.rows[j] & ~space.rows[i]
            if extra:
                k = next(bits(extra))
                return (1 << i, 1 << k)
    return None


def check_axioms(space: Space, *, exhaustive: bool = False, cap: int = 12) -> AxiomReport:
    """Decide the nearness axioms exactly.

    The default mode uses the structural characterisations valid for every
    point-determined relation: symmetry and additivity hold by construction,
    the overlap axiom is reflexivity of the point graph, and the separation
    axiom holds iff the point graph is transitively closed.  The exhaustive
    mode re-derives each verdict by literal quantifier sweeps over subset
    pairs (and candidate separators); it is exponential and guarded by
    ``cap``.
    """
    if exhaustive:
        if space.n > cap:
            raise GroundSetTooLarge(
                f"{space.n} points exceeds the exhaustive cap of {cap}"
            )
        return _check_axioms_exhaustive(space)

    axioms: dict[str, AxiomVerdict] = {}
    axioms["a"] = AxiomVerdict(True)  # symmetry is validated at construction
    axioms["b"] = AxiomVerdict(True)  # point determination gives additivity
    axioms["c"] = AxiomVerdict(True)  # empty subsets are never near
    cx = transitivity_counterexample(space)
    axioms["d"] = AxiomVerdict(True) if cx is None else AxiomVerdict(False, cx)
    axioms["e"] = AxiomVerdict(True)  # reflexivity is forced at construction
    return AxiomReport(axioms, _classify(axioms, "d"), "structural")


def _separator_exists(space: Space, e: int, f: int) -> bool:
    """Literal separation test: is there ``g`` with ``e`` far ``g`` and
    ``X - g`` far ``f``?  The canonical candidate (everything near ``f``)
    is tried first, then the full subset sweep."""
    canonical = nbr_mask(space, f)
    if not near(space, e, canonical) and not near(
        space, space.complement(canonical), f
    ):
        return True
    for g in range(space.full + 1):
        if not near(space, e, g) and not near(space, space.complement(g), f):
            return True
    return False


def _near_truth_rows(space: Space) -> list[int]:
    """Truth table of subset nearness as bitsets: bit ``f`` of ``row[e]`` is
    set iff ``e`` is near ``f``.  Built by subset dynamic programming so the
    exhaustive axiom sweeps are pure bitset arithmetic."""
    full = space.full
    nbr_all = [0] * (full + 1)
    for e in range(1, full + 1):
        low = e & -e
        nbr_all[e] = nbr_all[e ^ low] | space.rows[low.bit_length() - 1]
    # subsets_of[m] = bitset over integers f with f a subset of m
    subsets_of = [0] * (full + 1)
    subsets_of[0] = 1
    for m in range(1, full + 1):
        low = m & -m
        prev = subsets_of[m ^ low]
        subsets_of[m] = prev | (prev << low)
    all_f = (1 << (full + 1)) - 1
    rows = [0] * (full + 1)
    for e in range(1, full + 1):
        rows[e] = all_f ^ subsets_of[full & ~nbr_all[e]]
    return rows


def _check_axioms_exhaustive(space: Space) -> AxiomReport:
    full = space.full
    axioms: dict[str, AxiomVerdict] = {}
    rows = _near_truth_rows(space)

    cx = None
    for e in range(full + 1):
        for f in range(e + 1, full + 1):
            if (rows[e] >> f & 1) != (rows[f] >> e & 1):
                cx = (e, f)
                break
        if cx:
            break
    axioms["a"] = AxiomVerdict(cx is None, cx)

    cx = None
    for e in range(full + 1):
        for f in range(full + 1):
            diff = rows[e | f] ^ (rows[e] | rows[f])
            if diff:
                g = (diff & -diff).bit_length() - 1
                cx = (e, f, g)
                break
        if cx:
            break
    axioms["b"] = AxiomVerdict(cx is None, cx)

    cx = None
    if rows[0] != 0:
        f = (rows[0] & -rows[0]).bit_length() - 1
        cx = (0, f)
    else:
        for e in range(1, full + 1):
            if rows[e] & 1:
                cx = (e, 0)
                break
    axioms["c"] = AxiomVerdict(cx is None, cx)

    cx = None
    for e in range(1, full + 1):
        for f in range(1, full + 1):
            if not rows[e] >> f & 1 and not _separator_exists(space, e, f):
                cx = (e, f)
                break
        if cx:
            break
    axioms["d"] = AxiomVerdict(cx is None, cx)

    cx = None
    for e in range(full + 1):
        for f in range(full + 1):
            if e & f and not rows[e] >> f & 1:
                cx = (e, f)
                break
        if cx:
            break
    axioms["e"] = AxiomVerdict(cx is None, cx)

    return AxiomReport(axioms, _classify(axioms, "d"), "exhaustive")


@dataclass(frozen=True)
class KuratowskiReport:
    empty_fixed: bool
    extensive: bool
    additive: bool
    idempotent: bool
    idempotence_counterexample: int | None = None

    @property
    def all_hold(self) -> bool:
        return self.empty_fixed and self.extensive and self.additive and self.idempotent


def kuratowski_check(space: Space, *, cap: int = 12) -> KuratowskiReport:
    """Verify the closure-operator laws.

    Idempotence may genuinely fail when the separation axiom fails; it is
    reported, never raised.  The pairwise additivity sweep is quadratic in
    the subset lattice, so it is limited to ``cap`` points; beyond the cap
    the (structurally true) additivity is checked on singleton pairs only.
    """
    full = space.full
    empty_fixed = closure(space, 0) == 0
    extensive = True
    idempotent = True
    idem_cx = None
    for e in range(full + 1):
        cl = closure(space, e)
        if e & ~cl:
            extensive = False
        if closure(space, cl) != cl and idem_cx is None:
            idempotent = False
            idem_cx = e
    additive = True
    if space.n <= cap:
        for e in range(full + 1):
            for f in range(full + 1):
                if closure(space, e | f) != closure(space, e) | closure(space, f):
                    additive = False
                    break
            if not additive:
                break
    else:
        for i in range(space.n):
            for j in range(space.n):
                e, f = 1 << i, 1 << j
                if closure(space, e | f) != closure(space, e) | closure(space, f):
                    additive = False
    return KuratowskiReport(empty_fixed, extensive, additive, idempotent, idem_cx)


# -- constructors ------------------------------------------------------------

def space_from_pairs(
    points: Sequence[str],
    pairs: Iterable[tuple[str, str]],
    provenance: str = "explicit",
) -> Space:
    """Space from an undirected list of near point pairs; reflexive pairs are
    implied and need not be listed."""
    pts = tuple(points)
    index = {}
    for i, p in enumerate(pts):
        if p in index:
            raise DuplicatePoint(f"duplicate point identifier {p!r}")
        index[p] = i
    rows = [0] * len(pts)
    for a, b in pairs:
        if a not in index:
            raise UnknownPointReference(f"unknown point {a!r} in nearness pair")
        if b not in index:
            raise UnknownPointReference(f"unknown point {b!r} in nearness pair")
        i, j = index[a], index[b]
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Space(pts, tuple(rows), provenance)


def space_from_matrix(
    points: Sequence[str],
    matrix: Sequence[Sequence[bool]],
    provenance: str = "explicit",
) -> Space:
    """Space from an explicit boolean nearness matrix (must be symmetric)."""
    n = len(points)
    rows = []
    for i in range(n):
        mask = 0
        for j in range(n):
            if matrix[i][j]:
                mask |= 1 << j
        rows.append(mask)
    for i in range(n):
        for j in range(n):
            if bool(matrix[i][j]) != bool(matrix[j][i]):
                raise NonSymmetricInput(
                    f"matrix asymmetric at ({points[i]!r}, {points[j]!r})"
                )
    return Space(tuple(points), tuple(rows), provenance)


def discrete_space(points: Sequence[str]) -> Space:
    """Nearness is overlap: distinct points are far."""
    n = len(points)
    return Space(tuple(points), tuple(1 << i for i in range(n)), "discrete")


def indiscrete_space(points: Sequence[str]) -> Space:
    """Every pair of nonempty subsets is near."""
    n = len(points)
    full = (1 << n) - 1
    return Space(tuple(points), tuple(full for _ in range(n)), "indiscrete")


def metric_space(
    points: Sequence[str],
    coords: Mapping[str, Sequence[float]],
    epsilon: float,
) -> Space:
    """Points are near when their euclidean distance is at most ``epsilon``.

    The continuum rule "distance zero" degenerates to overlap on finite sets;
    the threshold generalises it at desk scale.  The resulting relation is
    checked, not assumed, to satisfy the separation axiom.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    pts = tuple(points)
    for p in pts:
        if p not in coords:
            raise UnknownPointReference(f"no coordinates for point {p!r}")
    n = len(pts)
    rows = [0] * n
    eps2 = epsilon * epsilon
    for i in range(n):
        ci = coords[pts[i]]
        for j in range(i, n):
            cj = coords[pts[j]]
            d2 = sum((a - b) ** 2 for a, b in zip(ci, cj))
            if d2 <= eps2:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Space(pts, tuple(rows), f"metric(epsilon={epsilon})")


def space_from_table(
    points: Sequence[str],
    near_table: Iterable[tuple[Iterable[str], Iterable[str]]],
    *,
    cap: int = 12,
) -> Space:
    """Space from a complete subset-nearness table.

    The table lists every near pair of subsets (unordered; omitted pairs are
    far, singleton reflexive pairs are implied).  The table must be point
    determined, i.e. agree everywhere with the relation generated by its
    singleton entries; otherwise additivity fails and the violating triple
    is reported.
    """
    pts = tuple(points)
    n = len(pts)
    if n > cap:
        raise GroundSetTooLarge(f"{n} points exceeds the table-validation cap of {cap}")
    probe = discrete_space(pts)  # only for name->mask resolution
    listed: set[tuple[int, int]] = set()
    for e_names, f_names in near_table:
        e = probe.subset(e_names)
        f = probe.subset(f_names)
        if e == 0 or f == 0:
            raise PreconditionUnmet("the empty subset cannot be listed as near")
        listed.add((min(e, f), max(e, f)))
    for i in range(n):
        listed.add((1 << i, 1 << i))

    def table_near(e: int, f: int) -> bool:
        return e != 0 and f != 0 and (min(e, f), max(e, f)) in listed

    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if table_near(1 << i, 1 << j):
                rows[i] |= 1 << j
    for i in range(n):
        for j in bits(rows[i]):
            rows[j] |= 1 << i  # unordered listing: symmetrise
    space = Space(pts, tuple(rows), "explicit-table")

    full = space.full
    candidates = sorted(
        ((e, f) for e in range(1, full + 1) for f in range(1, full + 1)),
        key=lambda ef: (popcount(ef[0]) + popcount(ef[1]), ef),
    )
    for e, f in candidates:
        t = table_near(e, f)
        p = near(space, e, f)
        if t == p:
            continue
        if t and not p:
            # near per table, far per points: split a non-singleton side
            big, other = (e, f) if popcount(e) > 1 else (f, e)
            lead = 1 << next(bits(big))
            triple = (lead, big ^ lead, other)
            raise TableNotPointDetermined(
                "table lists "
                f"{space.names(big)} near {space.names(other)} but no point pair "
                "is near: additivity fails",
                triple=triple,
            )
        # far per table, near per points: some singleton sub-pair is listed
        for i in bits(e):
            for j in bits(f & space.rows[i]):
                lead = 1 << i
                big = e if popcount(e) > 1 else f
                if popcount(e) > 1:
                    triple = (lead, e ^ lead, f)
                else:
                    triple = (1 << j, f ^ (1 << j), e)
                raise TableNotPointDetermined(
                    f"table omits {space.names(e)} near {space.names(f)} although "
                    f"{pts[i]!r} is listed near {pts[j]!r}: additivity fails",
                    triple=triple,
                )
    return space


# -- derived spaces ----------------------------------------------------------

def product_space(left: Space, right: Space) -> Space:
    """Point-level product: ``(x, y)`` near ``(x', y')`` iff both coordinates
    are near.  Under point determination this reproduces the box rule for
    products of subsets."""
    names = tuple(f"({p},{q})" for p in left.points for q in right.points)
    nr = right.n
    rows = []
    for i in range(left.n):
        for j in range(right.n):
            mask = 0
            for i2 in bits(left.rows[i]):
                base = i2 * nr
                for j2 in bits(right.rows[j]):
                    mask |= 1 << (base + j2)
            rows.append(mask)
    return Space(names, tuple(rows), "product")


def subspace(space: Space, carrier: int) -> Space:
    """Restriction of the nearness relation to a nonempty carrier."""
    space.require_mask(carrier)
    if carrier == 0:
        raise EmptyCarrier("a subspace needs a nonempty carrier")
    idx = list(bits(carrier))
    names = tuple(space.points[i] for i in idx)
    pos = {orig: new for new, orig in enumerate(idx)}
    rows = []
    for i in idx:
        mask = 0
        for j in bits(space.rows[i] & carrier):
            mask |= 1 << pos[j]
        rows.append(mask)
    return Space(names, tuple(rows), "subspace")


def coproduct_space(left: Space, right: Space) -> Space:
    """Disjoint union with no cross nearness."""
    if set(left.points) & set(right.points):
        lnames = tuple(f"0:{p}" for p in left.points)
        rnames = tuple(f"1:{p}" for p in right.points)
    else:
        lnames = left.points
        rnames = right.points
    shift = left.n
    rows = list(left.rows) + [r << shift for r in right.rows]
    return Space(lnames + rnames, tuple(rows), "coproduct")


def graph_components(space: Space) -> list[int]:
    """Connected components of the point graph, as masks in point order."""
    seen = 0
    out = []
    for start in range(space.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            grown = nbr_mask(space, frontier) & ~comp
            comp |= grown
            frontier = grown
        seen |= comp
        out.append(comp)
    return out
