"""Covering-map verification with explicit sheet certificates.

A surjective pc-map is a covering when every base point has a
delta-neighborhood whose preimage splits into pairwise disjoint sheets,
each mapped isomorphically onto the neighborhood and each a
delta-neighborhood of its fiber point.  The search tries neighborhoods in
ascending size (ties broken by mask value) and decomposes preimages by
backtracking over the fiber classes, so certificates are deterministic
and minimal-neighborhood first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import Space, bits, is_delta_neighborhood, nbr_mask, popcount, subspace
from .errors import NotPc, NotSurjective, PointNotInCodomain, SearchCapExceeded
from .maps import SpaceMap, Verdict, is_isomorphism, is_pc_map


def fiber(p: SpaceMap, point: str) -> int:
    """Preimage mask of a single codomain point."""
    if point not in p.codomain.points:
        raise PointNotInCodomain(f"{point!r} is not a codomain point")
    return p.preimage_mask(p.codomain.point_mask(point))


@dataclass(frozen=True)
class SheetDecomposition:
    """Evenly-covered neighborhood of one base point."""

    base_point: str
    neighborhood: int            # mask in the codomain
    fiber_points: tuple[str, ...]
    sheets: tuple[int, ...]      # masks in the domain, aligned with fiber_points


@dataclass(frozen=True)
class CoveringCertificate:
    entries: tuple[SheetDecomposition, ...]

    def entry(self, base_point: str) -> SheetDecomposition:
        for e in self.entries:
            if e.base_point == base_point:
                return e
        raise PointNotInCodomain(f"no certificate entry for {base_point!r}")


def _restriction(p: SpaceMap, sheet: int, neighborhood: int) -> SpaceMap:
    dom = subspace(p.domain, sheet)
    cod = subspace(p.codomain, neighborhood)
    return SpaceMap(
        dom, cod, tuple(cod.index(p(q)) for q in dom.points)
    )


def validate_certificate(p: SpaceMap, cert: CoveringCertificate) -> Verdict:
    """Re-check every clause of a certificate independently of the search."""
    x, xp = p.domain, p.codomain
    seen = set()
    for entry in cert.entries:
        if entry.base_point in seen:
            return Verdict(False, (entry.base_point,), "duplicate entry")
        seen.add(entry.base_point)
        if not is_delta_neighborhood(
            xp, xp.point_mask(entry.base_point), entry.neighborhood
        ):
            return Verdict(False, (entry.base_point,), "not a delta-neighborhood")
        pre = p.preimage_mask(entry.neighborhood)
        fib = fiber(p, entry.base_point)
        union = 0
        for v, sheet in zip(entry.fiber_points, entry.sheets):
            vmask = x.point_mask(v)
            if not vmask & fib:
                return Verdict(False, (entry.base_point, v), "marked point not in fiber")
            if union & sheet:
                return Verdict(False, (entry.base_point,), "sheets overlap")
            union |= sheet
            if not is_delta_neighborhood(x, vmask, sheet):
                return Verdict(
                    False, (entry.base_point, v), "sheet is not a neighborhood of its fiber point"
                )
            iso = is_isomorphism(_restriction(p, sheet, entry.neighborhood))
            if not iso:
                return Verdict(
                    False, (entry.base_point, v), "sheet restriction is not an isomorphism"
                )
        if union != pre:
            return Verdict(False, (entry.base_point,), "sheets do not cover the preimage")
        if len(set(entry.sheets)) != len(entry.sheets):
            return Verdict(False, (entry.base_point,), "sheets not distinct")
    if seen != set(xp.points):
        return Verdict(False, tuple(sorted(set(xp.points) - seen)), "base points missing")
    return Verdict(True)


def _neighborhood_candidates(space: Space, base_idx: int) -> Iterator[int]:
    """Supersets of the base point's nearness row, ascending by size then
    mask value, so the smallest readable neighborhood is found first."""
    required = space.rows[base_idx]
    free = list(bits(space.full & ~required))
    extras = []
    for extra_mask in range(1 << len(free)):
        add = 0
        for k in bits(extra_mask):
            add |= 1 << free[k]
        extras.append(required | add)
    extras.sort(key=lambda m: (popcount(m), m))
    yield from extras


def _decompose(
    p: SpaceMap, base_idx: int, neighborhood: int, budget: list[int]
) -> SheetDecomposition | None:
    """Backtracking sheet search for one base point and neighborhood."""
    x, xp = p.domain, p.codomain
    base_point = xp.points[base_idx]
    pre = p.preimage_mask(neighborhood)
    fib = p.preimage_mask(1 << base_idx)
    fiber_idx = list(bits(fib))
    s = len(fiber_idx)
    if s == 0:
        return None
    classes = {}
    for y in bits(neighborhood):
        cls = p.preimage_mask(1 << y)
        if popcount(cls) != s:
            return None  # sheet count is forced by the fiber size
        classes[y] = list(bits(cls))
    # every sheet must absorb the whole nearness row of its fiber point
    for v in fiber_idx:
        if x.rows[v] & ~pre:
            return None
    sheets = [1 << v for v in fiber_idx]
    owner = {v: i for i, v in enumerate(fiber_idx)}
    other_ys = [y for y in bits(neighborhood) if y != base_idx]

    def fits(q: int, sheet_no: int, y: int) -> bool:
        # forced membership: q adjacent to a different fiber point
        for v in fiber_idx:
            if x.rows[v] >> q & 1 and owner[v] != sheet_no:
                return False
        # partial isomorphism: edges must match the base edges exactly
        for m in bits(sheets[sheet_no]):
            ym = xp.index(p(x.points[m]))
            if bool(x.rows[q] >> m & 1) != bool(xp.rows[y] >> ym & 1):
                return False
        return True

    def assign(yi: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchCapExceeded("sheet decomposition search budget exhausted")
        if yi == len(other_ys):
            return True
        y = other_ys[yi]
        members = classes[y]

        def place(mi: int, used: int) -> bool:
            if mi == len(members):
                return assign(yi + 1)
            q = members[mi]
            for sheet_no in range(s):
                if used >> sheet_no & 1:
                    continue
                if fits(q, sheet_no, y):
                    sheets[sheet_no] |= 1 << q
                    if place(mi + 1, used | 1 << sheet_no):
                        return True
                    sheets[sheet_no] &= ~(1 << q)
            return False

        return place(0, 0)

    if not assign(0):
        return None
    for i, v in enumerate(fiber_idx):
        if not is_delta_neighborhood(x, 1 << v, sheets[i]):
            return None
        iso = is_isomorphism(_restriction(p, sheets[i], neighborhood))
        if not iso:
            return None
    return SheetDecomposition(
        base_point,
        neighborhood,
        tuple(x.points[v] for v in fiber_idx),
        tuple(sheets),
    )


def is_covering_map(
    p: SpaceMap, *, search_budget: int = 1_000_000
) -> CoveringCertificate | Verdict:
    """Search for a covering certificate; on failure, report the base point
    at which every neighborhood candidate fails.

    Raises :class:`NotSurjective` / :class:`NotPc` when the preconditions
    fail and :class:`SearchCapExceeded` when the backtracking budget runs
    out.
    """
    if not p.is_surjective():
        raise NotSurjective("a covering map must be surjective")
    pc = is_pc_map(p)
    if not pc:
        raise NotPc(f"a covering map must be pc; witness {pc.witness}")
    xp = p.codomain
    budget = [search_budget]
    entries = []
    for base_idx in range(xp.n):
        found = None
        for neighborhood in _neighborhood_candidates(xp, base_idx):
            found = _decompose(p, base_idx, neighborhood, budget)
            if found is not None:
                break
        if found is None:
            return Verdict(
                False,
                (xp.points[base_idx],),
                "no neighborhood of this base point is evenly covered",
            )
        entries.append(found)
    cert = CoveringCertificate(tuple(entries))
    check = validate_certificate(p, cert)
    if not check:  # pragma: no cover - guarded by construction
        raise AssertionError(f"search produced an invalid certificate: {check.detail}")
    return cert
