"""Descriptive nearness via probe functions.

Each point carries a feature vector of rationals.  Two subsets are
descriptively near when their description sets intersect; with the default
tolerance of zero this is exact vector equality, which makes the point
relation an equivalence and the resulting space a full EF-proximity.
Nonzero per-feature tolerances are opt-in and produce "approximately equal"
graphs whose axioms are checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import (
    AxiomReport,
    AxiomVerdict,
    CECH_LABEL,
    EF_LABEL,
    NOT_PROXIMITY_LABEL,
    Space,
    bits,
    near,
    transitivity_counterexample,
)
from .errors import GroundSetTooLarge, MissingVector

Vector = tuple[Fraction, ...]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational feature value")


@dataclass(frozen=True)
class ProbeTable:
    """Feature vectors for the points of one ground set."""

    feature_names: tuple[str, ...]
    values: dict[str, Vector]
    tolerance: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        m = len(self.feature_names)
        vals = {p: tuple(_to_fraction(x) for x in vec) for p, vec in self.values.items()}
        for p, vec in vals.items():
            if len(vec) != m:
                raise MissingVector(
                    f"point {p!r} has a vector of arity {len(vec)}, expected {m}"
                )
        tol = tuple(_to_fraction(t) for t in self.tolerance) or tuple(
            Fraction(0) for _ in range(m)
        )
        if len(tol) != m:
            raise MissingVector(f"tolerance arity {len(tol)}, expected {m}")
        if any(t < 0 for t in tol):
            raise ValueError("tolerances must be nonnegative")
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "tolerance", tol)

    @property
    def arity(self) -> int:
        return len(self.feature_names)

    def vector(self, point: str) -> Vector:
        try:
            return self.values[point]
        except KeyError:
            raise MissingVector(f"no feature vector for point {point!r}") from None

    def within_tolerance(self, a: Vector, b: Vector) -> bool:
        return all(abs(x - y) <= t for x, y, t in zip(a, b, self.tolerance))


def description(table: ProbeTable, space: Space, e: int) -> frozenset[Vector]:
    """The distinct feature vectors of ``e``'s points."""
    space.require_mask(e)
    return frozenset(table.vector(space.points[i]) for i in bits(e))


def descriptive_space(
    points: Sequence[str], table: ProbeTable, provenance: str = "descriptive"
) -> Space:
    """Point graph joining points whose vectors agree within tolerance."""
    pts = tuple(points)
    vecs = [table.vector(p) for p in pts]
    n = len(pts)
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if table.within_tolerance(vecs[i], vecs[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Space(pts, tuple(rows), provenance)


def descriptive_set_op(mode: str, table: ProbeTable, space: Space, e: int, f: int) -> int:
    """Descriptive intersection or union.

    Membership is by description: a point of ``e | f`` belongs to the
    intersection when its vector occurs in both description sets, to the
    union when it occurs in at least one (which is always, so the union is
    ``e | f`` itself; it is still computed from the definition).
    """
    if mode not in ("intersection", "union"):
        raise ValueError(f"mode must be 'intersection' or 'union', got {mode!r}")
    space.require_mask(e)
    space.require_mask(f)
    qe = description(table, space, e)
    qf = description(table, space, f)
    out = 0
    for i in bits(e | f):
        v = table.vector(space.points[i])
        in_e = v in qe
        in_f = v in qf
        keep = (in_e and in_f) if mode == "intersection" else (in_e or in_f)
        if keep:
            out |= 1 << i
    return out


def check_descriptive_axioms(
    space: Space, table: ProbeTable, *, exhaustive: bool = False, cap: int = 12
) -> AxiomReport:
    """Decide the descriptive nearness axioms (f) through (k).

    At tolerance zero the point relation is an equivalence, so everything
    holds; with tolerances the separation axiom (k) can fail and the space
    is classified at the Cech level.  Exhaustive mode sweeps subset pairs
    (and triples for additivity) literally.
    """
    if exhaustive and space.n > cap:
        raise GroundSetTooLarge(f"{space.n} points exceeds the exhaustive cap of {cap}")

    axioms: dict[str, AxiomVerdict] = {}
    full = space.full

    if exhaustive:
        from .core import _near_truth_rows

        rows = _near_truth_rows(space)
        # exact-equality class of each point, for fast descriptive intersections
        eq_class = []
        vecs = [table.vector(p) for p in space.points]
        for i in range(space.n):
            mask = 0
            for j in range(space.n):
                if vecs[i] == vecs[j]:
                    mask |= 1 << j
            eq_class.append(mask)

        def inter_mask(e: int, f: int) -> int:
            out = 0
            for i in bits(e | f):
                if eq_class[i] & e and eq_class[i] & f:
                    out |= 1 << i
            return out

        cx = None
        if rows[0] != 0:
            cx = (0, (rows[0] & -rows[0]).bit_length() - 1)
        else:
            for e in range(1, full + 1):
                if rows[e] & 1:
                    cx = (e, 0)
                    break
        axioms["f"] = AxiomVerdict(cx is None, cx)

        cx = None
        for e in range(full + 1):
            for f in range(full + 1):
                if inter_mask(e, f) and not rows[e] >> f & 1:
                    cx = (e, f)
                    break
            if cx:
                break
        axioms["g"] = AxiomVerdict(cx is None, cx)

        cx = None
        for e in range(full + 1):
            for f in range(e + 1, full + 1):
                if inter_mask(e, f) != inter_mask(f, e):
                    cx = (e, f)
                    break
            if cx:
                break
        axioms["h"] = AxiomVerdict(cx is None, cx)

        cx = None
        for f in range(full + 1):
            for g in range(full + 1):
                diff = rows[f | g] ^ (rows[f] | rows[g])
                if diff:
                    e = (diff & -diff).bit_length() - 1
                    cx = (e, f, g)
                    break
            if cx:
                break
        axioms["i"] = AxiomVerdict(cx is None, cx)
        method = "exhaustive"
    else:
        axioms["f"] = AxiomVerdict(True)
        axioms["g"] = AxiomVerdict(True)  # shared descriptions are near descriptions
        axioms["h"] = AxiomVerdict(True)  # the set-builder is symmetric in e, f
        axioms["i"] = AxiomVerdict(True)  # point determination gives additivity
        method = "structural"

    if exhaustive:
        from .core import _separator_exists

        cx = None
        for e in range(1, full + 1):
            for f in range(1, full + 1):
                if not rows[e] >> f & 1 and not _separator_exists(space, e, f):
                    cx = (e, f)
                    break
            if cx:
                break
        axioms["k"] = AxiomVerdict(cx is None, cx)
    else:
        cx = transitivity_counterexample(space)
        axioms["k"] = AxiomVerdict(True) if cx is None else AxiomVerdict(False, cx)

    others = [k for k in axioms if k != "k"]
    if all(axioms[k].holds for k in others):
        label = EF_LABEL if axioms["k"].holds else CECH_LABEL
    else:
        label = NOT_PROXIMITY_LABEL
    return AxiomReport(axioms, label, method)


# -- grid ingestion -----------------------------------------------------------

def grid_points(width: int, height: int) -> list[str]:
    return [f"r{r}c{c}" for r in range(height) for c in range(width)]


def parse_grid(text: str) -> tuple[Space, ProbeTable]:
    """Parse the ASCII grid format.

    First line ``GRID w h``, then ``h`` rows of ``w`` single-character color
    codes, then ``LEGEND`` and lines ``code R G B``.  Cells become points,
    spatial nearness is 4-adjacency, and the probe table carries the RGB
    triple of each cell.
    """
    from .errors import SchemaError

    lines = [ln.rstrip("\n") for ln in text.strip().splitlines()]
    if not lines or not lines[0].startswith("GRID"):
        raise SchemaError("expected a 'GRID w h' header", field="GRID")
    head = lines[0].split()
    if len(head) != 3:
        raise SchemaError("header must be 'GRID w h'", field="GRID")
    try:
        width, height = int(head[1]), int(head[2])
    except ValueError:
        raise SchemaError("grid dimensions must be integers", field="GRID") from None
    if len(lines) < 1 + height + 1:
        raise SchemaError("grid body shorter than declared height", field="GRID")
    rows_text = lines[1 : 1 + height]
    for r, row in enumerate(rows_text):
        if len(row) != width:
            raise SchemaError(f"row {r} has length {len(row)}, expected {width}", field="GRID")
    if lines[1 + height].strip() != "LEGEND":
        raise SchemaError("expected 'LEGEND' after the grid body", field="LEGEND")
    legend: dict[str, tuple[int, int, int]] = {}
    for ln in lines[2 + height :]:
        parts = ln.split()
        if len(parts) != 4:
            raise SchemaError(f"legend line {ln!r} must be 'code R G B'", field="LEGEND")
        code = parts[0]
        try:
            rgb = tuple(int(x) for x in parts[1:])
        except ValueError:
            raise SchemaError(f"non-integer RGB in {ln!r}", field="LEGEND") from None
        legend[code] = rgb  # type: ignore[assignment]
    points = grid_points(width, height)
    values = {}
    pairs = []
    for r in range(height):
        for c in range(width):
            code = rows_text[r][c]
            if code not in legend:
                raise SchemaError(f"cell code {code!r} missing from legend", field="LEGEND")
            values[f"r{r}c{c}"] = legend[code]
            if c + 1 < width:
                pairs.append((f"r{r}c{c}", f"r{r}c{c + 1}"))
            if r + 1 < height:
                pairs.append((f"r{r}c{c}", f"r{r + 1}c{c}"))
    from .core import space_from_pairs

    spatial = space_from_pairs(points, pairs, provenance="grid")
    table = ProbeTable(("red", "green", "blue"), values)
    return spatial, table


def parse_ppm_p3(text: str) -> tuple[Space, ProbeTable]:
    """Parse a plain-text PPM (P3) image the same way as the ASCII grid."""
    from .errors import SchemaError

    tokens = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        tokens.extend(body.split())
    if not tokens or tokens[0] != "P3":
        raise SchemaError("expected a P3 magic number", field="P3")
    try:
        width, height, _maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
        samples = [int(t) for t in tokens[4:]]
    except (IndexError, ValueError):
        raise SchemaError("malformed P3 header or samples", field="P3") from None
    if len(samples) != 3 * width * height:
        raise SchemaError(
            f"expected {3 * width * height} samples, got {len(samples)}", field="P3"
        )
    points = grid_points(width, height)
    values = {}
    pairs = []
    k = 0
    for r in range(height):
        for c in range(width):
            values[f"r{r}c{c}"] = tuple(samples[k : k + 3])
            k += 3
            if c + 1 < width:
                pairs.append((f"r{r}c{c}", f"r{r}c{c + 1}"))
            if r + 1 < height:
                pairs.append((f"r{r}c{c}", f"r{r + 1}c{c}"))
    from .core import space_from_pairs

    spatial = space_from_pairs(points, pairs, provenance="grid")
    table = ProbeTable(("red", "green", "blue"), values)
    return spatial, table
