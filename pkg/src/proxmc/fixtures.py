"""Bundled worked fixtures: the cell ring, the triple covering of the
four-cycle, the four-ball extension space, and their color versions.

The ring relation on the eight cells is the one generated by the three
step paths walked on it (consecutive cells touch, the last touches the
first); it is recorded as an inference from those paths, not as given
data.  Color fixtures realize the stated nearness outcomes of the worked
color examples; the printed color traces in the source material are
internally inconsistent, so the colors here are chosen to reproduce the
outcomes (see the ex1 trace note in the project notes).
"""

from __future__ import annotations

from .core import (
    Space,
    coproduct_space,
    discrete_space,
    product_space,
    space_from_pairs,
    subspace,
)
from .descriptive import ProbeTable, descriptive_space
from .homotopy import HomotopyWitness, digital_interval, path_map
from .lifting import ExtensionProblem
from .maps import SpaceMap, constant_map, inclusion_map, space_map

RED = (255, 0, 0)
GREEN = (0, 255, 0)
BLACK = (0, 0, 0)
BLUE = (0, 0, 255)
YELLOW = (255, 255, 0)
MAGENTA = (255, 0, 255)
WHITE = (255, 255, 255)
GRAY = (128, 128, 128)


def point_space(name: str = "*") -> Space:
    return discrete_space([name])


def cycle_space(n: int, names: str | list[str] | None = None) -> Space:
    """The ``n``-cycle; for ``n = 3`` this is the complete triangle."""
    if n < 3:
        raise ValueError("a cycle needs at least three points")
    pts = list(names) if names is not None else [f"v{i}" for i in range(n)]
    pairs = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    return space_from_pairs(pts, pairs, provenance="explicit")


# -- the eight-cell ring (spatial and color versions) --------------------------

def figure1_space() -> Space:
    return cycle_space(8, "abcdefgh")


def figure1_paths() -> tuple[SpaceMap, SpaceMap, SpaceMap]:
    """The three step paths on the ring, on the chain with eight stops."""
    interval = digital_interval(7)
    ring = figure1_space()
    a1 = path_map(interval, ring, list("abcdefgh"))
    a2 = path_map(interval, ring, list("habcdefg"))
    a3 = path_map(interval, ring, list("ahgfedcb"))
    return a1, a2, a3


def figure1_probe_table() -> ProbeTable:
    """Cell colors: two red cells, one green, two black, three fresh."""
    values = {
        "a": RED,
        "b": GREEN,
        "c": RED,
        "d": BLACK,
        "e": BLUE,
        "f": YELLOW,
        "g": MAGENTA,
        "h": BLACK,
    }
    return ProbeTable(("red", "green", "blue"), values)


def figure1_descriptive_space() -> Space:
    return descriptive_space(list("abcdefgh"), figure1_probe_table())


def figure1_descriptive_paths() -> tuple[SpaceMap, SpaceMap, SpaceMap]:
    """The three four-stop color traces evaluated on the color space."""
    interval = digital_interval(3)
    space = figure1_descriptive_space()
    g1 = path_map(interval, space, list("abcd"))
    g2 = path_map(interval, space, list("cbah"))
    g3 = path_map(interval, space, list("ahgf"))
    return g1, g2, g3


# -- the triple covering of the four-cycle -------------------------------------

def figure2_base() -> Space:
    return cycle_space(4, ["d1", "d2", "d3", "d4"])


def figure2_total() -> Space:
    sheets = [cycle_space(4, [f"{c}1", f"{c}2", f"{c}3", f"{c}4"]) for c in "abc"]
    total = coproduct_space(coproduct_space(sheets[0], sheets[1]), sheets[2])
    return Space(total.points, total.rows, "coproduct")


def figure2_covering() -> SpaceMap:
    total = figure2_total()
    base = figure2_base()
    return space_map(total, base, {p: f"d{p[1]}" for p in total.points})


def figure2_probe_tables() -> tuple[ProbeTable, ProbeTable]:
    """Color tables (total, base) for the color version of the covering.

    Downstairs three of the four balls share a color; upstairs each sheet
    family shares one color on the matching three balls and the remaining
    ball of each family is fresh.
    """
    base_values = {"d1": WHITE, "d2": GRAY, "d3": WHITE, "d4": WHITE}
    total_values = {}
    fresh = {"a": (10, 10, 10), "b": (20, 20, 20), "c": (30, 30, 30)}
    family = {"a": (200, 0, 0), "b": (0, 200, 0), "c": (0, 0, 200)}
    for c in "abc":
        for i in (1, 3, 4):
            total_values[f"{c}{i}"] = family[c]
        total_values[f"{c}2"] = fresh[c]
    names = ("red", "green", "blue")
    return ProbeTable(names, total_values), ProbeTable(names, base_values)


def figure2_descriptive_total() -> Space:
    table, _ = figure2_probe_tables()
    return descriptive_space(sorted(table.values), table, "descriptive")


def figure2_descriptive_base() -> Space:
    _, table = figure2_probe_tables()
    return descriptive_space(["d1", "d2", "d3", "d4"], table, "descriptive")


def figure2_descriptive_covering() -> SpaceMap:
    total = figure2_descriptive_total()
    base = figure2_descriptive_base()
    return space_map(total, base, {p: f"d{p[1]}" for p in total.points})


# -- the four-ball extension space ---------------------------------------------

def figure3_space() -> Space:
    """Four balls: three mutually touching, the fourth touching only the
    third.  Chosen so the corner-glued extension of the two walked paths
    exists, matching the worked example."""
    return space_from_pairs(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")],
    )


def figure3_probe_table() -> ProbeTable:
    """Ball colors: the three touching balls share one color."""
    values = {"a": RED, "b": RED, "c": RED, "d": BLACK}
    return ProbeTable(("red", "green", "blue"), values)


def figure3_descriptive_space() -> Space:
    return descriptive_space(["a", "b", "c", "d"], figure3_probe_table())


def endpoint_inclusion() -> SpaceMap:
    """The inclusion of the left endpoint into the one-step chain."""
    interval = digital_interval(1)
    left = subspace(interval, interval.subset("0"))
    return inclusion_map(left, interval)


def figure3_extension_problem(descriptive: bool = False) -> ExtensionProblem:
    """The worked extension square: extend the path to ``a`` along the
    endpoint inclusion, starting from the path to ``c``."""
    z = figure3_descriptive_space() if descriptive else figure3_space()
    h = endpoint_inclusion()
    interval = h.codomain
    left = h.domain
    k = space_map(interval, z, {"0": "b", "1": "c"})
    base = HomotopyWitness(
        (
            constant_map(left, z, "b"),
            constant_map(left, z, "a"),
        )
    )
    return ExtensionProblem(h, z, k, base)


# -- further bundled maps --------------------------------------------------------

def component_inclusion() -> SpaceMap:
    """Inclusion of one summand into a two-part coproduct; the bundled
    extension-property fixture (extensions freeze the far summand)."""
    ring = cycle_space(4, ["x1", "x2", "x3", "x4"])
    ambient = coproduct_space(ring, point_space("w"))
    return inclusion_map(ring, ambient)


def point_into_two_discrete() -> SpaceMap:
    """Inclusion of a point as one of two far points."""
    two = discrete_space(["p", "q"])
    return inclusion_map(subspace(two, two.subset("p")), two)


def projection_fixture() -> tuple[SpaceMap, Space, Space]:
    """First-factor projection of a product of a four-cycle and a chain."""
    left = cycle_space(4, ["y1", "y2", "y3", "y4"])
    right = digital_interval(1)
    prod = product_space(left, right)
    proj = SpaceMap(prod, left, tuple(i // right.n for i in range(prod.n)))
    return proj, left, right

def constant_fixture() -> SpaceMap:
    ring = cycle_space(4, ["y1", "y2", "y3", "y4"])
    return constant_map(ring, point_space("x0"), "x0")


def mini_covering() -> SpaceMap:
    """Two disjoint copies of the one-step chain over one copy."""
    base = digital_interval(1)
    copy0 = space_from_pairs(["u0", "u1"], [("u0", "u1")])
    copy1 = space_from_pairs(["w0", "w1"], [("w0", "w1")])
    total = coproduct_space(copy0, copy1)
    return space_map(
        total, base, {"u0": "0", "u1": "1", "w0": "0", "w1": "1"}
    )


def stack_covering(copies: int = 3) -> SpaceMap:
    """Projection from the product with a discrete stack of copies; the
    infinite-stack example at desk scale."""
    ring = cycle_space(4, ["y1", "y2", "y3", "y4"])
    stack = discrete_space([str(i) for i in range(copies)])
    prod = product_space(ring, stack)
    return SpaceMap(prod, ring, tuple(i // copies for i in range(prod.n)))


def fold_map() -> SpaceMap:
    """Folding a near pair onto a single point; not a covering because the
    pair cannot split into singleton sheets away from each other."""
    edge = space_from_pairs(["s", "t"], [("s", "t")])
    return constant_map(edge, point_space("z"), "z")


def default_catalog() -> tuple[tuple[str, Space], ...]:
    """The stand-in for the universal quantifier over all test spaces."""
    return (
        ("point", point_space()),
        ("discrete2", discrete_space(["z0", "z1"])),
        ("interval1", digital_interval(1)),
        ("interval2", digital_interval(2)),
        ("cycle3", cycle_space(3, ["t0", "t1", "t2"])),
    )
