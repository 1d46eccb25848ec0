import random
from fractions import Fraction

import pytest

from proxmc.core import CECH_LABEL, EF_LABEL, check_axioms, graph_components, near
from proxmc.descriptive import (
    ProbeTable,
    check_descriptive_axioms,
    description,
    descriptive_set_op,
    descriptive_space,
    parse_grid,
    parse_ppm_p3,
)
from proxmc.errors import MissingVector, SchemaError
from proxmc.fixtures import (
    RED,
    GREEN,
    figure1_descriptive_space,
    figure1_probe_table,
)

from helpers import oracle_near


@pytest.fixture
def ring_table():
    return figure1_probe_table()


@pytest.fixture
def ring_space(ring_table):
    return figure1_descriptive_space()


def test_vector_arity_enforced():
    with pytest.raises(MissingVector):
        ProbeTable(("r", "g", "b"), {"a": (1, 2)})


def test_description_empty_and_singleton(ring_table, ring_space):
    assert description(ring_table, ring_space, 0) == frozenset()
    a = ring_space.subset("a")
    assert description(ring_table, ring_space, a) == frozenset(
        {tuple(Fraction(v) for v in RED)}
    )


def test_description_of_abc(ring_table, ring_space):
    e = ring_space.subset(["a", "b", "c"])
    assert description(ring_table, ring_space, e) == frozenset(
        {tuple(Fraction(v) for v in RED), tuple(Fraction(v) for v in GREEN)}
    )


def test_missing_vector_reported(ring_table):
    s = descriptive_space(list("abcdefgh"), ring_table)
    with pytest.raises(MissingVector):
        ProbeTable(("r", "g", "b"), {"a": RED}).vector("zz")
    del s


def test_identical_colors_give_indiscrete():
    table = ProbeTable(("c",), {"a": (1,), "b": (1,), "c": (1,)})
    s = descriptive_space(["a", "b", "c"], table)
    assert s.rows == (0b111, 0b111, 0b111)


def test_distinct_colors_give_discrete():
    table = ProbeTable(("c",), {"a": (1,), "b": (2,), "c": (3,)})
    s = descriptive_space(["a", "b", "c"], table)
    assert s.rows == (0b001, 0b010, 0b100)


def test_ring_color_components(ring_space):
    comps = {ring_space.names(m) for m in graph_components(ring_space)}
    assert ("a", "c") in comps
    assert ("b",) in comps
    assert ("d", "h") in comps
    assert ("e",) in comps and ("f",) in comps and ("g",) in comps


def test_nearness_iff_shared_description(ring_table, ring_space):
    # defining relation, re-derived from description sets for every pair
    for e in range(ring_space.full + 1):
        for f in range(ring_space.full + 1):
            qe = description(ring_table, ring_space, e)
            qf = description(ring_table, ring_space, f)
            assert near(ring_space, e, f) == bool(qe & qf)


def test_set_ops_examples(ring_table, ring_space):
    e = ring_space.subset("a")
    f = ring_space.subset("c")
    both = descriptive_set_op("intersection", ring_table, ring_space, e, f)
    assert ring_space.names(both) == ("a", "c")
    union = descriptive_set_op("union", ring_table, ring_space, e, f)
    assert ring_space.names(union) == ("a", "c")
    # equal inputs reproduce themselves
    g = ring_space.subset(["b", "d"])
    assert descriptive_set_op("intersection", ring_table, ring_space, g, g) == g
    assert descriptive_set_op("union", ring_table, ring_space, g, g) == g
    # disjoint colors: empty intersection, plain union
    h = ring_space.subset(["e", "f"])
    i = ring_space.subset("g")
    assert descriptive_set_op("intersection", ring_table, ring_space, h, i) == 0
    assert descriptive_set_op("union", ring_table, ring_space, h, i) == (h | i)


def test_set_ops_commutative_idempotent(ring_table, ring_space):
    rng = random.Random(2)
    for _ in range(200):
        e = rng.randrange(ring_space.full + 1)
        f = rng.randrange(ring_space.full + 1)
        for mode in ("intersection", "union"):
            ef = descriptive_set_op(mode, ring_table, ring_space, e, f)
            fe = descriptive_set_op(mode, ring_table, ring_space, f, e)
            assert ef == fe
            assert descriptive_set_op(mode, ring_table, ring_space, e, e) == e
        inter = descriptive_set_op("intersection", ring_table, ring_space, e, f)
        union = descriptive_set_op("union", ring_table, ring_space, e, f)
        assert inter & ~union == 0
        assert union & ~(e | f) == 0


def test_descriptive_axioms_tolerance_zero(ring_table, ring_space):
    report = check_descriptive_axioms(ring_space, ring_table, exhaustive=True)
    assert report.classification == EF_LABEL
    for key in "fghik":
        assert report.holds(key)
    fast = check_descriptive_axioms(ring_space, ring_table)
    assert fast.classification == EF_LABEL


def test_one_point_descriptive_space():
    table = ProbeTable(("c",), {"x": (0,)})
    s = descriptive_space(["x"], table)
    assert check_descriptive_axioms(s, table, exhaustive=True).classification == EF_LABEL


def test_drifting_colors_break_separation():
    # a 3-point line of drifting colors under a nonzero tolerance
    table = ProbeTable(("c",), {"a": (0,), "b": (1,), "c": (2,)}, (1,))
    s = descriptive_space(["a", "b", "c"], table)
    assert s.rows == (0b011, 0b111, 0b110)
    report = check_descriptive_axioms(s, table, exhaustive=True)
    assert not report.holds("k")
    assert report.classification == CECH_LABEL
    assert check_axioms(s).classification == CECH_LABEL


def test_descriptive_space_matches_spatial_core_checks(ring_space):
    # at tolerance zero the color space is a genuine EF-proximity
    assert check_axioms(ring_space).classification == EF_LABEL


def test_oracle_agreement_on_descriptive_space(ring_space):
    for e in range(ring_space.full + 1):
        for f in range(ring_space.full + 1):
            assert near(ring_space, e, f) == oracle_near(ring_space, e, f)


GRID = """\
GRID 3 2
rgr
bbg
LEGEND
r 255 0 0
g 0 255 0
b 0 0 255
"""


def test_parse_grid_spatial_and_colors():
    spatial, table = parse_grid(GRID)
    assert spatial.n == 6
    # 4-adjacency: r0c0 touches r0c1 and r1c0 but not r1c1
    assert near(spatial, spatial.subset("r0c0"), spatial.subset("r0c1"))
    assert near(spatial, spatial.subset("r0c0"), spatial.subset("r1c0"))
    assert not near(spatial, spatial.subset("r0c0"), spatial.subset("r1c1"))
    color = descriptive_space(list(spatial.points), table)
    assert near(color, color.subset("r0c0"), color.subset("r0c2"))
    assert not near(color, color.subset("r0c0"), color.subset("r0c1"))


def test_parse_grid_rejects_bad_header():
    with pytest.raises(SchemaError):
        parse_grid("GRID x y\nrr\nLEGEND\nr 0 0 0")
    with pytest.raises(SchemaError):
        parse_grid("GRID 2 1\nrq\nLEGEND\nr 0 0 0")


def test_parse_ppm_matches_grid():
    ppm = """\
P3
# a comment
3 2 255
255 0 0  0 255 0  255 0 0
0 0 255  0 0 255  0 255 0
"""
    spatial, table = parse_ppm_p3(ppm)
    grid_spatial, grid_table = parse_grid(GRID)
    assert spatial.rows == grid_spatial.rows
    assert table.values == grid_table.values
