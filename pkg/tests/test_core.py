import random

import pytest

from proxmc.core import (
    CECH_LABEL,
    EF_LABEL,
    Space,
    check_axioms,
    closure,
    coproduct_space,
    discrete_space,
    graph_components,
    indiscrete_space,
    is_delta_neighborhood,
    kuratowski_check,
    metric_space,
    near,
    neighborhood_lattice_check,
    product_space,
    space_from_matrix,
    space_from_pairs,
    space_from_table,
    subspace,
)
from proxmc.errors import (
    DuplicatePoint,
    EmptyCarrier,
    GroundSetTooLarge,
    NonSymmetricInput,
    PreconditionUnmet,
    SubsetDimensionMismatch,
    TableNotPointDetermined,
)
from proxmc.fixtures import cycle_space, figure2_base

from helpers import (
    all_small_spaces,
    is_equivalence_graph,
    oracle_axiom_d,
    oracle_closure,
    oracle_near,
    random_space,
)


def chain(n):
    pts = [str(i) for i in range(n)]
    return space_from_pairs(pts, [(str(i), str(i + 1)) for i in range(n - 1)])


# -- construction ------------------------------------------------------------

def test_discrete_space_is_identity_graph():
    s = discrete_space(["a", "b", "c"])
    assert s.rows == (0b001, 0b010, 0b100)


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoint):
        discrete_space(["a", "a"])


def test_matrix_must_be_symmetric():
    with pytest.raises(NonSymmetricInput):
        space_from_matrix(["a", "b"], [[1, 1], [0, 1]])


def test_reflexivity_is_forced():
    s = space_from_pairs(["a", "b"], [("a", "b")])
    assert near(s, s.subset("a"), s.subset("a"))


def test_metric_line_gives_chain():
    # oracle: pairwise distances on the line 0,1,2,3 with epsilon 1
    coords = {"0": [0.0], "1": [1.0], "2": [2.0], "3": [3.0]}
    s = metric_space(["0", "1", "2", "3"], coords, 1.0)
    expected = chain(4)
    assert s.rows == expected.rows


def test_table_point_determined_accepted():
    s = space_from_table(
        ["a", "b", "c"],
        [({"a"}, {"b"}), ({"a"}, {"b", "c"}), ({"a", "c"}, {"b"}),
         ({"a", "b"}, {"b"}), ({"a", "b"}, {"a"}), ({"a", "b"}, {"c"}),
         ({"b"}, {"c"}), ({"b", "c"}, {"a"}), ({"b", "c"}, {"c"}),
         ({"b", "c"}, {"b"}), ({"a", "b"}, {"a", "b"}), ({"a", "b"}, {"b", "c"}),
         ({"a", "b"}, {"a", "c"}), ({"a", "c"}, {"b", "c"}), ({"a", "c"}, {"a"}),
         ({"a", "c"}, {"c"}), ({"a", "c"}, {"a", "c"}), ({"b", "c"}, {"b", "c"}),
         ({"a", "b", "c"}, {"a"}), ({"a", "b", "c"}, {"b"}),
         ({"a", "b", "c"}, {"c"}), ({"a", "b", "c"}, {"a", "b"}),
         ({"a", "b", "c"}, {"b", "c"}), ({"a", "b", "c"}, {"a", "c"}),
         ({"a", "b", "c"}, {"a", "b", "c"})],
    )
    # generated by the chain a-b-c
    assert s.rows == chain(3).rows


def test_table_not_point_determined_rejected():
    with pytest.raises(TableNotPointDetermined) as exc:
        space_from_table(["a", "b", "c"], [({"a"}, {"b", "c"})])
    triple = exc.value.triple
    assert triple is not None and len(triple) == 3


# -- nearness ----------------------------------------------------------------

def test_near_matches_oracle_exhaustively():
    rng = random.Random(7)
    for _ in range(20):
        s = random_space(rng, rng.randint(1, 6))
        for e in range(s.full + 1):
            for f in range(s.full + 1):
                assert near(s, e, f) == oracle_near(s, e, f)


def test_near_empty_is_false():
    s = indiscrete_space(["a", "b"])
    assert not near(s, 0, s.full)
    assert not near(s, s.full, 0)


def test_near_overlap_and_far():
    s = discrete_space(["a", "b"])
    assert near(s, s.subset("a"), s.subset(["a", "b"]))
    c = chain(4)
    assert not near(c, c.subset("0"), c.subset(["2", "3"]))


def test_near_monotone_and_symmetric():
    rng = random.Random(11)
    for _ in range(200):
        s = random_space(rng, rng.randint(1, 7))
        e = rng.randrange(s.full + 1)
        f = rng.randrange(s.full + 1)
        bigger = e | rng.randrange(s.full + 1)
        assert near(s, e, f) == near(s, f, e)
        if near(s, e, f):
            assert near(s, bigger, f)


def test_mask_dimension_checked():
    s = discrete_space(["a"])
    with pytest.raises(SubsetDimensionMismatch):
        near(s, 0b10, 0b1)


# -- axioms ------------------------------------------------------------------

def test_discrete_is_ef():
    report = check_axioms(discrete_space(["a", "b", "c"]))
    assert report.classification == EF_LABEL


def test_indiscrete_is_ef():
    report = check_axioms(indiscrete_space(["a", "b", "c"]))
    assert report.classification == EF_LABEL


def test_eight_cycle_is_cech_only():
    report = check_axioms(cycle_space(8, "abcdefgh"))
    assert report.classification == CECH_LABEL
    assert report.holds("a") and report.holds("b") and report.holds("c")
    assert report.holds("e") and not report.holds("d")


def test_axiom_counterexample_reverifies():
    s = cycle_space(8, "abcdefgh")
    report = check_axioms(s, exhaustive=True)
    e, f = report.axioms["d"].counterexample
    assert not near(s, e, f)
    full = s.full
    for g in range(full + 1):
        assert near(s, e, g) or near(s, full ^ g, f)


def test_fast_path_agrees_with_exhaustive():
    rng = random.Random(3)
    spaces = all_small_spaces(3) + [random_space(rng, n) for n in (4, 5, 6) for _ in range(5)]
    for s in spaces:
        fast = check_axioms(s)
        slow = check_axioms(s, exhaustive=True)
        assert fast.classification == slow.classification
        for key in "abcde":
            assert fast.holds(key) == slow.holds(key)


def test_exhaustive_axioms_respect_cap():
    with pytest.raises(GroundSetTooLarge):
        check_axioms(discrete_space([str(i) for i in range(7)]), exhaustive=True, cap=6)


def test_ef_label_iff_equivalence_graph():
    # finite structure theorem: EF <=> reflexive-symmetric-transitive graph
    rng = random.Random(5)
    spaces = all_small_spaces(4) + [random_space(rng, rng.randint(5, 8)) for _ in range(100)]
    for s in spaces:
        assert (check_axioms(s).classification == EF_LABEL) == is_equivalence_graph(s)


def test_axiom_d_fast_path_matches_oracle():
    rng = random.Random(13)
    spaces = all_small_spaces(3) + [random_space(rng, rng.randint(4, 6)) for _ in range(30)]
    for s in spaces:
        holds, _ = oracle_axiom_d(s)
        assert check_axioms(s).holds("d") == holds


# -- neighborhoods and closure -----------------------------------------------

def test_figure2_base_neighborhood():
    s = figure2_base()
    assert is_delta_neighborhood(s, s.subset("d1"), s.subset(["d1", "d2", "d4"]))


def test_whole_space_is_own_neighborhood():
    s = cycle_space(8, "abcdefgh")
    assert is_delta_neighborhood(s, s.full, s.full)


def test_eight_cycle_small_neighborhood_fails():
    s = cycle_space(8, "abcdefgh")
    assert not is_delta_neighborhood(s, s.subset("a"), s.subset(["a", "b"]))


def test_lattice_check_trivial_and_figure2():
    d = discrete_space(["a", "b"])
    assert neighborhood_lattice_check(
        d, [(d.subset("a"), d.subset("a")), (d.subset("b"), d.subset("b"))]
    )
    s = figure2_base()
    assert neighborhood_lattice_check(
        s,
        [
            (s.subset("d1"), s.subset(["d1", "d2", "d4"])),
            (s.subset("d2"), s.subset(["d1", "d2", "d3"])),
        ],
    )
    assert neighborhood_lattice_check(s, [(s.subset("d1"), s.subset(["d1", "d2", "d4"]))])


def test_lattice_check_rejects_bad_premise():
    s = cycle_space(8, "abcdefgh")
    with pytest.raises(PreconditionUnmet):
        neighborhood_lattice_check(s, [(s.subset("a"), s.subset(["a", "b"]))])


def test_lattice_check_random_valid_instances():
    rng = random.Random(17)
    for s in [cycle_space(8, "abcdefgh"), figure2_base(), discrete_space(list("abcde"))]:
        for _ in range(1000):
            pairs = []
            for _ in range(rng.randint(1, 3)):
                e = rng.randrange(s.full + 1)
                f = closure(s, e) | rng.randrange(s.full + 1)
                pairs.append((e, f))
            assert neighborhood_lattice_check(s, pairs)


def test_closure_examples_and_oracle():
    d = discrete_space(["a", "b", "c"])
    for e in range(d.full + 1):
        assert closure(d, e) == e
    c = chain(4)
    assert closure(c, c.subset("1")) == c.subset(["0", "1", "2"])
    assert closure(c, 0) == 0
    rng = random.Random(23)
    for _ in range(20):
        s = random_space(rng, rng.randint(1, 7))
        for e in range(s.full + 1):
            assert closure(s, e) == oracle_closure(s, e)


def test_closure_is_delta_neighborhood_dual():
    rng = random.Random(29)
    for _ in range(30):
        s = random_space(rng, rng.randint(1, 6))
        for e in range(s.full + 1):
            cl = closure(s, e)
            for x in range(s.n):
                inside = bool(cl >> x & 1)
                assert inside == (
                    not is_delta_neighborhood(s, 1 << x, s.complement(e))
                )


def test_kuratowski_reports():
    assert kuratowski_check(discrete_space(["a", "b"])).all_hold
    assert kuratowski_check(indiscrete_space(["a", "b", "c"])).all_hold
    rep = kuratowski_check(cycle_space(8, "abcdefgh"))
    assert rep.empty_fixed and rep.extensive and rep.additive
    assert not rep.idempotent
    e = rep.idempotence_counterexample
    s = cycle_space(8, "abcdefgh")
    assert closure(s, closure(s, e)) != closure(s, e)


# -- derived spaces ----------------------------------------------------------

def test_product_of_discretes_is_discrete():
    p = product_space(discrete_space(["a", "b"]), discrete_space(["x", "y"]))
    assert p.n == 4
    assert check_axioms(p).classification == EF_LABEL
    assert p.rows == discrete_space(list(p.points)).rows


def test_product_box_rule():
    rng = random.Random(31)
    for _ in range(10):
        s = random_space(rng, 3, name="s")
        t = random_space(rng, 3, name="t")
        p = product_space(s, t)
        for e1 in range(1, s.full + 1):
            for e2 in range(1, t.full + 1):
                box1 = p.subset(
                    f"({a},{b})" for a in s.names(e1) for b in t.names(e2)
                )
                for f1 in range(1, s.full + 1):
                    for f2 in range(1, t.full + 1):
                        box2 = p.subset(
                            f"({a},{b})" for a in s.names(f1) for b in t.names(f2)
                        )
                        assert near(p, box1, box2) == (
                            near(s, e1, f1) and near(t, e2, f2)
                        )


def test_subspace_of_cycle_is_path():
    s = cycle_space(8, "abcdefgh")
    sub = subspace(s, s.subset(["a", "b", "c"]))
    assert sub.points == ("a", "b", "c")
    assert sub.rows == chain(3).rows


def test_subspace_empty_carrier_rejected():
    with pytest.raises(EmptyCarrier):
        subspace(discrete_space(["a"]), 0)


def test_coproduct_of_points_is_discrete():
    p = coproduct_space(discrete_space(["p"]), discrete_space(["q"]))
    assert p.rows == discrete_space(["p", "q"]).rows


def test_components():
    two = coproduct_space(discrete_space(["p"]), discrete_space(["q"]))
    assert graph_components(two) == [0b01, 0b10]
    assert graph_components(cycle_space(8, "abcdefgh")) == [cycle_space(8, "abcdefgh").full]
