"""Independent oracles and random generators used across the test suite.

The oracles here deliberately avoid the library's optimised code paths:
they spell out the defining quantifiers with plain loops so that library
results can be checked against something that cannot share their bugs.
"""

from __future__ import annotations

import random
from itertools import product as iproduct

from proxmc.core import Space, bits


def oracle_near(space: Space, e: int, f: int) -> bool:
    """Subset nearness by literal double loop over point pairs."""
    if e == 0 or f == 0:
        return False
    for i in bits(e):
        for j in bits(f):
            if space.rows[i] >> j & 1:
                return True
    return False


def oracle_closure(space: Space, e: int) -> int:
    """Closure as the set of points near ``e``, one membership at a time."""
    out = 0
    for x in range(space.n):
        if oracle_near(space, 1 << x, e):
            out |= 1 << x
    return out


def oracle_axiom_d(space: Space) -> tuple[bool, tuple[int, int] | None]:
    """Literal separation-axiom check: for every far pair search every
    candidate separator subset."""
    full = space.full
    for e in range(1, full + 1):
        for f in range(1, full + 1):
            if oracle_near(space, e, f):
                continue
            found = False
            for g in range(full + 1):
                if not oracle_near(space, e, g) and not oracle_near(
                    space, full ^ g, f
                ):
                    found = True
                    break
            if not found:
                return False, (e, f)
    return True, None


def oracle_pc(f) -> bool:
    """Proximal continuity over *all* near subset pairs, not just points."""
    dom, cod = f.domain, f.codomain
    full = dom.full
    for e in range(1, full + 1):
        for ff in range(1, full + 1):
            if oracle_near(dom, e, ff):
                ie = f.image_mask(e)
                jf = f.image_mask(ff)
                if not oracle_near(cod, ie, jf):
                    return False
    return True


def is_equivalence_graph(space: Space) -> bool:
    """Reflexive-symmetric graph transitivity by triple loop."""
    n = space.n
    for i in range(n):
        for j in range(n):
            if not space.rows[i] >> j & 1:
                continue
            for k in range(n):
                if space.rows[j] >> k & 1 and not space.rows[i] >> k & 1:
                    return False
    return True


def random_space(rng: random.Random, n: int, p_edge: float = 0.4, name: str = "p") -> Space:
    points = tuple(f"{name}{i}" for i in range(n))
    rows = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_edge:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Space(points, tuple(rows), "random")


def all_small_spaces(n: int, name: str = "q") -> list[Space]:
    """Every reflexive-symmetric relation on ``n`` labelled points."""
    points = tuple(f"{name}{i}" for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for choice in iproduct([0, 1], repeat=len(pairs)):
        rows = [1 << i for i in range(n)]
        for bit, (i, j) in zip(choice, pairs):
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        out.append(Space(points, tuple(rows), "enumerated"))
    return out


def space_stock() -> list[Space]:
    """Representatives of every isomorphism class on one to three points."""
    from proxmc.core import discrete_space, space_from_pairs

    return [
        discrete_space(["s0"]),
        discrete_space(["s0", "s1"]),
        space_from_pairs(["s0", "s1"], [("s0", "s1")]),
        discrete_space(["s0", "s1", "s2"]),
        space_from_pairs(["s0", "s1", "s2"], [("s0", "s1")]),
        space_from_pairs(["s0", "s1", "s2"], [("s0", "s1"), ("s1", "s2")]),
        space_from_pairs(
            ["s0", "s1", "s2"], [("s0", "s1"), ("s1", "s2"), ("s0", "s2")]
        ),
    ]
