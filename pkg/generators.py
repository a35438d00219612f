# -*- coding: utf-8 -*-
"""
Groupoid generators: transformation groupoids of finite group actions,
group bundles, the named example groupoids, and seeded random corpora
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Mapping, Sequence, Tuple

from constants import DEFAULT_SIZE_BUDGET, MAX_BUNDLE_POINTS, MAX_LIBRARY_ORDER
from errors import InvalidGroupoidError, WorkbenchError
from groupoid_core import FiniteGroupoid, disjoint_union, empty_groupoid
from groups import (
    LIBRARY,
    FiniteGroup,
    abelian_groups_up_to,
    alternating_group_3,
    klein_group,
    symmetric_group_3,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupAction:
    """
    A finite group acting on labelled points.
    table[g][x] is the index of g·x.
    """

    group: FiniteGroup
    points: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    name: str = "action"

    @classmethod
    def from_function(cls, group: FiniteGroup, points: Sequence[str],
                      act: Callable[[int, int], int], name: str = "action") -> "GroupAction":
        table = tuple(tuple(act(g, x) for x in range(len(points))) for g in range(len(group)))
        return cls(group, tuple(points), table, name)

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def check(self) -> List[str]:
        """Violated action laws; empty for a valid action"""
        group, m = self.group, len(self.points)
        problems = group.check_axioms()
        if problems:
            return [f"group: {p}" for p in problems]
        if len(self.table) != len(group) or any(len(row) != m for row in self.table):
            return ["action table has the wrong shape"]
        if any(not 0 <= y < m for row in self.table for y in row):
            return ["action table entry out of range"]
        for x in range(m):
            if self.table[group.identity][x] != x:
                problems.append(f"identity moves {self.points[x]}")
        for g, h, x in product(range(len(group)), range(len(group)), range(m)):
            if self.table[g][self.table[h][x]] != self.table[group.mult(g, h)][x]:
                problems.append(
                    f"compatibility fails at ({group.labels[g]}, {group.labels[h]}, {self.points[x]})")
                break
        return problems

    def require_valid(self):
        problems = self.check()
        if problems:
            raise InvalidGroupoidError(f"{self.name}: {problems[0]}", witness=problems)

    def global_fixed_points(self) -> FrozenSet[int]:
        return frozenset(x for x in range(len(self.points))
                         if all(self.table[g][x] == x for g in range(len(self.group))))


# =============================================================================
#                           CONSTRUCTIONS
# =============================================================================


def transformation_groupoid(action: GroupAction) -> FiniteGroupoid:
    """
    Γ ⋉ X with arrows (g, x), s(g, x) = x, r(g, x) = g·x and
    (g1, g2·x)(g2, x) = (g1 g2, x). Identity arrows come first and carry
    the point labels; the rest are labelled "(g,x)".
    """
    action.require_valid()
    group, m = action.group, len(action.points)
    order = [group.identity] + [g for g in range(len(group)) if g != group.identity]
    arrows = [(g, x) for g in order for x in range(m)]
    position = {arrow: i for i, arrow in enumerate(arrows)}

    labels = [action.points[x] if g == group.identity else f"({group.labels[g]},{action.points[x]})"
              for g, x in arrows]
    units = [position[(group.identity, x)] for x in range(m)]
    src = [position[(group.identity, x)] for _, x in arrows]
    rng = [position[(group.identity, action.act(g, x))] for g, x in arrows]
    inv = [position[(group.inverse(g), action.act(g, x))] for g, x in arrows]
    comp = {}
    for (g1, y), (g2, x) in product(arrows, repeat=2):
        if y == action.act(g2, x):
            comp[(position[(g1, y)], position[(g2, x)])] = position[(group.mult(g1, g2), x)]
    G = FiniteGroupoid.from_tables(labels, units, src, rng, comp, inv, f"{group.name}⋉{action.name}")
    logger.debug("%s: %d arrows over %d points", G.name, len(G), m)
    return G


def one_object(group: FiniteGroup) -> FiniteGroupoid:
    """A group as a groupoid with a single unit"""
    problems = group.check_axioms()
    if problems:
        raise InvalidGroupoidError(f"{group.name}: {problems[0]}", witness=problems)
    e = group.identity
    n = len(group)
    comp = {(a, b): group.mult(a, b) for a in range(n) for b in range(n)}
    return FiniteGroupoid.from_tables(group.labels, [e], [e] * n, [e] * n, comp,
                                      [group.inverse(a) for a in range(n)], group.name)


def group_bundle(fibers: Mapping[str, FiniteGroup], name: str = "bundle") -> FiniteGroupoid:
    """
    Disjoint union of one-object groupoids, one per named unit.
    The identity of each fiber carries the unit name, other elements "unit:label".
    """
    if not fibers:
        return empty_groupoid(name)
    parts = []
    for point, group in fibers.items():
        labels = tuple(point if a == group.identity else f"{point}:{label}"
                       for a, label in enumerate(group.labels))
        parts.append(one_object(FiniteGroup(labels, group.table, group.identity, group.name)))
    return disjoint_union(*parts, name=name)


def coset_action(group: FiniteGroup, subgroup) -> GroupAction:
    """Left multiplication on the left cosets gK, each named by its smallest representative"""
    cosets = group.cosets(subgroup)
    class_of = {g: i for i, coset in enumerate(cosets) for g in coset}
    points = [f"{group.labels[min(c)]}K" for c in cosets]
    reps = [min(c) for c in cosets]
    return GroupAction.from_function(group, points, lambda g, x: class_of[group.mult(g, reps[x])],
                                     f"{group.name}/K")


# =============================================================================
#                           NAMED GROUPOIDS
# =============================================================================


def trivial_groupoid(n: int) -> FiniteGroupoid:
    """n units and nothing else"""
    comp = {(x, x): x for x in range(n)}
    return FiniteGroupoid.from_tables([f"x{i}" for i in range(n)], range(n), range(n), range(n),
                                      comp, range(n), f"trivial({n})")


def pair_groupoid(n: int) -> FiniteGroupoid:
    """X × X with (z, y)(y, x) = (z, x); units (x, x) come first"""
    arrows = [(x, x) for x in range(n)] + [(y, x) for y in range(n) for x in range(n) if x != y]
    position = {arrow: i for i, arrow in enumerate(arrows)}
    labels = [f"x{x}" if y == x else f"(x{y},x{x})" for y, x in arrows]
    comp = {}
    for (z, y1), (y2, x) in product(arrows, repeat=2):
        if y1 == y2:
            comp[(position[(z, y1)], position[(y2, x)])] = position[(z, x)]
    return FiniteGroupoid.from_tables(
        labels, range(n),
        [position[(x, x)] for _, x in arrows],
        [position[(y, y)] for y, _ in arrows],
        comp,
        [position[(x, y)] for y, x in arrows],
        f"pair({n})",
    )


KLEIN_CROSS_POINTS = ("c", "x+", "x-", "y+", "y-")


def klein_cross() -> FiniteGroupoid:
    """The Klein group on a five-point cross; s flips the x arm, t flips the y arm"""
    group = klein_group()
    flips = {1: {1: 2, 2: 1}, 2: {3: 4, 4: 3}}  # bit -> point swap

    def act(g, x):
        for bit, swap in flips.items():
            if g & bit:
                x = swap.get(x, x)
        return x

    action = GroupAction.from_function(group, KLEIN_CROSS_POINTS, act, "cross")
    G = transformation_groupoid(action)
    return FiniteGroupoid(G.labels, G.units, G.src, G.rng, G.comp, G.inv, "klein-cross")


def s3_a3_bundle() -> FiniteGroupoid:
    """Two-point bundle with fibers S3 at p and A3 at q"""
    return group_bundle({"p": symmetric_group_3(), "q": alternating_group_3()}, "s3+a3")


# =============================================================================
#                           RANDOM INSTANCES
# =============================================================================


@lru_cache(maxsize=1)
def _action_candidates() -> Tuple[Tuple[str, FrozenSet[int], int], ...]:
    """(library name, subgroup, arrow count) for every coset action in the library"""
    found = []
    for name in sorted(LIBRARY):
        group = LIBRARY[name]()
        if len(group) > MAX_LIBRARY_ORDER:
            continue
        for subgroup in group.subgroups:
            arrows = len(group) * (len(group) // len(subgroup))
            found.append((name, subgroup, arrows))
    return tuple(found)


def random_groupoid(seed: int, size_budget: int = DEFAULT_SIZE_BUDGET) -> FiniteGroupoid:
    """
    Seed-deterministic disjoint union of coset-action groupoids of library groups,
    with at most size_budget arrows in total.
    """
    if size_budget < 1:
        raise WorkbenchError("size budget must be at least 1", witness=size_budget)
    rng = random.Random(seed)
    parts = []
    remaining = size_budget
    while remaining > 0:
        fitting = [c for c in _action_candidates() if c[2] <= remaining]
        name, subgroup, arrows = rng.choice(fitting)
        parts.append(transformation_groupoid(coset_action(LIBRARY[name](), subgroup)))
        remaining -= arrows
        if rng.random() < 0.35:
            break
    G = disjoint_union(*parts, name=f"random-{seed}")
    logger.debug("%s: %d parts, %d arrows", G.name, len(parts), len(G))
    return G


def random_abelian_bundle(seed: int, max_points: int = MAX_BUNDLE_POINTS,
                          max_order: int = MAX_LIBRARY_ORDER) -> FiniteGroupoid:
    """Group bundle over 1..max_points units with random abelian fibers"""
    rng = random.Random(seed)
    shapes = abelian_groups_up_to(max_order)
    points = rng.randint(1, max_points)
    fibers = {f"b{i}": rng.choice(shapes) for i in range(points)}
    return group_bundle(fibers, f"abelian-bundle-{seed}")


def corpus(seed: int, count: int, size_budget: int = DEFAULT_SIZE_BUDGET) -> List[FiniteGroupoid]:
    """count random groupoids from consecutive seeds"""
    return [random_groupoid(seed + i, size_budget) for i in range(count)]


# =============================================================================
#                           REGISTRY
# =============================================================================


def _library_entry(name: str) -> Callable[..., FiniteGroupoid]:
    return lambda **_: one_object(LIBRARY[name]())


NAMED_GENERATORS: Dict[str, Callable[..., FiniteGroupoid]] = {
    "trivial": lambda size=2, **_: trivial_groupoid(size),
    "pair": lambda size=2, **_: pair_groupoid(size),
    "klein-cross": lambda **_: klein_cross(),
    "s3-a3": lambda **_: s3_a3_bundle(),
    "random": lambda seed=0, budget=DEFAULT_SIZE_BUDGET, **_: random_groupoid(seed, budget),
    "abelian-bundle": lambda seed=0, size=MAX_BUNDLE_POINTS, **_: random_abelian_bundle(seed, size),
}
for _name in sorted(set(LIBRARY) - set(NAMED_GENERATORS)):
    NAMED_GENERATORS[_name] = _library_entry(_name)


def make_named(name: str, **options) -> FiniteGroupoid:
    if name not in NAMED_GENERATORS:
        raise WorkbenchError(f"unknown generator {name!r}", witness=sorted(NAMED_GENERATORS))
    return NAMED_GENERATORS[name](**options)
