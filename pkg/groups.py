# -*- coding: utf-8 -*-
"""
Finite groups as Cayley tables, plus the built-in group library
(cyclic groups, Klein group, S3, A3, D4, Q8, direct products)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from constants import IDENTITY_LABEL
from errors import NotAbelianError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group given by element labels and a multiplication table on indices.
    table[a][b] is the index of the product a·b.
    """

    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    name: str = "group"

    # =========================================================================
    #                         CONSTRUCTION
    # =========================================================================

    @classmethod
    def from_operation(cls, labels: Sequence[str], op: Callable[[int, int], int],
                       identity: int = 0, name: str = "group") -> "FiniteGroup":
        """Build the table by evaluating op on every index pair"""
        n = len(labels)
        table = tuple(tuple(op(a, b) for b in range(n)) for a in range(n))
        return cls(tuple(labels), table, identity, name)

    @classmethod
    def from_permutations(cls, named: Dict[str, Permutation], name: str = "group") -> "FiniteGroup":
        """Build a permutation group from labelled permutations closed under product"""
        labels = list(named)
        lookup = {tuple(p.array_form): i for i, p in enumerate(named.values())}
        perms = list(named.values())
        identity = next(i for i, p in enumerate(perms) if p.is_Identity)

        def op(a, b):
            return lookup[tuple((perms[a] * perms[b]).array_form)]

        return cls.from_operation(labels, op, identity, name)

    # =========================================================================
    #                         BASIC OPERATIONS
    # =========================================================================

    def __len__(self):
        return len(self.labels)

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        result = []
        for a in range(len(self)):
            result.append(next(b for b in range(len(self)) if self.table[a][b] == self.identity))
        return tuple(result)

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def power(self, a: int, k: int) -> int:
        result = self.identity
        base = a if k >= 0 else self.inverse(a)
        for _ in range(abs(k)):
            result = self.mult(result, base)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult(x, a)
            k += 1
        return k

    def commutator(self, a: int, b: int) -> int:
        return self.mult(self.mult(a, b), self.mult(self.inverse(a), self.inverse(b)))

    # =========================================================================
    #                         AXIOMS
    # =========================================================================

    def check_axioms(self) -> List[str]:
        """Return a list of violated group axioms (empty when the table is a group)"""
        n = len(self)
        problems = []
        if len(self.table) != n or any(len(row) != n for row in self.table):
            return ["table is not square"]
        if any(not 0 <= c < n for row in self.table for c in row):
            return ["table entry out of range"]
        if not 0 <= self.identity < n:
            return ["identity out of range"]
        for a in range(n):
            if self.table[self.identity][a] != a or self.table[a][self.identity] != a:
                problems.append(f"identity law fails at {self.labels[a]}")
            if self.identity not in self.table[a]:
                problems.append(f"{self.labels[a]} has no inverse")
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                problems.append(
                    f"associativity fails at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")
                break
        return problems

    def non_commuting_pair(self) -> Optional[Tuple[int, int]]:
        for a in range(len(self)):
            for b in range(a + 1, len(self)):
                if self.table[a][b] != self.table[b][a]:
                    return a, b
        return None

    def is_abelian(self) -> bool:
        return self.non_commuting_pair() is None

    def require_abelian(self):
        pair = self.non_commuting_pair()
        if pair is not None:
            a, b = pair
            raise NotAbelianError(f"{self.name} is not abelian",
                                  witness=[self.labels[a], self.labels[b]])

    # =========================================================================
    #                         SUBGROUPS
    # =========================================================================

    def closure(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given elements"""
        found = {self.identity}
        frontier = list(set(generators))
        gens = list(frontier)
        found.update(frontier)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mult(x, g)
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    @cached_property
    def subgroups(self) -> Tuple[FrozenSet[int], ...]:
        """All subgroups, obtained as joins of cyclic subgroups"""
        cyclic = {self.closure([a]) for a in range(len(self))}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            nxt = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h:
                        continue
                    joined = self.closure(h | c)
                    if joined not in found:
                        found.add(joined)
                        nxt.add(joined)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if self.identity not in s:
            return False
        return all(self.mult(a, self.inverse(b)) in s for a in s for b in s)

    def is_normal_subgroup(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if not self.is_subgroup(s):
            return False
        return all(self.mult(self.mult(g, h), self.inverse(g)) in s for g in range(len(self)) for h in s)

    @cached_property
    def normal_subgroups(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(s for s in self.subgroups if self.is_normal_subgroup(s))

    @cached_property
    def commutator_subgroup(self) -> FrozenSet[int]:
        n = len(self)
        return self.closure(self.commutator(a, b) for a in range(n) for b in range(n))

    def cosets(self, subgroup: Iterable[int]) -> List[FrozenSet[int]]:
        """Left cosets gK, ordered by smallest representative"""
        k = frozenset(subgroup)
        seen = set()
        result = []
        for g in range(len(self)):
            if g in seen:
                continue
            coset = frozenset(self.mult(g, h) for h in k)
            seen |= coset
            result.append(coset)
        return result

    def quotient(self, normal: Iterable[int]) -> Tuple["FiniteGroup", Tuple[int, ...]]:
        """Quotient group by a normal subgroup with the class map on indices"""
        cosets = self.cosets(normal)
        class_of = {}
        for i, coset in enumerate(cosets):
            for g in coset:
                class_of[g] = i
        reps = [min(c) for c in cosets]
        labels = [self.labels[r] for r in reps]

        def op(i, j):
            return class_of[self.mult(reps[i], reps[j])]

        group = FiniteGroup.from_operation(labels, op, class_of[self.identity], f"{self.name}/N")
        return group, tuple(class_of[g] for g in range(len(self)))


# =============================================================================
#                           GROUP LIBRARY
# =============================================================================


def _power_label(symbol: str, k: int) -> str:
    if k == 0:
        return IDENTITY_LABEL
    return symbol if k == 1 else f"{symbol}^{k}"


def cyclic_group(n: int, symbol: str = "a") -> FiniteGroup:
    """Z/n with labels e, a, a^2, ..."""
    labels = [_power_label(symbol, k) for k in range(n)]
    return FiniteGroup.from_operation(labels, lambda a, b: (a + b) % n, 0, f"Z/{n}")


def klein_group() -> FiniteGroup:
    """Z/2 x Z/2 as {e, s, t, st}"""
    labels = ["e", "s", "t", "st"]
    # bit 0 = s, bit 1 = t
    return FiniteGroup.from_operation(labels, lambda a, b: a ^ b, 0, "K")


def symmetric_group_3() -> FiniteGroup:
    """S3 = <s, t | s^3 = t^2 = e, st = ts^2> as {e, s, s^2, t, ts, ts^2}"""
    s = Permutation([1, 2, 0])
    t = Permutation([0, 2, 1])
    e = Permutation([0, 1, 2])
    named = {
        "e": e,
        "s": s,
        "s^2": s * s,
        "t": t,
        "ts": t * s,
        "ts^2": t * s * s,
    }
    return FiniteGroup.from_permutations(named, "S3")


def alternating_group_3() -> FiniteGroup:
    """A3 = {e, s, s^2}, the even permutations of S3"""
    group = cyclic_group(3, "s")
    return FiniteGroup(group.labels, group.table, group.identity, "A3")


def dihedral_group_4() -> FiniteGroup:
    """Symmetries of the square, {e, r, r^2, r^3, f, fr, fr^2, fr^3}"""
    r = Permutation([1, 2, 3, 0])
    f = Permutation([0, 3, 2, 1])
    named = {}
    for k in range(4):
        named[_power_label("r", k)] = r ** k
    for k in range(4):
        named["f" if k == 0 else f"f{_power_label('r', k)}"] = f * r ** k
    return FiniteGroup.from_permutations(named, "D4")


_QUATERNION_UNITS = ["1", "i", "j", "k"]
# unit products: (sign, unit)
_QUATERNION_TABLE = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion_group() -> FiniteGroup:
    """Q8 as {e, -e, i, -i, j, -j, k, -k}"""
    elements = [(sign, unit) for unit in _QUATERNION_UNITS for sign in (1, -1)]
    labels = []
    for sign, unit in elements:
        base = IDENTITY_LABEL if unit == "1" else unit
        labels.append(base if sign == 1 else f"-{base}")
    position = {el: i for i, el in enumerate(elements)}

    def op(a, b):
        sa, ua = elements[a]
        sb, ub = elements[b]
        sign, unit = _QUATERNION_TABLE[(ua, ub)]
        return position[(sa * sb * sign, unit)]

    return FiniteGroup.from_operation(labels, op, 0, "Q8")


def trivial_group() -> FiniteGroup:
    return FiniteGroup((IDENTITY_LABEL,), ((0,),), 0, "1")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product with labels (a,b,...) and componentwise multiplication"""
    if not groups:
        return trivial_group()
    tuples = list(product(*(range(len(g)) for g in groups)))
    position = {t: i for i, t in enumerate(tuples)}
    labels = ["(" + ",".join(g.labels[x] for g, x in zip(groups, t)) + ")" for t in tuples]

    def op(a, b):
        return position[tuple(g.mult(x, y) for g, x, y in zip(groups, tuples[a], tuples[b]))]

    identity = position[tuple(g.identity for g in groups)]
    name = " x ".join(g.name for g in groups)
    return FiniteGroup.from_operation(labels, op, identity, name)


def cyclic_decompositions(max_order: int) -> List[Tuple[int, ...]]:
    """All non-increasing tuples of cyclic orders >= 2 with product <= max_order"""
    result = [()]

    def extend(prefix, largest, remaining):
        for n in range(2, min(largest, remaining) + 1):
            t = prefix + (n,)
            result.append(t)
            extend(t, n, remaining // n)

    extend((), max_order, max_order)
    return result


def abelian_groups_up_to(max_order: int) -> List[FiniteGroup]:
    """Products of cyclic groups of every shape up to max_order (presentations repeat)"""
    groups = []
    for orders in cyclic_decompositions(max_order):
        groups.append(direct_product(*(cyclic_group(n) for n in orders)))
    logger.debug("abelian sweep: %d groups up to order %d", len(groups), max_order)
    return groups


LIBRARY: Dict[str, Callable[[], FiniteGroup]] = {
    "trivial": trivial_group,
    "klein": klein_group,
    "s3": symmetric_group_3,
    "a3": alternating_group_3,
    "d4": dihedral_group_4,
    "q8": quaternion_group,
}
for _n in range(2, 13):
    LIBRARY[f"z{_n}"] = (lambda n: lambda: cyclic_group(n))(_n)
