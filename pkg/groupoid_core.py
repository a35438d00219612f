# -*- coding: utf-8 -*-
"""
Finite groupoids: tables, axiom validation, and structural subsets
(isotropy, bisections, fixed points, invariant sets, restrictions)
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from errors import InvalidGroupoidError, NotGroupBundleError, NotInvariantError
from groups import FiniteGroup

logger = logging.getLogger(__name__)

# Violation classes reported by validate()
VIOLATION_MALFORMED = "malformed"
VIOLATION_UNIT = "unit"
VIOLATION_IDENTITY = "identity"
VIOLATION_COMPOSITION = "composition"
VIOLATION_ASSOCIATIVITY = "associativity"
VIOLATION_INVERSE = "inverse"


@dataclass(frozen=True)
class FiniteGroupoid:
    """
    A finite groupoid on arrows 0..n-1.

    comp[a][b] is the index of a·b, or None when src(a) != rng(b).
    Labels are kept for serialization only; every algorithm works on indices.
    """

    labels: Tuple[str, ...]
    units: FrozenSet[int]
    src: Tuple[int, ...]
    rng: Tuple[int, ...]
    comp: Tuple[Tuple[Optional[int], ...], ...]
    inv: Tuple[int, ...]
    name: str = field(default="groupoid", compare=False)

    @classmethod
    def from_tables(cls, labels: Sequence[str], units: Iterable[int], src: Sequence[int],
                    rng: Sequence[int], comp: Mapping[Tuple[int, int], int],
                    inv: Sequence[int], name: str = "groupoid") -> "FiniteGroupoid":
        """Build the dense table from a sparse {(a, b): ab} mapping"""
        n = len(labels)
        dense = [[None] * n for _ in range(n)]
        for (a, b), c in comp.items():
            dense[a][b] = c
        return cls(tuple(labels), frozenset(units), tuple(src), tuple(rng),
                   tuple(tuple(row) for row in dense), tuple(inv), name)

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @property
    def unit_list(self) -> List[int]:
        return sorted(self.units)

    def compose(self, a: int, b: int) -> Optional[int]:
        return self.comp[a][b]

    def composable(self, a: int, b: int) -> bool:
        return self.src[a] == self.rng[b]

    def index(self, label: str) -> int:
        return self._label_index[label]

    @property
    def _label_index(self) -> Dict[str, int]:
        cached = self.__dict__.get("_label_cache")
        if cached is None:
            cached = {label: i for i, label in enumerate(self.labels)}
            object.__setattr__(self, "_label_cache", cached)
        return cached

    def subset(self, members: Iterable[int]) -> "ElementSubset":
        return ElementSubset(self, frozenset(members))

    def subset_from_labels(self, labels: Iterable[str]) -> "ElementSubset":
        return ElementSubset(self, frozenset(self.index(label) for label in labels))

    def __repr__(self):
        return f"FiniteGroupoid({self.name}: {len(self)} arrows, {len(self.units)} units)"


@dataclass(frozen=True)
class ElementSubset:
    """A subset of a groupoid's arrows"""

    host: FiniteGroupoid = field(compare=False, repr=False)
    subset: FrozenSet[int]

    def __contains__(self, a):
        return a in self.subset

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.subset))

    def __len__(self):
        return len(self.subset)

    def labels(self) -> List[str]:
        return [self.host.labels[a] for a in sorted(self.subset)]


# =============================================================================
#                           VALIDATION
# =============================================================================


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return sorted({v.kind for v in self.violations})

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def to_dicts(self) -> List[Dict]:
        return [{"kind": v.kind, "message": v.message, "witness": list(v.witness)}
                for v in self.violations]


def _malformed(G: FiniteGroupoid) -> List[Violation]:
    n = len(G)
    found = []

    def bad(message, *witness):
        found.append(Violation(VIOLATION_MALFORMED, message, tuple(str(w) for w in witness)))

    for name, table in (("src", G.src), ("rng", G.rng), ("inv", G.inv)):
        if len(table) != n:
            bad(f"{name} has {len(table)} entries for {n} arrows", name)
            continue
        for a, value in enumerate(table):
            if not 0 <= value < n:
                bad(f"{name} of arrow {a} out of range", name, a)
    for x in G.units:
        if not 0 <= x < n:
            bad("unit index out of range", x)
    if len(G.comp) != n or any(len(row) != n for row in G.comp):
        bad("composition table is not n x n", "comp")
    if found:
        return found

    for a in G.src + G.rng:
        if a not in G.units:
            bad(f"source/range value {G.labels[a]} is not a unit", G.labels[a])
    for a, b in product(G.elements, repeat=2):
        c = G.comp[a][b]
        if c is not None and not 0 <= c < n:
            bad("composition value out of range", G.labels[a], G.labels[b])
        elif c is not None and not G.composable(a, b):
            bad("composition defined on non-composable pair", G.labels[a], G.labels[b])
    return found


def validate(G: FiniteGroupoid) -> ValidationReport:
    """Exhaustively check the five axiom families; empty report means valid"""
    malformed = _malformed(G)
    if malformed:
        return ValidationReport(tuple(malformed))

    violations = []
    lab = G.labels

    for x in G.unit_list:
        if G.src[x] != x or G.rng[x] != x:
            violations.append(Violation(VIOLATION_UNIT, f"unit {lab[x]} is not its own source and range", (lab[x],)))

    for a in G.elements:
        if G.comp[a][G.src[a]] != a or G.comp[G.rng[a]][a] != a:
            violations.append(Violation(VIOLATION_IDENTITY, f"units do not act as identities on {lab[a]}", (lab[a],)))

    composable_pairs = [(a, b) for a, b in product(G.elements, repeat=2) if G.composable(a, b)]
    for a, b in composable_pairs:
        c = G.comp[a][b]
        if c is None:
            violations.append(Violation(VIOLATION_COMPOSITION, f"composable pair ({lab[a]}, {lab[b]}) has no product",
                                        (lab[a], lab[b])))
        elif G.src[c] != G.src[b] or G.rng[c] != G.rng[a]:
            violations.append(Violation(VIOLATION_COMPOSITION, f"product of ({lab[a]}, {lab[b]}) has wrong source or range",
                                        (lab[a], lab[b])))

    if not any(v.kind == VIOLATION_COMPOSITION for v in violations):
        for a, b in composable_pairs:
            ab = G.comp[a][b]
            for c in G.elements:
                if G.rng[c] != G.src[b]:
                    continue
                if G.comp[ab][c] != G.comp[a][G.comp[b][c]]:
                    violations.append(Violation(VIOLATION_ASSOCIATIVITY, "associativity fails",
                                                (lab[a], lab[b], lab[c])))

    for g in G.elements:
        gi = G.inv[g]
        if G.comp[gi][g] != G.src[g] or G.comp[g][gi] != G.rng[g]:
            violations.append(Violation(VIOLATION_INVERSE, f"inverse law fails at {lab[g]}", (lab[g],)))

    if violations:
        logger.debug("%s: %d axiom violations", G.name, len(violations))
    return ValidationReport(tuple(violations))


def require_valid(G: FiniteGroupoid):
    report = validate(G)
    if not report.ok:
        first = report.first()
        raise InvalidGroupoidError(f"{G.name}: {first.message}", witness=list(first.witness))


# =============================================================================
#                           STRUCTURAL SUBSETS
# =============================================================================


def isotropy(G: FiniteGroupoid) -> ElementSubset:
    """Iso(G) = arrows with equal source and range"""
    return G.subset(a for a in G.elements if G.src[a] == G.rng[a])


def compose_sets(G: FiniteGroupoid, U: ElementSubset, V: ElementSubset) -> ElementSubset:
    """UV = {ab | a in U, b in V, src(a) = rng(b)}"""
    return G.subset(G.comp[a][b] for a in U.subset for b in V.subset if G.composable(a, b))


def is_bisection(G: FiniteGroupoid, U: ElementSubset) -> bool:
    """Source and range are both injective on U"""
    members = list(U.subset)
    return (len({G.src[a] for a in members}) == len(members)
            and len({G.rng[a] for a in members}) == len(members))


def fixed_points(G: FiniteGroupoid) -> ElementSubset:
    """Units x such that every arrow leaving x returns to x"""
    moved = {G.src[a] for a in G.elements if G.src[a] != G.rng[a]}
    return G.subset(x for x in G.units if x not in moved)


def check_invariant(G: FiniteGroupoid, F: Iterable[int]) -> Tuple[bool, Optional[int]]:
    """(True, None) when F is invariant, else (False, an arrow leaving F)"""
    points = set(F)
    for a in G.elements:
        if G.src[a] in points and G.rng[a] not in points:
            return False, a
    return True, None


def induced_subgroupoid(G: FiniteGroupoid, arrows: Iterable[int],
                        name: Optional[str] = None) -> Tuple[FiniteGroupoid, Tuple[int, ...]]:
    """
    Groupoid on a subset of arrows closed under src, rng, comp and inv.
    Returns the subgroupoid and its inclusion map (new index -> old index).
    """
    inclusion = tuple(sorted(set(arrows)))
    position = {old: new for new, old in enumerate(inclusion)}
    comp = {}
    for a, b in product(inclusion, repeat=2):
        if G.composable(a, b):
            comp[(position[a], position[b])] = position[G.comp[a][b]]
    sub = FiniteGroupoid.from_tables(
        [G.labels[a] for a in inclusion],
        [position[a] for a in inclusion if a in G.units],
        [position[G.src[a]] for a in inclusion],
        [position[G.rng[a]] for a in inclusion],
        comp,
        [position[G.inv[a]] for a in inclusion],
        name or G.name,
    )
    return sub, inclusion


def restriction_arrows(G: FiniteGroupoid, F: Iterable[int]) -> List[int]:
    points = set(F)
    stray = sorted(points - G.units)
    if stray:
        raise NotInvariantError(f"{G.labels[stray[0]]} is not a unit", witness=G.labels[stray[0]])
    ok, witness = check_invariant(G, points)
    if not ok:
        raise NotInvariantError(
            f"unit set is not invariant: {G.labels[witness]} leaves it", witness=G.labels[witness])
    return [a for a in G.elements if G.src[a] in points]


def restrict(G: FiniteGroupoid, F: Iterable[int]) -> FiniteGroupoid:
    """G_F, the groupoid of arrows with source in the invariant unit set F"""
    points = set(F.subset if isinstance(F, ElementSubset) else F)
    arrows = restriction_arrows(G, points)
    sub, _ = induced_subgroupoid(G, arrows, f"{G.name}|F")
    return sub


def is_effective(G: FiniteGroupoid) -> bool:
    """In the discrete model Iso(G)° = Iso(G), so effective means trivial isotropy"""
    return isotropy(G).subset == G.units


def is_group_bundle(G: FiniteGroupoid) -> bool:
    return all(G.src[a] == G.rng[a] for a in G.elements)


def require_group_bundle(G: FiniteGroupoid):
    for a in G.elements:
        if G.src[a] != G.rng[a]:
            raise NotGroupBundleError(f"{G.name} is not a group bundle", witness=G.labels[a])


# =============================================================================
#                           ORBITS AND FIBERS
# =============================================================================


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)


def orbits(G: FiniteGroupoid) -> List[List[int]]:
    """Connected components of the unit space, each sorted, ordered by smallest unit"""
    uf = UnionFind(G.units)
    for a in G.elements:
        uf.union(G.src[a], G.rng[a])
    groups: Dict[int, List[int]] = {}
    for x in G.unit_list:
        groups.setdefault(uf.find(x), []).append(x)
    return [groups[root] for root in sorted(groups)]


def fiber_arrows(G: FiniteGroupoid, x: int) -> List[int]:
    return [a for a in G.elements if G.src[a] == x and G.rng[a] == x]


def fiber_group(G: FiniteGroupoid, x: int) -> Tuple[FiniteGroup, Tuple[int, ...]]:
    """Isotropy group G_x as a FiniteGroup, with the map group index -> arrow"""
    arrows = tuple(fiber_arrows(G, x))
    position = {a: i for i, a in enumerate(arrows)}

    def op(i, j):
        return position[G.comp[arrows[i]][arrows[j]]]

    group = FiniteGroup.from_operation([G.labels[a] for a in arrows], op, position[x], f"{G.name}_{G.labels[x]}")
    return group, arrows


def connecting_arrow(G: FiniteGroupoid, x: int, y: int) -> Optional[int]:
    """Some arrow x -> y, or None"""
    for a in G.elements:
        if G.src[a] == x and G.rng[a] == y:
            return a
    return None


# =============================================================================
#                           CONSTRUCTIONS
# =============================================================================


def empty_groupoid(name: str = "empty") -> FiniteGroupoid:
    return FiniteGroupoid((), frozenset(), (), (), (), (), name)


def disjoint_union(*parts: FiniteGroupoid, name: str = "union") -> FiniteGroupoid:
    """Disjoint union; labels are prefixed with the part number only when they collide"""
    all_labels = [label for part in parts for label in part.labels]
    prefix = len(set(all_labels)) != len(all_labels)
    labels, units, src, rng, inv = [], [], [], [], []
    comp = {}
    offset = 0
    for k, part in enumerate(parts):
        labels.extend(f"{k}:{label}" if prefix else label for label in part.labels)
        units.extend(x + offset for x in part.units)
        src.extend(x + offset for x in part.src)
        rng.extend(x + offset for x in part.rng)
        inv.extend(x + offset for x in part.inv)
        for a, b in product(part.elements, repeat=2):
            c = part.comp[a][b]
            if c is not None:
                comp[(a + offset, b + offset)] = c + offset
        offset += len(part)
    return FiniteGroupoid.from_tables(labels, units, src, rng, comp, inv, name)
