# -*- coding: utf-8 -*-
"""
Normal subgroupoids, quotient groupoids G/H with their class map,
the commutator subgroupoid of a group bundle and the abelianization G^ab
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Dict, List, Optional, Tuple, Union

from constants import MAX_NORMAL_SUBGROUPOIDS
from errors import NotAbelianError, NotNormalError
from groupoid_core import (
    ElementSubset,
    FiniteGroupoid,
    connecting_arrow,
    fiber_arrows,
    fiber_group,
    fixed_points,
    induced_subgroupoid,
    isotropy,
    orbits,
    require_group_bundle,
    restriction_arrows,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalSubgroupoid:
    """A subset H with G(0) ⊆ H ⊆ Iso(G), closed, and stable under conjugation"""

    host: FiniteGroupoid = field(compare=False, repr=False)
    carrier: ElementSubset

    def __contains__(self, a):
        return a in self.carrier

    def __len__(self):
        return len(self.carrier)

    @property
    def is_trivial(self) -> bool:
        return self.carrier.subset == self.host.units


@dataclass(frozen=True)
class QuotientResult:
    """
    G/H together with the class map q: host arrows -> quotient arrows.
    provenance, when set, maps host arrows into a larger groupoid (G_fix ↪ G).
    """

    host: FiniteGroupoid = field(repr=False)
    quotient: FiniteGroupoid
    class_map: Tuple[int, ...]
    provenance: Optional[Tuple[int, ...]] = None

    def fibers(self) -> List[List[int]]:
        result = [[] for _ in self.quotient.elements]
        for a, q in enumerate(self.class_map):
            result[q].append(a)
        return result

    def image(self, subset) -> ElementSubset:
        members = subset.carrier.subset if isinstance(subset, NormalSubgroupoid) else subset
        members = members.subset if isinstance(members, ElementSubset) else members
        return self.quotient.subset(self.class_map[a] for a in members)

    def preimage_of_units(self) -> ElementSubset:
        return self.host.subset(a for a, q in enumerate(self.class_map) if q in self.quotient.units)


# =============================================================================
#                           NORMALITY
# =============================================================================


def check_normal(G: FiniteGroupoid, H) -> Tuple[bool, str, Optional[Tuple[str, ...]]]:
    """
    Test the normal-subgroupoid conditions.
    Returns (ok, message, witness labels); witness is None on success.
    """
    members = _members(H)
    lab = G.labels
    stray = [a for a in members if not 0 <= a < len(G)]
    if stray:
        return False, "subset contains unknown arrows", tuple(str(a) for a in stray)
    missing = sorted(G.units - members)
    if missing:
        return False, "subset does not contain every unit", (lab[missing[0]],)
    for h in sorted(members):
        if G.src[h] != G.rng[h]:
            return False, "subset is not contained in the isotropy", (lab[h],)
    for h in sorted(members):
        if G.inv[h] not in members:
            return False, "subset is not closed under inversion", (lab[h],)
    for h, k in product(sorted(members), repeat=2):
        if G.composable(h, k) and G.comp[h][k] not in members:
            return False, "subset is not closed under composition", (lab[h], lab[k])
    for a in G.elements:
        for h in sorted(members):
            if G.src[a] != G.rng[h]:
                continue
            conjugate = G.comp[G.comp[a][h]][G.inv[a]]
            if conjugate not in members:
                return False, f"conjugate of {lab[h]} by {lab[a]} leaves the subset", (lab[a], lab[h])
    return True, "normal", None


def is_normal(G: FiniteGroupoid, H) -> bool:
    ok, _, _ = check_normal(G, H)
    return ok


def make_normal(G: FiniteGroupoid, H) -> NormalSubgroupoid:
    """Package H as a NormalSubgroupoid, raising NotNormalError with a witness"""
    if isinstance(H, NormalSubgroupoid):
        return H
    ok, message, witness = check_normal(G, H)
    if not ok:
        raise NotNormalError(message, witness=list(witness))
    return NormalSubgroupoid(G, G.subset(_members(H)))


def _members(H) -> frozenset:
    if isinstance(H, NormalSubgroupoid):
        return H.carrier.subset
    if isinstance(H, ElementSubset):
        return H.subset
    return frozenset(H)


def interior_isotropy(G: FiniteGroupoid) -> NormalSubgroupoid:
    """Iso(G)°; every finite groupoid is discrete, so this is Iso(G)"""
    return NormalSubgroupoid(G, isotropy(G))


def _normal_options(G: FiniteGroupoid) -> List[List[frozenset]]:
    """
    Per orbit, the carriers of its normal subgroupoid pieces: a normal subgroup
    of the isotropy group at the orbit root, transported along the orbit by conjugation.
    """
    per_orbit: List[List[frozenset]] = []
    for orbit in orbits(G):
        root = orbit[0]
        group, arrows = fiber_group(G, root)
        options = []
        for normal in group.normal_subgroups:
            carrier = set()
            root_part = [arrows[i] for i in normal]
            for y in orbit:
                a = connecting_arrow(G, root, y)
                for h in root_part:
                    carrier.add(G.comp[G.comp[a][h]][G.inv[a]])
            options.append(frozenset(carrier))
        per_orbit.append(options)
    return per_orbit


def count_normal_subgroupoids(G: FiniteGroupoid) -> int:
    return prod(len(options) for options in _normal_options(G))


def enumerate_normal_subgroupoids(G: FiniteGroupoid,
                                  limit: int = MAX_NORMAL_SUBGROUPOIDS) -> List[NormalSubgroupoid]:
    """
    All normal subgroupoids, built fiberwise, up to limit of them.
    Compare against count_normal_subgroupoids to detect truncation.
    """
    per_orbit = _normal_options(G)
    result = []
    for choice in product(*per_orbit):
        if len(result) >= limit:
            logger.warning("%s: enumerated %d of %d normal subgroupoids", G.name, limit,
                           prod(len(options) for options in per_orbit))
            break
        carrier = frozenset().union(*choice) if choice else frozenset()
        result.append(NormalSubgroupoid(G, G.subset(carrier)))
    return result


# =============================================================================
#                           QUOTIENT GROUPOID
# =============================================================================


def quotient(G: FiniteGroupoid, H: Union[NormalSubgroupoid, ElementSubset]) -> QuotientResult:
    """
    G/H for α ~ β iff s(α) = s(β) and αβ⁻¹ ∈ H; the class of α is Hα.
    Quotient arrows are numbered by their smallest member, which also names them.
    """
    normal = make_normal(G, H)
    members = normal.carrier.subset
    by_unit: Dict[int, List[int]] = {}
    for h in members:
        by_unit.setdefault(G.src[h], []).append(h)

    class_map = [None] * len(G)
    reps = []
    for a in G.elements:
        if class_map[a] is not None:
            continue
        k = len(reps)
        reps.append(a)
        for h in by_unit.get(G.rng[a], []):
            class_map[G.comp[h][a]] = k

    comp = {}
    for i, j in product(range(len(reps)), repeat=2):
        a, b = reps[i], reps[j]
        if class_map[G.src[a]] == class_map[G.rng[b]]:
            # units map injectively, so the representatives themselves compose
            comp[(i, j)] = class_map[G.comp[a][b]]
    quotient_groupoid = FiniteGroupoid.from_tables(
        [G.labels[a] for a in reps],
        {class_map[x] for x in G.units},
        [class_map[G.src[a]] for a in reps],
        [class_map[G.rng[a]] for a in reps],
        comp,
        [class_map[G.inv[a]] for a in reps],
        f"{G.name}/H",
    )
    logger.debug("%s: quotient by |H|=%d has %d arrows", G.name, len(members), len(reps))
    return QuotientResult(G, quotient_groupoid, tuple(class_map))


def is_exact(result: QuotientResult, H) -> bool:
    """q⁻¹(quotient units) = H"""
    return result.preimage_of_units().subset == _members(H)


def germ_groupoid(G: FiniteGroupoid) -> FiniteGroupoid:
    """G/Iso(G)°, the groupoid of germs of the canonical action on the unit space"""
    return quotient(G, interior_isotropy(G)).quotient


# =============================================================================
#                           COMMUTATORS AND ABELIANIZATION
# =============================================================================


def commutator_subgroupoid(G: FiniteGroupoid) -> NormalSubgroupoid:
    """[G,G] = union over units of the commutator subgroups of the fibers"""
    require_group_bundle(G)
    carrier = set()
    for x in G.unit_list:
        group, arrows = fiber_group(G, x)
        carrier.update(arrows[i] for i in group.commutator_subgroup)
    return make_normal(G, G.subset(carrier))


def g_fix_with_inclusion(G: FiniteGroupoid) -> Tuple[FiniteGroupoid, Tuple[int, ...]]:
    arrows = restriction_arrows(G, fixed_points(G).subset)
    return induced_subgroupoid(G, arrows, f"{G.name}_fix")


def g_fix(G: FiniteGroupoid) -> FiniteGroupoid:
    """G_fix = G restricted to its fixed points; always a group bundle"""
    fixed, _ = g_fix_with_inclusion(G)
    return fixed


def non_commuting_fiber_pair(G: FiniteGroupoid) -> Optional[Tuple[int, int]]:
    for x in G.unit_list:
        arrows = fiber_arrows(G, x)
        for a, b in product(arrows, repeat=2):
            if G.comp[a][b] != G.comp[b][a]:
                return a, b
    return None


def is_abelian_group_bundle(G: FiniteGroupoid) -> bool:
    if any(G.src[a] != G.rng[a] for a in G.elements):
        return False
    return non_commuting_fiber_pair(G) is None


@dataclass(frozen=True)
class AbelianizationResult:
    """G^ab = G_fix / [G_fix, G_fix] with provenance back into G"""

    host: FiniteGroupoid = field(repr=False)
    g_fix: FiniteGroupoid
    inclusion: Tuple[int, ...]
    commutator: NormalSubgroupoid
    result: QuotientResult

    @property
    def quotient(self) -> FiniteGroupoid:
        return self.result.quotient

    def arrow_class(self, a: int) -> Optional[int]:
        """Class in G^ab of a host arrow, None outside G_fix"""
        position = {old: new for new, old in enumerate(self.inclusion)}
        if a not in position:
            return None
        return self.result.class_map[position[a]]

    def host_fiber_classes(self, x: int) -> Dict[int, int]:
        """Host arrows of the fiber at the fixed point x mapped to G^ab arrows"""
        return {a: self.arrow_class(a) for a in fiber_arrows(self.host, x)}

    def quotient_unit(self, x: int) -> int:
        return self.arrow_class(x)


def abelianize_groupoid(G: FiniteGroupoid) -> AbelianizationResult:
    fixed, inclusion = g_fix_with_inclusion(G)
    commutator = commutator_subgroupoid(fixed)
    result = quotient(fixed, commutator)
    result = QuotientResult(fixed, result.quotient, result.class_map, inclusion)
    pair = non_commuting_fiber_pair(result.quotient)
    if pair is not None:
        labels = result.quotient.labels
        raise NotAbelianError("abelianization has a non-commutative fiber",
                              witness=[labels[pair[0]], labels[pair[1]]])
    logger.info("%s: G_fix has %d arrows, G^ab has %d", G.name, len(fixed), len(result.quotient))
    return AbelianizationResult(G, fixed, inclusion, commutator, result)
