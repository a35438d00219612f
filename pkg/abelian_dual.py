# -*- coding: utf-8 -*-
"""
Finite abelian groups: invariant factors through an exact Smith normal form,
Pontryagin duals as exponent tables, and the dual bundle of an abelian group bundle.

Character values are the exp-th powers of exp(2πi/N) with N the group exponent.
Arithmetic stays in exponents; Character.value is the only numeric conversion.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import NotAbelianError, WorkbenchError
from generators import one_object
from groupoid_core import FiniteGroupoid, disjoint_union, fiber_group, require_group_bundle
from groups import FiniteGroup

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


# =============================================================================
#                           SMITH NORMAL FORM
# =============================================================================


@dataclass(frozen=True)
class SmithForm:
    """D = left · A · right, with right_inverse = right⁻¹ (all unimodular)"""

    diagonal: Tuple[int, ...]
    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]
    right_inverse: Tuple[Tuple[int, ...], ...]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], columns: Optional[int] = None) -> SmithForm:
    """
    Exact integer Smith normal form; pivots are always the entry of smallest
    absolute value in the remaining block. Diagonal entries are non-negative and
    form a divisibility chain.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = columns if columns is not None else (len(a[0]) if a else 0)
    left, right, right_inv = _identity(m), _identity(n), _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]
        right_inv[i], right_inv[j] = right_inv[j], right_inv[i]

    def add_row(target, source, q):
        # row_target += q * row_source
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        left[target] = [x + q * y for x, y in zip(left[target], left[source])]

    def add_col(target, source, q):
        # col_target += q * col_source
        for row in a:
            row[target] += q * row[source]
        for row in right:
            row[target] += q * row[source]
        right_inv[source] = [x - q * y for x, y in zip(right_inv[source], right_inv[target])]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            stray = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if stray is not None:
                add_row(t, stray, 1)
                continue
            break
        if t < m and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    diagonal = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(diagonal,
                     tuple(map(tuple, left)),
                     tuple(map(tuple, right)),
                     tuple(map(tuple, right_inv)))


# =============================================================================
#                           FINITE ABELIAN GROUPS
# =============================================================================


@dataclass(frozen=True)
class Decomposition:
    """A ≅ Z/n1 × ... × Z/nk with n1 | n2 | ... and chosen generators"""

    factors: Tuple[int, ...]
    generators: Tuple[int, ...]
    coordinates: Tuple[Tuple[int, ...], ...]  # per element, residues mod each factor


@dataclass(frozen=True)
class FiniteAbelianGroup(FiniteGroup):

    @classmethod
    def from_group(cls, group: FiniteGroup) -> "FiniteAbelianGroup":
        group.require_abelian()
        return cls(group.labels, group.table, group.identity, group.name)

    @cached_property
    def exponent(self) -> int:
        """N = lcm of element orders"""
        return lcm(*(self.element_order(a) for a in range(len(self)))) if len(self) else 1

    @cached_property
    def decomposition(self) -> Decomposition:
        return _decompose(self)


def _greedy_generators(group: FiniteGroup) -> List[int]:
    gens: List[int] = []
    span = group.closure([])
    for a in range(len(group)):
        if a not in span:
            gens.append(a)
            span = group.closure(gens)
    return gens


def relation_matrix(group: FiniteGroup, gens: Sequence[int]) -> Matrix:
    """
    Rows generate the relation lattice of Z^k -> A, e_i -> gens[i]:
    one Schreier relation v(a) + e_i - v(a·g_i) per non-tree Cayley edge.
    """
    k = len(gens)
    coords: Dict[int, Tuple[int, ...]] = {group.identity: (0,) * k}
    queue = [group.identity]
    relations = []
    while queue:
        a = queue.pop(0)
        for i, g in enumerate(gens):
            b = group.mult(a, g)
            step = tuple(c + int(j == i) for j, c in enumerate(coords[a]))
            if b not in coords:
                coords[b] = step
                queue.append(b)
            else:
                rel = [x - y for x, y in zip(step, coords[b])]
                if any(rel):
                    relations.append(rel)
    return relations


def _decompose(group: FiniteAbelianGroup) -> Decomposition:
    gens = _greedy_generators(group)
    relations = relation_matrix(group, gens)
    snf = smith_normal_form(relations, columns=len(gens))
    factors, generators = [], []
    for j, d in enumerate(snf.diagonal):
        if d > 1:
            element = group.identity
            for i, g in enumerate(gens):
                element = group.mult(element, group.power(g, snf.right_inverse[j][i]))
            factors.append(d)
            generators.append(element)

    coordinates: Dict[int, Tuple[int, ...]] = {}
    for residues in product(*(range(n) for n in factors)):
        element = group.identity
        for g, r in zip(generators, residues):
            element = group.mult(element, group.power(g, r))
        coordinates[element] = residues
    if len(coordinates) != len(group):
        raise WorkbenchError(f"{group.name}: decomposition does not cover the group")
    logger.debug("%s: invariant factors %s", group.name, factors)
    return Decomposition(tuple(factors), tuple(generators),
                         tuple(coordinates[a] for a in range(len(group))))


def invariant_factors(A: FiniteGroup) -> Tuple[List[int], Tuple[int, ...]]:
    """Invariant factors n1 | n2 | ... of A and generators realizing them"""
    group = A if isinstance(A, FiniteAbelianGroup) else FiniteAbelianGroup.from_group(A)
    decomposition = group.decomposition
    return list(decomposition.factors), decomposition.generators


# =============================================================================
#                           CHARACTERS
# =============================================================================


@dataclass(frozen=True)
class Character:
    """χ(a) = ω_N^exps[a] with ω_N = exp(2πi/N)"""

    host: FiniteAbelianGroup = field(compare=False, repr=False)
    exps: Tuple[int, ...]
    modulus: int
    residues: Tuple[int, ...] = field(default=(), compare=False)

    def exponent(self, a: int) -> int:
        return self.exps[a]

    def value(self, a: int) -> complex:
        return complex(np.exp(2j * np.pi * self.exps[a] / self.modulus))

    @property
    def is_trivial(self) -> bool:
        return not any(self.exps)

    def __mul__(self, other: "Character") -> "Character":
        residues = tuple((r + s) % n for r, s, n in
                         zip(self.residues, other.residues, self.host.decomposition.factors))
        return Character(self.host, tuple((x + y) % self.modulus for x, y in zip(self.exps, other.exps)),
                         self.modulus, residues)

    def is_homomorphism(self) -> bool:
        group = self.host
        if self.exps[group.identity] % self.modulus:
            return False
        n = len(group)
        return all((self.exps[a] + self.exps[b] - self.exps[group.mult(a, b)]) % self.modulus == 0
                   for a in range(n) for b in range(n))

    def scaled_exponent(self, a: int, modulus: int) -> int:
        """Exponent of the same root of unity against a common modulus (a multiple of N)"""
        return self.exps[a] * (modulus // self.modulus) % modulus

    def to_dict(self, unit_label: Optional[str] = None) -> Dict:
        payload = {"factor_residues": list(self.residues)}
        if unit_label is not None:
            payload = {"unit": unit_label, **payload}
        return payload


def characters(A: FiniteGroup) -> List[Character]:
    """All |A| characters, one per choice of residues mod each invariant factor"""
    group = A if isinstance(A, FiniteAbelianGroup) else FiniteAbelianGroup.from_group(A)
    decomposition = group.decomposition
    N = group.exponent
    result = []
    for residues in product(*(range(n) for n in decomposition.factors)):
        exps = []
        for coords in decomposition.coordinates:
            exps.append(sum(r * c * (N // n) for r, c, n in zip(residues, coords, decomposition.factors)) % N)
        result.append(Character(group, tuple(exps), N, residues))
    return result


def char_group_structure(fiber: Sequence[Character]) -> FiniteAbelianGroup:
    """The dual group Â under pointwise multiplication of characters"""
    if not fiber:
        raise WorkbenchError("empty character fiber")
    host = fiber[0].host
    position = {chi.exps: i for i, chi in enumerate(fiber)}
    if len(position) != len(fiber) or len(fiber) != len(host):
        raise WorkbenchError(f"incomplete dual fiber: {len(position)} distinct characters for |A|={len(host)}")
    N = fiber[0].modulus

    def op(i, j):
        exps = tuple((x + y) % N for x, y in zip(fiber[i].exps, fiber[j].exps))
        if exps not in position:
            raise WorkbenchError("character fiber is not closed under multiplication")
        return position[exps]

    identity = position[(0,) * len(host)]
    labels = [f"chi{chi.residues}" if chi.residues else "chi" for chi in fiber]
    group = FiniteGroup.from_operation(labels, op, identity, f"dual({host.name})")
    return FiniteAbelianGroup.from_group(group)


def separates_points(A: FiniteGroup) -> bool:
    """Every non-identity element has a character with non-zero exponent"""
    chars = characters(A)
    return all(any(chi.exps[a] for chi in chars) for a in range(len(A)) if a != A.identity)


def pairing_is_perfect(A: FiniteGroup) -> bool:
    """a ↦ (χ ↦ χ(a)) is an injective homomorphism A → (Â)^, hence bijective"""
    chars = characters(A)
    dual = char_group_structure(chars)
    N = chars[0].modulus
    images = [tuple(chi.exps[a] for chi in chars) for a in range(len(A))]
    if len(set(images)) != len(A):
        return False
    for a, b in product(range(len(A)), repeat=2):
        ab = A.mult(a, b)
        if any((images[a][k] + images[b][k] - images[ab][k]) % N for k in range(len(chars))):
            return False
    # each image is multiplicative on the dual group
    for image in images:
        for i, j in product(range(len(dual)), repeat=2):
            if (image[i] + image[j] - image[dual.mult(i, j)]) % N:
                return False
    return True


# =============================================================================
#                           DUAL BUNDLE
# =============================================================================


@dataclass(frozen=True)
class DualBundle:
    """Ĝ = {(χ, x) | x a unit, χ a character of G_x}"""

    host: FiniteGroupoid = field(repr=False)
    base: Tuple[int, ...]
    fibers: Tuple[Tuple[Character, ...], ...]
    fiber_arrows: Tuple[Tuple[int, ...], ...] = field(repr=False)  # group index -> host arrow

    def __len__(self):
        return sum(len(f) for f in self.fibers)

    def fiber(self, x: int) -> Tuple[Character, ...]:
        return self.fibers[self.base.index(x)]

    def pairs(self):
        for x, fiber in zip(self.base, self.fibers):
            for chi in fiber:
                yield x, chi

    def to_dict(self) -> Dict:
        labels = self.host.labels
        return {
            "base": [labels[x] for x in self.base],
            "fibers": {labels[x]: [chi.to_dict(labels[x]) for chi in fiber]
                       for x, fiber in zip(self.base, self.fibers)},
            "size": len(self),
        }


def dual_bundle(G: FiniteGroupoid) -> DualBundle:
    require_group_bundle(G)
    fibers, arrow_maps = [], []
    for x in G.unit_list:
        group, arrows = fiber_group(G, x)
        pair = group.non_commuting_pair()
        if pair is not None:
            raise NotAbelianError(f"fiber at {G.labels[x]} is not abelian", witness=G.labels[x])
        fibers.append(tuple(characters(FiniteAbelianGroup.from_group(group))))
        arrow_maps.append(arrows)
    return DualBundle(G, tuple(G.unit_list), tuple(fibers), tuple(arrow_maps))


def dual_groupoid(bundle: DualBundle) -> FiniteGroupoid:
    """Ĝ as a group bundle under pointwise multiplication"""

    parts = []
    for x, fiber in zip(bundle.base, bundle.fibers):
        group = char_group_structure(fiber)
        prefix = bundle.host.labels[x]
        relabelled = FiniteGroup(tuple(f"{prefix}:{label}" for label in group.labels),
                                 group.table, group.identity, group.name)
        parts.append(one_object(relabelled))
    return disjoint_union(*parts, name=f"dual({bundle.host.name})")
