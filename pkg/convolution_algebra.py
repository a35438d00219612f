# -*- coding: utf-8 -*-
"""
The convolution *-algebra CG of a finite groupoid over QQ(i).

Elements are coefficient vectors indexed by arrows. The product is
(f*g)(γ) = Σ_{s(β)=s(γ)} f(γβ⁻¹) g(β), so δ_a * δ_b = δ_{ab} when src(a) = rng(b)
and 0 otherwise; the involution is f*(γ) = conj f(γ⁻¹).

Character values are kept as root-of-unity exponents and only turned into
complex numbers when a functional is evaluated on an element.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import lcm, log
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from abelian_dual import Character, FiniteAbelianGroup, characters, dual_bundle
from constants import COMPLEX_TOLERANCE, DETERMINANT_THRESHOLD
from errors import CharacterError, HostMismatchError
from groupoid_core import (
    ElementSubset,
    FiniteGroupoid,
    fiber_group,
    fixed_points,
    induced_subgroupoid,
    require_group_bundle,
    restriction_arrows,
)
from linalg import (
    ONE,
    ZERO,
    EchelonBasis,
    conjugate,
    decode_scalar,
    dense,
    encode_scalar,
    intersection_dim,
    is_zero,
    kernel_basis,
    rank,
    row_basis,
    same_span,
    sparse,
    to_complex,
    to_scalar,
)
from quotients import AbelianizationResult, abelianize_groupoid, interior_isotropy, quotient

logger = logging.getLogger(__name__)


def _same_host(G: FiniteGroupoid, K: FiniteGroupoid) -> bool:
    return G is K or G == K


# =============================================================================
#                           ELEMENTS
# =============================================================================


@dataclass(frozen=True)
class AlgebraElement:
    """A function on the arrows of host with Gaussian-rational values"""

    host: FiniteGroupoid = field(repr=False)
    coeffs: Tuple

    def _check_host(self, other: "AlgebraElement"):
        if not _same_host(self.host, other.host):
            raise HostMismatchError(
                f"elements of {self.host.name} and {other.host.name} cannot be combined")

    def __getitem__(self, a: int):
        return self.coeffs[a]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_host(other)
        return AlgebraElement(self.host, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_host(other)
        return AlgebraElement(self.host, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.host, tuple(-x for x in self.coeffs))

    def scale(self, c) -> "AlgebraElement":
        c = to_scalar(c)
        return AlgebraElement(self.host, tuple(c * x for x in self.coeffs))

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return convolve(self, other)

    def star(self) -> "AlgebraElement":
        return involute(self)

    @property
    def is_zero(self) -> bool:
        return all(is_zero(x) for x in self.coeffs)

    def support(self) -> List[int]:
        return [a for a, x in enumerate(self.coeffs) if not is_zero(x)]

    def sparse(self) -> Dict[int, object]:
        return sparse(self.coeffs)

    def to_dict(self) -> Dict[str, List[int]]:
        """Sparse {label: [re_num, re_den, im_num, im_den]}"""
        return {self.host.labels[a]: encode_scalar(x) for a, x in self.sparse().items()}

    @classmethod
    def from_dict(cls, G: FiniteGroupoid, data: Mapping[str, Sequence[int]]) -> "AlgebraElement":
        coeffs = [ZERO] * len(G)
        for label, encoded in data.items():
            coeffs[G.index(label)] = decode_scalar(encoded)
        return cls(G, tuple(coeffs))


def zero(G: FiniteGroupoid) -> AlgebraElement:
    return AlgebraElement(G, (ZERO,) * len(G))


def delta(G: FiniteGroupoid, a: int, coeff=ONE) -> AlgebraElement:
    coeffs = [ZERO] * len(G)
    coeffs[a] = to_scalar(coeff)
    return AlgebraElement(G, tuple(coeffs))


def element(G: FiniteGroupoid, values: Mapping) -> AlgebraElement:
    """Element from {arrow index or label: scalar}"""
    coeffs = [ZERO] * len(G)
    for key, value in values.items():
        a = G.index(key) if isinstance(key, str) else key
        coeffs[a] = to_scalar(value)
    return AlgebraElement(G, tuple(coeffs))


def unit_element(G: FiniteGroupoid) -> AlgebraElement:
    """1 = Σ δ_x over the units"""
    return AlgebraElement(G, tuple(ONE if a in G.units else ZERO for a in G.elements))


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    f._check_host(g)
    G = f.host
    out = [ZERO] * len(G)
    gs = g.sparse()
    for a, x in f.sparse().items():
        row = G.comp[a]
        for b, y in gs.items():
            c = row[b]
            if c is not None:
                out[c] = out[c] + x * y
    return AlgebraElement(G, tuple(out))


def involute(f: AlgebraElement) -> AlgebraElement:
    G = f.host
    return AlgebraElement(G, tuple(conjugate(f.coeffs[G.inv[a]]) for a in G.elements))


# =============================================================================
#                           IDEALS
# =============================================================================


@dataclass(frozen=True)
class IdealBasis:
    """Row-reduced basis of a subspace of CG"""

    host: FiniteGroupoid = field(repr=False)
    rows: Tuple[Tuple, ...]

    @classmethod
    def from_vectors(cls, G: FiniteGroupoid, vectors: Iterable[Sequence]) -> "IdealBasis":
        rows = [[to_scalar(c) for c in v] for v in vectors]
        return cls(G, tuple(tuple(r) for r in row_basis(rows, len(G))))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def _echelon(self) -> EchelonBasis:
        basis = EchelonBasis(len(self.host))
        basis.extend(sparse(r) for r in self.rows)
        return basis

    def contains(self, f) -> bool:
        vector = f.sparse() if isinstance(f, AlgebraElement) else sparse(f)
        return self._echelon.contains(vector)

    def same_span(self, other) -> bool:
        rows = other.rows if isinstance(other, IdealBasis) else other
        return same_span(self.rows, rows, len(self.host))

    def intersection_dim(self, other) -> int:
        rows = other.rows if isinstance(other, IdealBasis) else other
        return intersection_dim(self.rows, rows, len(self.host))

    def check_closure(self) -> Optional[Tuple[int, str, str]]:
        """(row, side, arrow label) of a product leaving the span, or None for a two-sided ideal"""
        G = self.host
        for i, row in enumerate(self.rows):
            v = sparse(row)
            for g in G.elements:
                if not self._echelon.contains(_left_multiply(G, g, v)):
                    return i, "left", G.labels[g]
                if not self._echelon.contains(_right_multiply(G, v, g)):
                    return i, "right", G.labels[g]
        return None


def _left_multiply(G: FiniteGroupoid, g: int, v: Dict[int, object]) -> Dict[int, object]:
    """δ_g * v; left multiplication by g is injective on the arrows it composes with"""
    row = G.comp[g]
    return {row[a]: c for a, c in v.items() if row[a] is not None}


def _right_multiply(G: FiniteGroupoid, v: Dict[int, object], g: int) -> Dict[int, object]:
    return {G.comp[a][g]: c for a, c in v.items() if G.comp[a][g] is not None}


def commutator_ideal(G: FiniteGroupoid) -> IdealBasis:
    """
    Two-sided ideal generated by all δ_a*δ_b - δ_b*δ_a.
    Seeded with the basis commutators, then every vector that enlarged the span
    is multiplied on both sides by every delta, round after round.
    """
    n = len(G)
    basis = EchelonBasis(n)
    frontier = []
    for a, b in combinations(G.elements, 2):
        ab, ba = G.comp[a][b], G.comp[b][a]
        if ab == ba:
            continue
        v = {}
        if ab is not None:
            v[ab] = ONE
        if ba is not None:
            v[ba] = -ONE
        if basis.add(v):
            frontier.append(v)

    rounds = 0
    while frontier and basis.dim < n:
        rounds += 1
        grown = []
        for v in frontier:
            for g in G.elements:
                for w in (_left_multiply(G, g, v), _right_multiply(G, v, g)):
                    if w and basis.add(w):
                        grown.append(w)
        frontier = grown
    logger.debug("%s: commutator ideal dim %d after %d rounds", G.name, basis.dim, rounds)
    return IdealBasis(G, tuple(tuple(r) for r in basis.rows()))


def abelianization_dim(G: FiniteGroupoid) -> int:
    """dim CG / [CG, CG]"""
    return len(G) - commutator_ideal(G).dim


def diagonal_basis(G: FiniteGroupoid) -> List[List]:
    """δ_x for every unit x, spanning the diagonal subalgebra"""
    return [dense({x: ONE}, len(G)) for x in G.unit_list]


# =============================================================================
#                           HOMOMORPHISMS
# =============================================================================


@dataclass(frozen=True)
class AlgebraHom:
    """Linear map CG -> CK given by the images of the basis deltas"""

    domain: FiniteGroupoid = field(repr=False)
    codomain: FiniteGroupoid = field(repr=False)
    images: Tuple[Tuple, ...]
    name: str = "hom"

    def image(self, a: int) -> AlgebraElement:
        return AlgebraElement(self.codomain, self.images[a])

    def __call__(self, f: AlgebraElement) -> AlgebraElement:
        if not _same_host(f.host, self.domain):
            raise HostMismatchError(f"{self.name} is not defined on {f.host.name}")
        out = [ZERO] * len(self.codomain)
        for a, x in f.sparse().items():
            for j, y in enumerate(self.images[a]):
                if not is_zero(y):
                    out[j] = out[j] + x * y
        return AlgebraElement(self.codomain, tuple(out))

    def matrix_rows(self) -> List[List]:
        """codim x dim matrix; column a is the image of δ_a"""
        return [[self.images[a][j] for a in self.domain.elements] for j in self.codomain.elements]

    @property
    def rank(self) -> int:
        return rank(self.matrix_rows(), len(self.domain))

    def is_surjective(self) -> bool:
        return self.rank == len(self.codomain)

    def kernel(self) -> IdealBasis:
        vectors = kernel_basis(self.matrix_rows(), len(self.domain))
        return IdealBasis(self.domain, tuple(tuple(v) for v in vectors))

    def compose(self, first: "AlgebraHom") -> "AlgebraHom":
        """self ∘ first"""
        if not _same_host(first.codomain, self.domain):
            raise HostMismatchError(f"cannot compose {self.name} after {first.name}")
        images = tuple(self(first.image(a)).coeffs for a in first.domain.elements)
        return AlgebraHom(first.domain, self.codomain, images, f"{self.name}∘{first.name}")

    def check_multiplicative(self) -> Optional[Tuple[str, str]]:
        """A pair (a, b) with φ(δ_a*δ_b) != φ(δ_a)*φ(δ_b), or None"""
        G = self.domain
        for a, b in product(G.elements, repeat=2):
            c = G.comp[a][b]
            lhs = self.images[c] if c is not None else (ZERO,) * len(self.codomain)
            rhs = convolve(self.image(a), self.image(b)).coeffs
            if lhs != rhs:
                return G.labels[a], G.labels[b]
        return None

    def check_star(self) -> Optional[str]:
        """An arrow a with φ(δ_a*) != φ(δ_a)*, or None"""
        G = self.domain
        for a in G.elements:
            if self.images[G.inv[a]] != involute(self.image(a)).coeffs:
                return G.labels[a]
        return None


def _unit_vector(size: int, k: int) -> Tuple:
    return tuple(ONE if i == k else ZERO for i in range(size))


def restriction_hom(G: FiniteGroupoid, F) -> AlgebraHom:
    """f ↦ f|G_F for an invariant unit set F"""
    points = F.subset if isinstance(F, ElementSubset) else set(F)
    arrows = restriction_arrows(G, points)
    sub, inclusion = induced_subgroupoid(G, arrows, f"{G.name}|F")
    position = {old: new for new, old in enumerate(inclusion)}
    m = len(sub)
    images = tuple(_unit_vector(m, position[a]) if a in position else (ZERO,) * m for a in G.elements)
    return AlgebraHom(G, sub, images, "restrict")


def quotient_hom(G: FiniteGroupoid, H) -> AlgebraHom:
    """Q(f)(γ) = Σ_{q(α)=γ} f(α), i.e. Q(δ_α) = δ_{q(α)}"""
    result = quotient(G, H)
    m = len(result.quotient)
    images = tuple(_unit_vector(m, result.class_map[a]) for a in G.elements)
    return AlgebraHom(G, result.quotient, images, "quotient")


def kernel_meets_diagonal(hom: AlgebraHom) -> int:
    """dim(ker φ ∩ span{δ_x})"""
    return hom.kernel().intersection_dim(diagonal_basis(hom.domain))


def effective_by_kernel(G: FiniteGroupoid) -> bool:
    """Effective exactly when the quotient by the interior isotropy is injective"""
    return quotient_hom(G, interior_isotropy(G)).kernel().dim == 0


def abelianization_projection(G: FiniteGroupoid) -> Tuple[AlgebraHom, AbelianizationResult]:
    """π = Q ∘ restriction: CG -> C(G_fix) -> C(G^ab)"""
    ab = abelianize_groupoid(G)
    restrict = restriction_hom(G, fixed_points(G))
    q = AlgebraHom(ab.g_fix, ab.quotient,
                   tuple(_unit_vector(len(ab.quotient), c) for c in ab.result.class_map), "quotient")
    return q.compose(restrict), ab


# =============================================================================
#                           CHARACTER FUNCTIONALS
# =============================================================================


@dataclass(frozen=True)
class CharacterFunctional:
    """φ(δ_γ) = ω_M^exponents[γ], or 0 where the exponent is None"""

    host: FiniteGroupoid = field(repr=False)
    x: int
    chi: Character
    exponents: Tuple[Optional[int], ...]
    modulus: int

    def exponent(self, a: int) -> Optional[int]:
        return self.exponents[a]

    def value(self, a: int) -> complex:
        e = self.exponents[a]
        if e is None:
            return 0j
        return complex(np.exp(2j * np.pi * e / self.modulus))

    def values(self) -> np.ndarray:
        return np.array([self.value(a) for a in self.host.elements], dtype=complex)

    def evaluate(self, f: AlgebraElement) -> complex:
        if not _same_host(f.host, self.host):
            raise HostMismatchError("functional evaluated on an element of another groupoid")
        coeffs = np.array([to_complex(c) for c in f.coeffs], dtype=complex)
        return complex(self.values() @ coeffs)

    def check_multiplicative(self) -> Optional[Tuple[str, str]]:
        G, M, e = self.host, self.modulus, self.exponents
        for a, b in product(G.elements, repeat=2):
            c = G.comp[a][b]
            lhs = e[c] if c is not None else None
            rhs = (e[a] + e[b]) % M if e[a] is not None and e[b] is not None else None
            if lhs != rhs:
                return G.labels[a], G.labels[b]
        return None

    def check_star(self) -> Optional[str]:
        G, M, e = self.host, self.modulus, self.exponents
        for a in G.elements:
            expected = None if e[a] is None else (-e[a]) % M
            if e[G.inv[a]] != expected:
                return G.labels[a]
        return None

    def diagonal_point(self) -> Optional[int]:
        """The unit x_φ with φ(δ_x) = 1 when it is unique"""
        hits = [x for x in self.host.unit_list if self.exponents[x] == 0]
        return hits[0] if len(hits) == 1 else None

    def key(self) -> Tuple:
        return self.modulus, self.exponents

    def to_dict(self) -> Dict:
        labels = self.host.labels
        return {
            "unit": labels[self.x],
            "factor_residues": list(self.chi.residues),
            "modulus": self.modulus,
            "exponents": {labels[a]: e for a, e in enumerate(self.exponents) if e is not None},
        }


def abelian_fiber(ab: AbelianizationResult, x: int) -> Tuple[FiniteAbelianGroup, Tuple[int, ...]]:
    """The fiber of G^ab over the fixed point x, with its arrow map"""
    group, arrows = fiber_group(ab.quotient, ab.quotient_unit(x))
    return FiniteAbelianGroup.from_group(group), arrows


def character_functional(G: FiniteGroupoid, x: int, chi: Character,
                         abelianization: Optional[AbelianizationResult] = None) -> CharacterFunctional:
    """φ_{x,χ}(δ_γ) = χ(class of γ) for γ in G_x, 0 elsewhere"""
    if x not in fixed_points(G):
        raise CharacterError(f"{G.labels[x]} is not a fixed point", witness=G.labels[x])
    ab = abelianization or abelianize_groupoid(G)
    group, arrows = abelian_fiber(ab, x)
    if chi.host.table != group.table or not chi.is_homomorphism():
        raise CharacterError(f"not a character of the abelianized fiber at {G.labels[x]}",
                             witness=list(chi.exps))
    position = {arrow: i for i, arrow in enumerate(arrows)}
    exponents: List[Optional[int]] = [None] * len(G)
    for a, c in ab.host_fiber_classes(x).items():
        exponents[a] = chi.exps[position[c]]
    return CharacterFunctional(G, x, chi, tuple(exponents), chi.modulus)


def enumerate_characters(G: FiniteGroupoid,
                         abelianization: Optional[AbelianizationResult] = None) -> List[CharacterFunctional]:
    """One φ_{x,χ} per fixed point x and character χ of the abelianized fiber"""
    ab = abelianization or abelianize_groupoid(G)
    result = []
    for x in fixed_points(G):
        group, _ = abelian_fiber(ab, x)
        result.extend(character_functional(G, x, chi, ab) for chi in characters(group))
    logger.info("%s: %d character functionals", G.name, len(result))
    return result


def recover_pair(G: FiniteGroupoid, exponents: Sequence[Optional[int]], modulus: int,
                 abelianization: Optional[AbelianizationResult] = None) -> Tuple[int, Character]:
    """
    (x_φ, χ_φ) for a functional given by root-of-unity exponents:
    x_φ is the only unit with φ(δ_x) = 1, χ_φ is φ read through the class map at x_φ.
    """
    hits = [x for x in G.unit_list if exponents[x] is not None and exponents[x] % modulus == 0]
    stray = [x for x in G.unit_list if exponents[x] is not None and exponents[x] % modulus]
    if stray or len(hits) != 1:
        raise CharacterError("functional does not single out one unit",
                             witness=[G.labels[x] for x in hits + stray])
    x = hits[0]
    if x not in fixed_points(G):
        raise CharacterError(f"{G.labels[x]} is not a fixed point", witness=G.labels[x])
    outside = [a for a in G.elements if exponents[a] is not None and not (G.src[a] == x == G.rng[a])]
    if outside:
        raise CharacterError("functional is supported outside the isotropy at x",
                             witness=G.labels[outside[0]])

    ab = abelianization or abelianize_groupoid(G)
    group, arrows = abelian_fiber(ab, x)
    N = group.exponent
    position = {arrow: i for i, arrow in enumerate(arrows)}
    exps: List[Optional[int]] = [None] * len(group)
    for a, c in ab.host_fiber_classes(x).items():
        e = exponents[a]
        if e is None or (e * N) % modulus:
            raise CharacterError("value is not an N-th root of unity", witness=G.labels[a])
        scaled = e * N // modulus % N
        i = position[c]
        if exps[i] is not None and exps[i] != scaled:
            raise CharacterError("functional is not constant on commutator classes", witness=G.labels[a])
        exps[i] = scaled
    for chi in characters(group):
        if list(chi.exps) == exps:
            return x, chi
    raise CharacterError("values do not form a character", witness=exps)


# =============================================================================
#                           GELFAND TRANSFORM
# =============================================================================


@dataclass(frozen=True)
class GelfandMatrix:
    """
    Rows indexed by the dual bundle (x, χ), columns by arrows;
    entry exponent e means ω_M^e and None means 0.
    """

    host: FiniteGroupoid = field(repr=False)
    rows: Tuple[Tuple[int, Character], ...]
    exponents: Tuple[Tuple[Optional[int], ...], ...]
    modulus: int

    def to_complex(self) -> np.ndarray:
        n = len(self.host)
        out = np.zeros((len(self.rows), n), dtype=complex)
        for i, row in enumerate(self.exponents):
            for a, e in enumerate(row):
                if e is not None:
                    out[i, a] = np.exp(2j * np.pi * e / self.modulus)
        return out

    def log_abs_determinant(self) -> float:
        if not self.rows:
            return 0.0
        sign, logdet = np.linalg.slogdet(self.to_complex())
        return float(logdet) if sign != 0 else float("-inf")

    def is_invertible(self, threshold: float = DETERMINANT_THRESHOLD) -> bool:
        if len(self.rows) != len(self.host):
            return False
        return self.log_abs_determinant() > log(threshold)

    def check_pointwise(self) -> Optional[Tuple[str, str]]:
        """(a, b) where transform(δ_a*δ_b) differs from transform(δ_a)·transform(δ_b)"""
        G, M = self.host, self.modulus
        for a, b in product(G.elements, repeat=2):
            c = G.comp[a][b]
            for row in self.exponents:
                lhs = row[c] if c is not None else None
                rhs = (row[a] + row[b]) % M if row[a] is not None and row[b] is not None else None
                if lhs != rhs:
                    return G.labels[a], G.labels[b]
        return None

    def transform(self, f: AlgebraElement) -> np.ndarray:
        coeffs = np.array([to_complex(c) for c in f.coeffs], dtype=complex)
        return self.to_complex() @ coeffs

    def inverse_transform(self, values: Sequence[complex]) -> np.ndarray:
        """Arrow coefficients of the element whose transform is values"""
        if not self.rows:
            return np.zeros(0, dtype=complex)
        return np.linalg.solve(self.to_complex(), np.asarray(values, dtype=complex))

    def round_trips(self, f: AlgebraElement, tolerance: float = COMPLEX_TOLERANCE) -> bool:
        coeffs = np.array([to_complex(c) for c in f.coeffs], dtype=complex)
        return bool(np.allclose(self.inverse_transform(self.transform(f)), coeffs, atol=tolerance))

    def to_dict(self) -> Dict:
        labels = self.host.labels
        return {
            "rows": [chi.to_dict(labels[x]) for x, chi in self.rows],
            "columns": list(labels),
            "modulus": self.modulus,
            "exponents": [list(row) for row in self.exponents],
        }


def gelfand_transform(G: FiniteGroupoid) -> GelfandMatrix:
    """[φ_{x,χ}(δ_γ)] over the dual bundle of an abelian group bundle"""
    require_group_bundle(G)
    bundle = dual_bundle(G)
    M = lcm(*(chi.modulus for _, chi in bundle.pairs())) if len(bundle) else 1
    rows, exponents = [], []
    for x, fiber, arrows in zip(bundle.base, bundle.fibers, bundle.fiber_arrows):
        for chi in fiber:
            row: List[Optional[int]] = [None] * len(G)
            for i, a in enumerate(arrows):
                row[a] = chi.scaled_exponent(i, M)
            rows.append((x, chi))
            exponents.append(tuple(row))
    return GelfandMatrix(G, tuple(rows), tuple(exponents), M)


def evaluation_map(f: AlgebraElement, gelfand: Optional[GelfandMatrix] = None) -> Dict[Tuple[str, Tuple[int, ...]], complex]:
    """ev_f: (x, χ) ↦ φ_{x,χ}(f) over the dual bundle"""
    matrix = gelfand or gelfand_transform(f.host)
    values = matrix.transform(f)
    labels = f.host.labels
    return {(labels[x], chi.residues): complex(v) for (x, chi), v in zip(matrix.rows, values)}
