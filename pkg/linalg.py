# -*- coding: utf-8 -*-
"""
Exact linear algebra over the Gaussian rationals QQ(i)
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Basic
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

SCALARS = QQ_I
ZERO = QQ_I.zero
ONE = QQ_I.one

Vector = List  # dense list of QQ_I elements
SparseVector = Dict[int, object]  # column -> non-zero QQ_I element


# =============================================================================
#                           SCALARS
# =============================================================================


def _rational(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def to_scalar(value):
    """Accepts ints, Fractions, (re, im) pairs, sympy numbers or QQ_I elements"""
    if isinstance(value, QQ_I.dtype):
        return value
    if isinstance(value, tuple):
        re, im = value
        return QQ_I(_rational(re), _rational(im))
    if isinstance(value, Basic):
        return QQ_I.from_sympy(value)
    return QQ_I(_rational(value), QQ(0))


def is_zero(z) -> bool:
    return not z.x and not z.y


def conjugate(z):
    return QQ_I(z.x, -z.y)


def to_complex(z) -> complex:
    return complex(float(z.x), float(z.y))


def encode_scalar(z) -> List[int]:
    """[re_num, re_den, im_num, im_den]"""
    return [int(z.x.numerator), int(z.x.denominator), int(z.y.numerator), int(z.y.denominator)]


def decode_scalar(data: Sequence[int]):
    re_num, re_den, im_num, im_den = data
    return QQ_I(QQ(re_num, re_den), QQ(im_num, im_den))


# =============================================================================
#                           MATRICES
# =============================================================================


def as_matrix(rows: Sequence[Sequence], columns: int) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), columns), QQ_I)


def rank(rows: Sequence[Sequence], columns: int) -> int:
    if not rows or columns == 0:
        return 0
    return as_matrix(rows, columns).rank()


def row_basis(rows: Sequence[Sequence], columns: int) -> List[Vector]:
    """Non-zero rows of the reduced row echelon form"""
    if not rows or columns == 0:
        return []
    reduced, pivots = as_matrix(rows, columns).rref()
    return [list(r) for r in reduced.to_list()[:len(pivots)]]


def kernel_basis(rows: Sequence[Sequence], columns: int) -> List[Vector]:
    """Basis of {v | M v = 0} for the matrix with the given rows"""
    if not rows or columns == 0:
        return [[ONE if i == j else ZERO for j in range(columns)] for i in range(columns)]
    reduced, pivots = as_matrix(rows, columns).rref()
    dense = reduced.to_list()
    free = [c for c in range(columns) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * columns
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -dense[i][f]
        basis.append(v)
    return basis


def intersection_dim(a: Sequence[Sequence], b: Sequence[Sequence], columns: int) -> int:
    """dim(span a ∩ span b) = dim a + dim b - dim(a + b)"""
    return rank(a, columns) + rank(b, columns) - rank(list(a) + list(b), columns)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], columns: int) -> bool:
    ra, rb = rank(a, columns), rank(b, columns)
    return ra == rb == rank(list(a) + list(b), columns)


def dense(vector: SparseVector, columns: int) -> Vector:
    return [vector.get(c, ZERO) for c in range(columns)]


def sparse(vector: Sequence) -> SparseVector:
    return {c: z for c, z in enumerate(vector) if not is_zero(z)}


# =============================================================================
#                           INCREMENTAL ECHELON BASIS
# =============================================================================


class EchelonBasis:
    """
    Reduced row echelon basis grown one sparse vector at a time.
    Every stored row has 1 at its pivot and 0 at every other pivot column.
    """

    def __init__(self, columns: int):
        self.columns = columns
        self._rows: Dict[int, SparseVector] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vector: SparseVector) -> SparseVector:
        v = {col: val for col, val in vector.items() if not is_zero(val)}
        for pivot, row in self._rows.items():
            c = v.get(pivot)
            if c is None:
                continue
            for col, val in row.items():
                updated = v.get(col, ZERO) - c * val
                if is_zero(updated):
                    v.pop(col, None)
                else:
                    v[col] = updated
        return v

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)

    def add(self, vector: SparseVector) -> bool:
        """Insert a vector; False when it was already in the span"""
        r = self.reduce(vector)
        if not r:
            return False
        pivot = min(r)
        lead = r[pivot]
        r = {col: val / lead for col, val in r.items()}
        for row in self._rows.values():
            c = row.get(pivot)
            if c is None:
                continue
            for col, val in r.items():
                updated = row.get(col, ZERO) - c * val
                if is_zero(updated):
                    row.pop(col, None)
                else:
                    row[col] = updated
        self._rows[pivot] = r
        return True

    def extend(self, vectors: Iterable[SparseVector]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def rows(self) -> List[Vector]:
        return [dense(self._rows[p], self.columns) for p in sorted(self._rows)]

    def pivots(self) -> Tuple[int, ...]:
        return tuple(sorted(self._rows))
