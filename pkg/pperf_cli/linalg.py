"""Exact sparse linear algebra over F_p.

Vectors are dictionaries ``{index: coefficient}`` with coefficients in
``1..p-1``; over F_2 the column reduction of boundary matrices can also run
on integer bitsets.
"""

from typing import (Dict, List, Optional, Sequence, Tuple)

SparseVector = Dict[int, int]


def axpy(
    target: SparseVector,
    coeff: int,
    source: SparseVector,
    p: int,
) -> None:
    """``target += coeff * source`` in place."""
    if not coeff % p:
        return
    for key, value in source.items():
        new = (target.get(key, 0) + coeff * value) % p
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def scaled(vector: SparseVector, coeff: int, p: int) -> SparseVector:
    coeff %= p
    if not coeff:
        return {}
    return {k: v * coeff % p for k, v in vector.items()}


def dot(left: SparseVector, right: SparseVector, p: int) -> int:
    if len(left) > len(right):
        left, right = right, left
    return sum(v * right.get(k, 0) for k, v in left.items()) % p


def to_bits(vector: SparseVector) -> int:
    bits = 0
    for key, value in vector.items():
        if value % 2:
            bits |= 1 << key
    return bits


def from_bits(bits: int) -> SparseVector:
    vector = {}
    while bits:
        low = bits & -bits
        vector[low.bit_length() - 1] = 1
        bits ^= low
    return vector


def parity(bits: int) -> int:
    return bin(bits).count('1') & 1


class SparseReducer():
    """Column reduction with pivots at the largest index.

    Every stored column carries a tag recording it as a combination of the
    inserted columns; a column that reduces to zero yields its tag as a
    linear relation.

    Arguments:
        p: Prime modulus.
    """

    def __init__(self, p: int) -> None:
        """Class constructor."""
        self.p = p
        self.pivots: Dict[int, Tuple[SparseVector, SparseVector]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(
        self,
        column: SparseVector,
        tag: SparseVector,
    ) -> Tuple[SparseVector, SparseVector]:
        """Reduce until the largest index is not a pivot."""
        column, tag = dict(column), dict(tag)
        while column:
            low = max(column)
            if low not in self.pivots:
                break
            pivot_column, pivot_tag = self.pivots[low]
            c = -column[low]
            axpy(column, c, pivot_column, self.p)
            axpy(tag, c, pivot_tag, self.p)
        return column, tag

    def add(
        self,
        column: SparseVector,
        tag: SparseVector,
    ) -> Optional[SparseVector]:
        """Insert a column; returns the relation tag if it is dependent."""
        column, tag = self.reduce(column, tag)
        if not column:
            return tag
        low = max(column)
        inverse = pow(column[low], -1, self.p)
        self.pivots[low] = (
            scaled(column, inverse, self.p), scaled(tag, inverse, self.p),
        )
        return None


class BitReducer():
    """Column reduction over F_2 on integer bitsets with bitset tags."""

    def __init__(self) -> None:
        """Class constructor."""
        self.p = 2
        self.pivots: Dict[int, Tuple[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, column: int, tag: int) -> Tuple[int, int]:
        pivots = self.pivots
        while column:
            low = column.bit_length() - 1
            entry = pivots.get(low)
            if entry is None:
                break
            column ^= entry[0]
            tag ^= entry[1]
        return column, tag

    def add(self, column: int, tag: int) -> Optional[int]:
        column, tag = self.reduce(column, tag)
        if not column:
            return tag
        self.pivots[column.bit_length() - 1] = (column, tag)
        return None


def rank(vectors: Sequence[SparseVector], p: int) -> int:
    """Rank of a family of sparse vectors."""
    reducer = SparseReducer(p)
    for v in vectors:
        reducer.add(v, {})
    return reducer.rank


def express(
    vectors: Sequence[SparseVector],
    target: SparseVector,
    p: int,
) -> Optional[Dict[int, int]]:
    """Coefficients ``c`` with ``sum(c[i] * vectors[i]) == target``, or
    ``None`` if `target` is outside the span.
    """
    reducer = SparseReducer(p)
    for i, v in enumerate(vectors):
        reducer.add(v, {i: 1})
    residual, tag = reducer.reduce(target, {})
    if residual:
        return None
    return {i: (-c) % p for i, c in sorted(tag.items()) if c % p}


def inverse_matrix(matrix: List[List[int]], p: int) -> List[List[int]]:
    """Inverse of a square matrix over F_p by Gauss-Jordan elimination.

    Raises:
        ArithmeticError: The matrix is singular.
    """
    n = len(matrix)
    work = [
        [x % p for x in row] + [int(i == j) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ArithmeticError("Matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = pow(work[col][col], -1, p)
        work[col] = [x * inv % p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = work[r][col]
                work[r] = [(a - c * b) % p for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]
