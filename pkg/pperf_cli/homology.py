"""Group homology with F_p coefficients from normalized bar complexes.

Chains in degree ``n`` are sparse vectors over the normalized tuples
``[g_1|...|g_n]`` with every ``g_i`` different from the identity. A tuple of
a group with ``m + 1`` elements has index ``sum((g_i - 1) * m ** (i - 1))``.

Homology classes are computed from both sides: cocycles come from a
reduction of the coboundary matrices (with clearing), and cycle
representatives are taken from the kernel of the boundary until they pair
non-degenerately with the cocycles. The projection of a cycle onto the
chosen basis is then its pairing with the dual cocycles.
"""

import csv
from functools import lru_cache
import io
from itertools import combinations
import logging
from typing import (Dict, Iterator, List, NamedTuple, Sequence, Tuple)

from pperf_cli.errors import (
    BudgetExceededError,
    InvalidGroupData,
    InvalidInputError,
    TruncationMismatchError,
)
from pperf_cli.fpbialg import (BasisElement, GradedBialgebra)
from pperf_cli.linalg import (
    BitReducer,
    SparseReducer,
    SparseVector,
    axpy,
    dot,
    from_bits,
    inverse_matrix,
    parity,
    to_bits,
)
from pperf_cli.models import (HomologyRow, dump)
from pperf_cli.perm import (Permutation, direct_sum)
from pperf_cli.structure import (FiniteGroup, GroupHom, symmetric)

logger = logging.getLogger(__name__)

DEFAULT_TUPLE_BUDGET = 500_000

Tuple_ = Tuple[int, ...]


def tuple_count(group_order: int, D: int) -> int:
    """Number of normalized tuples in degrees ``0, ..., D``."""
    m = group_order - 1
    return sum(m ** n for n in range(D + 1))


def check_budget(
    group_order: int,
    D: int,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> None:
    """Raise if the bar complex up to degree `D` exceeds `tuple_budget`.

    Raises:
        pperf_cli.errors.BudgetExceededError: The budget is exceeded; the
            exception carries the largest feasible degree.
    """
    if tuple_count(group_order, D) <= tuple_budget:
        return
    feasible = D
    while feasible >= 0 and tuple_count(group_order, feasible) > tuple_budget:
        feasible -= 1
    raise BudgetExceededError(
        f"Bar complex of a group of order {group_order} up to degree {D} "
        f"has {tuple_count(group_order, D)} tuples (budget {tuple_budget}); "
        f"largest feasible degree is {feasible}",
        largest_feasible=feasible if feasible >= 0 else None,
    )


class BarComplex():
    """Truncated normalized bar complex of a finite group over F_p.

    Arguments:
        group: Finite group (identity at index 0).
        p: Coefficient prime.
        D: Truncation degree.
    """

    def __init__(self, group: FiniteGroup, p: int, D: int) -> None:
        """Class constructor."""
        if p < 2:
            raise InvalidInputError(f"Coefficient prime must be >= 2: {p}")
        if D < 0:
            raise InvalidInputError(f"Truncation degree must be >= 0: {D}")
        self.group = group
        self.p = p
        self.D = D
        self.m = group.order - 1

    def __repr__(self) -> str:
        return f"BarComplex({self.group.name}, p={self.p}, D={self.D})"

    def size(self, n: int) -> int:
        return self.m ** n

    def tuple_at(self, n: int, index: int) -> Tuple_:
        entries = []
        for _ in range(n):
            index, digit = divmod(index, self.m)
            entries.append(digit + 1)
        return tuple(entries)

    def index_of(self, entries: Sequence[int]) -> int:
        index = 0
        for g in reversed(entries):
            index = index * self.m + g - 1
        return index

    def _put(self, chain: SparseVector, entries: Tuple_, coeff: int) -> None:
        key = self.index_of(entries)
        value = (chain.get(key, 0) + coeff) % self.p
        if value:
            chain[key] = value
        else:
            chain.pop(key, None)

    def boundary(self, n: int, index: int) -> SparseVector:
        """Boundary of the basis tuple `index` of degree `n`."""
        chain: SparseVector = {}
        if n == 0:
            return chain
        t = self.tuple_at(n, index)
        mul = self.group.mul
        self._put(chain, t[1:], 1)
        for i in range(1, n):
            merged = mul(t[i - 1], t[i])
            if merged:
                self._put(chain, t[:i - 1] + (merged,) + t[i + 1:],
                          (-1) ** i)
        self._put(chain, t[:-1], (-1) ** n)
        return chain

    def coboundary(self, n: int, index: int) -> SparseVector:
        """Coboundary of the dual basis cochain `index` of degree `n`,
        as a vector over the tuples of degree ``n + 1``.
        """
        chain: SparseVector = {}
        t = self.tuple_at(n, index)
        G = self.group
        last = (-1) ** (n + 1)
        for g in range(1, G.order):
            self._put(chain, (g,) + t, 1)
            self._put(chain, t + (g,), last)
        for i in range(1, n + 1):
            y = t[i - 1]
            sign = (-1) ** i
            for a in range(1, G.order):
                if a == y:
                    continue
                b = G.mul(G.inverse(a), y)
                self._put(chain, t[:i - 1] + (a, b) + t[i:], sign)
        return chain

    def boundary_of(self, n: int, chain: SparseVector) -> SparseVector:
        result: SparseVector = {}
        for index, coeff in chain.items():
            axpy(result, coeff, self.boundary(n, index), self.p)
        return result

    def square_zero(self, n: int) -> bool:
        """Whether ``boundary(boundary(t)) == 0`` for every tuple of degree
        `n`.
        """
        if n < 2:
            return True
        return all(
            not self.boundary_of(n - 1, self.boundary(n, index))
            for index in range(self.size(n))
        )

    def push(self, images: Sequence[int], n: int,
             chain: SparseVector, target: 'BarComplex') -> SparseVector:
        """Image of a chain under the element map `images`."""
        result: SparseVector = {}
        for index, coeff in chain.items():
            entries = tuple(images[g] for g in self.tuple_at(n, index))
            if all(entries):
                target._put(result, entries, coeff)
        return result


class HomologyBasis():
    """Homology of a bar complex in degrees ``0, ..., D``.

    Attributes:
        complex: The bar complex.
        dims: Homology dimensions per degree.
        representatives: Cycle representatives per degree.
        boundary_ranks: Rank of the boundary map into each degree's
            predecessor (``boundary_ranks[n]`` is the rank of ``d_n``).
        dual: Per degree, a map from tuple index to the coordinates that
            tuple contributes to the projection.
    """

    def __init__(
        self,
        complex: BarComplex,
        representatives: List[List[SparseVector]],
        dual: List[Dict[int, Tuple[int, ...]]],
        boundary_ranks: List[int],
    ) -> None:
        """Class constructor."""
        self.complex = complex
        self.representatives = representatives
        self.dual = dual
        self.boundary_ranks = boundary_ranks
        self.dims = [len(reps) for reps in representatives]

    @property
    def group(self) -> FiniteGroup:
        return self.complex.group

    @property
    def p(self) -> int:
        return self.complex.p

    @property
    def D(self) -> int:
        return self.complex.D

    def __repr__(self) -> str:
        return (
            f"HomologyBasis({self.group.name}, p={self.p}, D={self.D}, "
            f"dims={self.dims})"
        )

    def projection(self, n: int, chain: SparseVector) -> Tuple[int, ...]:
        """Coordinates of a degree-`n` chain in the chosen basis.

        The map is linear and vanishes on boundaries; on cycles it gives
        the homology class.
        """
        coords = [0] * self.dims[n]
        dual = self.dual[n]
        for index, coeff in chain.items():
            row = dual.get(index)
            if row is None:
                continue
            for j, value in enumerate(row):
                if value:
                    coords[j] += coeff * value
        return tuple(c % self.p for c in coords)

    def consistent(self) -> bool:
        """Dimensions against boundary ranks and representatives against
        the boundary map.
        """
        cx = self.complex
        for n in range(self.D + 1):
            expected = (
                cx.size(n) - self.boundary_ranks[n]
                - self.boundary_ranks[n + 1]
            )
            if self.dims[n] != expected:
                return False
            if any(cx.boundary_of(n, z) for z in self.representatives[n]):
                return False
        return True


def _cocycles(cx: BarComplex) -> Tuple[List[List[SparseVector]], List[int]]:
    """Essential cocycles per degree and ranks of the coboundaries."""
    cocycles = []
    ranks = []
    cleared: set = set()
    for n in range(cx.D + 1):
        reducer = SparseReducer(cx.p)
        found = []
        for j in range(cx.size(n)):
            if j in cleared:
                continue
            relation = reducer.add(cx.coboundary(n, j), {j: 1})
            if relation is not None:
                found.append(relation)
        cocycles.append(found)
        ranks.append(reducer.rank)
        cleared = set(reducer.pivots)
        logger.debug(
            f"{cx}: degree {n} has {len(found)} essential cocycles, "
            f"coboundary rank {reducer.rank}"
        )
    return cocycles, ranks


def _cycles(cx: BarComplex, n: int) -> Iterator:
    """Kernel vectors of the boundary in degree `n`, bitsets over F_2."""
    if cx.p == 2:
        bits = BitReducer()
        for j in range(cx.size(n)):
            relation = bits.add(to_bits(cx.boundary(n, j)), 1 << j)
            if relation is not None:
                yield relation
    else:
        reducer = SparseReducer(cx.p)
        for j in range(cx.size(n)):
            relation = reducer.add(cx.boundary(n, j), {j: 1})
            if relation is not None:
                yield relation


def _representatives(
    cx: BarComplex,
    n: int,
    cocycles: List[SparseVector],
) -> Tuple[List[SparseVector], List[List[int]]]:
    """Cycles pairing non-degenerately with `cocycles`, and the pairing."""
    h = len(cocycles)
    if not h:
        return [], []
    p = cx.p
    packed = [to_bits(f) for f in cocycles] if p == 2 else []
    selector = SparseReducer(p)
    reps: List[SparseVector] = []
    columns: List[List[int]] = []
    for z in _cycles(cx, n):
        if p == 2:
            pairing = [parity(f & z) for f in packed]
        else:
            pairing = [dot(f, z, p) for f in cocycles]
        vector = {i: c for i, c in enumerate(pairing) if c}
        if not vector or selector.add(vector, {}) is not None:
            continue
        reps.append(from_bits(z) if p == 2 else z)
        columns.append(pairing)
        if len(reps) == h:
            break
    if len(reps) < h:
        raise ArithmeticError(
            f"Cycles of {cx} in degree {n} do not pair with all cocycles"
        )
    # pairing[i][j] = <f_i, z_j>
    return reps, [[columns[j][i] for j in range(h)] for i in range(h)]


def _dual(
    cocycles: List[SparseVector],
    pairing: List[List[int]],
    p: int,
) -> Dict[int, Tuple[int, ...]]:
    h = len(cocycles)
    if not h:
        return {}
    inverse = inverse_matrix(pairing, p)
    rows: Dict[int, List[int]] = {}
    for i, f in enumerate(cocycles):
        for index, c in f.items():
            row = rows.setdefault(index, [0] * h)
            for j in range(h):
                row[j] = (row[j] + inverse[j][i] * c) % p
    return {k: tuple(v) for k, v in rows.items() if any(v)}


@lru_cache(maxsize=None)
def _bar_homology(group: FiniteGroup, p: int, D: int) -> HomologyBasis:
    cx = BarComplex(group, p, D)
    cocycles, ranks = _cocycles(cx)
    reps, duals = [], []
    for n in range(D + 1):
        z, pairing = _representatives(cx, n, cocycles[n])
        reps.append(z)
        duals.append(_dual(cocycles[n], pairing, p))
    # boundary_ranks[n] = rank d_n = rank of the coboundary out of n - 1
    basis = HomologyBasis(cx, reps, duals, [0] + ranks)
    logger.info(f"Computed {basis}")
    return basis


def bar_homology(
    G: FiniteGroup,
    p: int,
    D: int,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> HomologyBasis:
    """F_p homology of `G` in degrees ``0, ..., D``.

    Results are memoized per ``(G, p, D)``.

    Arguments:
        G: Finite group.
        p: Coefficient prime.
        D: Truncation degree.
        tuple_budget: Largest admissible number of bar tuples in degrees
            ``0, ..., D``.

    Returns:
        Homology basis with representatives and projections.

    Raises:
        pperf_cli.errors.BudgetExceededError: The bar complex exceeds the
            budget.

    Examples:
        >>> bar_homology(FiniteGroup.cyclic(2), 2, 4).dims
        [1, 1, 1, 1, 1]
    """
    if D < 0 or p < 2:
        raise InvalidInputError(f"Invalid prime or degree: p={p}, D={D}")
    check_budget(G.order, D, tuple_budget)
    return _bar_homology(G, p, D)


def periodic_resolution_homology(q: int, p: int, D: int) -> List[int]:
    """F_p homology of ``Z/q`` from its periodic resolution.

    The resolution ``Z[Z/q] <- Z[Z/q] <- ...`` alternates multiplication by
    ``T - 1`` and by the norm ``1 + T + ... + T^(q-1)``; both are checked
    to compose to zero in the group ring before tensoring down to F_p.

    Returns:
        Dimensions in degrees ``0, ..., D``.
    """
    if q < 1:
        raise InvalidInputError(f"Cyclic order must be >= 1: {q}")

    def ring_mul(a: List[int], b: List[int]) -> List[int]:
        out = [0] * q
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[(i + j) % q] += x * y
        return out

    t_minus_one = [0] * q
    t_minus_one[1 % q] += 1
    t_minus_one[0] -= 1
    norm = [1] * q
    if any(ring_mul(t_minus_one, norm)) or any(ring_mul(norm, t_minus_one)):
        raise ArithmeticError("Periodic resolution does not compose to zero")

    def rank(n: int) -> int:
        # d_n for n >= 1, augmented to F_p
        if n < 1:
            return 0
        element = t_minus_one if n % 2 else norm
        return 1 if sum(element) % p else 0

    return [1 - rank(n) - rank(n + 1) for n in range(D + 1)]


def _check_truncations(*bases: HomologyBasis) -> None:
    if len({(h.p, h.D) for h in bases}) > 1:
        raise TruncationMismatchError(
            "Homology bases differ in prime or truncation: "
            + ", ".join(repr(h) for h in bases)
        )


class ChainMap():
    """Chain map between bar complexes induced by a group homomorphism."""

    def __init__(
        self,
        f: GroupHom,
        source: BarComplex,
        target: BarComplex,
    ) -> None:
        """Class constructor."""
        if f.source != source.group or f.target != target.group:
            raise InvalidGroupData(
                "Homomorphism does not match the bar complexes"
            )
        self.f = f
        self.source = source
        self.target = target

    def apply(self, n: int, chain: SparseVector) -> SparseVector:
        return self.source.push(self.f.images, n, chain, self.target)

    def commutes(self, n: int) -> bool:
        """Whether the map commutes with the boundary on degree `n`."""
        if n == 0:
            return True
        for index in range(self.source.size(n)):
            left = self.target.boundary_of(n, self.apply(n, {index: 1}))
            right = self.apply(n - 1, self.source.boundary(n, index))
            if left != right:
                return False
        return True


def induced_map(
    f: GroupHom,
    hs: HomologyBasis,
    ht: HomologyBasis,
    check_chain_map: bool = True,
) -> List[List[List[int]]]:
    """Matrices of the map induced on homology by `f`, one per degree.

    Column ``j`` of the degree-``n`` matrix holds the coordinates of the
    image of the ``j``-th source class.

    Raises:
        pperf_cli.errors.TruncationMismatchError: The bases differ in prime
            or truncation degree.
        pperf_cli.errors.InvalidGroupData: `f` does not go between the two
            groups, or does not commute with the boundaries.
    """
    _check_truncations(hs, ht)
    chain_map = ChainMap(f, hs.complex, ht.complex)
    matrices = []
    for n in range(hs.D + 1):
        if check_chain_map and not chain_map.commutes(n):
            raise InvalidGroupData(f"Induced map is not a chain map in {n}")
        images = [
            ht.projection(n, chain_map.apply(n, z))
            for z in hs.representatives[n]
        ]
        matrices.append([
            [images[j][i] for j in range(hs.dims[n])]
            for i in range(ht.dims[n])
        ])
    return matrices


def shuffle_product(
    left_complex: BarComplex,
    a: int,
    x: SparseVector,
    right_complex: BarComplex,
    b: int,
    y: SparseVector,
    left: Sequence[int],
    right: Sequence[int],
    target: BarComplex,
) -> SparseVector:
    """Shuffle (Eilenberg-Zilber) product of chains pushed into `target`.

    Arguments:
        left_complex: Bar complex `x` lives in.
        a: Degree of `x`.
        x: Chain of the left group.
        right_complex: Bar complex `y` lives in.
        b: Degree of `y`.
        y: Chain of the right group.
        left: Images in the target group of the left group's elements.
        right: Images in the target group of the right group's elements.
        target: Bar complex of the target group.

    Returns:
        Sum over ``(a, b)``-shuffles of the interleaved tuples with the
        shuffle sign.
    """
    n = a + b
    p = target.p
    shuffles = []
    for slots in combinations(range(n), a):
        chosen = set(slots)
        inversions = 0
        seen_right = 0
        for k in range(n):
            if k in chosen:
                inversions += seen_right
            else:
                seen_right += 1
        shuffles.append((chosen, -1 if inversions % 2 else 1))
    result: SparseVector = {}
    for i, cx in x.items():
        g = [left[e] for e in left_complex.tuple_at(a, i)]
        for j, cy in y.items():
            h = [right[e] for e in right_complex.tuple_at(b, j)]
            coeff = cx * cy
            for chosen, sign in shuffles:
                gi, hi = iter(g), iter(h)
                entries = tuple(
                    next(gi) if k in chosen else next(hi) for k in range(n)
                )
                target._put(result, entries, sign * coeff)
    return result


def _front_back(
    cx: BarComplex,
    n: int,
    index: int,
) -> Iterator[Tuple[int, int, Tuple_, Tuple_]]:
    t = cx.tuple_at(n, index)
    for i in range(n + 1):
        yield i, n - i, t[:i], t[i:]


def aw_coproduct(h: HomologyBasis) -> List[List[Dict[Tuple, int]]]:
    """Alexander-Whitney comultiplication on homology.

    Returns:
        For each degree ``n`` and class ``k``, a dictionary mapping
        ``((i, r), (n - i, s))`` to the coefficient of ``x_r (x) x_s``.

    Examples:
        >>> aw_coproduct(bar_homology(FiniteGroup.cyclic(2), 2, 1))[1][0]
        {((0, 0), (1, 0)): 1, ((1, 0), (0, 0)): 1}
    """
    cx = h.complex
    p = h.p
    result = []
    for n in range(h.D + 1):
        per_class = []
        for z in h.representatives[n]:
            terms: Dict[Tuple, int] = {}
            for index, coeff in z.items():
                for i, j, front, back in _front_back(cx, n, index):
                    u = h.projection(i, {cx.index_of(front): 1})
                    if not any(u):
                        continue
                    v = h.projection(j, {cx.index_of(back): 1})
                    for r, ur in enumerate(u):
                        if not ur:
                            continue
                        for s, vs in enumerate(v):
                            if vs:
                                key = ((i, r), (j, s))
                                terms[key] = (
                                    terms.get(key, 0) + coeff * ur * vs
                                ) % p
            per_class.append({k: c for k, c in sorted(terms.items()) if c})
        result.append(per_class)
    return result


class KunnethProduct(NamedTuple):
    """Homology of a direct product with the cross product witness.

    Attributes:
        basis: Homology basis of the product group.
        pairs: Per degree, the index pairs ``((a, i), (b, j))`` of tensor
            classes ``x_i (x) y_j`` with ``a + b`` equal to the degree.
        cross: Per degree, the matrix whose column for each pair holds the
            coordinates of the shuffle product in `basis`.
        splitting: Per degree, the matrix of the Alexander-Whitney map from
            `basis` to the tensor classes, rows indexed like `pairs`.
        aw_after_ez: Whether ``splitting * cross`` is the identity.
        ez_after_aw: Whether ``cross * splitting`` is the identity.
    """

    basis: HomologyBasis
    pairs: List[List[Tuple[Tuple[int, int], Tuple[int, int]]]]
    cross: List[List[List[int]]]
    splitting: List[List[List[int]]]
    aw_after_ez: bool
    ez_after_aw: bool

    @property
    def dims_match(self) -> bool:
        return all(
            len(pairs) == dim
            for pairs, dim in zip(self.pairs, self.basis.dims)
        )


def _matmul(
    a: List[List[int]],
    b: List[List[int]],
    p: int,
) -> List[List[int]]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) % p for j in range(cols)]
        for row in a
    ]


def _is_identity(matrix: List[List[int]], size: int) -> bool:
    if len(matrix) != size:
        return False
    return all(
        row == [int(i == j) for j in range(size)]
        for i, row in enumerate(matrix)
    )


def kunneth_product(
    h1: HomologyBasis,
    h2: HomologyBasis,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> KunnethProduct:
    """Homology of ``G x H`` with the cross product of `h1` and `h2`.

    Raises:
        pperf_cli.errors.TruncationMismatchError: The bases differ in prime
            or truncation degree.
        pperf_cli.errors.BudgetExceededError: The product group exceeds the
            bar budget.
    """
    _check_truncations(h1, h2)
    G, H = h1.group, h2.group
    product = FiniteGroup.direct_product(G, H)
    hp = bar_homology(product, h1.p, h1.D, tuple_budget=tuple_budget)
    p, D = h1.p, h1.D
    cx = hp.complex
    left = [g * H.order for g in G.elements]
    right = list(H.elements)
    project_left = [e // H.order for e in product.elements]
    project_right = [e % H.order for e in product.elements]
    all_pairs, crosses, splittings = [], [], []
    aw_after_ez = ez_after_aw = True
    for n in range(D + 1):
        pairs = [
            ((a, i), (n - a, j))
            for a in range(n + 1)
            for i in range(h1.dims[a])
            for j in range(h2.dims[n - a])
        ]
        position = {pair: k for k, pair in enumerate(pairs)}
        columns = []
        for (a, i), (b, j) in pairs:
            chain = shuffle_product(
                h1.complex, a, h1.representatives[a][i],
                h2.complex, b, h2.representatives[b][j],
                left, right, cx,
            )
            columns.append(hp.projection(n, chain))
        cross = [
            [columns[k][r] for k in range(len(pairs))]
            for r in range(hp.dims[n])
        ]
        split_columns = []
        for z in hp.representatives[n]:
            coords = [0] * len(pairs)
            for index, coeff in z.items():
                t = cx.tuple_at(n, index)
                for a in range(n + 1):
                    front = tuple(project_left[e] for e in t[:a])
                    back = tuple(project_right[e] for e in t[a:])
                    if not all(front) or not all(back):
                        continue
                    u = h1.projection(a, {h1.complex.index_of(front): 1})
                    v = h2.projection(n - a, {h2.complex.index_of(back): 1})
                    for i, ui in enumerate(u):
                        for j, vj in enumerate(v):
                            if ui and vj:
                                k = position[((a, i), (n - a, j))]
                                coords[k] += coeff * ui * vj
            split_columns.append([c % p for c in coords])
        splitting = [
            [split_columns[r][k] for r in range(hp.dims[n])]
            for k in range(len(pairs))
        ]
        if len(pairs) != hp.dims[n]:
            aw_after_ez = ez_after_aw = False
        else:
            aw_after_ez &= _is_identity(
                _matmul(splitting, cross, p), len(pairs)
            )
            ez_after_aw &= _is_identity(
                _matmul(cross, splitting, p), hp.dims[n]
            )
        all_pairs.append(pairs)
        crosses.append(cross)
        splittings.append(splitting)
    return KunnethProduct(
        basis=hp,
        pairs=all_pairs,
        cross=crosses,
        splitting=splittings,
        aw_after_ez=aw_after_ez,
        ez_after_aw=ez_after_aw,
    )


def homology_table(bases: Sequence[HomologyBasis]) -> List[Dict]:
    """Rows ``{group, p, degree, dim}`` for each basis and degree."""
    return [
        dump(HomologyRow(group=h.group.name, p=h.p, degree=n, dim=dim))
        for h in bases
        for n, dim in enumerate(h.dims)
    ]


def table_to_csv(rows: Sequence[Dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=['group', 'p', 'degree', 'dim'],
        lineterminator='\n',
    )
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def _block_embedding(
    small: FiniteGroup,
    big: FiniteGroup,
    before: int,
    after: int,
) -> List[int]:
    """Indices in `big` of the block sums ``1_before + g + 1_after``."""
    position = {label: i for i, label in enumerate(big.labels)}
    return [
        position[direct_sum(
            direct_sum(Permutation.identity(before), g),
            Permutation.identity(after),
        )]
        for g in small.labels
    ]


def class_name(degree: int, rank: int, weight: int) -> str:
    """Basis name of class `rank` in `degree` on component `weight`."""
    if degree == 0:
        return f"[{weight}]"
    return f"h{degree}.{rank}[{weight}]"


def assemble_fin_bialgebra(
    N: int,
    D: int,
    p: int,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> GradedBialgebra:
    """Truncated homology bialgebra of the symmetric groups.

    The basis is the union of the homology bases of ``S_0, ..., S_N`` in
    degrees ``0, ..., D``, with weight ``n`` on ``S_n``. Multiplication is
    the shuffle product pushed along block sums ``S_a x S_b -> S_(a+b)``
    and comultiplication is the Alexander-Whitney diagonal.

    Returns:
        :class:`pperf_cli.fpbialg.GradedBialgebra` with weight window
        ``W = N``.

    Raises:
        pperf_cli.errors.BudgetExceededError: Some ``S_n`` exceeds the bar
            budget.
    """
    if N < 0:
        raise InvalidInputError(f"Component bound must be >= 0: {N}")
    groups = [symmetric(n) for n in range(N + 1)]
    for G in groups:
        check_budget(G.order, D, tuple_budget)
    homs = [bar_homology(G, p, D, tuple_budget) for G in groups]

    basis = []
    index: Dict[Tuple[int, int, int], int] = {}
    for n, h in enumerate(homs):
        for d in range(D + 1):
            for r in range(h.dims[d]):
                index[(n, d, r)] = len(basis)
                basis.append(BasisElement(
                    name=class_name(d, r, n), degree=d, weight=n,
                ))

    embeddings = {
        (a, b): (
            _block_embedding(groups[a], groups[a + b], 0, b),
            _block_embedding(groups[b], groups[a + b], a, 0),
        )
        for a in range(N + 1) for b in range(N + 1 - a)
    }
    mult: Dict[Tuple[int, int], Dict[int, int]] = {}
    for (a, d, r), i in index.items():
        for (b, e, s), j in index.items():
            if a + b > N or d + e > D:
                continue
            total = homs[a + b]
            left, right = embeddings[(a, b)]
            chain = shuffle_product(
                homs[a].complex, d, homs[a].representatives[d][r],
                homs[b].complex, e, homs[b].representatives[e][s],
                left, right, total.complex,
            )
            coords = total.projection(d + e, chain)
            mult[(i, j)] = {
                index[(a + b, d + e, k)]: c
                for k, c in enumerate(coords) if c
            }

    comult: Dict[int, Dict[Tuple[int, int], int]] = {}
    for n, h in enumerate(homs):
        coproducts = aw_coproduct(h)
        for d in range(D + 1):
            for r, terms in enumerate(coproducts[d]):
                comult[index[(n, d, r)]] = {
                    (index[(n, i, u)], index[(n, j, v)]): c
                    for ((i, u), (j, v)), c in terms.items()
                }

    bialgebra = GradedBialgebra(
        p=p,
        D=D,
        W=N,
        basis=basis,
        mult=mult,
        comult=comult,
        unit=index[(0, 0, 0)],
        counit={index[(n, 0, 0)]: 1 for n in range(N + 1)},
    )
    logger.info(
        f"Assembled homology bialgebra of S_0..S_{N} up to degree {D} "
        f"over F_{p}: {len(basis)} basis elements"
    )
    return bialgebra
