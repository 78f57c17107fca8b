"""Exact permutations of {0, ..., n-1} and small permutation groups.

Permutations compose "apply right first": ``(p * r)(x) == p(r(x))``. This
convention is used by every module and by all serialized data.
"""

from collections import defaultdict
import logging
from math import gcd
import re
from typing import (
    Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple,
)

from sympy import Matrix, isprime

from pperf_cli.errors import (
    DegreeMismatchError,
    GroupTooLargeError,
    InvalidInputError,
    InvalidPermutation,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER_BOUND = 10_000
DEFAULT_WITNESS_BOUND = 1_000

_RE_CYCLE = re.compile(r"\(([^()]*)\)")


class Permutation():
    """Immutable permutation given by its image array.

    Arguments:
        images: Position ``x`` is mapped to ``images[x]``.

    Attributes:
        images: Image array as a tuple.

    Raises:
        pperf_cli.errors.InvalidPermutation: `images` is not a bijection of
            ``{0, ..., len(images) - 1}``.

    Examples:
        >>> Permutation([1, 0, 2]) * Permutation([0, 2, 1])
        (0 1 2)
    """

    __slots__ = ('images',)

    def __init__(self, images: Iterable[int]) -> None:
        """Class constructor."""
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(
                f"Image array is not a bijection: {list(images)}"
            )
        self.images: Tuple[int, ...] = images

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> 'Permutation':
        perm = object.__new__(cls)
        perm.images = images
        return perm

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        """Identity permutation of the given degree."""
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(
        cls,
        cycles: Iterable[Sequence[int]],
        degree: int,
    ) -> 'Permutation':
        """Build a permutation from disjoint cycles.

        Arguments:
            cycles: Disjoint cycles; each cycle maps an entry to its
                successor and the last entry to the first.
            degree: Degree of the permutation.

        Returns:
            The permutation with the given cycles.

        Raises:
            pperf_cli.errors.InvalidPermutation: Cycles are not disjoint or
                leave ``{0, ..., degree - 1}``.
        """
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for i, x in enumerate(cycle):
                if x in seen or not 0 <= x < degree:
                    raise InvalidPermutation(
                        f"Cycles are not disjoint in degree {degree}: "
                        f"{[list(c) for c in cycles]}"
                    )
                seen.add(x)
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"Cannot compose degrees {self.degree} and {other.degree}"
            )
        images = self.images
        return Permutation._trusted(tuple(images[x] for x in other.images))

    def inverse(self) -> 'Permutation':
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation._trusted(tuple(inv))

    def __pow__(self, k: int) -> 'Permutation':
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def order(self) -> int:
        """Order of the permutation (lcm of its cycle lengths)."""
        result = 1
        for length in cycle_decomposition(self)[0].lengths:
            result = result * length // gcd(result, length)
        return result

    def commutes_with(self, other: 'Permutation') -> bool:
        return self * other == other * self

    def to_list(self) -> List[int]:
        return list(self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: 'Permutation') -> bool:
        return (self.degree, self.images) < (other.degree, other.images)

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return render_cycles(self)


class CycleType(NamedTuple):
    """Cycle lengths >= 2 (descending) plus the number of fixed points."""

    lengths: Tuple[int, ...]
    fixed_points: int

    @property
    def degree(self) -> int:
        return sum(self.lengths) + self.fixed_points

    def to_dict(self) -> Dict:
        return {
            'lengths': list(self.lengths),
            'fixed_points': self.fixed_points,
        }


def _orbits(p: Permutation) -> List[Tuple[int, ...]]:
    """All orbits, each starting at its smallest point, by smallest point."""
    seen = [False] * p.degree
    orbits = []
    for start in range(p.degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        x = p(start)
        while x != start:
            orbit.append(x)
            seen[x] = True
            x = p(x)
        orbits.append(tuple(orbit))
    return orbits


def cycle_decomposition(
    p: Permutation,
) -> Tuple[CycleType, List[Tuple[int, ...]]]:
    """Decompose a permutation into disjoint cycles.

    Arguments:
        p: Permutation to decompose.

    Returns:
        Tuple of the cycle type and the explicit non-trivial cycles, each
        starting at its smallest element, ordered by that element.

    Examples:
        >>> cycle_decomposition(Permutation([0, 4, 1, 5, 2, 6, 3, 7]))[1]
        [(1, 4, 2), (3, 5, 6)]
    """
    orbits = _orbits(p)
    cycles = [orbit for orbit in orbits if len(orbit) > 1]
    cycle_type = CycleType(
        lengths=tuple(sorted((len(c) for c in cycles), reverse=True)),
        fixed_points=len(orbits) - len(cycles),
    )
    return cycle_type, cycles


def render_cycles(p: Permutation) -> str:
    """Render a permutation in cycle notation; the identity is ``()``."""
    cycles = cycle_decomposition(p)[1]
    if not cycles:
        return "()"
    return "".join(
        "(" + " ".join(str(x) for x in cycle) + ")" for cycle in cycles
    )


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``(0 1)(2 3)`` into a permutation.

    Raises:
        pperf_cli.errors.InvalidPermutation: The text is not valid cycle
            notation for the given degree.
    """
    stripped = _RE_CYCLE.sub("", text).strip()
    if stripped:
        raise InvalidPermutation(f"Cannot parse cycle notation: {text!r}")
    cycles = []
    for body in _RE_CYCLE.findall(text):
        entries = body.replace(",", " ").split()
        try:
            cycles.append([int(x) for x in entries])
        except ValueError:
            raise InvalidPermutation(f"Cannot parse cycle notation: {text!r}")
    return Permutation.from_cycles([c for c in cycles if c], degree)


def sign(p: Permutation) -> int:
    """Signature ``(-1) ** (n - number of orbits)``."""
    return -1 if (p.degree - len(_orbits(p))) % 2 else 1


def permutation_matrix_determinant(p: Permutation) -> int:
    """Exact determinant of the permutation matrix of `p`.

    The matrix has a one in row ``p(x)`` and column ``x``; its determinant
    agrees with :func:`sign`.
    """
    n = p.degree
    if n == 0:
        return 1
    matrix = Matrix.zeros(n, n)
    for x, y in enumerate(p.images):
        matrix[y, x] = 1
    return int(matrix.det(method='bareiss'))


def block_diagonal_embed(p: Permutation, copies: int) -> Permutation:
    """Diagonal copy of `p` on `copies` consecutive blocks.

    Position ``i + n * k`` is mapped to ``p(i) + n * k``.
    """
    if copies < 1:
        raise InvalidInputError(f"Number of copies must be >= 1: {copies}")
    n = p.degree
    return Permutation._trusted(tuple(
        p.images[i] + n * k for k in range(copies) for i in range(n)
    ))


def direct_sum(p: Permutation, r: Permutation) -> Permutation:
    """Block sum acting by `p` on the first block and `r` on the second."""
    shift = p.degree
    return Permutation._trusted(
        p.images + tuple(x + shift for x in r.images)
    )


def grid_transpose(a: int, b: int) -> Permutation:
    """Transpose of an ``a`` x ``b`` grid.

    Position ``i + a * j`` is mapped to ``j + b * i`` for ``0 <= i < a``,
    ``0 <= j < b``. With ``b == a ** 2`` this is the p^3-cycle for
    ``a == p``, a product of disjoint 3-cycles.

    Examples:
        >>> grid_transpose(2, 4).to_list()
        [0, 4, 1, 5, 2, 6, 3, 7]
    """
    if a < 1 or b < 1:
        raise InvalidInputError(f"Grid sides must be positive: {a}, {b}")
    images = [0] * (a * b)
    for j in range(b):
        for i in range(a):
            images[i + a * j] = j + b * i
    return Permutation._trusted(tuple(images))


def pn_cycle(p: int, n: int) -> Permutation:
    """The p^n-cycle: transpose of the ``p`` x ``p ** (n - 1)`` grid.

    Every cycle length divides `n`.
    """
    if n < 1:
        raise InvalidInputError(f"Exponent must be >= 1: {n}")
    return grid_transpose(p, p ** (n - 1))


def _root_of_cycles(
    cycles: List[Tuple[int, ...]],
    q: int,
) -> List[Tuple[int, ...]]:
    """Cycles of a q-th root of the product of `cycles`.

    Cycles of length coprime to `q` are raised to the inverse of `q`; groups
    of `q` cycles of equal length divisible by `q` are interleaved into one
    long cycle.
    """
    by_length: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for cycle in cycles:
        by_length[len(cycle)].append(cycle)
    root_cycles = []
    for m, group in sorted(by_length.items()):
        if m % q:
            s = pow(q, -1, m)
            for cycle in group:
                root_cycles.append(tuple(cycle[(k * s) % m] for k in range(m)))
            continue
        for start in range(0, len(group), q):
            bundle = group[start:start + q]
            root_cycles.append(tuple(
                bundle[i][j] for j in range(m) for i in range(q)
            ))
    return root_cycles


def has_pth_root(
    p: Permutation,
    q: int,
    witness_bound: int = DEFAULT_WITNESS_BOUND,
) -> Tuple[bool, Optional[Permutation]]:
    """Decide whether `p` has a `q`-th root in the symmetric group.

    A root exists iff, for every cycle length ``m`` divisible by `q`, the
    number of ``m``-cycles is divisible by `q`.

    Arguments:
        p: Permutation to take a root of.
        q: Prime exponent.
        witness_bound: Largest degree for which a witness is constructed.

    Returns:
        Tuple of the verdict and a verified witness ``r`` with
        ``r ** q == p`` (``None`` if there is no root or the degree exceeds
        `witness_bound`).

    Raises:
        pperf_cli.errors.InvalidInputError: `q` is not prime.

    Examples:
        >>> has_pth_root(parse_cycles("(0 1)(2 3)", 4), 2)
        (True, (0 2 1 3))
    """
    if not isprime(q):
        raise InvalidInputError(f"Root exponent must be prime: {q}")
    cycle_type, cycles = cycle_decomposition(p)
    counts: Dict[int, int] = defaultdict(int)
    for length in cycle_type.lengths:
        counts[length] += 1
    exists = all(c % q == 0 for m, c in counts.items() if m % q == 0)
    if not exists or p.degree > witness_bound:
        return exists, None
    root = Permutation.from_cycles(_root_of_cycles(cycles, q), p.degree)
    if root ** q != p:
        raise ArithmeticError(f"Root construction failed for {p}")
    return True, root


def are_conjugate(
    p: Permutation,
    r: Permutation,
) -> Tuple[bool, Optional[Permutation]]:
    """Decide conjugacy in the symmetric group and build a conjugator.

    Returns:
        Tuple of the verdict and a conjugator ``g`` with
        ``g * p * g.inverse() == r`` (``None`` if not conjugate).

    Raises:
        pperf_cli.errors.DegreeMismatchError: Degrees differ.
    """
    if p.degree != r.degree:
        raise DegreeMismatchError(
            f"Cannot compare degrees {p.degree} and {r.degree}"
        )
    orbits_p = sorted(_orbits(p), key=len)
    orbits_r = sorted(_orbits(r), key=len)
    if [len(o) for o in orbits_p] != [len(o) for o in orbits_r]:
        return False, None
    images = [0] * p.degree
    for orbit_p, orbit_r in zip(orbits_p, orbits_r):
        for a, b in zip(orbit_p, orbit_r):
            images[a] = b
    g = Permutation._trusted(tuple(images))
    if g * p * g.inverse() != r:
        raise ArithmeticError(f"Conjugator construction failed: {p}, {r}")
    return True, g


class PermGroup():
    """Finite permutation group given by generators and its elements.

    Arguments:
        degree: Degree of all permutations.
        generators: Generating permutations.
        elements: Fully enumerated element set.

    Attributes:
        degree: Degree of all permutations.
        generators: Generating permutations, sorted.
        elements: Enumerated elements.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation],
        elements: FrozenSet[Permutation],
    ) -> None:
        """Class constructor."""
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(sorted(
            set(g for g in generators if not g.is_identity())
        ))
        self.elements = elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def sorted_elements(self) -> List[Permutation]:
        """Elements ordered by image array; the identity comes first."""
        return sorted(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        return all(
            a.commutes_with(b)
            for i, a in enumerate(self.generators)
            for b in self.generators[i + 1:]
        )

    def is_normal_in(self, other: 'PermGroup') -> bool:
        return all(
            g * h * g.inverse() in self.elements
            for g in other.generators
            for h in self.generators
        )


def generate_group(
    gens: Iterable[Permutation],
    order_bound: int = DEFAULT_ORDER_BOUND,
    degree: Optional[int] = None,
) -> PermGroup:
    """Enumerate the group generated by `gens` by closure.

    Arguments:
        gens: Generating permutations of equal degree.
        order_bound: Largest admissible group order.
        degree: Degree to use when `gens` is empty.

    Returns:
        Enumerated permutation group.

    Raises:
        pperf_cli.errors.DegreeMismatchError: Generators differ in degree.
        pperf_cli.errors.GroupTooLargeError: The closure exceeds
            `order_bound` elements.
    """
    gens = list(gens)
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise DegreeMismatchError(f"Generators of unequal degrees: {degrees}")
    if not degrees:
        raise InvalidInputError("Degree required for an empty generating set")
    n = degrees.pop()
    identity = Permutation.identity(n)
    elements = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    next_frontier.append(y)
                    if len(elements) > order_bound:
                        raise GroupTooLargeError(
                            f"Group order exceeds bound {order_bound}"
                        )
        frontier = next_frontier
    logger.debug(f"Enumerated group of degree {n} and order {len(elements)}")
    return PermGroup(degree=n, generators=gens, elements=frozenset(elements))


def symmetric_group(
    n: int,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> PermGroup:
    """Symmetric group on ``{0, ..., n - 1}``."""
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([(0, 1)], n))
    if n >= 3:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return generate_group(gens, order_bound=order_bound, degree=n)


def alternating_group(
    n: int,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> PermGroup:
    """Alternating group, generated by the 3-cycles ``(0 1 k)``."""
    gens = [Permutation.from_cycles([(0, 1, k)], n) for k in range(2, n)]
    return generate_group(gens, order_bound=order_bound, degree=n)


def cyclic_group(
    p: Permutation,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> PermGroup:
    """Cyclic group generated by a single permutation."""
    return generate_group([p], order_bound=order_bound)


def _normal_closure(
    gens: List[Permutation],
    G: PermGroup,
    order_bound: int,
) -> PermGroup:
    N = generate_group(gens, order_bound=order_bound, degree=G.degree)
    gens = list(N.generators)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            g_inv = g.inverse()
            for h in list(gens):
                conj = g * h * g_inv
                if conj not in N.elements:
                    gens.append(conj)
                    N = generate_group(
                        gens, order_bound=order_bound, degree=G.degree,
                    )
                    changed = True
    return N


def commutator_subgroup(
    G: PermGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> PermGroup:
    """Commutator subgroup ``[G, G]``.

    Computed as the normal closure of the commutators of generators.
    """
    commutators = set()
    for a in G.generators:
        for b in G.generators:
            c = a * b * a.inverse() * b.inverse()
            if not c.is_identity():
                commutators.add(c)
    return _normal_closure(sorted(commutators), G, order_bound)


def derived_series(
    G: PermGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> List[PermGroup]:
    """Derived series ``G, [G,G], ...`` up to and including the first
    repeated term (a perfect group) or the trivial group.

    Examples:
        >>> [H.order for H in derived_series(symmetric_group(4))]
        [24, 12, 4, 1]
    """
    series = [G]
    while not series[-1].is_trivial():
        nxt = commutator_subgroup(series[-1], order_bound=order_bound)
        series.append(nxt)
        if nxt.order == series[-2].order:
            break
    return series


def perfect_core(
    G: PermGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> PermGroup:
    """Stabilized term of the derived series."""
    return derived_series(G, order_bound=order_bound)[-1]


def is_hypoabelian(
    G: PermGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> bool:
    return perfect_core(G, order_bound=order_bound).is_trivial()


def is_perfect(
    G: PermGroup,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> bool:
    return commutator_subgroup(G, order_bound=order_bound).order == G.order
