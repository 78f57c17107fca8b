"""Finite groups given by tables and verifiers for structure maps
``rho: G^p -> G`` and ``rho: A^p -> A`` on G-modules.
"""

from itertools import product
import logging
from math import gcd
import re
from typing import (Dict, List, NamedTuple, Optional, Sequence, Tuple)

from pperf_cli.errors import (
    BudgetExceededError,
    InvalidGroupData,
    InvalidInputError,
    MalformedCandidateError,
    NotInvertibleError,
)
from pperf_cli.perm import (
    PermGroup,
    Permutation,
    alternating_group,
    generate_group,
    render_cycles,
    symmetric_group,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 1_000_000

_RE_PRODUCT = re.compile(r"\s*[x×]\s*")


class FiniteGroup():
    """Finite group given by its multiplication table.

    The identity is stored at index 0; tables with another identity index
    are relabeled on construction.

    Arguments:
        table: ``table[a][b]`` is the index of ``a * b``.
        identity: Index of the identity in `table`.
        labels: Optional element names.
        name: Optional group name used in reports.

    Raises:
        pperf_cli.errors.InvalidGroupData: The table is not a group table.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        identity: int = 0,
        labels: Optional[Sequence] = None,
        name: Optional[str] = None,
    ) -> None:
        """Class constructor."""
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidGroupData("Group table must be square, non-empty")
        if not 0 <= identity < n:
            raise InvalidGroupData(f"Identity index out of range: {identity}")
        if any(not 0 <= x < n for row in table for x in row):
            raise InvalidGroupData("Group table entry out of range")
        order = list(range(n))
        order[0], order[identity] = identity, 0
        position = {old: new for new, old in enumerate(order)}
        self.table: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(position[table[a][b]] for b in order) for a in order
        )
        labels = list(labels) if labels else [str(i) for i in range(n)]
        if len(labels) != n:
            raise InvalidGroupData("One label per element required")
        self.labels = tuple(labels[old] for old in order)
        self.name = name or f"G{n}"
        self._validate()
        self._inverse = tuple(
            next(b for b in range(n) if self.table[a][b] == 0)
            for a in range(n)
        )

    def _validate(self) -> None:
        t = self.table
        n = len(t)
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise InvalidGroupData(f"Identity law fails at {a}")
            if sorted(t[a]) != list(range(n)):
                raise InvalidGroupData(f"Row {a} is not a permutation")
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidGroupData(
                            f"Not associative at ({a}, {b}, {c})"
                        )

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inverse[a], -k
        result = 0
        for _ in range(k):
            result = self.table[result][a]
        return result

    def conjugate(self, k: int, a: int) -> int:
        """``k a k^-1``."""
        return self.table[self.table[k][a]][self._inverse[k]]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements
                   for b in self.elements)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        result = 1
        for a in self.elements:
            k = self.element_order(a)
            result = result * k // gcd(result, k)
        return result

    def power_map_bijective(self, p: int) -> bool:
        """Whether ``g -> g^p`` is a bijection (unique p-divisibility)."""
        return len({self.power(a, p) for a in self.elements}) == self.order

    def generating_set(self) -> List[int]:
        """Greedy generating set."""
        gens: List[int] = []
        reached = {0}
        for a in self.elements:
            if a not in reached:
                gens.append(a)
                reached = set(self.closure(gens))
        return gens

    def closure(self, gens: Sequence[int]) -> List[int]:
        reached = {0}
        frontier = [0]
        while frontier:
            frontier = [
                self.table[x][g] for x in frontier for g in gens
                if self.table[x][g] not in reached
            ]
            reached.update(frontier)
        return sorted(reached)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def to_dict(self) -> Dict:
        return {
            'size': self.order,
            'table': [list(row) for row in self.table],
            'identity': 0,
        }

    @classmethod
    def cyclic(cls, n: int) -> 'FiniteGroup':
        """The cyclic group ``Z/n``."""
        return cls(
            [[(a + b) % n for b in range(n)] for a in range(n)],
            name='trivial' if n == 1 else f"Z{n}",
        )

    @classmethod
    def from_perm_group(
        cls,
        G: PermGroup,
        name: Optional[str] = None,
    ) -> 'FiniteGroup':
        """Table of an enumerated permutation group; labels are the
        permutations, sorted by image array (identity first).
        """
        elements = G.sorted_elements()
        position = {g: i for i, g in enumerate(elements)}
        table = [[position[a * b] for b in elements] for a in elements]
        return cls(table, labels=elements, name=name)

    @classmethod
    def direct_product(
        cls,
        G: 'FiniteGroup',
        H: 'FiniteGroup',
    ) -> 'FiniteGroup':
        """``G x H``; ``(g, h)`` has index ``g * |H| + h``."""
        nh = H.order
        table = [
            [G.mul(g1, g2) * nh + H.mul(h1, h2)
             for g2 in G.elements for h2 in H.elements]
            for g1 in G.elements for h1 in H.elements
        ]
        labels = [(a, b) for a in G.labels for b in H.labels]
        return cls(table, labels=labels, name=f"{G.name}x{H.name}")


class GroupHom():
    """Group homomorphism given by the images of all elements.

    Raises:
        pperf_cli.errors.InvalidGroupData: `images` is not multiplicative.
    """

    def __init__(
        self,
        source: FiniteGroup,
        target: FiniteGroup,
        images: Sequence[int],
    ) -> None:
        """Class constructor."""
        self.source = source
        self.target = target
        self.images = tuple(images)
        if len(self.images) != source.order:
            raise InvalidGroupData("One image per source element required")
        for a in source.elements:
            for b in source.elements:
                if (self.images[source.mul(a, b)]
                        != target.mul(self.images[a], self.images[b])):
                    raise InvalidGroupData(f"Not multiplicative at ({a}, {b})")

    @classmethod
    def from_function(
        cls,
        source: FiniteGroup,
        target: FiniteGroup,
        function,
    ) -> 'GroupHom':
        """Homomorphism induced by a function on element labels."""
        position = {label: i for i, label in enumerate(target.labels)}
        return cls(
            source, target, [position[function(x)] for x in source.labels],
        )

    @classmethod
    def identity(cls, G: FiniteGroup) -> 'GroupHom':
        return cls(G, G, list(G.elements))

    @classmethod
    def trivial(cls, G: FiniteGroup, H: FiniteGroup) -> 'GroupHom':
        return cls(G, H, [0] * G.order)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def compose(self, first: 'GroupHom') -> 'GroupHom':
        """``self`` after `first`."""
        return GroupHom(
            first.source, self.target,
            [self.images[first.images[a]] for a in first.source.elements],
        )


def _quaternion_group() -> FiniteGroup:
    # units 1, i, j, k; (u, v) -> (negate, w)
    rule = {
        (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    table = []
    for s in range(2):
        for u in range(4):
            row = []
            for t in range(2):
                for v in range(4):
                    if u == 0 or v == 0:
                        neg, w = 0, u or v
                    else:
                        neg, w = rule[(u, v)]
                    row.append(4 * ((s + t + neg) % 2) + w)
            table.append(row)
    labels = [f"{sign}{unit}" for sign in '+-' for unit in '1ijk']
    return FiniteGroup(table, labels=labels, name='Q8')


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``n`` points with permutation labels."""
    return FiniteGroup.from_perm_group(symmetric_group(n), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    return FiniteGroup.from_perm_group(alternating_group(n), name=f"A{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order, acting on ``order / 2`` points."""
    m = order // 2
    rotation = Permutation([(i + 1) % m for i in range(m)])
    reflection = Permutation([(-i) % m for i in range(m)])
    return FiniteGroup.from_perm_group(
        generate_group([rotation, reflection]), name=f"D{order}",
    )


def group_catalog(max_order: int = 8) -> Dict[str, FiniteGroup]:
    """All groups of order at most 8, one per isomorphism class.

    Returns:
        Dictionary from name (``trivial``, ``Z2``, ``Z2xZ2``, ``S3``,
        ``D8``, ``Q8``, ...) to group table, ordered by group order.
    """
    if max_order > 8:
        raise InvalidInputError("Catalog covers groups of order <= 8")
    Z = FiniteGroup.cyclic
    candidates = [
        Z(1), Z(2), Z(3), Z(4), FiniteGroup.direct_product(Z(2), Z(2)),
        Z(5), Z(6), symmetric(3), Z(7), Z(8),
        FiniteGroup.direct_product(Z(4), Z(2)),
        FiniteGroup.direct_product(
            FiniteGroup.direct_product(Z(2), Z(2)), Z(2),
        ),
        dihedral(8), _quaternion_group(),
    ]
    return {G.name: G for G in candidates if G.order <= max_order}


def group_by_name(name: str) -> FiniteGroup:
    """Parse names such as ``Z3``, ``S4``, ``A5``, ``D8``, ``Q8``,
    ``trivial`` or products ``Z2xZ2``.

    Raises:
        pperf_cli.errors.InvalidInputError: The name is not recognized.
    """
    factors = _RE_PRODUCT.split(name.strip())
    if len(factors) > 1:
        group = group_by_name(factors[0])
        for factor in factors[1:]:
            group = FiniteGroup.direct_product(group, group_by_name(factor))
        return group
    match = re.fullmatch(r"([ZSADQ])(\d+)|trivial", name.strip())
    if not match:
        raise InvalidInputError(f"Unknown group name: {name!r}")
    if name.strip() == 'trivial':
        return FiniteGroup.cyclic(1)
    kind, n = match.group(1), int(match.group(2))
    if kind == 'Z' and n >= 1:
        return FiniteGroup.cyclic(n)
    if kind == 'S' and n >= 1:
        return symmetric(n)
    if kind == 'A' and n >= 1:
        return alternating(n)
    if kind == 'D' and n >= 6 and n % 2 == 0:
        return dihedral(n)
    if kind == 'Q' and n == 8:
        return _quaternion_group()
    raise InvalidInputError(f"Unknown group name: {name!r}")


def endomorphisms(
    G: FiniteGroup,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> List[Tuple[int, ...]]:
    """All endomorphisms of `G` as image tables, sorted.

    Candidates are enumerated from images of a generating set and extended
    along words in the generators.
    """
    gens = G.generating_set()
    if G.order ** len(gens) > budget:
        raise BudgetExceededError(
            f"{G.order ** len(gens)} generator assignments exceed {budget}"
        )
    result = set()
    for assignment in product(G.elements, repeat=len(gens)):
        images: Dict[int, int] = {0: 0}
        frontier = [0]
        consistent = True
        while frontier and consistent:
            nxt = []
            for x in frontier:
                for g, image in zip(gens, assignment):
                    y = G.mul(x, g)
                    value = G.mul(images[x], image)
                    if y not in images:
                        images[y] = value
                        nxt.append(y)
                    elif images[y] != value:
                        consistent = False
                        break
                if not consistent:
                    break
            frontier = nxt
        if not consistent:
            continue
        table = tuple(images[a] for a in G.elements)
        if all(table[G.mul(a, b)] == G.mul(table[a], table[b])
               for a in G.elements for b in G.elements):
            result.add(table)
    return sorted(result)


class RhoCandidate():
    """Structure map ``rho: G^p -> G`` stored by coordinates.

    ``rho(g_1, ..., g_p)`` is the product of ``coordinates[i][g_i]``; the
    witness ``witnesses[i]`` belongs to the transposition ``(i i+1)``.

    Arguments:
        p: Arity.
        coordinates: ``p`` endomorphism tables.
        witnesses: ``p - 1`` elements, one per adjacent transposition.
    """

    def __init__(
        self,
        p: int,
        coordinates: Sequence[Sequence[int]],
        witnesses: Sequence[int],
    ) -> None:
        """Class constructor."""
        self.p = p
        self.coordinates = tuple(tuple(c) for c in coordinates)
        self.witnesses = tuple(witnesses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RhoCandidate):
            return NotImplemented
        return (self.p, self.coordinates) == (other.p, other.coordinates)

    def __hash__(self) -> int:
        return hash((self.p, self.coordinates))

    def __repr__(self) -> str:
        return f"RhoCandidate(p={self.p}, coordinates={self.coordinates})"

    def validate(self, G: FiniteGroup) -> None:
        """Check arity, endomorphism and commuting-image invariants.

        Raises:
            pperf_cli.errors.MalformedCandidateError: An invariant fails.
        """
        if self.p < 2:
            raise MalformedCandidateError(f"Arity must be >= 2: {self.p}")
        if len(self.coordinates) != self.p:
            raise MalformedCandidateError("One coordinate map per factor")
        if len(self.witnesses) != self.p - 1:
            raise MalformedCandidateError("One witness per transposition")
        if any(not 0 <= k < G.order for k in self.witnesses):
            raise MalformedCandidateError("Witness out of range")
        for c in self.coordinates:
            if len(c) != G.order or any(not 0 <= x < G.order for x in c):
                raise MalformedCandidateError("Coordinate table out of range")
            if any(c[G.mul(a, b)] != G.mul(c[a], c[b])
                   for a in G.elements for b in G.elements):
                raise MalformedCandidateError(
                    "Coordinate map is not an endomorphism"
                )
        for i, ci in enumerate(self.coordinates):
            for cj in self.coordinates[i + 1:]:
                images_i, images_j = set(ci), set(cj)
                if any(G.mul(a, b) != G.mul(b, a)
                       for a in images_i for b in images_j):
                    raise MalformedCandidateError(
                        "Images of distinct coordinates do not commute"
                    )

    def evaluate(self, G: FiniteGroup, args: Sequence[int]) -> int:
        result = 0
        for c, g in zip(self.coordinates, args):
            result = G.mul(result, c[g])
        return result

    def to_dict(self) -> Dict:
        return {
            'p': self.p,
            'coordinates': [list(c) for c in self.coordinates],
            'witnesses': list(self.witnesses),
        }


def _adjacent(p: int, i: int) -> Permutation:
    return Permutation.from_cycles([(i, i + 1)], p)


def _symmetry_failure(
    G: FiniteGroup,
    rho: RhoCandidate,
    sigma: Permutation,
    k: int,
) -> Optional[Dict]:
    """First violation of ``rho_{sigma(j)} = k rho_j k^-1``, if any."""
    for j in range(rho.p):
        for g in G.elements:
            left = rho.coordinates[sigma(j)][g]
            right = G.conjugate(k, rho.coordinates[j][g])
            if left != right:
                return {
                    'sigma': render_cycles(sigma),
                    'coordinate': j,
                    'element': g,
                }
    return None


class RhoVerdict(NamedTuple):
    """Outcome of :func:`verify_rho_group`."""

    conditions_hold: bool
    conclusion_holds: bool
    abelian: bool
    uniquely_p_divisible: bool
    counterexamples: Dict

    def to_dict(self) -> Dict:
        return dict(self._asdict())


def verify_rho_group(G: FiniteGroup, rho: RhoCandidate) -> RhoVerdict:
    """Check the two conditions on `rho` and the abelian, uniquely
    p-divisible conclusion for `G`.

    Condition (1) is ``rho(g, ..., g) = g``; condition (2) is
    ``rho o sigma = k_sigma rho k_sigma^-1`` on adjacent transpositions.

    Raises:
        pperf_cli.errors.MalformedCandidateError: `rho` violates its
            invariants.
    """
    rho.validate(G)
    counterexamples: Dict = {}
    diagonal = next(
        (g for g in G.elements if rho.evaluate(G, [g] * rho.p) != g), None,
    )
    if diagonal is not None:
        counterexamples['condition_1'] = {'element': diagonal}
    for i, k in enumerate(rho.witnesses):
        failure = _symmetry_failure(G, rho, _adjacent(rho.p, i), k)
        if failure is not None:
            counterexamples['condition_2'] = failure
            break
    conditions = not counterexamples
    non_commuting = next(
        ((a, b) for a in G.elements for b in G.elements
         if G.mul(a, b) != G.mul(b, a)),
        None,
    )
    if non_commuting is not None:
        counterexamples['abelian'] = list(non_commuting)
    powers: Dict[int, int] = {}
    collision = None
    for a in G.elements:
        b = powers.setdefault(G.power(a, rho.p), a)
        if b != a:
            collision = [b, a]
            break
    if collision is not None:
        counterexamples['p_divisible'] = collision
    verdict = RhoVerdict(
        conditions_hold=conditions,
        conclusion_holds=non_commuting is None and collision is None,
        abelian=non_commuting is None,
        uniquely_p_divisible=collision is None,
        counterexamples=counterexamples,
    )
    if verdict.conditions_hold and not verdict.conclusion_holds:
        logger.error(f"Structure map on {G} violates the conclusion")
    return verdict


def search_rho(
    G: FiniteGroup,
    p: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> List[RhoCandidate]:
    """All structure maps ``rho: G^p -> G`` satisfying both conditions.

    Condition (1) determines the last coordinate from the others, so the
    search runs over ``End(G)^(p-1)``.

    Raises:
        pperf_cli.errors.BudgetExceededError: The search space exceeds
            `budget`.
    """
    ends = endomorphisms(G, budget=budget)
    if len(ends) ** (p - 1) > budget:
        raise BudgetExceededError(
            f"Search over {len(ends)}^{p - 1} candidates exceeds {budget}"
        )
    end_set = set(ends)
    found = []
    for head in product(ends, repeat=p - 1):
        last = []
        for g in G.elements:
            partial = 0
            for c in head:
                partial = G.mul(partial, c[g])
            last.append(G.mul(G.inverse(partial), g))
        last = tuple(last)
        if last not in end_set:
            continue
        coordinates = list(head) + [last]
        witnesses = []
        for i in range(p - 1):
            sigma = _adjacent(p, i)
            candidate = RhoCandidate(p, coordinates, [0] * (p - 1))
            k = next(
                (k for k in G.elements
                 if _symmetry_failure(G, candidate, sigma, k) is None),
                None,
            )
            if k is None:
                break
            witnesses.append(k)
        if len(witnesses) != p - 1:
            continue
        rho = RhoCandidate(p, coordinates, witnesses)
        try:
            rho.validate(G)
        except MalformedCandidateError:
            continue
        found.append(rho)
    logger.info(f"Found {len(found)} structure maps on {G} for p={p}")
    return found


def canonical_rho(A: FiniteGroup, p: int) -> RhoCandidate:
    """``rho(a_1, ..., a_p) = p^-1 (a_1 + ... + a_p)`` on an abelian group.

    Raises:
        pperf_cli.errors.NotInvertibleError: `p` is not invertible on `A`.
        pperf_cli.errors.InvalidInputError: `A` is not abelian.
    """
    if not A.is_abelian():
        raise InvalidInputError(f"{A} is not abelian")
    if gcd(p, A.order) != 1:
        raise NotInvertibleError(f"{p} is not invertible on {A}")
    inverse = pow(p, -1, A.exponent())
    coordinate = [A.power(a, inverse) for a in A.elements]
    return RhoCandidate(p, [coordinate] * p, [0] * (p - 1))


def full_symmetry_check(G: FiniteGroup, rho: RhoCandidate) -> Dict:
    """Check condition (2) on every permutation of the factors.

    Witnesses for products are reconstructed as ``k_{s t} = k_s k_t`` from
    the adjacent transpositions and verified directly.
    """
    rho.validate(G)
    p = rho.p
    identity = Permutation.identity(p)
    witness = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for sigma in frontier:
            for i, k in enumerate(rho.witnesses):
                tau = sigma * _adjacent(p, i)
                if tau not in witness:
                    witness[tau] = G.mul(witness[sigma], k)
                    nxt.append(tau)
        frontier = nxt
    failures = [
        render_cycles(sigma) for sigma, k in sorted(witness.items())
        if _symmetry_failure(G, rho, sigma, k) is not None
    ]
    return {
        'permutations': len(witness),
        'reconstructed_witnesses_valid': not failures,
        'failures': failures,
    }


class GModule():
    """Finite abelian group `module` with an action of `group`.

    Arguments:
        group: Acting group.
        module: Abelian group acted on.
        action: ``action[g][a]`` is ``g . a``.

    Raises:
        pperf_cli.errors.InvalidGroupData: `module` is not abelian or the
            action is not an action by automorphisms.
    """

    def __init__(
        self,
        group: FiniteGroup,
        module: FiniteGroup,
        action: Sequence[Sequence[int]],
    ) -> None:
        """Class constructor."""
        self.group = group
        self.module = module
        self.action = tuple(tuple(row) for row in action)
        G, A = group, module
        if not A.is_abelian():
            raise InvalidGroupData("Module must be abelian")
        if len(self.action) != G.order or any(
            sorted(row) != list(A.elements) for row in self.action
        ):
            raise InvalidGroupData("Each element must act bijectively")
        if self.action[0] != tuple(A.elements):
            raise InvalidGroupData("Identity must act trivially")
        for g in G.elements:
            row = self.action[g]
            if any(row[A.mul(a, b)] != A.mul(row[a], row[b])
                   for a in A.elements for b in A.elements):
                raise InvalidGroupData(f"Element {g} does not act additively")
            for h in G.elements:
                if any(self.action[G.mul(g, h)][a] != row[self.action[h][a]]
                       for a in A.elements):
                    raise InvalidGroupData(f"Not an action at ({g}, {h})")

    @classmethod
    def trivial(cls, group: FiniteGroup, module: FiniteGroup) -> 'GModule':
        return cls(group, module, [list(module.elements)] * group.order)

    def act(self, g: int, a: int) -> int:
        return self.action[g][a]

    def is_trivial(self) -> bool:
        return all(row == tuple(self.module.elements) for row in self.action)


def verify_rho_action(
    mod: GModule,
    rho: RhoCandidate,
    equivariant: bool = False,
) -> Dict:
    """Check a structure map ``rho: A^p -> A`` on a G-module.

    Conditions are ``rho(a, ..., a) = a`` and
    ``rho o sigma = k_sigma . rho`` (``k_sigma`` acting on `A`). The
    conclusion is that `A` is uniquely p-divisible; with `equivariant`,
    ``rho(g_1 a_1, ..., g_p a_p) = (p^-1 sum g_i) . rho(a_1, ..., a_p)`` is
    checked as well, and when it holds the action must be trivial. The
    equivariance condition fails outright when `G` is not abelian and
    uniquely p-divisible.

    Returns:
        Report with flags and counterexamples.
    """
    G, A = mod.group, mod.module
    rho.validate(A)
    if any(not 0 <= k < G.order for k in rho.witnesses):
        raise MalformedCandidateError("Witness outside the acting group")
    p = rho.p
    counterexamples: Dict = {}
    diagonal = next(
        (a for a in A.elements if rho.evaluate(A, [a] * p) != a), None,
    )
    if diagonal is not None:
        counterexamples['condition_1'] = {'element': diagonal}
    for i, k in enumerate(rho.witnesses):
        sigma = _adjacent(p, i)
        failure = next((
            {'sigma': render_cycles(sigma), 'coordinate': j, 'element': a}
            for j in range(p) for a in A.elements
            if rho.coordinates[sigma(j)][a]
            != mod.act(k, rho.coordinates[j][a])
        ), None)
        if failure is not None:
            counterexamples['condition_2'] = failure
            break
    conditions = not counterexamples
    divisible = A.power_map_bijective(p)
    report: Dict = {
        'conditions_hold': conditions,
        'uniquely_p_divisible': divisible,
        'equivariance_checked': equivariant,
        'equivariance_holds': None,
        'action_trivial': mod.is_trivial(),
    }
    if equivariant:
        if not (G.is_abelian() and G.power_map_bijective(p)):
            report['equivariance_holds'] = False
            counterexamples['equivariance'] = {
                'reason': f"{G.name} is not abelian and uniquely "
                          f"{p}-divisible",
            }
        else:
            root = {G.power(g, p): g for g in G.elements}
            failure = None
            for gs in product(G.elements, repeat=p):
                total = 0
                for g in gs:
                    total = G.mul(total, g)
                mean = root[total]
                for args in product(A.elements, repeat=p):
                    moved = [mod.act(g, a) for g, a in zip(gs, args)]
                    if (rho.evaluate(A, moved)
                            != mod.act(mean, rho.evaluate(A, args))):
                        failure = {'group': list(gs), 'module': list(args)}
                        break
                if failure:
                    break
            report['equivariance_holds'] = failure is None
            if failure:
                counterexamples['equivariance'] = failure
    report['conclusion_holds'] = divisible and not (
        conditions and report['equivariance_holds']
        and not report['action_trivial']
    )
    report['counterexamples'] = counterexamples
    return report
