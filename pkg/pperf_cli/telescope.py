"""Direct systems of permutation groups and probes on their colimits.

The colimit is never materialized: since every transition is injective,
questions about the colimit are decided on level-wise representatives.
"""

import logging
from typing import (Callable, Dict, List, NamedTuple, Optional, Tuple)

from pperf_cli.errors import (InvalidInputError, InvalidPermutation)
from pperf_cli.perm import (
    DEFAULT_WITNESS_BOUND,
    Permutation,
    are_conjugate,
    block_diagonal_embed,
    cycle_decomposition,
    has_pth_root,
    render_cycles,
    symmetric_group,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEVELS = {2: 6, 3: 4}
ENUMERATION_DEGREE_BOUND = 5


def default_max_level(p: int) -> int:
    """Default level cap of the symmetric system for base `p`."""
    return DEFAULT_MAX_LEVELS.get(p, 3)


class TelescopeElement(NamedTuple):
    """Representative of a colimit element at a finite level."""

    level: int
    value: Permutation


class DirectSystem():
    """Direct system ``G_0 -> G_1 -> ...`` of permutation groups.

    Arguments:
        p: Base of the system (number of diagonal copies per step).
        degree: Rule producing the permutation degree at level ``k``.
        generators: Rule producing generators of the group at level ``k``.
        copies: Number of diagonal copies per transition, or ``None`` for
            the identity transition.
        name: Human-readable name used in reports.
    """

    def __init__(
        self,
        p: int,
        degree: Callable[[int], int],
        generators: Callable[[int], List[Permutation]],
        copies: Optional[int],
        name: str,
    ) -> None:
        """Class constructor."""
        if p < 2:
            raise InvalidInputError(f"Base must be >= 2: {p}")
        self.p = p
        self.degree = degree
        self.generators = generators
        self.copies = copies
        self.name = name

    def __repr__(self) -> str:
        return f"DirectSystem({self.name})"

    def transition(self, value: Permutation) -> Permutation:
        """Image of a level-``k`` value at level ``k + 1``."""
        if self.copies is None:
            return value
        return block_diagonal_embed(value, self.copies)

    def element(self, level: int, value: Permutation) -> TelescopeElement:
        """Validated representative of `value` at `level`."""
        if level < 0:
            raise InvalidInputError(f"Level must be >= 0: {level}")
        if value.degree != self.degree(level):
            raise InvalidPermutation(
                f"Degree {value.degree} does not match level {level} of "
                f"{self.name} (degree {self.degree(level)})"
            )
        return TelescopeElement(level=level, value=value)


def _adjacent_transpositions(n: int) -> List[Permutation]:
    return [Permutation.from_cycles([(i, i + 1)], n) for i in range(n - 1)]


def symmetric_system(p: int) -> DirectSystem:
    """System of symmetric groups on ``p ** k`` points along diagonal
    embeddings.
    """
    return DirectSystem(
        p=p,
        degree=lambda k: p ** k,
        generators=lambda k: _adjacent_transpositions(p ** k),
        copies=p,
        name=f"Sigma_{{{p}^k}}",
    )


def constant_system(
    generators: List[Permutation],
    p: int = 2,
) -> DirectSystem:
    """Constant system with identity transitions."""
    if not generators:
        raise InvalidInputError("Constant system needs at least a generator")
    n = generators[0].degree
    return DirectSystem(
        p=p,
        degree=lambda k: n,
        generators=lambda k: list(generators),
        copies=None,
        name=f"constant({', '.join(render_cycles(g) for g in generators)})",
    )


def stabilize(
    sys: DirectSystem,
    e: TelescopeElement,
    target: int,
) -> TelescopeElement:
    """Push a representative up to level `target`.

    Raises:
        pperf_cli.errors.InvalidInputError: `target` is below the level of
            `e`.
    """
    if target < e.level:
        raise InvalidInputError(
            f"Cannot stabilize level {e.level} down to {target}"
        )
    value = e.value
    for _ in range(target - e.level):
        value = sys.transition(value)
    return TelescopeElement(level=target, value=value)


def colimit_equal(
    sys: DirectSystem,
    e1: TelescopeElement,
    e2: TelescopeElement,
) -> bool:
    """Equality in the colimit, decided at the common level."""
    level = max(e1.level, e2.level)
    return stabilize(sys, e1, level).value == stabilize(sys, e2, level).value


def check_transitions(
    sys: DirectSystem,
    levels: int,
) -> Dict:
    """Check transitions on levels ``0, ..., levels - 1``.

    Injectivity is checked on the whole group where its degree is at most
    ``ENUMERATION_DEGREE_BOUND`` and on generators elsewhere.

    Returns:
        Report with per-level flags ``injective``, ``homomorphism`` and
        ``composes``.
    """
    report = []
    for k in range(levels):
        gens = sys.generators(k)
        if sys.degree(k) <= ENUMERATION_DEGREE_BOUND:
            sample = symmetric_group(sys.degree(k)).sorted_elements()
        else:
            sample = [Permutation.identity(sys.degree(k))] + gens
        images = [sys.transition(x) for x in sample]
        injective = len(set(images)) == len(set(sample))
        homomorphism = all(
            sys.transition(a * b) == sys.transition(a) * sys.transition(b)
            for a in gens for b in gens
        )
        composes = all(
            sys.transition(sys.transition(x))
            == stabilize(sys, TelescopeElement(k, x), k + 2).value
            for x in gens
        )
        report.append({
            'level': k,
            'injective': injective,
            'homomorphism': homomorphism,
            'composes': composes,
        })
    return {
        'system': sys.name,
        'levels': report,
        'valid': all(
            r['injective'] and r['homomorphism'] and r['composes']
            for r in report
        ),
    }


class AbelianProbe(NamedTuple):
    """Outcome of an abelianness probe.

    ``witness`` is ``None`` when the system is abelian up to
    ``max_level``; otherwise ``verified_up_to`` is the highest level at
    which the stabilized pair was re-checked to not commute.
    """

    witness: Optional[Tuple[TelescopeElement, TelescopeElement]]
    max_level: int
    verified_up_to: Optional[int]

    def to_dict(self) -> Dict:
        if self.witness is None:
            return {
                'abelian_up_to': self.max_level,
                'witness': None,
            }
        a, b = self.witness
        return {
            'abelian_up_to': None,
            'witness': {
                'level': a.level,
                'left': render_cycles(a.value),
                'right': render_cycles(b.value),
            },
            'verified_up_to': self.verified_up_to,
        }


def abelianness_probe(
    sys: DirectSystem,
    max_level: int,
) -> AbelianProbe:
    """Search generators level by level for a non-commuting pair.

    A pair that fails to commute at level ``k`` fails at every higher
    level; this is re-checked up to `max_level`.

    Examples:
        >>> abelianness_probe(symmetric_system(2), 2).witness[0].value
        (0 1)
    """
    if max_level < 1:
        raise InvalidInputError(f"Maximum level must be >= 1: {max_level}")
    for k in range(max_level + 1):
        gens = sys.generators(k)
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if a.commutes_with(b):
                    continue
                logger.info(
                    f"Non-commuting pair at level {k} of {sys.name}: "
                    f"{render_cycles(a)}, {render_cycles(b)}"
                )
                verified = k
                ea, eb = TelescopeElement(k, a), TelescopeElement(k, b)
                for level in range(k + 1, max_level + 1):
                    sa = stabilize(sys, ea, level).value
                    sb = stabilize(sys, eb, level).value
                    if sa.commutes_with(sb):
                        break
                    verified = level
                return AbelianProbe(
                    witness=(ea, eb),
                    max_level=max_level,
                    verified_up_to=verified,
                )
    logger.info(f"{sys.name} is abelian up to level {max_level}")
    return AbelianProbe(witness=None, max_level=max_level, verified_up_to=None)


def block_factors(
    sys: DirectSystem,
    e: TelescopeElement,
) -> List[Permutation]:
    """Block factors of the image of `e` one level up.

    Factor ``j`` acts by ``e.value`` on block ``j`` and trivially elsewhere;
    the product of all factors is the diagonal image.
    """
    if sys.copies is None:
        raise InvalidInputError(f"{sys.name} has no block structure")
    n = e.value.degree
    identity = Permutation.identity(n)
    factors = []
    for j in range(sys.copies):
        images: List[int] = []
        for k in range(sys.copies):
            block = e.value if k == j else identity
            images.extend(x + n * k for x in block.images)
        factors.append(Permutation(images))
    return factors


def _block_report(
    sys: DirectSystem,
    previous: TelescopeElement,
    current: Permutation,
) -> Dict:
    factors = block_factors(sys, previous)
    conjugate = all(are_conjugate(factors[0], f)[0] for f in factors[1:])
    product = Permutation.identity(current.degree)
    for f in factors:
        product = product * f
    return {
        'factors': [render_cycles(f) for f in factors],
        'pairwise_conjugate': conjugate,
        'product_matches': product == current,
    }


def divisibility_probe(
    sys: DirectSystem,
    e: TelescopeElement,
    q: int,
    max_level: int,
    witness_bound: int = DEFAULT_WITNESS_BOUND,
) -> List[Dict]:
    """Report q-th root existence of the stabilizations of `e`.

    Arguments:
        sys: Direct system `e` belongs to.
        e: Representative to probe.
        q: Prime root exponent.
        max_level: Last level to probe.
        witness_bound: Largest degree for which root witnesses are built.

    Returns:
        One record per level ``L`` in ``[e.level, max_level]`` with keys
        ``level``, ``degree``, ``cycle_type``, ``has_root``, ``witness``
        and, above the starting level, ``blocks`` (block factors of the
        diagonal image and whether they are pairwise conjugate and multiply
        to the stabilized value).
    """
    if max_level < e.level:
        raise InvalidInputError(
            f"Maximum level {max_level} is below level {e.level}"
        )
    records = []
    current = e
    for level in range(e.level, max_level + 1):
        previous = current
        current = stabilize(sys, current, level)
        exists, witness = has_pth_root(
            current.value, q, witness_bound=witness_bound,
        )
        record = {
            'level': level,
            'degree': current.value.degree,
            'cycle_type': cycle_decomposition(current.value)[0].to_dict(),
            'has_root': exists,
            'witness': render_cycles(witness) if witness else None,
        }
        if level > e.level and sys.copies is not None:
            record['blocks'] = _block_report(sys, previous, current.value)
        logger.debug(f"Divisibility probe record: {record}")
        records.append(record)
    return records
