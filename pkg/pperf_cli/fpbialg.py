"""Graded commutative and cocommutative bialgebras over F_p.

Besides the homological degree every basis element carries a component
weight: weights add under multiplication and are diagonal under the
coproduct, so the bialgebra Frobenius ``Phi_m = mu_m o Delta^(m)``
multiplies weight by ``m``. A bialgebra is truncated at degree ``D`` and
weight ``W``; leaving the window raises
:class:`pperf_cli.errors.TruncationError` instead of truncating silently.
"""

from itertools import product
import logging
from math import comb
from typing import (Callable, Dict, List, NamedTuple, Optional, Sequence,
                    Tuple)

from pperf_cli.errors import (
    InvalidBialgebraData,
    InvalidInputError,
    PreconditionError,
    TruncationError,
)
from pperf_cli.linalg import (SparseVector, axpy, express, rank, scaled)
from pperf_cli.models import (BialgebraData, parse)
from pperf_cli.monoid import FiniteCommMonoid

logger = logging.getLogger(__name__)

GROUPLIKE_SEARCH_BOUND = 4096
MAX_REPORTED_FAILURES = 20

Tensor = Dict[Tuple[int, int], int]


class BasisElement(NamedTuple):
    name: str
    degree: int
    weight: int = 0


class Element(NamedTuple):
    """Homogeneous F_p-linear combination of basis elements.

    ``degree`` and ``weight`` are ``None`` for the zero element.
    """

    terms: Tuple[Tuple[int, int], ...]
    degree: Optional[int]
    weight: Optional[int]

    @property
    def vector(self) -> SparseVector:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms


class GradedBialgebra():
    """Truncated graded bialgebra given by sparse structure constants.

    Arguments:
        p: Coefficient prime; Koszul signs are active iff `p` is odd.
        D: Degree truncation.
        W: Weight truncation.
        basis: Homogeneous basis.
        mult: ``mult[(i, j)]`` is the product of basis elements ``i`` and
            ``j``; pairs inside the window without an entry multiply to 0.
        comult: ``comult[i]`` maps ``(j, k)`` to the coefficient of
            ``b_j (x) b_k`` in the coproduct of ``b_i``.
        unit: Index of the unit.
        counit: Nonzero counit values by basis index.

    Raises:
        pperf_cli.errors.InvalidBialgebraData: Indices are out of range or
            the parameters are invalid.
    """

    def __init__(
        self,
        p: int,
        D: int,
        W: int,
        basis: Sequence[BasisElement],
        mult: Dict[Tuple[int, int], Dict[int, int]],
        comult: Dict[int, Dict[Tuple[int, int], int]],
        unit: int,
        counit: Dict[int, int],
    ) -> None:
        """Class constructor."""
        if p < 2 or D < 0 or W < 0:
            raise InvalidBialgebraData(
                f"Invalid parameters p={p}, D={D}, W={W}"
            )
        self.p = p
        self.D = D
        self.W = W
        self.basis: Tuple[BasisElement, ...] = tuple(
            BasisElement(*b) for b in basis
        )
        n = len(self.basis)
        self._names = {b.name: i for i, b in enumerate(self.basis)}
        if len(self._names) != n:
            raise InvalidBialgebraData("Basis names must be unique")

        def check(*indices: int) -> None:
            if any(not 0 <= i < n for i in indices):
                raise InvalidBialgebraData(
                    f"Basis index out of range: {indices}"
                )

        check(unit)
        self.unit = unit
        self.mult: Dict[Tuple[int, int], Dict[int, int]] = {}
        for (i, j), value in mult.items():
            check(i, j, *value)
            self.mult[(i, j)] = _reduced(value, p)
        self.comult: Dict[int, Tensor] = {}
        for i, value in comult.items():
            check(i)
            for j, k in value:
                check(j, k)
            self.comult[i] = _reduced(value, p)
        for i in counit:
            check(i)
        self.counit: Dict[int, int] = _reduced(counit, p)
        self._phi_cache: Dict[Tuple[int, int], SparseVector] = {}

    def __repr__(self) -> str:
        return (
            f"GradedBialgebra(p={self.p}, D={self.D}, W={self.W}, "
            f"dim={len(self.basis)})"
        )

    @property
    def signed(self) -> bool:
        return self.p % 2 == 1

    def sign(self, d1: int, d2: int) -> int:
        """Koszul sign of swapping elements of degrees `d1` and `d2`."""
        return -1 if self.signed and d1 * d2 % 2 else 1

    def index(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise InvalidInputError(f"Unknown basis element: {name}")

    def slice(self, degree: int, weight: int) -> List[int]:
        return [
            i for i, b in enumerate(self.basis)
            if b.degree == degree and b.weight == weight
        ]

    def weights(self) -> List[int]:
        return sorted({b.weight for b in self.basis})

    def element(self, vector: SparseVector) -> Element:
        """Homogeneous element with the given coordinates.

        Raises:
            pperf_cli.errors.PreconditionError: `vector` mixes degrees or
                weights.
        """
        vector = _reduced(vector, self.p)
        grades = {
            (self.basis[i].degree, self.basis[i].weight) for i in vector
        }
        if len(grades) > 1:
            raise PreconditionError(
                f"Element is not homogeneous: {self.describe(vector)}"
            )
        degree, weight = grades.pop() if grades else (None, None)
        return Element(tuple(sorted(vector.items())), degree, weight)

    def element_from_names(self, terms: Dict[str, int]) -> Element:
        return self.element({self.index(k): c for k, c in terms.items()})

    def describe(self, vector: SparseVector) -> Dict[str, int]:
        return {
            self.basis[i].name: c for i, c in sorted(vector.items()) if c
        }

    def describe_tensor(self, tensor: Tensor) -> List:
        return [
            [self.basis[j].name, self.basis[k].name, c]
            for (j, k), c in sorted(tensor.items()) if c
        ]

    def product_basis(self, i: int, j: int) -> SparseVector:
        """Product of two basis elements.

        Raises:
            pperf_cli.errors.TruncationError: The product leaves the
                window.
        """
        bi, bj = self.basis[i], self.basis[j]
        degree, weight = bi.degree + bj.degree, bi.weight + bj.weight
        if weight > self.W or degree > self.D:
            raise TruncationError(
                f"Product {bi.name} * {bj.name} has degree {degree} and "
                f"weight {weight}, outside D={self.D}, W={self.W}",
                weight=weight if weight > self.W else None,
                degree=degree if degree > self.D else None,
            )
        return self.mult.get((i, j), {})

    def multiply(self, x: SparseVector, y: SparseVector) -> SparseVector:
        result: SparseVector = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(result, a * b, self.product_basis(i, j), self.p)
        return result

    def power(self, x: SparseVector, k: int) -> SparseVector:
        result: SparseVector = {self.unit: 1}
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    def coproduct(self, x: SparseVector) -> Tensor:
        result: Tensor = {}
        for i, a in x.items():
            axpy(result, a, self.comult.get(i, {}), self.p)
        return result

    def tensor_multiply(self, s: Tensor, t: Tensor) -> Tensor:
        """``(a1 (x) a2)(b1 (x) b2) = +-(a1 b1) (x) (a2 b2)``."""
        result: Tensor = {}
        for (a1, a2), c in s.items():
            for (b1, b2), d in t.items():
                sign = self.sign(self.basis[a2].degree, self.basis[b1].degree)
                left = self.product_basis(a1, b1)
                right = self.product_basis(a2, b2)
                for k, u in left.items():
                    for m, v in right.items():
                        key = (k, m)
                        value = (result.get(key, 0) + sign * c * d * u * v)
                        value %= self.p
                        if value:
                            result[key] = value
                        else:
                            result.pop(key, None)
        return result

    def twist(self, t: Tensor) -> Tensor:
        result: Tensor = {}
        for (j, k), c in t.items():
            sign = self.sign(self.basis[j].degree, self.basis[k].degree)
            result[(k, j)] = sign * c % self.p
        return result

    def epsilon(self, x: SparseVector) -> int:
        return sum(c * self.counit.get(i, 0) for i, c in x.items()) % self.p

    def is_grouplike(self, x: SparseVector) -> bool:
        x = _reduced(x, self.p)
        if not x or self.epsilon(x) != 1:
            return False
        square = {
            (i, j): a * b % self.p
            for i, a in x.items() for j, b in x.items()
        }
        return self.coproduct(x) == _reduced(square, self.p)

    def to_dict(self) -> Dict:
        return {
            'p': self.p,
            'D': self.D,
            'W': self.W,
            'basis': [b._asdict() for b in self.basis],
            'mult': [
                [i, j, [[k, c] for k, c in sorted(v.items())]]
                for (i, j), v in sorted(self.mult.items()) if v
            ],
            'comult': [
                [i, [[j, k, c] for (j, k), c in sorted(v.items())]]
                for i, v in sorted(self.comult.items())
            ],
            'unit': self.unit,
            'counit': [[i, c] for i, c in sorted(self.counit.items())],
        }


def _reduced(vector: Dict, p: int) -> Dict:
    return {k: c % p for k, c in vector.items() if c % p}


def load_bialgebra(data: Dict) -> GradedBialgebra:
    """Bialgebra from its JSON object.

    Raises:
        pperf_cli.errors.InvalidBialgebraData: The data does not validate.
    """
    model = parse(BialgebraData, data, InvalidBialgebraData)
    mult: Dict[Tuple[int, int], Dict[int, int]] = {}
    for i, j, terms in model.mult:
        entry = mult.setdefault((i, j), {})
        for k, c in terms:
            entry[k] = entry.get(k, 0) + c
    comult: Dict[int, Tensor] = {}
    for i, terms in model.comult:
        entry = comult.setdefault(i, {})
        for j, k, c in terms:
            entry[(j, k)] = entry.get((j, k), 0) + c
    return GradedBialgebra(
        p=model.p,
        D=model.D,
        W=model.W,
        basis=[BasisElement(b.name, b.degree, b.weight) for b in model.basis],
        mult=mult,
        comult=comult,
        unit=model.unit,
        counit={i: c for i, c in model.counit},
    )


def dump_bialgebra(H: GradedBialgebra) -> Dict:
    return H.to_dict()


class _Failures():

    def __init__(self, H: GradedBialgebra, limit: int) -> None:
        self.H = H
        self.limit = limit
        self.items: List[Dict] = []
        self.counts: Dict[str, int] = {}
        self.checked: Dict[str, int] = {}

    def run(
        self,
        axiom: str,
        witness: Sequence[int],
        test: Callable[[], Optional[str]],
    ) -> None:
        """Record a failure when `test` returns a detail string."""
        self.checked[axiom] = self.checked.get(axiom, 0) + 1
        try:
            detail = test()
        except TruncationError as e:
            detail = f"left the truncation window: {e}"
        if detail is None:
            return
        self.counts[axiom] = self.counts.get(axiom, 0) + 1
        if self.counts[axiom] <= self.limit:
            self.items.append({
                'axiom': axiom,
                'witness': [self.H.basis[i].name for i in witness],
                'detail': detail,
            })


def _differs(left, right, H: GradedBialgebra, what: str) -> Optional[str]:
    if _reduced(left, H.p) == _reduced(right, H.p):
        return None
    return f"{what}: {left} != {right}"


def _iterated(H: GradedBialgebra, i: int, first: bool) -> Dict:
    result: Dict[Tuple[int, int, int], int] = {}
    for (j, k), c in H.comult.get(i, {}).items():
        split = j if first else k
        for (a, b), d in H.comult.get(split, {}).items():
            key = (a, b, k) if first else (j, a, b)
            result[key] = (result.get(key, 0) + c * d) % H.p
    return result


def check_axioms(
    H: GradedBialgebra,
    max_failures: int = MAX_REPORTED_FAILURES,
) -> Dict:
    """Check every bialgebra axiom inside the truncation window.

    Arguments:
        H: Bialgebra to check.
        max_failures: Failures listed per axiom; all are counted.

    Returns:
        Report with ``passed``, per-axiom ``checked`` and ``failed``
        counts, and ``failures`` naming the offending basis elements.
    """
    f = _Failures(H, max_failures)
    basis = H.basis
    n = len(basis)
    u = H.unit

    def in_window(*indices: int) -> bool:
        return (
            sum(basis[i].degree for i in indices) <= H.D
            and sum(basis[i].weight for i in indices) <= H.W
        )

    def grading_of_product(i: int, j: int) -> Optional[str]:
        bad = [
            basis[k].name for k in H.mult.get((i, j), {})
            if (basis[k].degree, basis[k].weight) != (
                basis[i].degree + basis[j].degree,
                basis[i].weight + basis[j].weight,
            )
        ]
        return f"product has terms {bad} of the wrong grade" if bad else None

    def grading_of_coproduct(i: int) -> Optional[str]:
        b = basis[i]
        bad = [
            (basis[j].name, basis[k].name) for j, k in H.comult.get(i, {})
            if basis[j].degree + basis[k].degree != b.degree
            or not basis[j].weight == basis[k].weight == b.weight
        ]
        return f"coproduct has terms {bad} of the wrong grade" if bad else None

    unit_grade = (basis[u].degree, basis[u].weight)
    f.run('grading', [u], lambda: (
        None if unit_grade == (0, 0) else "unit not in degree 0, weight 0"))
    for (i, j) in sorted(H.mult):
        f.run('grading', [i, j], lambda i=i, j=j: grading_of_product(i, j))
    for i in range(n):
        f.run('grading', [i], lambda i=i: grading_of_coproduct(i))
    for i in H.counit:
        f.run('grading', [i], lambda i=i: (
            None if basis[i].degree == 0
            else "counit nonzero in positive degree"))

    for i in range(n):
        e = {i: 1}
        f.run('unit', [i], lambda e=e: _differs(
            H.multiply({u: 1}, e), e, H, "1 * x"))
        f.run('unit', [i], lambda e=e: _differs(
            H.multiply(e, {u: 1}), e, H, "x * 1"))
        delta = H.coproduct(e)
        left: SparseVector = {}
        right: SparseVector = {}
        for (j, k), c in delta.items():
            axpy(left, c * H.counit.get(j, 0), {k: 1}, H.p)
            axpy(right, c * H.counit.get(k, 0), {j: 1}, H.p)
        f.run('counit', [i], lambda left=left, e=e: _differs(
            left, e, H, "(counit x id) coproduct"))
        f.run('counit', [i], lambda right=right, e=e: _differs(
            right, e, H, "(id x counit) coproduct"))
        f.run('coassociativity', [i], lambda i=i: _differs(
            _iterated(H, i, True), _iterated(H, i, False), H,
            "(D x id) D != (id x D) D"))
        f.run('cocommutativity', [i], lambda delta=delta: _differs(
            delta, H.twist(delta), H, "D != twist D"))

    for i in range(n):
        for j in range(n):
            if not in_window(i, j):
                continue
            ei, ej = {i: 1}, {j: 1}
            sign = H.sign(basis[i].degree, basis[j].degree)
            f.run('commutativity', [i, j], lambda ei=ei, ej=ej, sign=sign:
                  _differs(H.multiply(ei, ej),
                           scaled(H.multiply(ej, ei), sign, H.p), H,
                           "xy != +-yx"))
            f.run('compatibility', [i, j], lambda ei=ei, ej=ej: _differs(
                H.coproduct(H.multiply(ei, ej)),
                H.tensor_multiply(H.coproduct(ei), H.coproduct(ej)), H,
                "D(xy) != D(x)D(y)"))
            f.run('counit_multiplicative', [i, j], lambda ei=ei, ej=ej: (
                None if H.epsilon(H.multiply(ei, ej))
                == H.epsilon(ei) * H.epsilon(ej) % H.p
                else "counit(xy) != counit(x) counit(y)"))
            for k in range(n):
                if not in_window(i, j, k):
                    continue
                ek = {k: 1}
                f.run('associativity', [i, j, k],
                      lambda ei=ei, ej=ej, ek=ek: _differs(
                          H.multiply(H.multiply(ei, ej), ek),
                          H.multiply(ei, H.multiply(ej, ek)), H,
                          "(xy)z != x(yz)"))

    f.run('counit_multiplicative', [u], lambda: None if H.epsilon(
        {u: 1}) == 1 else "counit(1) != 1")
    f.run('coproduct_of_unit', [u], lambda: _differs(
        H.coproduct({u: 1}), {(u, u): 1}, H, "D(1) != 1 x 1"))

    report = {
        'passed': not f.counts,
        'checked': dict(sorted(f.checked.items())),
        'failed': dict(sorted(f.counts.items())),
        'failures': f.items,
    }
    if f.counts:
        logger.warning(f"Bialgebra axioms fail: {report['failed']}")
    else:
        logger.info(f"{H} satisfies all bialgebra axioms")
    return report


def grouplikes(H: GradedBialgebra) -> List[Element]:
    """Grouplike elements of degree 0.

    Basis elements are always tested; all of ``H_0`` is searched when it
    has at most ``GROUPLIKE_SEARCH_BOUND`` elements.
    """
    zero = [i for i, b in enumerate(H.basis) if b.degree == 0]
    found: Dict[Tuple, Element] = {}
    for i in zero:
        if H.is_grouplike({i: 1}):
            element = H.element({i: 1})
            found[element.terms] = element
    if H.p ** len(zero) <= GROUPLIKE_SEARCH_BOUND:
        for coeffs in product(range(H.p), repeat=len(zero)):
            vector = {i: c for i, c in zip(zero, coeffs) if c}
            if not H.is_grouplike(vector):
                continue
            try:
                element = H.element(vector)
            except PreconditionError:
                continue
            found.setdefault(element.terms, element)
    else:
        logger.warning(
            f"Degree 0 of {H} too large for exhaustive grouplike search; "
            f"only basis elements were tested"
        )
    return sorted(found.values())


def is_weakly_primitive(
    H: GradedBialgebra,
    x: Element,
) -> Optional[Element]:
    """Grouplike ``alpha`` with ``D(x) = x (x) alpha + alpha (x) x`` up to
    terms of bidegrees ``(a, b)`` with ``a, b < deg x``, if there is one.

    Raises:
        pperf_cli.errors.PreconditionError: `x` is zero or of degree 0.
    """
    if x.is_zero or not x.degree:
        raise PreconditionError(
            "Weak primitivity needs a nonzero element of positive degree"
        )
    n = x.degree
    delta = H.coproduct(x.vector)
    lead, coeff = x.terms[0]
    inverse = pow(coeff, -1, H.p)
    alpha = {
        k: c * inverse % H.p for (j, k), c in delta.items()
        if j == lead and H.basis[k].degree == 0
    }
    if not H.is_grouplike(alpha):
        return None
    expected: Tensor = {}
    for j, a in x.terms:
        for k, b in alpha.items():
            expected[(j, k)] = a * b % H.p
            expected[(k, j)] = a * b % H.p
    edges = {
        key: c for key, c in delta.items()
        if n in (H.basis[key[0]].degree, H.basis[key[1]].degree)
    }
    if _reduced(edges, H.p) != _reduced(expected, H.p):
        return None
    return H.element(alpha)


def _phi_basis(H: GradedBialgebra, i: int, m: int) -> SparseVector:
    key = (i, m)
    if key in H._phi_cache:
        return H._phi_cache[key]
    b = H.basis[i]
    if m * b.weight > H.W:
        raise TruncationError(
            f"Phi_{m}({b.name}) has weight {m * b.weight} > W={H.W}",
            weight=m * b.weight,
        )
    if m == 1:
        value = {i: 1}
    else:
        # Phi_m = mu o (id x Phi_(m-1)) o Delta
        value: SparseVector = {}
        for (j, k), c in H.comult.get(i, {}).items():
            tail = _phi_basis(H, k, m - 1)
            if tail:
                axpy(value, c, H.multiply({j: 1}, tail), H.p)
    H._phi_cache[key] = value
    return value


def _phi(H: GradedBialgebra, x: SparseVector, m: int) -> SparseVector:
    result: SparseVector = {}
    for i, c in x.items():
        axpy(result, c, _phi_basis(H, i, m), H.p)
    return result


def frobenius(H: GradedBialgebra, x: Element, m: int) -> Element:
    """Bialgebra Frobenius ``Phi_m(x) = mu_m(Delta^(m)(x))``.

    Raises:
        pperf_cli.errors.TruncationError: ``m * weight(x) > W``.

    Examples:
        >>> H = polynomial_bialgebra(2, 4, 2)
        >>> frobenius(H, H.element_from_names({'y': 1}), 2).is_zero
        True
    """
    if m < 1:
        raise InvalidInputError(f"Frobenius index must be >= 1: {m}")
    if x.is_zero:
        return x
    if m * x.weight > H.W:
        raise TruncationError(
            f"Phi_{m} of an element of weight {x.weight} leaves W={H.W}",
            weight=m * x.weight,
        )
    return H.element(_phi(H, x.vector, m))


def frobenius_iterate(H: GradedBialgebra, x: Element, k: int) -> Element:
    """``Phi_p`` applied `k` times; stops early at zero.

    Raises:
        pperf_cli.errors.TruncationError: A stage leaves the weight window.
    """
    current = x
    for _ in range(k):
        if current.is_zero:
            break
        current = frobenius(H, current, H.p)
    return current


def verify_phi_formula(H: GradedBialgebra, x: Element, m: int) -> Dict:
    """Check ``Phi_m(x) = m alpha^(m-1) x`` modulo the ideal generated by
    positive-degree elements of degree below ``deg x``.

    Returns:
        Report with the grouplike ``alpha``, ``Phi_m(x)``, the difference,
        the dimension of the ideal slice, the verdict ``in_ideal`` and an
        explicit decomposition of the difference into products.

    Raises:
        pperf_cli.errors.PreconditionError: `x` is not weakly primitive.
        pperf_cli.errors.TruncationError: ``m * weight(x) > W``.
    """
    alpha = is_weakly_primitive(H, x)
    if alpha is None:
        raise PreconditionError(
            f"Element is not weakly primitive: {H.describe(x.vector)}"
        )
    phi = frobenius(H, x, m)
    leading = scaled(
        H.multiply(H.power(alpha.vector, m - 1), x.vector), m, H.p,
    )
    difference = dict(phi.vector)
    axpy(difference, -1, leading, H.p)
    n, weight = x.degree, m * x.weight
    generators: List[Tuple[int, int]] = []
    vectors: List[SparseVector] = []
    for i, y in enumerate(H.basis):
        if not 0 < y.degree < n or y.weight > weight:
            continue
        for j in H.slice(n - y.degree, weight - y.weight):
            generators.append((i, j))
            vectors.append(H.product_basis(i, j))
    coeffs = express(vectors, difference, H.p)
    return {
        'element': H.describe(x.vector),
        'm': m,
        'alpha': H.describe(alpha.vector),
        'phi': H.describe(phi.vector),
        'leading': H.describe(leading),
        'difference': H.describe(difference),
        'ideal_dimension': rank(vectors, H.p),
        'in_ideal': coeffs is not None,
        'decomposition': [
            {
                'left': H.basis[generators[k][0]].name,
                'right': H.basis[generators[k][1]].name,
                'coeff': c,
            }
            for k, c in (coeffs or {}).items()
        ],
    }


def frobenius_nilpotence(H: GradedBialgebra) -> Dict:
    """Check ``Phi_p^n(x) = Phi_(p^n)(x) = 0`` for basis elements of degree
    ``n >= 1``, stage by stage while the weight stays in the window.

    Returns:
        Report with one record per basis element (stages compared,
        overflow) and a per-degree summary.

    Raises:
        pperf_cli.errors.PreconditionError: Some positive-degree basis
            element is not weakly primitive.
    """
    positive = [i for i, b in enumerate(H.basis) if b.degree >= 1]
    failing = [
        H.basis[i].name for i in positive
        if is_weakly_primitive(H, H.element({i: 1})) is None
    ]
    if failing:
        raise PreconditionError(
            f"Basis elements are not weakly primitive: {failing}"
        )
    p = H.p
    records = []
    for i in positive:
        b = H.basis[i]
        iterate: SparseVector = {i: 1}
        stages = []
        overflow = None
        for j in range(1, b.degree + 1):
            weight = p ** j * b.weight
            if weight > H.W:
                overflow = {'stage': j, 'weight': weight}
                logger.warning(
                    f"Phi_{p}^{j}({b.name}) needs weight {weight} > W={H.W}"
                )
                break
            iterate = _phi(H, iterate, p)
            direct = _phi(H, {i: 1}, p ** j)
            stages.append({
                'stage': j,
                'weight': weight,
                'iterate': H.describe(iterate),
                'direct': H.describe(direct),
                'agree': iterate == direct,
            })
        completed = overflow is None
        if completed:
            iterate_vanishes: Optional[bool] = not iterate
            direct_vanishes: Optional[bool] = not stages[-1]['direct']
        else:
            iterate_vanishes = True if not iterate and stages else None
            direct_vanishes = None
        records.append({
            'element': b.name,
            'degree': b.degree,
            'weight': b.weight,
            'stages': stages,
            'overflow': overflow,
            'iterate_vanishes': iterate_vanishes,
            'direct_vanishes': direct_vanishes,
            'agree': all(s['agree'] for s in stages),
        })
    degrees = []
    for n in range(1, H.D + 1):
        rows = [r for r in records if r['degree'] == n]
        degrees.append({
            'degree': n,
            'elements': len(rows),
            'verified': sum(
                1 for r in rows
                if r['iterate_vanishes'] and r['direct_vanishes']
            ),
            'overflow': sum(1 for r in rows if r['overflow']),
            'violations': sum(
                1 for r in rows
                if r['iterate_vanishes'] is False
                or r['direct_vanishes'] is False
            ),
        })
    return {
        'p': p,
        'W': H.W,
        'records': records,
        'degrees': degrees,
        'consistent': all(
            d['violations'] == 0 for d in degrees
        ) and all(r['agree'] for r in records),
    }


def _grouplike_classes(H: GradedBialgebra) -> List[List[Element]]:
    elements = grouplikes(H)
    orbits = []
    for g in elements:
        orbit = [g.terms]
        current = g
        steps = 0
        limit = max(len(elements), 1)
        while steps < limit:
            if H.p * current.weight > H.W:
                break
            current = frobenius(H, current, H.p)
            orbit.append(current.terms)
            steps += 1
        orbits.append(orbit)
    parent = list(range(len(elements)))

    def root(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            if any(x == y for x, y in zip(orbits[a], orbits[b])):
                parent[root(a)] = root(b)
    classes: Dict[int, List[Element]] = {}
    for a, g in enumerate(elements):
        classes.setdefault(root(a), []).append(g)
    return sorted(classes.values())


def colimit_along_frobenius(H: GradedBialgebra) -> Dict:
    """Dimensions of ``colim(H -> H -> ...)`` along ``Phi_p`` per degree.

    In degree 0 the classes are grouplikes identified when
    ``g^(p^k) = h^(p^k)`` inside the window. In degree ``n >= 1`` each
    weight slice records the ranks of ``Phi_p^j`` for ``j = 0, ..., n``
    (dimension-many iterations on weight 0); slices whose iterates leave
    the window before reaching rank 0 or stage ``n`` are unresolved.

    ``vanishes_within_window`` only looks at resolved slices;
    ``vanishes_in_positive_degrees`` is ``None`` when nothing resolved
    survives but some slice is unresolved.
    """
    p = H.p
    classes = _grouplike_classes(H)
    degrees = []
    for n in range(1, H.D + 1):
        dimension = 0
        resolved, unresolved = [], []
        sequences = {}
        for w in H.weights():
            indices = H.slice(n, w)
            if not indices:
                continue
            vectors = [{i: 1} for i in indices]
            ranks = [len(indices)]
            stages = n if w else max(n, len(indices))
            complete = True
            for j in range(1, stages + 1):
                if p ** j * w > H.W:
                    complete = False
                    break
                vectors = [_phi(H, v, p) for v in vectors]
                ranks.append(rank(vectors, p))
                if not ranks[-1]:
                    break
            sequences[str(w)] = ranks
            if complete or not ranks[-1]:
                resolved.append(w)
                dimension += ranks[-1]
            else:
                unresolved.append(w)
        if unresolved:
            logger.warning(
                f"Degree {n}: weights {unresolved} leave the window W={H.W}"
            )
        degrees.append({
            'degree': n,
            'dimension': dimension,
            'resolved_weights': resolved,
            'unresolved_weights': unresolved,
            'rank_sequences': sequences,
        })
    within_window = all(d['dimension'] == 0 for d in degrees)
    unresolved_anywhere = any(d['unresolved_weights'] for d in degrees)
    return {
        'p': p,
        'window': [0, H.W],
        'degree0': {
            'dimension': len(classes),
            'classes': [
                [H.describe(g.vector) for g in cls] for cls in classes
            ],
        },
        'degrees': degrees,
        'vanishes_within_window': within_window,
        'vanishes_in_positive_degrees': (
            None if within_window and unresolved_anywhere else within_window
        ),
    }


def polynomial_bialgebra(
    p: int,
    D: int,
    generator_degree: int = 2,
) -> GradedBialgebra:
    """``F_p[y]`` with ``y`` primitive, truncated at degree `D`.

    For odd `p` and odd generator degree ``y`` squares to zero.
    """
    if generator_degree < 1:
        raise InvalidInputError(
            f"Generator degree must be >= 1: {generator_degree}"
        )
    top = D // generator_degree
    if p % 2 and generator_degree % 2:
        top = min(top, 1)
    names = ['1', 'y'] + [f"y^{k}" for k in range(2, top + 1)]
    basis = [
        BasisElement(names[k], k * generator_degree, 0)
        for k in range(top + 1)
    ]
    mult = {
        (i, j): {i + j: 1}
        for i in range(top + 1) for j in range(top + 1) if i + j <= top
    }
    comult = {
        k: {(a, k - a): comb(k, a) for a in range(k + 1)}
        for k in range(top + 1)
    }
    return GradedBialgebra(
        p=p, D=D, W=0, basis=basis, mult=mult, comult=comult,
        unit=0, counit={0: 1},
    )


def monoid_algebra(M: FiniteCommMonoid, p: int) -> GradedBialgebra:
    """Degree-0 bialgebra ``F_p[M]`` with ``D[m] = [m] (x) [m]``."""
    basis = [BasisElement(f"[{label}]", 0, 0) for label in M.labels]
    return GradedBialgebra(
        p=p,
        D=0,
        W=0,
        basis=basis,
        mult={(a, b): {M.add(a, b): 1} for a in M.elements
              for b in M.elements},
        comult={a: {(a, a): 1} for a in M.elements},
        unit=M.zero,
        counit={a: 1 for a in M.elements},
    )
