"""Command line interface ``pperf``.

Results are written as JSON (keys sorted), CSV or plain text. Exit status
is 0 on success, 1 when a yes/no check is answered negatively, 2 when a
budget or truncation window is exhausted and 3 on malformed input; errors
are reported as JSON objects on stderr.
"""

import csv
import functools
import io
import json
import logging
import re
import sys
from typing import (Any, Callable, Dict, List, Optional, Sequence)

import click

from pperf_cli import __version__
from pperf_cli.acceptance import (fin_frobenius, manifest, run_criterion)
from pperf_cli.errors import (
    BudgetExceededError,
    DegreeMismatchError,
    GroupTooLargeError,
    InvalidBialgebraData,
    InvalidGroupData,
    InvalidInputError,
    InvalidMonoidData,
    InvalidPermutation,
    MalformedCandidateError,
    NotAMemberError,
    NotInvertibleError,
    PreconditionError,
    TruncationError,
    TruncationMismatchError,
    exception_handler,
)
from pperf_cli.fpbialg import (
    GradedBialgebra,
    check_axioms,
    colimit_along_frobenius,
    frobenius,
    frobenius_iterate,
    frobenius_nilpotence,
    grouplikes,
    is_weakly_primitive,
    load_bialgebra,
    polynomial_bialgebra,
    verify_phi_formula,
)
from pperf_cli.homology import (
    DEFAULT_TUPLE_BUDGET,
    assemble_fin_bialgebra,
    bar_homology,
    homology_table,
    kunneth_product,
    periodic_resolution_homology,
    table_to_csv,
)
from pperf_cli.models import (
    AffineMonoidData,
    Budgets,
    ErrorReport,
    FiberProductData,
    FiniteGroupData,
    FiniteMonoidData,
    GModuleData,
    MonoidHomData,
    PermGroupData,
    PermutationData,
    RhoCandidateData,
    dump,
    parse,
)
from pperf_cli.monoid import (
    DEFAULT_SEARCH_BOUND,
    AffineMonoid,
    CommMonoid,
    FiniteCommMonoid,
    MonoidHom,
    fiber_product,
    group_completion,
    invert_p,
    is_locally_monogenic,
    localize_at_element,
    pi0_pullback_check,
    sequential_colimit,
    zero_sum_witness,
)
from pperf_cli.perm import (
    DEFAULT_ORDER_BOUND,
    DEFAULT_WITNESS_BOUND,
    PermGroup,
    Permutation,
    alternating_group,
    are_conjugate,
    cycle_decomposition,
    derived_series,
    generate_group,
    grid_transpose,
    has_pth_root,
    parse_cycles,
    permutation_matrix_determinant,
    pn_cycle,
    render_cycles,
    sign,
    symmetric_group,
)
from pperf_cli.structure import (
    DEFAULT_SEARCH_BUDGET,
    FiniteGroup,
    GModule,
    RhoCandidate,
    canonical_rho,
    full_symmetry_check,
    group_by_name,
    group_catalog,
    search_rho,
    verify_rho_action,
    verify_rho_group,
)
from pperf_cli.telescope import (
    abelianness_probe,
    check_transitions,
    default_max_level,
    divisibility_probe,
    stabilize,
    symmetric_system,
)

logger = logging.getLogger(__name__)

sys.excepthook = exception_handler

EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3

BUDGET_ERRORS = (BudgetExceededError, GroupTooLargeError, TruncationError)
INPUT_ERRORS = (
    DegreeMismatchError,
    InvalidBialgebraData,
    InvalidGroupData,
    InvalidInputError,
    InvalidMonoidData,
    InvalidPermutation,
    MalformedCandidateError,
    NotAMemberError,
    NotInvertibleError,
    PreconditionError,
    TruncationMismatchError,
)

_RE_PERM_GROUP = re.compile(r"([SA])(\d+)")


def _diagnose(e: Exception) -> None:
    report = ErrorReport(
        error=type(e).__name__,
        message=str(e),
        largest_feasible=getattr(e, 'largest_feasible', None),
    )
    click.echo(json.dumps(dump(report), sort_keys=True), err=True)


def guarded(func: Callable[..., Optional[int]]) -> Callable[..., None]:
    """Turn domain exceptions and negative verdicts into exit statuses."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> None:
        try:
            status = func(*args, **kwargs)
        except BUDGET_ERRORS as e:
            logger.warning(f"{type(e).__name__}: {e}")
            _diagnose(e)
            sys.exit(EXIT_BUDGET)
        except INPUT_ERRORS as e:
            logger.warning(f"{type(e).__name__}: {e}")
            _diagnose(e)
            sys.exit(EXIT_INPUT)
        if status:
            sys.exit(status)
    return wrapper


def output_options(func: Callable) -> Callable:
    func = click.option(
        '--format', 'fmt',
        type=click.Choice(['json', 'csv', 'text']),
        default='json',
        show_default=True,
        help='Output format.',
    )(func)
    return click.option(
        '--out', 'out', default=None, type=click.Path(dir_okay=False),
        help='Write the result to this file instead of stdout.',
    )(func)


def input_option(func: Callable) -> Callable:
    return click.option(
        '--in', 'source', required=True,
        help='Input file, or inline JSON.',
    )(func)


def load_json(source: str) -> Any:
    """Parse `source` as inline JSON or as the path of a JSON file.

    Raises:
        pperf_cli.errors.InvalidInputError: The file cannot be read or does
            not contain JSON.
    """
    text = source
    if not source.lstrip().startswith(('{', '[')):
        try:
            with open(source, encoding='utf-8') as handle:
                text = handle.read()
        except OSError as e:
            raise InvalidInputError(f"Cannot read input {source}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"Input is not valid JSON: {e}") from e


def budgets(**values: Optional[int]) -> Budgets:
    return parse(Budgets, values)


def _csv(rows: Sequence[Dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=list(rows[0]) if rows else [],
        lineterminator='\n',
    )
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue().rstrip('\n')


def _text(payload: Any) -> str:
    if isinstance(payload, dict):
        return "\n".join(
            f"{key}: {json.dumps(value, sort_keys=True)}"
            for key, value in sorted(payload.items())
        )
    return json.dumps(payload, sort_keys=True)


def emit(
    payload: Any,
    fmt: str,
    out: Optional[str],
    rows: Optional[List[Dict]] = None,
    text: Optional[str] = None,
) -> None:
    """Serialize `payload` in `fmt` and write it to `out` or stdout.

    Raises:
        pperf_cli.errors.InvalidInputError: The command has no CSV form.
    """
    if fmt == 'csv':
        if rows is None:
            raise InvalidInputError("CSV output is not available here")
        content = _csv(rows)
    elif fmt == 'text':
        content = text if text is not None else _text(payload)
    else:
        content = json.dumps(payload, sort_keys=True, indent=2)
    if out is None:
        click.echo(content)
        return
    with open(out, 'w', encoding='utf-8') as handle:
        handle.write(content + "\n")
    logger.info(f"Wrote {fmt} output to {out}")


def permutation_report(p: Permutation) -> Dict:
    cycle_type, _ = cycle_decomposition(p)
    return {
        'images': p.to_list(),
        'cycles': render_cycles(p),
        'cycle_type': cycle_type.to_dict(),
        'sign': sign(p),
        'order': p.order(),
    }


def load_permutation(data: Any) -> Permutation:
    if isinstance(data, list):
        data = {'images': data}
    return Permutation(parse(PermutationData, data, InvalidPermutation).images)


def load_perm_group(
    source: Optional[str],
    name: Optional[str],
    order_bound: int,
) -> PermGroup:
    if name is not None:
        match = _RE_PERM_GROUP.fullmatch(name.strip())
        if not match:
            raise InvalidInputError(f"Expected S<n> or A<n>: {name!r}")
        build = symmetric_group if match.group(1) == 'S' else alternating_group
        return build(int(match.group(2)), order_bound=order_bound)
    if source is None:
        raise InvalidInputError("Either --in or --name is required")
    model = parse(PermGroupData, load_json(source))
    gens = [Permutation(images) for images in model.generators]
    return generate_group(gens, order_bound=order_bound, degree=model.degree)


def load_monoid(data: Any) -> CommMonoid:
    """Finite (``table``) or affine (``generators``) monoid from JSON.

    Raises:
        pperf_cli.errors.InvalidMonoidData: The data does not validate.
    """
    if isinstance(data, dict) and 'table' in data:
        model = parse(FiniteMonoidData, data, InvalidMonoidData)
        return FiniteCommMonoid(model.table, model.zero, model.labels)
    if isinstance(data, dict) and 'generators' in data:
        model = parse(AffineMonoidData, data, InvalidMonoidData)
        return AffineMonoid(model.rank, model.generators)
    raise InvalidMonoidData("Expected a finite table or affine generators")


def finite_monoid(data: Any) -> FiniteCommMonoid:
    M = load_monoid(data)
    if not isinstance(M, FiniteCommMonoid):
        raise InvalidInputError("This command needs a finite monoid")
    return M


def load_hom(model: MonoidHomData) -> MonoidHom:
    """Homomorphism with its source and target from a validated model.

    Raises:
        pperf_cli.errors.InvalidMonoidData: The declared type does not
            match the source, or the images are not a homomorphism.
    """
    source = load_monoid(model.source)
    target = load_monoid(model.target)
    kind = 'finite' if isinstance(source, FiniteCommMonoid) else 'affine'
    if kind != model.type:
        raise InvalidMonoidData(
            f"Homomorphism declared {model.type} but its source is {kind}"
        )
    return MonoidHom(source, target, model.images)


def _group_from_data(data: Any) -> FiniteGroup:
    model = parse(FiniteGroupData, data, InvalidGroupData)
    if len(model.table) != model.size:
        raise InvalidGroupData(f"Table must have {model.size} rows")
    return FiniteGroup(model.table, model.identity, model.labels, model.name)


def load_group(source: Optional[str], name: Optional[str]) -> FiniteGroup:
    if name is not None:
        return group_by_name(name)
    if source is None:
        raise InvalidInputError("Either --in or --group is required")
    return _group_from_data(load_json(source))


def load_rho(source: str) -> RhoCandidate:
    model = parse(RhoCandidateData, load_json(source), MalformedCandidateError)
    return RhoCandidate(model.p, model.coordinates, model.witnesses)


def load_bialgebra_file(
    source: str,
    W: Optional[int] = None,
) -> GradedBialgebra:
    """Bialgebra from `source`, optionally restricted to weights ``<= W``.

    Raises:
        pperf_cli.errors.InvalidInputError: `W` exceeds the stored window.
    """
    H = load_bialgebra(load_json(source))
    if W is not None:
        if W > H.W:
            raise InvalidInputError(
                f"Requested window W={W} exceeds the stored W={H.W}"
            )
        H.W = W
    return H


class PperfGroup(click.Group):
    """Root group mapping click usage errors to the malformed-input status.
    """

    def main(self, args=None, prog_name=None, **extra):
        extra['standalone_mode'] = False
        try:
            return super().main(args=args, prog_name=prog_name, **extra)
        except click.ClickException as e:
            _diagnose(InvalidInputError(e.format_message()))
            sys.exit(EXIT_INPUT)


@click.group(cls=PperfGroup)
@click.version_option(__version__, prog_name='pperf')
@click.option('--verbose', is_flag=True, help='Log debug messages.')
def main(verbose: bool) -> None:
    """Computations with p-perfect commutative monoids."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )


@main.group()
def perm() -> None:
    """Permutations, roots and derived series."""


@perm.command('transpose')
@click.option('--a', 'a', type=int, required=True, help='Grid rows.')
@click.option('--b', 'b', type=int, required=True, help='Grid columns.')
@output_options
@guarded
def perm_transpose(a: int, b: int, fmt: str, out: Optional[str]) -> None:
    """Transpose of an a x b grid."""
    t = grid_transpose(a, b)
    report = permutation_report(t)
    report['determinant'] = permutation_matrix_determinant(t)
    emit(report, fmt, out, text=report['cycles'])


@perm.command('pn-cycle')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--n', 'n', type=int, default=3, show_default=True)
@output_options
@guarded
def perm_pn_cycle(p: int, n: int, fmt: str, out: Optional[str]) -> None:
    """Transpose of the p x p^(n-1) grid."""
    report = permutation_report(pn_cycle(p, n))
    emit(report, fmt, out, text=report['cycles'])


@perm.command('decompose')
@input_option
@output_options
@guarded
def perm_decompose(source: str, fmt: str, out: Optional[str]) -> None:
    """Cycle decomposition of an image array."""
    report = permutation_report(load_permutation(load_json(source)))
    emit(report, fmt, out, text=report['cycles'])


@perm.command('root')
@input_option
@click.option('--q', 'q', type=int, default=2, show_default=True,
              help='Prime root exponent.')
@output_options
@guarded
def perm_root(source: str, q: int, fmt: str, out: Optional[str]) -> int:
    """Decide whether a permutation has a q-th root."""
    p = load_permutation(load_json(source))
    exists, witness = has_pth_root(p, q, witness_bound=DEFAULT_WITNESS_BOUND)
    report = {
        'permutation': render_cycles(p),
        'q': q,
        'has_root': exists,
        'witness': render_cycles(witness) if witness else None,
    }
    emit(report, fmt, out)
    return 0 if exists else EXIT_NEGATIVE


@perm.command('conjugate')
@input_option
@output_options
@guarded
def perm_conjugate(source: str, fmt: str, out: Optional[str]) -> int:
    """Decide conjugacy of a pair ``[left, right]`` of image arrays."""
    data = load_json(source)
    if not isinstance(data, list) or len(data) != 2:
        raise InvalidInputError("Expected a pair of image arrays")
    left, right = (load_permutation(x) for x in data)
    conjugate, g = are_conjugate(left, right)
    report = {
        'conjugate': conjugate,
        'conjugator': render_cycles(g) if g else None,
    }
    emit(report, fmt, out)
    return 0 if conjugate else EXIT_NEGATIVE


def _derived_report(G: PermGroup, order_bound: int) -> Dict:
    series = derived_series(G, order_bound=order_bound)
    core = series[-1]
    return {
        'degree': G.degree,
        'order': G.order,
        'derived_series': [H.order for H in series],
        'perfect_core': core.order,
        'hypoabelian': core.is_trivial(),
        'perfect': core.order == G.order,
    }


@perm.command('derived')
@click.option('--in', 'source', default=None, help='Group JSON.')
@click.option('--name', default=None, help='S<n> or A<n>.')
@click.option('--order-bound', type=int, default=None)
@output_options
@guarded
def perm_derived(
    source: Optional[str],
    name: Optional[str],
    order_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Derived series and perfect core of a permutation group."""
    bound = budgets(order_bound=order_bound).get(
        'order_bound', DEFAULT_ORDER_BOUND,
    )
    G = load_perm_group(source, name, bound)
    emit(_derived_report(G, bound), fmt, out)


@perm.command('hypoabelian')
@click.option('--in', 'source', default=None, help='Group JSON.')
@click.option('--name', default=None, help='S<n> or A<n>.')
@click.option('--order-bound', type=int, default=None)
@output_options
@guarded
def perm_hypoabelian(
    source: Optional[str],
    name: Optional[str],
    order_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Decide whether the derived series reaches the trivial group."""
    bound = budgets(order_bound=order_bound).get(
        'order_bound', DEFAULT_ORDER_BOUND,
    )
    report = _derived_report(load_perm_group(source, name, bound), bound)
    emit(report, fmt, out)
    return 0 if report['hypoabelian'] else EXIT_NEGATIVE


@main.group()
def telescope() -> None:
    """Colimits of symmetric groups along diagonal embeddings."""


@telescope.command('abelian')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--max-level', type=int, default=None)
@output_options
@guarded
def telescope_abelian(
    p: int,
    max_level: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Decide whether the colimit is abelian up to a level."""
    level = budgets(max_level=max_level).get(
        'max_level', default_max_level(p),
    )
    probe = abelianness_probe(symmetric_system(p), level)
    emit(dict(probe.to_dict(), p=p), fmt, out)
    return 0 if probe.witness is None else EXIT_NEGATIVE


@telescope.command('divisibility')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--level', type=int, required=True)
@click.option('--value', required=True, help='Cycle notation, e.g. (0 1).')
@click.option('--q', 'q', type=int, default=2, show_default=True)
@click.option('--max-level', type=int, default=None)
@output_options
@guarded
def telescope_divisibility(
    p: int,
    level: int,
    value: str,
    q: int,
    max_level: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """q-th roots of the stabilizations of an element."""
    system = symmetric_system(p)
    last = budgets(max_level=max_level).get(
        'max_level', default_max_level(p),
    )
    element = system.element(level, parse_cycles(value, system.degree(level)))
    records = divisibility_probe(system, element, q, last)
    rows = [
        {'level': r['level'], 'degree': r['degree'],
         'has_root': r['has_root'], 'witness': r['witness'] or ''}
        for r in records
    ]
    emit(records, fmt, out, rows=rows)


@telescope.command('transitions')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--max-level', type=int, default=None)
@output_options
@guarded
def telescope_transitions(
    p: int,
    max_level: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Check injectivity and functoriality of the transitions."""
    levels = budgets(max_level=max_level).get('max_level', 3)
    report = check_transitions(symmetric_system(p), levels)
    emit(report, fmt, out)
    return 0 if report['valid'] else EXIT_NEGATIVE


@telescope.command('stabilize')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--level', type=int, required=True)
@click.option('--value', required=True, help='Cycle notation.')
@click.option('--target', type=int, required=True)
@output_options
@guarded
def telescope_stabilize(
    p: int,
    level: int,
    value: str,
    target: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """Push a representative up to a higher level."""
    system = symmetric_system(p)
    e = system.element(level, parse_cycles(value, system.degree(level)))
    result = stabilize(system, e, target)
    emit({'level': result.level, **permutation_report(result.value)},
         fmt, out)


@main.group()
def monoid() -> None:
    """Localization and group completion of commutative monoids."""


@monoid.command('completion')
@input_option
@output_options
@guarded
def monoid_completion(source: str, fmt: str, out: Optional[str]) -> None:
    """Group completion."""
    M = load_monoid(load_json(source))
    completion = group_completion(M)
    report = {'group': completion.group.to_dict()}
    if completion.table is not None:
        report['unit'] = [completion.unit(m) for m in M.elements]
        report['table'] = completion.table.to_dict()
    emit(report, fmt, out)


@monoid.command('invert-p')
@input_option
@click.option('--p', 'p', type=int, default=2, show_default=True)
@output_options
@guarded
def monoid_invert_p(
    source: str,
    p: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """Localization M[1/p]."""
    local = invert_p(load_monoid(load_json(source)), p)
    emit(local.to_dict(), fmt, out)


@monoid.command('localize')
@input_option
@click.option('--x', 'x', required=True,
              help='Element index (finite) or JSON vector (affine).')
@click.option('--search-bound', type=int, default=None)
@output_options
@guarded
def monoid_localize(
    source: str,
    x: str,
    search_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Localization M[-x]."""
    M = load_monoid(load_json(source))
    bound = budgets(search_bound=search_bound).get(
        'search_bound', DEFAULT_SEARCH_BOUND,
    )
    try:
        element = json.loads(x)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"Cannot parse element {x!r}: {e}") from e
    local = localize_at_element(M, element, bound=bound)
    emit(local.to_dict(), fmt, out)


@monoid.command('colimit')
@input_option
@click.option('--p', 'p', type=int, default=2, show_default=True)
@output_options
@guarded
def monoid_colimit(source: str, p: int, fmt: str, out: Optional[str]) -> None:
    """Sequential colimit along multiplication by p."""
    M = finite_monoid(load_json(source))
    colimit = sequential_colimit(M, p)
    report = {
        'image': [M.labels[m] for m in colimit.image],
        'class_of': {M.labels[m]: M.labels[colimit.key(m, 0)]
                     for m in M.elements},
    }
    emit(report, fmt, out)


@monoid.command('locmono')
@input_option
@click.option('--search-bound', type=int, default=None)
@output_options
@guarded
def monoid_locmono(
    source: str,
    search_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Decide local monogenicity."""
    M = load_monoid(load_json(source))
    bound = budgets(search_bound=search_bound).get(
        'search_bound', DEFAULT_SEARCH_BOUND,
    )
    verdict = is_locally_monogenic(M, bound=bound)
    emit(verdict.to_dict(), fmt, out, text=verdict.answer)
    return {'yes': 0, 'no': EXIT_NEGATIVE}.get(verdict.answer, EXIT_BUDGET)


@monoid.command('isolated')
@input_option
@output_options
@guarded
def monoid_isolated(source: str, fmt: str, out: Optional[str]) -> int:
    """Decide whether zero is isolated."""
    witness = zero_sum_witness(load_monoid(load_json(source)))
    emit({'isolated': witness is None, 'witness': witness}, fmt, out)
    return 0 if witness is None else EXIT_NEGATIVE


@monoid.command('member')
@input_option
@click.option('--v', 'v', required=True, help='JSON vector.')
@click.option('--search-bound', type=int, default=None)
@output_options
@guarded
def monoid_member(
    source: str,
    v: str,
    search_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Membership in an affine monoid with a certificate."""
    M = load_monoid(load_json(source))
    if not isinstance(M, AffineMonoid):
        raise InvalidInputError("Membership needs an affine monoid")
    bound = budgets(search_bound=search_bound).get(
        'search_bound', DEFAULT_SEARCH_BOUND,
    )
    vector = load_json(v)
    try:
        coefficients = M.membership(vector, bound=bound)
    except NotAMemberError as e:
        emit({'member': False, 'reason': str(e), 'bound': bound}, fmt, out)
        return EXIT_NEGATIVE
    emit({'member': True, 'coefficients': coefficients}, fmt, out)
    return 0


@monoid.command('pullback')
@input_option
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--search-bound', type=int, default=None)
@output_options
@guarded
def monoid_pullback(
    source: str,
    p: int,
    search_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Discrete checks of group completion against localization."""
    M = load_monoid(load_json(source))
    bound = budgets(search_bound=search_bound).get(
        'search_bound', DEFAULT_SEARCH_BOUND,
    )
    report = pi0_pullback_check(M, p, bound=bound)
    emit(report, fmt, out)
    failed = 'failed' in (
        report['pullback_collapses'], report['localization_is_completion'],
    )
    return EXIT_NEGATIVE if failed else 0


@monoid.command('fiber-product')
@input_option
@click.option('--bound', type=int, default=6, show_default=True,
              help='Coefficient sum bound for affine generators.')
@output_options
@guarded
def monoid_fiber_product(
    source: str,
    bound: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """Fiber product of two homomorphisms into a common monoid."""
    model = parse(FiberProductData, load_json(source), InvalidMonoidData)
    pullback = fiber_product(
        load_hom(model.left), load_hom(model.right), bound=bound,
    )
    report = {'monoid': pullback.monoid.to_dict()}
    if pullback.pairs is not None:
        report['pairs'] = [list(pair) for pair in pullback.pairs]
    emit(report, fmt, out)


@main.group()
def structure() -> None:
    """Structure maps rho on groups and G-modules."""


@structure.command('catalog')
@click.option('--order-bound', type=int, default=None)
@output_options
@guarded
def structure_catalog(
    order_bound: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Groups of order at most 8."""
    bound = budgets(order_bound=order_bound).get('order_bound', 8)
    rows = [
        {'group': name, 'order': G.order, 'abelian': G.is_abelian()}
        for name, G in group_catalog(bound).items()
    ]
    emit(rows, fmt, out, rows=rows)


@structure.command('search-rho')
@click.option('--group', 'name', default=None, help='Group name.')
@click.option('--in', 'source', default=None, help='Group JSON.')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@output_options
@guarded
def structure_search_rho(
    name: Optional[str],
    source: Optional[str],
    p: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """All structure maps satisfying both conditions."""
    G = load_group(source, name)
    found = search_rho(G, p, budget=DEFAULT_SEARCH_BUDGET)
    emit({
        'group': G.name,
        'p': p,
        'count': len(found),
        'candidates': [rho.to_dict() for rho in found],
    }, fmt, out)


@structure.command('canonical')
@click.option('--group', 'name', default=None, help='Group name.')
@click.option('--in', 'source', default=None, help='Group JSON.')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@output_options
@guarded
def structure_canonical(
    name: Optional[str],
    source: Optional[str],
    p: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """The averaging map on an abelian group."""
    emit(canonical_rho(load_group(source, name), p).to_dict(), fmt, out)


@structure.command('verify-rho')
@click.option('--group', 'name', default=None, help='Group name.')
@click.option('--in', 'source', default=None, help='Group JSON.')
@click.option('--rho', 'rho_source', required=True,
              help='Candidate file, or inline JSON.')
@output_options
@guarded
def structure_verify_rho(
    name: Optional[str],
    source: Optional[str],
    rho_source: str,
    fmt: str,
    out: Optional[str],
) -> int:
    """Check a candidate structure map and its conclusion."""
    G = load_group(source, name)
    rho = load_rho(rho_source)
    verdict = verify_rho_group(G, rho)
    report = verdict.to_dict()
    if verdict.conditions_hold:
        report['symmetry'] = full_symmetry_check(G, rho)
    emit(report, fmt, out)
    return 0 if verdict.conditions_hold else EXIT_NEGATIVE


@structure.command('verify-action')
@input_option
@click.option('--rho', 'rho_source', required=True,
              help='Candidate file, or inline JSON.')
@click.option('--equivariant', is_flag=True,
              help='Also check equivariance.')
@output_options
@guarded
def structure_verify_action(
    source: str,
    rho_source: str,
    equivariant: bool,
    fmt: str,
    out: Optional[str],
) -> int:
    """Check a structure map on a G-module."""
    model = parse(GModuleData, load_json(source), InvalidGroupData)
    G = _group_from_data(model.group.dict())
    A = _group_from_data(model.module.dict())
    mod = (GModule(G, A, model.action) if model.action is not None
           else GModule.trivial(G, A))
    report = verify_rho_action(mod, load_rho(rho_source), equivariant)
    emit(report, fmt, out)
    return 0 if report['conditions_hold'] else EXIT_NEGATIVE


@main.group()
def fpbialg() -> None:
    """Graded bialgebras over F_p and their Frobenius."""


@fpbialg.command('check')
@input_option
@output_options
@guarded
def fpbialg_check(source: str, fmt: str, out: Optional[str]) -> int:
    """Check all bialgebra axioms."""
    report = check_axioms(load_bialgebra_file(source))
    emit(report, fmt, out)
    return 0 if report['passed'] else EXIT_NEGATIVE


@fpbialg.command('grouplikes')
@input_option
@output_options
@guarded
def fpbialg_grouplikes(source: str, fmt: str, out: Optional[str]) -> None:
    """Grouplike elements of degree 0."""
    H = load_bialgebra_file(source)
    emit([H.describe(g.vector) for g in grouplikes(H)], fmt, out)


@fpbialg.command('primitive')
@input_option
@click.option('--element', required=True, help='Basis element name.')
@output_options
@guarded
def fpbialg_primitive(
    source: str,
    element: str,
    fmt: str,
    out: Optional[str],
) -> int:
    """Decide whether a basis element is weakly primitive."""
    H = load_bialgebra_file(source)
    alpha = is_weakly_primitive(H, H.element_from_names({element: 1}))
    emit({
        'element': element,
        'weakly_primitive': alpha is not None,
        'alpha': None if alpha is None else H.describe(alpha.vector),
    }, fmt, out)
    return 0 if alpha is not None else EXIT_NEGATIVE


@fpbialg.command('frobenius')
@input_option
@click.option('--element', required=True, help='Basis element name.')
@click.option('--m', 'm', type=int, default=None,
              help='Apply Phi_m once (default p).')
@click.option('--k', 'k', type=int, default=None,
              help='Apply Phi_p k times instead.')
@output_options
@guarded
def fpbialg_frobenius(
    source: str,
    element: str,
    m: Optional[int],
    k: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Bialgebra Frobenius of a basis element."""
    H = load_bialgebra_file(source)
    x = H.element_from_names({element: 1})
    if k is not None:
        result = frobenius_iterate(H, x, k)
    else:
        result = frobenius(H, x, m or H.p)
    emit({
        'element': element,
        'm': m or H.p,
        'k': k,
        'result': H.describe(result.vector),
    }, fmt, out)


@fpbialg.command('phi-formula')
@input_option
@click.option('--element', required=True, help='Basis element name.')
@click.option('--m', 'm', type=int, default=None, help='Default p.')
@output_options
@guarded
def fpbialg_phi_formula(
    source: str,
    element: str,
    m: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Check Phi_m(x) = m alpha^(m-1) x modulo decomposables."""
    H = load_bialgebra_file(source)
    report = verify_phi_formula(H, H.element_from_names({element: 1}),
                                m or H.p)
    emit(report, fmt, out)
    return 0 if report['in_ideal'] else EXIT_NEGATIVE


@fpbialg.command('nilpotence')
@input_option
@click.option('--W', 'W', type=int, default=None, help='Weight window.')
@output_options
@guarded
def fpbialg_nilpotence(
    source: str,
    W: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Check nilpotence of the Frobenius in positive degrees."""
    window = budgets(W=W).W
    report = frobenius_nilpotence(load_bialgebra_file(source, window))
    emit(report, fmt, out)
    return 0 if report['consistent'] else EXIT_NEGATIVE


@fpbialg.command('colimit')
@input_option
@click.option('--W', 'W', type=int, default=None, help='Weight window.')
@output_options
@guarded
def fpbialg_colimit(
    source: str,
    W: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Colimit along the Frobenius, per degree."""
    window = budgets(W=W).W
    report = colimit_along_frobenius(load_bialgebra_file(source, window))
    rows = [{'degree': 0, 'dimension': report['degree0']['dimension']}] + [
        {'degree': d['degree'], 'dimension': d['dimension']}
        for d in report['degrees']
    ]
    emit(report, fmt, out, rows=rows)


@fpbialg.command('polynomial')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--D', 'D', type=int, default=None)
@click.option('--degree', type=int, default=2, show_default=True,
              help='Degree of the generator.')
@output_options
@guarded
def fpbialg_polynomial(
    p: int,
    D: Optional[int],
    degree: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """Truncated polynomial bialgebra on a primitive generator."""
    H = polynomial_bialgebra(p, budgets(D=D).get('D', 4), degree)
    emit(H.to_dict(), fmt, out)


@main.group()
def homology() -> None:
    """Group homology from bar complexes."""


@homology.command('bar')
@click.option('--group', 'names', multiple=True, required=True,
              help='Group name; repeat for a table.')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--D', 'D', type=int, default=None)
@click.option('--tuple-budget', type=int, default=None)
@output_options
@guarded
def homology_bar(
    names: Sequence[str],
    p: int,
    D: Optional[int],
    tuple_budget: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """F_p homology dimensions in degrees 0..D."""
    config = budgets(D=D, tuple_budget=tuple_budget)
    degree = config.get('D', 3)
    limit = config.get('tuple_budget', DEFAULT_TUPLE_BUDGET)
    bases = [
        bar_homology(group_by_name(name), p, degree, tuple_budget=limit)
        for name in names
    ]
    rows = homology_table(bases)
    report = [
        {'group': h.group.name, 'p': p, 'D': degree, 'dims': h.dims}
        for h in bases
    ]
    if fmt == 'csv':
        content = table_to_csv(rows).rstrip('\n')
        emit(report, 'text', out, text=content)
        return
    emit(report, fmt, out, rows=rows)


@homology.command('oracle')
@click.option('--q', 'q', type=int, required=True, help='Cyclic order.')
@click.option('--p', 'p', type=int, default=None, help='Default q.')
@click.option('--D', 'D', type=int, default=None)
@output_options
@guarded
def homology_oracle(
    q: int,
    p: Optional[int],
    D: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Compare bar homology of Z/q with the periodic resolution."""
    degree = budgets(D=D).get('D', 4)
    prime = p or q
    bar = bar_homology(FiniteGroup.cyclic(q), prime, degree).dims
    oracle = periodic_resolution_homology(q, prime, degree)
    emit({'q': q, 'p': prime, 'bar': bar, 'oracle': oracle,
          'agree': bar == oracle}, fmt, out)
    return 0 if bar == oracle else EXIT_NEGATIVE


@homology.command('kunneth')
@click.option('--left', required=True, help='Group name.')
@click.option('--right', required=True, help='Group name.')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--D', 'D', type=int, default=None)
@click.option('--tuple-budget', type=int, default=None)
@output_options
@guarded
def homology_kunneth(
    left: str,
    right: str,
    p: int,
    D: Optional[int],
    tuple_budget: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Cross product and Alexander-Whitney map on a direct product."""
    config = budgets(D=D, tuple_budget=tuple_budget)
    degree = config.get('D', 2)
    limit = config.get('tuple_budget', DEFAULT_TUPLE_BUDGET)
    h1 = bar_homology(group_by_name(left), p, degree, tuple_budget=limit)
    h2 = bar_homology(group_by_name(right), p, degree, tuple_budget=limit)
    result = kunneth_product(h1, h2, tuple_budget=limit)
    ok = result.dims_match and result.aw_after_ez and result.ez_after_aw
    emit({
        'left': h1.dims,
        'right': h2.dims,
        'product': result.basis.dims,
        'dims_match': result.dims_match,
        'aw_after_ez': result.aw_after_ez,
        'ez_after_aw': result.ez_after_aw,
    }, fmt, out)
    return 0 if ok else EXIT_NEGATIVE


@homology.command('assemble')
@click.option('--N', 'N', type=int, default=None)
@click.option('--D', 'D', type=int, default=None)
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--tuple-budget', type=int, default=None)
@output_options
@guarded
def homology_assemble(
    N: Optional[int],
    D: Optional[int],
    p: int,
    tuple_budget: Optional[int],
    fmt: str,
    out: Optional[str],
) -> None:
    """Homology bialgebra of S_0, ..., S_N in the bialgebra file format."""
    config = budgets(N=N, D=D, tuple_budget=tuple_budget)
    H = assemble_fin_bialgebra(
        config.get('N', 4), config.get('D', 3), p,
        tuple_budget=config.get('tuple_budget', DEFAULT_TUPLE_BUDGET),
    )
    emit(H.to_dict(), fmt, out)


@main.group()
def pipeline() -> None:
    """Homology feeding the bialgebra Frobenius."""


@pipeline.command('fin-frobenius')
@click.option('--N', 'N', type=int, default=None)
@click.option('--D', 'D', type=int, default=None)
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--tuple-budget', type=int, default=None)
@output_options
@guarded
def pipeline_fin_frobenius(
    N: Optional[int],
    D: Optional[int],
    p: int,
    tuple_budget: Optional[int],
    fmt: str,
    out: Optional[str],
) -> int:
    """Assemble, check axioms, nilpotence and the colimit."""
    config = budgets(N=N, D=D, tuple_budget=tuple_budget)
    report = fin_frobenius(
        config.get('N', 4), config.get('D', 3), p,
        tuple_budget=config.get('tuple_budget', DEFAULT_TUPLE_BUDGET),
    )
    emit(report, fmt, out)
    return 0 if report['passed'] else EXIT_NEGATIVE


@main.group()
def acceptance() -> None:
    """Acceptance criteria."""


@acceptance.command('list')
@output_options
@guarded
def acceptance_list(fmt: str, out: Optional[str]) -> None:
    """Criteria with the command that runs each."""
    rows = manifest()
    emit(rows, fmt, out, rows=rows)


@acceptance.command('run')
@click.argument('number', type=int)
@output_options
@guarded
def acceptance_run(number: int, fmt: str, out: Optional[str]) -> int:
    """Run one criterion."""
    report = run_criterion(number)
    emit(report, fmt, out, text='passed' if report['passed'] else 'failed')
    return 0 if report['passed'] else EXIT_NEGATIVE
