"""Wire models of the JSON input and output formats."""

from typing import (Any, Dict, List, Optional, Tuple, Type, TypeVar)

from pydantic import (BaseModel, Field, ValidationError, validator)

from pperf_cli.errors import InvalidInputError

ModelT = TypeVar('ModelT', bound=BaseModel)


def parse(
    model: Type[ModelT],
    data: Any,
    error: Type[Exception] = InvalidInputError,
) -> ModelT:
    """Validate `data` against `model`.

    Raises:
        error: `data` does not validate; the pydantic message is kept.
    """
    try:
        return model.parse_obj(data)
    except ValidationError as e:
        raise error(
            f"Input does not conform to {model.__name__}: {e}"
        ) from e


class PermutationData(BaseModel):
    images: List[int] = Field(
        ...,
        description='Image array of a permutation of `{0, ..., n - 1}`.',
    )


class PermGroupData(BaseModel):
    degree: int = Field(..., ge=0, description='Number of points acted on.')
    generators: List[List[int]] = Field(
        ..., description='Generators as image arrays.',
    )


class FiniteMonoidData(BaseModel):
    size: int = Field(..., ge=1, description='Number of elements.')
    table: List[List[int]] = Field(
        ...,
        description='Addition table; `table[a][b]` is the index of `a + b`.',
    )
    zero: int = Field(0, ge=0, description='Index of the neutral element.')
    labels: Optional[List[str]] = Field(
        None, description='Optional element names.',
    )

    @validator('table')
    def table_is_square(cls, v, values):
        size = values.get('size')
        if size is not None and (
            len(v) != size or any(len(row) != size for row in v)
        ):
            raise ValueError(f"table must be {size} x {size}")
        return v


class AffineMonoidData(BaseModel):
    rank: int = Field(..., ge=1, description='Ambient lattice rank.')
    generators: List[List[int]] = Field(
        ..., description='Generating vectors in `Z^rank`.',
    )

    @validator('generators')
    def generators_have_rank(cls, v, values):
        rank = values.get('rank')
        if rank is not None and any(len(g) != rank for g in v):
            raise ValueError(f"every generator must have length {rank}")
        return v


class MonoidHomData(BaseModel):
    source: Dict[str, Any] = Field(
        ..., description='Source monoid, finite or affine.',
    )
    target: Dict[str, Any] = Field(
        ..., description='Target monoid, finite or affine.',
    )
    type: str = Field(
        ...,
        regex='^(finite|affine)$',
        description='`finite` for value tables, `affine` for generator '
                    'images.',
    )
    images: List[Any] = Field(
        ...,
        description='Values on all elements (finite) or images of the '
                    'generators (affine).',
    )


class FiberProductData(BaseModel):
    left: MonoidHomData = Field(..., description='First leg `f: A -> C`.')
    right: MonoidHomData = Field(
        ..., description='Second leg `g: B -> C`.',
    )


class FiniteGroupData(BaseModel):
    size: int = Field(..., ge=1, description='Group order.')
    table: List[List[int]] = Field(
        ..., description='Multiplication table, `table[a][b] = a * b`.',
    )
    identity: int = Field(0, ge=0, description='Index of the identity.')
    labels: Optional[List[str]] = Field(
        None, description='Optional element names.',
    )
    name: Optional[str] = Field(None, description='Group name.')


class GModuleData(BaseModel):
    group: FiniteGroupData = Field(..., description='Acting group.')
    module: FiniteGroupData = Field(..., description='Abelian group acted on.')
    action: Optional[List[List[int]]] = Field(
        None,
        description='`action[g][a]` is `g . a`; trivial action if omitted.',
    )


class RhoCandidateData(BaseModel):
    p: int = Field(..., ge=2, description='Arity of the structure map.')
    coordinates: List[List[int]] = Field(
        ..., description='One endomorphism table per factor.',
    )
    witnesses: List[int] = Field(
        ..., description='One element per adjacent transposition.',
    )


class BasisElementData(BaseModel):
    name: str = Field(..., description='Unique basis name.')
    degree: int = Field(..., ge=0, description='Homological degree.')
    weight: int = Field(0, ge=0, description='Component weight.')


class BialgebraData(BaseModel):
    p: int = Field(..., ge=2, description='Coefficient prime.')
    D: int = Field(..., ge=0, description='Degree truncation.')
    W: int = Field(0, ge=0, description='Weight truncation.')
    basis: List[BasisElementData] = Field(
        ..., description='Homogeneous basis.',
    )
    mult: List[Tuple[int, int, List[Tuple[int, int]]]] = Field(
        [],
        description='Structure constants `[i, j, [[k, coeff], ...]]`.',
    )
    comult: List[Tuple[int, List[Tuple[int, int, int]]]] = Field(
        [],
        description='Coproducts `[i, [[j, k, coeff], ...]]`.',
    )
    unit: int = Field(..., ge=0, description='Index of the unit.')
    counit: List[Tuple[int, int]] = Field(
        ..., description='Counit values `[i, value]`.',
    )

    @validator('basis')
    def names_are_unique(cls, v):
        names = [b.name for b in v]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        return v


class Budgets(BaseModel):
    """Budget overrides collected from the command line."""

    order_bound: Optional[int] = Field(
        None, description='Largest permutation group order to enumerate.',
    )
    max_level: Optional[int] = Field(
        None, description='Last telescope level to probe.',
    )
    D: Optional[int] = Field(None, description='Homological degree bound.')
    W: Optional[int] = Field(None, description='Component weight bound.')
    N: Optional[int] = Field(None, description='Largest symmetric group.')
    tuple_budget: Optional[int] = Field(
        None, description='Largest number of bar tuples.',
    )
    search_bound: Optional[int] = Field(
        None, description='Bound for exhaustive monoid searches.',
    )

    @validator('order_bound', 'max_level', 'N', 'tuple_budget',
               'search_bound')
    def positive(cls, v):
        if v is not None and v < 1:
            raise ValueError(f"must be positive: {v}")
        return v

    @validator('D', 'W')
    def non_negative(cls, v):
        if v is not None and v < 0:
            raise ValueError(f"must be non-negative: {v}")
        return v

    def get(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value


class ErrorReport(BaseModel):
    error: str = Field(..., description='Exception type name.')
    message: str = Field('', description='Exception message.')
    largest_feasible: Optional[int] = Field(
        None, description='Largest feasible degree for budget failures.',
    )


class HomologyRow(BaseModel):
    group: str = Field(..., description='Group name.')
    p: int = Field(..., description='Coefficient prime.')
    degree: int = Field(..., description='Homological degree.')
    dim: int = Field(..., description='Dimension over F_p.')


def dump(model: BaseModel) -> Dict:
    return model.dict(exclude_none=True)
