import logging
from types import TracebackType
from typing import Optional

logger = logging.getLogger(__name__)


def exception_handler(
    _type: type,
    value: BaseException,
    traceback: TracebackType
) -> None:
    """Error handler for all exceptions."""
    if str(value):
        msg = f"{_type.__name__}: {value}"
    else:
        msg = f"{_type.__name__}"
    logger.error(msg)


class InvalidPermutation(Exception):
    """Exception raised when an image array is not a bijection."""


class DegreeMismatchError(Exception):
    """Exception raised when permutations of different degrees are combined.
    """


class GroupTooLargeError(Exception):
    """Exception raised when a group closure exceeds its order bound."""


class BudgetExceededError(Exception):
    """Exception raised when a computation would exceed its configured budget.

    Attributes:
        largest_feasible: Largest parameter value (e.g., homological degree)
            that fits into the budget, if any.
    """

    def __init__(
        self,
        message: str,
        largest_feasible: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.largest_feasible = largest_feasible


class TruncationError(Exception):
    """Exception raised when a result would leave a degree or weight window.

    Attributes:
        weight: Offending component weight, if the weight window was left.
        degree: Offending homological degree, if the degree window was left.
    """

    def __init__(
        self,
        message: str,
        weight: Optional[int] = None,
        degree: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.weight = weight
        self.degree = degree


class TruncationMismatchError(Exception):
    """Exception raised when homology data of incompatible truncations meet.
    """


class InvalidMonoidData(Exception):
    """Exception raised when monoid data violates the monoid axioms."""


class NotAMemberError(Exception):
    """Exception raised when an element cannot be shown to lie in a monoid."""


class NotInvertibleError(Exception):
    """Exception raised when an integer is not invertible on a finite group.
    """


class MalformedCandidateError(Exception):
    """Exception raised when structure map data violates its invariants."""


class InvalidGroupData(Exception):
    """Exception raised when a multiplication table is not a group."""


class InvalidBialgebraData(Exception):
    """Exception raised when bialgebra data cannot be validated."""


class PreconditionError(Exception):
    """Exception raised when the hypotheses of an operation do not hold."""


class InvalidInputError(Exception):
    """Exception raised when input data cannot be validated against a schema.
    """
