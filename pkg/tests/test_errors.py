"""Unit tests for errors/handlers."""

import logging
import sys

import pytest

from pperf_cli.errors import (
    BudgetExceededError,
    TruncationError,
    exception_handler,
)
from tests.mock_data import (
    MOCK_ERROR_MSG,
    MOCK_ERROR_MSG_CUSTOM_HANDLER,
)


def test_exception_handler(caplog):
    sys.excepthook = sys.__excepthook__
    with pytest.raises(Exception) as e:
        raise Exception(MOCK_ERROR_MSG)
    assert str(e.value) == MOCK_ERROR_MSG

    sys.excepthook = exception_handler
    with caplog.at_level(logging.ERROR):
        exception_handler(
            _type=BudgetExceededError,
            value=BudgetExceededError(MOCK_ERROR_MSG_CUSTOM_HANDLER),
            traceback=None,
        )
    assert caplog.messages[-1] == (
        f"BudgetExceededError: {MOCK_ERROR_MSG_CUSTOM_HANDLER}"
    )

    with caplog.at_level(logging.ERROR):
        exception_handler(
            _type=TruncationError,
            value=TruncationError(""),
            traceback=None,
        )
    assert caplog.messages[-1] == "TruncationError"

    sys.excepthook = sys.__excepthook__


def test_budget_exceeded_error():
    with pytest.raises(BudgetExceededError) as e:
        raise BudgetExceededError(MOCK_ERROR_MSG, largest_feasible=4)
    assert e.value.largest_feasible == 4
    assert str(e.value) == MOCK_ERROR_MSG
    assert BudgetExceededError(MOCK_ERROR_MSG).largest_feasible is None


def test_truncation_error():
    e = TruncationError(MOCK_ERROR_MSG, weight=6)
    assert e.weight == 6
    assert e.degree is None
