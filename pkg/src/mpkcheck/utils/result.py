"""
Result type used by the suite runner.

A check either produces its reports or fails with an error; the runner turns
the error branch into a failing report instead of aborting the whole suite.
"""

from typing import Any, Callable, Generic, Optional, TypeVar


T = TypeVar("T")


class Result(Generic[T]):
    """Either a success value or an error."""

    def __init__(self, value: Optional[T] = None, error: Any = None):
        self._value = value
        self._error = error
        self._is_success = error is None

    @property
    def error(self) -> Any:
        return self._error if not self._is_success else None

    def is_error(self) -> bool:
        return not self._is_success

    def unwrap(self) -> T:
        """
        Raises:
            ValueError: if this Result holds an error
        """
        if not self._is_success:
            raise ValueError(f"Cannot unwrap error result: {self._error}")
        return self._value  # type: ignore[return-value]

    def __repr__(self) -> str:
        if self._is_success:
            return f"Success({self._value!r})"
        return f"Error({self._error!r})"


def Success(value: T) -> Result[T]:
    return Result(value=value)


def Error(error: Any) -> Result[Any]:
    return Result(error=error)


def attempt(fn: Callable[..., T], *args: Any, **kwargs: Any) -> Result[T]:
    """Run ``fn`` and capture any exception as the error branch."""
    try:
        return Success(fn(*args, **kwargs))
    except Exception as e:
        return Error(e)
