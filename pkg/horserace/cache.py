import functools
import inspect
import threading
from collections import defaultdict
from collections.abc import Callable, Generator
from inspect import Signature
from typing import Any, Sequence, TypeVar, cast

from horserace.config import logger
from horserace.utils.hash import object_hash

F = TypeVar("F", bound=Callable[..., Any])

_MEMO_LOCKS: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
_MEMO_LOCKS_GUARD: threading.Lock = threading.Lock()


class MemoStorage:
    """Process-wide store of memoized results. Entries never expire; results are pure functions of arguments."""

    _CACHE: dict[str, Any] = {}

    @classmethod
    def get(cls, memo_key: str) -> tuple[bool, Any]:
        if memo_key in cls._CACHE:
            return True, cls._CACHE[memo_key]
        return False, None

    @classmethod
    def set(cls, memo_key: str, result: Any):
        cls._CACHE[memo_key] = result

    @classmethod
    def clear(cls):
        cls._CACHE.clear()

    @classmethod
    def size(cls) -> int:
        return len(cls._CACHE)


def _function_id(function: Callable[..., Any]) -> str:
    return f"{function.__module__}.{function.__qualname__}"


def _iter_arguments(
    function_signature: Signature,
    args: tuple,
    kwargs: dict,
    ignore_fields: tuple[str, ...],
) -> Generator[Any, None, None]:
    bound = function_signature.bind(*args, **kwargs)
    bound.apply_defaults()

    for name, value in bound.arguments.items():
        if name in ignore_fields:
            continue

        param = function_signature.parameters[name]
        if param.kind == param.VAR_POSITIONAL:
            yield from value
            continue
        if param.kind == param.VAR_KEYWORD:
            yield from sorted(value.items())
            continue

        yield name, value


def create_memo_key(
    function: Callable[..., Any],
    ignore_fields: tuple[str, ...],
    args: tuple,
    kwargs: dict,
) -> str:
    """Key = function id + digest of the bound arguments with defaults applied."""
    items = tuple(_iter_arguments(inspect.signature(function), args, kwargs, ignore_fields))
    return f"{_function_id(function)}:{object_hash(items)}"


def _memo_lock(memo_key: str) -> threading.Lock:
    with _MEMO_LOCKS_GUARD:
        return _MEMO_LOCKS[memo_key]


def memoize(ignore_fields: Sequence[str] = ()) -> Callable[[F], F]:
    """
    Memoize a pure, expensive function (e.g. a Monte Carlo critical value) for the lifetime of the process.

    Args:
        ignore_fields: parameters that do not affect the result (e.g. a worker count)

    Concurrent callers with the same arguments wait for the first computation instead of repeating it.
    Passing `skip_cache=True` recomputes and overwrites the stored result.
    """
    ignore = tuple(ignore_fields)

    def decorator(function: F) -> F:
        @functools.wraps(function)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            skip_cache = kwargs.pop("skip_cache", False)
            memo_key = create_memo_key(function, ignore, args, kwargs)

            if not skip_cache:
                found, result = MemoStorage.get(memo_key)
                if found:
                    return result

            with _memo_lock(memo_key):
                if not skip_cache:
                    found, result = MemoStorage.get(memo_key)
                    if found:
                        logger.debug("Memo hit after wait", extra={"function": function.__qualname__})
                        return result

                result = function(*args, **kwargs)
                MemoStorage.set(memo_key, result)
                return result

        return cast(F, wrapper)

    return decorator


def clear_memo():
    """Drop every memoized result. Useful in tests."""
    MemoStorage.clear()
