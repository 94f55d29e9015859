"""
Environment variable access for mpkcheck.

All tunables of a verification run can be overridden from the process
environment using the ``MPK_`` prefix (``MPK_N_MAX=2``, ``MPK_TOL=1e-9``...).
A ``.env`` file in the working directory is honoured when python-dotenv is
installed. Malformed values never abort a run: they are logged and the
default is used instead.
"""

import logging
import os
from typing import Any, Callable, Dict, Optional, TypeVar, cast

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

logger = logging.getLogger("mpkcheck.config")

T = TypeVar("T")

TYPE_CONVERTERS: Dict[type, Callable[[str], Any]] = {
    str: str,
    int: int,
    float: float,
    bool: lambda v: v.strip().lower() in ("true", "yes", "y", "1", "on"),
    list: lambda v: [item.strip() for item in v.split(",") if item.strip()],
}


def get_env_var(name: str, default: Optional[T] = None, var_type: Optional[type] = None) -> Any:
    """
    Read an environment variable and convert it.

    Args:
        name: Variable name, used verbatim
        default: Value returned when unset or unconvertible
        var_type: Target type; inferred from ``default`` when omitted

    Examples:
        >>> get_env_var("MPK_N_MAX", 3, int)
        >>> get_env_var("MPK_INCLUDE_FAULTS", False)
    """
    raw = os.environ.get(name)
    if raw is None:
        return default

    target_type = var_type or (type(default) if default is not None else str)
    converter = TYPE_CONVERTERS.get(target_type, str)
    try:
        return converter(raw)
    except (ValueError, TypeError) as e:
        logger.warning(
            f"Cannot convert environment variable '{name}'='{raw}' "
            f"to {target_type.__name__}: {e}. Using default {default!r}."
        )
        return default


def get_env_var_bool(name: str, default: bool = False) -> bool:
    return cast(bool, get_env_var(name, default, bool))


def get_env_var_list(name: str, default: Optional[list] = None) -> list:
    """Comma separated list; ``MPK_CHECKS=toeplitz_laws,ck_relations`` -> two names."""
    return cast(list, get_env_var(name, default if default is not None else [], list))


def get_env_var_int(name: str, default: int) -> int:
    return cast(int, get_env_var(name, default, int))


def get_env_var_float(name: str, default: float) -> float:
    return cast(float, get_env_var(name, default, float))
