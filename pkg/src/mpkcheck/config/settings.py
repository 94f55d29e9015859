import logging
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional

from mpkcheck.config.environment import (
    get_env_var, get_env_var_bool, get_env_var_int,
)


logger = logging.getLogger("mpkcheck.config")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _set_fields(obj: Any, skip: tuple = ()) -> Dict[str, Any]:
    return {f.name: getattr(obj, f.name) for f in fields(obj)
            if f.name not in skip and getattr(obj, f.name) is not None}


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "WARNING"
    format: str = LOG_FORMAT

    @classmethod
    def from_environment(cls) -> "LoggingSettings":
        level = str(get_env_var("MPK_LOG_LEVEL", cls.level)).upper()
        if level not in logging.getLevelNamesMapping():
            logger.warning(f"Unknown MPK_LOG_LEVEL '{level}', falling back to {cls.level}")
            level = cls.level
        return cls(level=level, format=get_env_var("MPK_LOG_FORMAT", cls.format))


@dataclass(frozen=True)
class SuiteSettings:
    """Suite bounds from the environment; unset variables stay ``None`` and do not override."""
    n_max: Optional[int] = None
    k_max: Optional[int] = None
    ledger_n_max: Optional[int] = None
    seed: Optional[int] = None
    checks: Optional[List[str]] = None
    expect_fail: Optional[List[str]] = None
    include_faults: Optional[bool] = None
    injectivity_samples: Optional[int] = None
    output_path: Optional[str] = None
    suite_file: str = "configs/suite.yaml"
    strict_suite_file: bool = False
    json_indent: int = 2

    @classmethod
    def from_environment(cls) -> "SuiteSettings":
        return cls(
            n_max=get_env_var("MPK_N_MAX", None, int),
            k_max=get_env_var("MPK_K_MAX", None, int),
            ledger_n_max=get_env_var("MPK_LEDGER_N_MAX", None, int),
            seed=get_env_var("MPK_SEED", None, int),
            checks=get_env_var("MPK_CHECKS", None, list),
            expect_fail=get_env_var("MPK_EXPECT_FAIL", None, list),
            include_faults=get_env_var("MPK_INCLUDE_FAULTS", None, bool),
            injectivity_samples=get_env_var("MPK_INJECTIVITY_SAMPLES", None, int),
            output_path=get_env_var("MPK_OUTPUT_PATH", None, str),
            suite_file=get_env_var("MPK_SUITE_FILE", cls.suite_file),
            strict_suite_file=get_env_var_bool("MPK_STRICT_SUITE_FILE", cls.strict_suite_file),
            json_indent=get_env_var_int("MPK_JSON_INDENT", cls.json_indent),
        )

    def overrides(self) -> Dict[str, Any]:
        return _set_fields(self, skip=("suite_file", "strict_suite_file", "json_indent"))


@dataclass(frozen=True)
class NumericSettings:
    truncation_N: Optional[int] = None
    tolerance: Optional[float] = None
    margin: Optional[int] = None
    circle_points: Optional[int] = None
    numeric_pairs: Optional[int] = None

    @classmethod
    def from_environment(cls) -> "NumericSettings":
        return cls(
            truncation_N=get_env_var("MPK_TRUNC_N", None, int),
            tolerance=get_env_var("MPK_TOL", None, float),
            margin=get_env_var("MPK_MARGIN", None, int),
            circle_points=get_env_var("MPK_CIRCLE_POINTS", None, int),
            numeric_pairs=get_env_var("MPK_NUMERIC_PAIRS", None, int),
        )

    def overrides(self) -> Dict[str, Any]:
        return _set_fields(self)


@dataclass(frozen=True)
class AppSettings:
    logging: LoggingSettings = field(default_factory=LoggingSettings.from_environment)
    suite: SuiteSettings = field(default_factory=SuiteSettings.from_environment)
    numeric: NumericSettings = field(default_factory=NumericSettings.from_environment)

    @classmethod
    def from_environment(cls) -> "AppSettings":
        return cls()

    def overrides(self) -> Dict[str, Any]:
        """SuiteConfig fields set through the environment."""
        return {**self.suite.overrides(), **self.numeric.overrides()}


try:
    settings = AppSettings.from_environment()
except Exception as exc:
    logger.critical(f"Failed to load mpkcheck settings: {exc}", exc_info=exc)
    raise
