"""
Suite configuration from the optional YAML file.

Precedence, highest first:
1. explicit overrides (CLI flags)
2. MPK_* environment variables
3. the suite file (``configs/suite.yaml`` unless MPK_SUITE_FILE says otherwise)
4. SuiteConfig defaults

A missing file is not an error; an unreadable or malformed one is logged and
skipped unless ``strict`` is set, in which case it raises ConfigError.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from mpkcheck.config.settings import AppSettings, settings as default_settings
from mpkcheck.schemas.models import SuiteConfig
from mpkcheck.utils.error import ConfigError, ErrorCode

logger = logging.getLogger(__name__)

# short spellings accepted in suite files
FIELD_ALIASES = {"trunc_N": "truncation_N", "tol": "tolerance"}


class SuiteFileLoader:
    """Reads one suite file and merges it with the environment."""

    def __init__(self, path: Optional[str] = None, strict: Optional[bool] = None,
                 app_settings: Optional[AppSettings] = None):
        self.settings = app_settings or default_settings
        self.path = Path(path or self.settings.suite.suite_file)
        self.strict = self.settings.suite.strict_suite_file if strict is None else strict

    def read(self) -> Dict[str, Any]:
        if not self.path.exists():
            if self.strict:
                raise ConfigError(f"suite file {self.path} does not exist",
                                  code=ErrorCode.SUITE_FILE_INVALID, details={"path": str(self.path)})
            logger.debug(f"No suite file at {self.path}; using defaults")
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            return self._reject(f"cannot read suite file {self.path}: {e}", cause=e)
        if not isinstance(data, dict):
            return self._reject(f"suite file {self.path} must hold a mapping, got {type(data).__name__}")
        # a top-level "suite:" section is accepted as well as bare keys
        section = data.get("suite", data)
        if not isinstance(section, dict):
            return self._reject(f"'suite' section of {self.path} must be a mapping")
        logger.info(f"Loaded {len(section)} suite settings from {self.path}")
        return {FIELD_ALIASES.get(k, k): v for k, v in section.items()}

    def _reject(self, message: str, cause: Optional[Exception] = None) -> Dict[str, Any]:
        if self.strict:
            raise ConfigError(message, code=ErrorCode.SUITE_FILE_INVALID,
                              details={"path": str(self.path)}, cause=cause)
        logger.error(f"{message}; falling back to defaults")
        return {}

    def load(self, overrides: Optional[Dict[str, Any]] = None) -> SuiteConfig:
        """
        Raises:
            ConfigError: the merged values do not form a valid SuiteConfig
        """
        merged: Dict[str, Any] = {}
        merged.update(self.read())
        merged.update(self.settings.overrides())
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return build_config(merged)


def build_config(values: Dict[str, Any]) -> SuiteConfig:
    """
    Raises:
        ConfigError: validation failed; the pydantic errors are kept in details
    """
    try:
        return SuiteConfig.model_validate(values)
    except ValidationError as e:
        problems = [f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()]
        raise ConfigError(
            "invalid suite configuration: " + "; ".join(problems),
            details={"errors": problems},
            cause=e,
        ) from e


def load_suite_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None,
                      strict: Optional[bool] = None) -> SuiteConfig:
    return SuiteFileLoader(path, strict=strict).load(overrides)
