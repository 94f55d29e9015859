from __future__ import annotations

import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mpkcheck.version import __version__

SCHEMA_VERSION = 1

Status = Literal["pass", "fail", "skipped"]


# ───────── reports ─────────
class VerificationReport(BaseModel):
    """Outcome of one check at one parameter point."""

    model_config = ConfigDict(extra="forbid")

    check: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    status: Status
    witness: Optional[Dict[str, Any]] = None
    failures: int = 0
    notes: List[str] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    expected_fail: bool = False
    crashed: bool = False
    elapsed: float = 0.0

    @model_validator(mode="after")
    def _fail_has_witness(self) -> "VerificationReport":
        if self.status == "fail" and not self.witness:
            raise ValueError(f"failing report for '{self.check}' carries no witness")
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self) -> tuple:
        return (self.check, json.dumps(self.parameters, sort_keys=True, default=str))


class SuiteSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    expected_failures: int = 0


# ───────── configuration ─────────
class SuiteConfig(BaseModel):
    """Validated configuration of one suite run."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    n_max: int = Field(default=3, ge=1)
    k_max: int = Field(default=3, ge=0)
    ledger_n_max: int = Field(default=10, ge=0)
    comb_n_max: int = Field(default=25, ge=0)
    binom_m_max: int = Field(default=30, ge=1)
    truncation_N: int = Field(default=16, ge=2, alias="trunc_N")
    margin: int = Field(default=0, ge=0)
    tolerance: float = Field(default=1e-10, gt=0)
    circle_points: int = Field(default=4, ge=1)
    numeric_pairs: int = Field(default=200, ge=0)
    injectivity_samples: int = Field(default=100, ge=0)
    seed: int = 42
    checks: Union[Literal["all"], List[str]] = "all"
    expect_fail: List[str] = Field(default_factory=list)
    include_faults: bool = False
    output_path: Optional[str] = None

    @field_validator("checks", mode="before")
    @classmethod
    def _normalize_checks(cls, value: Any) -> Any:
        if isinstance(value, str):
            names = [item.strip() for item in value.split(",") if item.strip()]
            return "all" if names in ([], ["all"]) else names
        if isinstance(value, (list, tuple)) and list(value) == ["all"]:
            return "all"
        return value

    @model_validator(mode="after")
    def _window_fits(self) -> "SuiteConfig":
        if self.truncation_N < 2 * self.margin + 2:
            raise ValueError(
                f"truncation_N={self.truncation_N} is too small for margin={self.margin}"
            )
        return self

    @property
    def ledger_bound(self) -> int:
        return max(self.n_max, self.ledger_n_max)

    def selects_all(self) -> bool:
        return self.checks == "all"


class SuiteReport(BaseModel):
    """Top level JSON document written by ``mpkcheck verify``."""

    schema_version: Literal[1] = SCHEMA_VERSION
    tool: str = "mpkcheck"
    version: str = __version__
    generated_at: str
    config: SuiteConfig
    summary: SuiteSummary
    exit_code: int
    reports: List[VerificationReport]

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.model_dump(mode="json", by_alias=False), indent=indent, sort_keys=False)
