"""
Suite runner: selects checks, runs their tasks and assembles the JSON document.

A task that raises is turned into a failing report carrying the serialized
error, so one broken check never hides the others.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from mpkcheck.schemas.models import SuiteConfig, SuiteReport, SuiteSummary, VerificationReport
from mpkcheck.services.registry import REGISTRY, CheckSpec, Task, check_names, owner_of
from mpkcheck.utils.error import BaseError, ConfigError, ErrorCode
from mpkcheck.utils.result import Result, attempt

logger = logging.getLogger(__name__)

CRASH_RELATION = "check raised an exception"
MISSED_FAILURE = "expected failure did not occur"
CRASH_UNDER_EXPECT_FAIL = "an expected failure must come from a failing relation, not an exception"


def select_checks(config: SuiteConfig) -> List[CheckSpec]:
    """
    Raises:
        ConfigError: a requested check name is unknown
    """
    if config.selects_all():
        return [REGISTRY[name] for name in check_names(include_faults=config.include_faults)]
    selected: List[CheckSpec] = []
    unknown = []
    for name in config.checks:
        spec = REGISTRY.get(name) or owner_of(name)
        if spec is None:
            unknown.append(name)
        elif spec not in selected:
            selected.append(spec)
    if config.include_faults:
        selected += [REGISTRY[n] for n in check_names() if REGISTRY[n].fault and REGISTRY[n] not in selected]
    if unknown:
        raise ConfigError(
            f"unknown check(s): {', '.join(unknown)}",
            code=ErrorCode.UNKNOWN_CHECK,
            details={"unknown": unknown, "known": check_names()},
        )
    return selected


def crash_report(task: Task, error: Exception, elapsed: float = 0.0) -> VerificationReport:
    if isinstance(error, BaseError):
        witness = error.to_dict()
    else:
        witness = {"error": type(error).__name__, "message": str(error)}
    return VerificationReport(
        check=task.check,
        parameters=task.params,
        status="fail",
        witness={"relation": CRASH_RELATION, **witness},
        failures=1,
        notes=["the check raised instead of reporting"],
        crashed=True,
        elapsed=elapsed,
    )


def run_task(task: Task) -> VerificationReport:
    logger.debug(f"Running {task.check} {task.params}")
    started = time.perf_counter()
    result: Result[VerificationReport] = attempt(task.run)
    if result.is_error():
        logger.error(f"{task.check} {task.params} raised {result.error!r}")
        return crash_report(task, result.error, time.perf_counter() - started)
    report = result.unwrap()
    if report.status == "fail":
        logger.warning(f"{report.check} {report.parameters} failed: {report.witness.get('relation')}")
    return report


def _is_expected(report: VerificationReport, expect_fail: Sequence[str]) -> bool:
    if report.check in expect_fail:
        return True
    spec = owner_of(report.check)
    return spec is not None and spec.name in expect_fail


def settle_expected(report: VerificationReport) -> VerificationReport:
    """
    Apply the expect-fail policy to one report of a check marked as expected to fail.

    Only a failing relation counts as the expected failure. A crash stays an
    unexpected failure and a pass becomes one, since the detector missed the fault.
    """
    if report.status == "fail" and not report.crashed:
        return report.model_copy(update={"expected_fail": True})
    if report.crashed:
        logger.error(f"{report.check} {report.parameters} raised instead of failing a relation")
        return report.model_copy(update={"notes": report.notes + [CRASH_UNDER_EXPECT_FAIL]})
    if report.status == "pass":
        logger.error(f"{report.check} {report.parameters} passed but was expected to fail")
        return report.model_copy(update={
            "status": "fail",
            "failures": 1,
            "witness": {"relation": MISSED_FAILURE, "relations_checked": report.metadata.get("relations_checked")},
            "notes": report.notes + ["every relation held although the check is marked expect-fail"],
        })
    return report


def mark_expected(reports: Iterable[VerificationReport], expect_fail: Sequence[str]) -> List[VerificationReport]:
    return [settle_expected(r) if _is_expected(r, expect_fail) else r for r in reports]


def run_suite(config: SuiteConfig, workers: int = 1) -> List[VerificationReport]:
    """
    Run every selected check; reports come back sorted by check name, then parameters.

    Raises:
        ConfigError: the selection names an unknown check
    """
    specs = select_checks(config)
    tasks = [task for spec in specs for task in spec.tasks(config)]
    logger.info(f"Running {len(tasks)} task(s) from {len(specs)} check(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_task, tasks))
    else:
        reports = [run_task(task) for task in tasks]
    reports = mark_expected(reports, config.expect_fail)
    return sorted(reports, key=VerificationReport.sort_key)


def summarize(reports: Sequence[VerificationReport]) -> SuiteSummary:
    return SuiteSummary(
        total=len(reports),
        passed=sum(r.status == "pass" for r in reports),
        failed=sum(r.status == "fail" and not r.expected_fail for r in reports),
        skipped=sum(r.status == "skipped" for r in reports),
        expected_failures=sum(r.status == "fail" and r.expected_fail for r in reports),
    )


def exit_code(reports: Sequence[VerificationReport]) -> int:
    """0 when every failure was expected, 1 otherwise."""
    return 1 if any(r.status == "fail" and not r.expected_fail for r in reports) else 0


def build_suite_report(config: SuiteConfig, reports: Sequence[VerificationReport],
                       generated_at: Optional[str] = None) -> SuiteReport:
    summary = summarize(reports)
    logger.info(
        f"Suite finished: {summary.passed} passed, {summary.failed} failed, "
        f"{summary.skipped} skipped, {summary.expected_failures} expected failure(s)"
    )
    return SuiteReport(
        generated_at=generated_at or datetime.now(timezone.utc).isoformat(timespec="seconds"),
        config=config,
        summary=summary,
        exit_code=exit_code(reports),
        reports=list(reports),
    )


def write_report(document: SuiteReport, path: str, indent: int = 2) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(document.to_json(indent) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(document.reports)} report(s) to {target}")
    return target
