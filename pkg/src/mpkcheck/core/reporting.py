"""Shared plumbing for building VerificationReports inside checks."""

from __future__ import annotations

import logging
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from mpkcheck.schemas.models import VerificationReport

logger = logging.getLogger(__name__)

MAX_RECORDED_FAILURES = 5


def render(value: Any) -> Any:
    """JSON-friendly rendering of algebra values for witnesses."""
    from mpkcheck.core.algebra.matrix import AlgMatrix
    from mpkcheck.core.algebra.tensor import TensorElement

    if isinstance(value, TensorElement):
        return {"signature": value.signature.label, "element": str(value)}
    if isinstance(value, AlgMatrix):
        return {
            "signature": value.signature.label,
            "matrix": [[str(x) for x in row] for row in value.entries],
        }
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


class ReportBuilder:
    """
    Collects the outcome of one check.

    The first failing relation becomes the witness; up to
    ``MAX_RECORDED_FAILURES`` further ones are listed in metadata.
    """

    def __init__(self, check: str, **parameters: Any):
        self.check = check
        self.parameters = parameters
        self.failures: List[Dict[str, Any]] = []
        self.failure_count = 0
        self.notes: List[str] = []
        self.metadata: Dict[str, Any] = {}
        self.relations = 0
        self._skipped: Optional[str] = None
        self._started = time.perf_counter()

    def expect(self, label: str, condition: bool, **witness: Any) -> bool:
        self.relations += 1
        if not condition:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                entry = {"relation": label}
                entry.update({k: render(v) for k, v in witness.items()})
                self.failures.append(entry)
            logger.debug(f"{self.check}{self.parameters}: relation '{label}' failed")
        return condition

    def expect_equal(
        self,
        label: str,
        lhs: Any,
        rhs: Any,
        equal: Optional[Callable[[Any, Any], bool]] = None,
    ) -> bool:
        same = equal(lhs, rhs) if equal is not None else lhs == rhs
        return self.expect(label, bool(same), lhs=lhs, rhs=rhs)

    def note(self, message: str) -> None:
        if message not in self.notes:
            self.notes.append(message)

    def meta(self, **values: Any) -> None:
        self.metadata.update({k: render(v) for k, v in values.items()})

    def skip(self, reason: str) -> None:
        self._skipped = reason

    def build(self) -> VerificationReport:
        elapsed = time.perf_counter() - self._started
        metadata = dict(self.metadata)
        metadata["relations_checked"] = self.relations
        if self._skipped is not None:
            return VerificationReport(
                check=self.check, parameters=self.parameters, status="skipped",
                notes=self.notes + [self._skipped], metadata=metadata, elapsed=elapsed,
            )
        if self.failure_count:
            if len(self.failures) > 1:
                metadata["further_failures"] = self.failures[1:]
            return VerificationReport(
                check=self.check, parameters=self.parameters, status="fail",
                witness=self.failures[0], failures=self.failure_count,
                notes=self.notes, metadata=metadata, elapsed=elapsed,
            )
        return VerificationReport(
            check=self.check, parameters=self.parameters, status="pass",
            notes=self.notes, metadata=metadata, elapsed=elapsed,
        )
