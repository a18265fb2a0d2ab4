"""
Check reports shared by the kernel and metric validators.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckResult:
    """Outcome of a single named property check."""

    name: str
    passed: bool
    detail: str = ""
    failures: int = 0


@dataclass
class ValidationReport:
    """Collection of property checks; never raises, carries failures instead."""

    title: str
    checks: List[CheckResult] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, passed: bool, detail: str = "", failures: int = 0) -> CheckResult:
        """
        Record a check.

        Args:
            name: Check identifier
            passed: Whether the property held
            detail: Free-form explanation
            failures: Number of failing samples

        Returns:
            The recorded check
        """
        check = CheckResult(name=name, passed=bool(passed), detail=detail, failures=int(failures))
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def get(self, name: str) -> CheckResult:
        """Return the check called ``name``."""
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "failures": c.failures,
                }
                for c in self.checks
            ],
            "info": self.info,
        }
