"""Check records and campaign reports, with JSON and text renderings."""

import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


def sig12(x):
    """Round to 12 significant digits (the report's fixed output precision)."""
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class CheckRecord:
    condition_id: str
    indices: tuple
    value: float
    margin: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite check value {self.value!r}")

    def to_dict(self):
        return {"condition_id": self.condition_id, "indices": list(self.indices),
                "value": sig12(self.value), "margin": sig12(self.margin)}


@dataclass
class ConditionResult:
    """Outcome of one block. ``aborted`` means evaluation stopped at the first
    failing check, so ``count`` and ``min_record`` cover only the evaluated prefix."""

    condition_id: str
    kind: str
    threshold: float
    count: int
    min_record: CheckRecord
    passed: bool
    aborted: bool = False
    failure_count: int = 0
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {
            "condition_id": self.condition_id,
            "kind": self.kind,
            "threshold": sig12(self.threshold),
            "count": self.count,
            "min_value": sig12(self.min_record.value),
            "argmin": list(self.min_record.indices),
            "min_margin": sig12(self.min_record.margin),
            "pass": self.passed,
            "aborted": self.aborted,
            "failure_count": self.failure_count,
            "failures": [f.to_dict() for f in self.failures],
        }


@dataclass
class CampaignReport:
    label: str
    k: int
    v0: float
    conditions: list
    structural_checks: list
    wall_time: float = 0.0

    @property
    def total_checks(self):
        return sum(c.count for c in self.conditions)

    @property
    def overall_pass(self):
        return (all(c.passed for c in self.conditions)
                and all(s.passed for s in self.structural_checks))

    @property
    def min_margin(self):
        return min(c.min_record.margin for c in self.conditions)

    def condition(self, condition_id):
        for c in self.conditions:
            if c.condition_id == condition_id:
                return c
        raise KeyError(condition_id)

    def to_dict(self, include_timing=True):
        out = {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "k": self.k,
            "v0": sig12(self.v0),
            "overall_pass": self.overall_pass,
            "total_checks": self.total_checks,
            "min_margin": sig12(self.min_margin),
            "structural_checks": [{"name": s.name, "pass": s.passed, "detail": s.detail}
                                  for s in self.structural_checks],
            "conditions": [c.to_dict() for c in self.conditions],
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_timing=True):
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"

    def summary(self):
        lines = [f"campaign {self.label}  k={self.k}  v0={self.v0:.12g}"]
        for s in self.structural_checks:
            if not s.passed:
                lines.append(f"  structural check FAILED: {s.name} {s.detail}".rstrip())
        for c in self.conditions:
            idx = ",".join(str(i) for i in c.min_record.indices) or "-"
            status = "pass" if c.passed else "FAIL"
            note = " (aborted at first failure)" if c.aborted else ""
            lines.append(f"  {c.condition_id:<8} {status}  count={c.count:<8d} "
                         f"min={c.min_record.value:.12g} at ({idx})  "
                         f"margin={c.min_record.margin:.3g}{note}")
            for f in c.failures[:5]:
                fidx = ",".join(str(i) for i in f.indices) or "-"
                lines.append(f"      failing check ({fidx}): value={f.value:.12g}")
            if c.failure_count > 5:
                lines.append(f"      ... {c.failure_count - 5} more failing checks")
        verdict = "PASS" if self.overall_pass else "FAIL"
        lines.append(f"  total checks {self.total_checks}, min margin {self.min_margin:.3g}, "
                     f"{self.wall_time:.1f} s: {verdict}")
        return "\n".join(lines)
