"""Check reports and their JSON/text rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

STATUSES = ("pass", "fail", "skipped")


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


@dataclass
class CheckReport:
    check: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    max_error: Optional[float] = None
    witness: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        self.params = _plain(dict(self.params))
        if self.status == "fail" and not self.witness:
            self.witness = "(no detail recorded)"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        return (self.check, json.dumps(self.params, sort_keys=True))

    def to_dict(self) -> dict:
        out = {"check": self.check, "params": self.params, "status": self.status}
        if self.max_error is not None:
            out["max_error"] = self.max_error
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_text(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        line = f"{self.status.upper():7s} {self.check}[{params}]"
        if self.max_error is not None:
            line += f" max_error={self.max_error:.3e}"
        if self.witness:
            line += f" :: {self.witness}"
        return line


def status_of(ok: bool) -> str:
    return "pass" if ok else "fail"


def emit(reports, fmt: str = "json") -> str:
    """Render reports sorted by (check, params)."""
    reports = sorted(reports, key=CheckReport.sort_key)
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)
    if fmt == "text":
        return "\n".join(r.to_text() for r in reports)
    raise ValueError(f"unknown format {fmt!r}")
