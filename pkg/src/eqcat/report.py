"""Bounds reports shared by the discrete and the Weyl engines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class BoundsReport:
    model: dict
    lower: int
    lower_certificate: dict
    upper: int | None
    upper_certificate: dict | None
    conclusion: str | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise AssertionError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def to_json(self) -> dict:
        out = {
            "model": self.model,
            "lower": self.lower,
            "lower_certificate": self.lower_certificate,
            "upper": self.upper,
            "upper_certificate": self.upper_certificate,
            "exact": self.exact,
            "conclusion": self.conclusion,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
