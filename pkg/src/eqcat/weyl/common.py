"""Shared pieces of the exact rational Weyl models."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from gmpy2 import mpq

from ..errors import InputError

SAMPLE_TIMES = (mpq(0), mpq(1, 4), mpq(1, 2), mpq(3, 4), mpq(1))
MPQ = type(mpq(0))


def rational(x) -> mpq:
    """Parse ``x`` (int, Fraction, mpq or a string like "1/16") into an mpq."""
    if type(x) is MPQ:
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, str):
        try:
            return mpq(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {x!r}") from None
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, MPQ)):
        return mpq(x)
    raise InputError(f"not a rational number: {x!r}")


def fmt(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_point(p) -> list[str]:
    return [fmt(x) for x in p]


def common_scale(*xs) -> int:
    return lcm(*(int(mpq(x).denominator) for x in xs))


@dataclass(frozen=True)
class CoverSet:
    """One categorical set of a Weyl model: index ``k`` and its contraction center."""

    kind: str
    k: int
    center: object

    def describe(self) -> dict:
        c = self.center
        return {"kind": self.kind, "index": self.k,
                "center": fmt_point(c) if isinstance(c, tuple) else fmt(c)}


@dataclass(frozen=True)
class GridResult:
    points: int
    margin: mpq | None
    mesh: mpq | None
    continuous: bool
    method: str
