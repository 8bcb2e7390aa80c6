"""Real projective space RP^n with the sign-change group, in exact rationals.

Points are homogeneous (n+1)-tuples scaled so that the first nonzero
coordinate is 1.  A group element is a sign vector ``s`` with ``s[0] = +1``;
since ``s`` and ``-s`` act identically on RP^n these represent all sign
changes modulo the center.  The cover is the standard one by coordinate
charts ``U_i = {z_i != 0}``, each contracted to ``e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from gmpy2 import mpq

from ..errors import InputError, NotMember
from .common import CoverSet, GridResult, fmt_point, rational

KIND = "projective-evensign"

RELABELS = {
    "cpn": "cat_T^{n}(CP^{n}) = {v}",
    "hpn": "cat_Sp(1)^{n}(HP^{n}) = {v}",
    "op2": "cat_Spin(8)(OP^2) = {v}",
}


@dataclass(frozen=True)
class ProjectiveModel:
    n: int
    label: str = "cpn"

    kind = KIND

    @cached_property
    def group(self) -> tuple[tuple[int, ...], ...]:
        return tuple((1,) + s for s in product((1, -1), repeat=self.n))

    def describe(self) -> dict:
        return {"kind": KIND, "n": self.n, "label": self.label}


def projective_model(n: int, label: str = "cpn") -> ProjectiveModel:
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    if label not in RELABELS:
        raise InputError(f"unknown label {label!r}")
    if label == "op2" and n != 2:
        raise InputError("the OP^2 relabelling needs n = 2")
    return ProjectiveModel(n=n, label=label)


def canonical(z) -> tuple[mpq, ...]:
    z = tuple(rational(x) for x in z)
    for x in z:
        if x != 0:
            return tuple(v / x for v in z)
    raise InputError("the zero vector is not a projective point")


def act(s, z) -> tuple[mpq, ...]:
    return canonical(a * b for a, b in zip(s, z))


def fixed_points(model: ProjectiveModel) -> list[tuple[mpq, ...]]:
    n1 = model.n + 1
    return [tuple(mpq(1 if j == i else 0) for j in range(n1)) for i in range(n1)]


def cover_sets(model: ProjectiveModel) -> list[CoverSet]:
    return [CoverSet(KIND, i, c) for i, c in enumerate(fixed_points(model))]


def member(model: ProjectiveModel, i: int, z) -> bool:
    return canonical(z)[i] != 0


def chart_map(i: int, z, t) -> tuple[mpq, ...]:
    """``h^i([z], t)``: the chart point scaled by ``t`` (t = 1 is the identity, t = 0 is e_i)."""
    t = rational(t)
    z = canonical(z)
    if z[i] == 0:
        raise NotMember(f"{fmt_point(z)} is not in U_{i}")
    return canonical(mpq(1) if j == i else t * x / z[i] for j, x in enumerate(z))


def contract(model: ProjectiveModel, i: int, z, t) -> tuple[mpq, ...]:
    """t = 0 is ``z``, t = 1 is ``e_i``."""
    return chart_map(i, z, 1 - rational(t))


def verify_covering(model: ProjectiveModel, samples=()) -> GridResult:
    """The charts cover: a canonical point has first nonzero coordinate 1, so lies in some U_i."""
    for z in samples:
        z = canonical(z)
        if not any(member(model, i, z) for i in range(model.n + 1)):
            raise AssertionError("canonical point with no nonzero coordinate")
    return GridResult(points=len(samples), margin=None, mesh=None, continuous=True,
                      method="symbolic: every nonzero vector has a nonzero coordinate")


SAMPLE_VALUES = (mpq(0), mpq(1), mpq(-1), mpq(1, 2), mpq(-1, 3), mpq(2), mpq(-3, 4))


def set_samples(model: ProjectiveModel, i: int, count: int) -> list[tuple[mpq, ...]]:
    """Deterministic member points of ``U_i``, taken from the chart grid with z_i = 1."""
    pts = []
    for rest in product(SAMPLE_VALUES, repeat=model.n):
        z = rest[:i] + (mpq(1),) + rest[i:]
        pts.append(canonical(z))
    pts.sort()
    if len(pts) <= count:
        return pts
    stride = len(pts) / count
    return [pts[int(k * stride)] for k in range(count)]
