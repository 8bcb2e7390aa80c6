"""The circle section of the rotation action of SO(2) on the 2-sphere.

The section is a great circle through both poles, parametrized by rational
turns ``theta``; the Weyl group is the reflection ``theta -> -theta``.  The
sphere is only ever described through angle data: a point of the sphere is
a pair (polar angle in [0, 1/2], azimuth mod 1), both in turns.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import InputError, NotMember
from .common import CoverSet, GridResult, rational

KIND = "circle-reflection"
RADIUS = mpq(3, 8)


@dataclass(frozen=True)
class CircleModel:
    mesh: mpq = mpq(1, 64)

    kind = KIND
    n = 1
    group = (1, -1)

    def describe(self) -> dict:
        return {"kind": KIND, "mesh": str(self.mesh)}


def circle_model(mesh=None) -> CircleModel:
    ms = mpq(1, 64) if mesh is None else rational(mesh)
    if ms <= 0 or (1 / ms).denominator != 1:
        raise InputError("mesh must be 1/m for an integer m")
    return CircleModel(mesh=ms)


def canonical(theta) -> mpq:
    return rational(theta) % 1


def act(w: int, theta) -> mpq:
    return canonical(w * rational(theta))


def fixed_points(model: CircleModel | None = None) -> list[mpq]:
    return [mpq(0), mpq(1, 2)]


def cover_sets(model: CircleModel) -> list[CoverSet]:
    return [CoverSet(KIND, k, c) for k, c in enumerate(fixed_points(model))]


def _offset(k: int, theta) -> mpq:
    """Lift of ``theta - center`` into [-1/2, 1/2)."""
    d = canonical(rational(theta) - fixed_points()[k])
    return d - 1 if d >= mpq(1, 2) else d


def member(model: CircleModel, k: int, theta) -> bool:
    return abs(_offset(k, theta)) < RADIUS


def contract(model: CircleModel, k: int, theta, t) -> mpq:
    if not member(model, k, theta):
        raise NotMember(f"{theta} is not in arc {k}")
    return canonical(fixed_points()[k] + (1 - rational(t)) * _offset(k, theta))


def verify_covering(model: CircleModel) -> GridResult:
    """Exact interval check plus a grid margin: the arcs overlap and their union is the circle."""
    # the first arc misses exactly [3/8, 5/8]; that closed interval lies inside the second arc
    gap = (RADIUS, 1 - RADIUS)
    if not all(member(model, 1, x) for x in gap):
        raise AssertionError("arcs do not cover the circle")
    m = int(1 / model.mesh)
    margin = min(max(RADIUS - abs(_offset(k, mpq(j, m))) for k in (0, 1)) for j in range(m))
    return GridResult(points=m, margin=margin, mesh=model.mesh, continuous=True,
                      method="symbolic interval check")


def set_samples(model: CircleModel, k: int, count: int) -> list[mpq]:
    c = fixed_points()[k]
    return [canonical(c + RADIUS * mpq(2 * j - count + 1, count + 1)) for j in range(count)]


def orbit_section_intersection(theta) -> list[mpq]:
    """SO(2)-orbit of the section point ``theta`` met with the section: its W-orbit."""
    theta = canonical(theta)
    # the orbit is the latitude circle at polar angle |theta|; it crosses the
    # section great circle exactly where the section angle is +-theta
    return sorted({theta, canonical(-theta)})


def sphere_point(g, theta) -> tuple[mpq, mpq | None]:
    """(polar angle, azimuth) of the rotation by ``g`` of the section point ``theta``.

    The azimuth is None at the poles, where it is undefined.
    """
    g, theta = canonical(g), canonical(theta)
    if theta <= mpq(1, 2):
        polar, az = theta, g
    else:
        polar, az = 1 - theta, canonical(g + mpq(1, 2))
    if polar in (0, mpq(1, 2)):
        return polar, None
    return polar, az


def blowup_class(g, theta) -> tuple[mpq, mpq]:
    """Canonical representative of [(g, theta)] in G x_N Sigma.

    N is generated by the half turn, which acts on the section by the
    reflection: (g, theta) ~ (g + 1/2, -theta).
    """
    a = (canonical(g), canonical(theta))
    b = (canonical(rational(g) + mpq(1, 2)), canonical(-rational(theta)))
    return min(a, b)


@dataclass(frozen=True)
class Fiber:
    cardinality: str            # "1" or "circle"
    sampled_classes: int
    samples: int


def _fiber_classes(target, g, samples: int) -> set:
    gs = {mpq(a, samples) for a in range(samples)} | {canonical(g), canonical(g + mpq(1, 2))}
    out = set()
    for gg in gs:
        for th in {target[0], canonical(-target[0])}:
            if sphere_point(gg, th) == target:
                out.add(blowup_class(gg, th))
    return out


def blow_down_fiber(model: CircleModel, g, theta, samples: int = 16) -> Fiber:
    """Fiber of the blow-down map over the sphere point of (g, theta).

    Classes are enumerated over a grid of ``samples`` rotation angles and
    again at twice the density; a fiber whose class count grows with the
    density is reported as a circle.
    """
    if samples < 2 or samples % 2:
        raise InputError("samples must be an even integer >= 2")
    g = rational(g)
    target = sphere_point(g, theta)
    coarse = _fiber_classes(target, g, samples)
    fine = _fiber_classes(target, g, 2 * samples)
    cardinality = "1" if len(coarse) == len(fine) == 1 else "circle"
    return Fiber(cardinality=cardinality, sampled_classes=len(coarse), samples=samples)
