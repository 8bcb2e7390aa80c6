"""Exact rational models of sections with their Weyl groups.

Three families are provided: the maximal torus of SU(n+1) with the
symmetric group, RP^n with sign changes (the section of the torus action on
CP^n, HP^n and OP^2) and the circle section of SO(2) acting on the 2-sphere.
Every model exposes fixed points, a cover with explicit contractions and
verifiers; ``certify_weyl_cat`` bundles them into a BoundsReport.
"""

from __future__ import annotations

from gmpy2 import mpq

from ..errors import EquivarianceFailure, InputError, NotStarShaped
from ..report import BoundsReport
from . import circle, projective, torus
from .circle import CircleModel, blow_down_fiber, circle_model, orbit_section_intersection
from .common import SAMPLE_TIMES, CoverSet, GridResult, fmt, fmt_point, rational
from .projective import ProjectiveModel, projective_model
from .torus import TorusModel, discretize_circle, torus_model

__all__ = [
    "TorusModel", "ProjectiveModel", "CircleModel", "CoverSet", "GridResult",
    "torus_model", "projective_model", "circle_model",
    "weyl_fixed_points", "generate_cover", "membership", "contract",
    "verify_equivariance", "verify_star_shaped", "verify_covering_grid",
    "verify_chart_injectivity", "orbit_section_intersection", "blow_down_fiber",
    "certify_weyl_cat", "discretize_circle", "rational",
]

DEFAULT_SAMPLE_BUDGET = 2000


def _engine(model):
    if isinstance(model, TorusModel):
        return torus
    if isinstance(model, ProjectiveModel):
        return projective
    if isinstance(model, CircleModel):
        return circle
    raise InputError(f"unknown model {model!r}")


def weyl_fixed_points(model) -> list:
    return _engine(model).fixed_points(model)


def generate_cover(model) -> list[CoverSet]:
    return _engine(model).cover_sets(model)


def membership(model, cover_set: CoverSet, point) -> bool:
    return _engine(model).member(model, cover_set.k, point)


def contract(model, cover_set: CoverSet, point, t):
    return _engine(model).contract(model, cover_set.k, point, t)


def group_elements(model):
    return model.group


def _samples(model, cover_set, budget):
    count = max(3, budget // len(group_elements(model)))
    return _engine(model).set_samples(model, cover_set.k, count)


def verify_equivariance(model, cover_set: CoverSet, budget: int = DEFAULT_SAMPLE_BUDGET,
                        samples=None) -> int:
    """Exact check of contract(w.p, t) == w.contract(p, t) and membership invariance.

    Runs over every group element, every sample point and t in {0, 1/4, 1/2, 3/4, 1};
    returns the number of checks, raises EquivarianceFailure on a counterexample.
    """
    eng = _engine(model)
    k = cover_set.k
    pts = _samples(model, cover_set, budget) if samples is None else list(samples)
    checks = 0
    for p in pts:
        base = {t: eng.contract(model, k, p, t) for t in SAMPLE_TIMES}
        for w in group_elements(model):
            wp = eng.act(w, p)
            if not eng.member(model, k, wp):
                raise EquivarianceFailure(f"membership in set {k} not invariant under {w}",
                                          witness=(k, w, p, None))
            for t in SAMPLE_TIMES:
                lhs = eng.contract(model, k, wp, t)
                rhs = eng.act(w, base[t])
                if lhs != rhs:
                    raise EquivarianceFailure(
                        f"set {k}: contract(w.p, {fmt(t)}) != w.contract(p, {fmt(t)})",
                        witness=(k, w, p, t))
                checks += 1
    return checks


def verify_star_shaped(model, cover_set: CoverSet, budget: int = DEFAULT_SAMPLE_BUDGET,
                       samples=None) -> int:
    """Every contraction path from a sample point stays in the set; endpoints are exact."""
    eng = _engine(model)
    k = cover_set.k
    pts = _samples(model, cover_set, budget) if samples is None else list(samples)
    center = cover_set.center
    for p in pts:
        if eng.contract(model, k, p, 0) != eng.canonical(p):
            raise NotStarShaped(f"set {k}: contraction does not start at the point", witness=p)
        if eng.contract(model, k, p, 1) != center:
            raise NotStarShaped(f"set {k}: contraction does not end at the center", witness=p)
        for t in SAMPLE_TIMES[1:-1]:
            if not eng.member(model, k, eng.contract(model, k, p, t)):
                raise NotStarShaped(f"set {k}: contraction leaves the set at t={fmt(t)}",
                                    witness=(p, t))
    return len(pts)


def verify_covering_grid(model, mesh=None) -> GridResult:
    if isinstance(model, TorusModel):
        return torus.verify_covering_grid(model, mesh)
    if isinstance(model, ProjectiveModel):
        pts = [p for s in generate_cover(model) for p in _samples(model, s, DEFAULT_SAMPLE_BUDGET)]
        return projective.verify_covering(model, pts)
    return circle.verify_covering(model)


def verify_chart_injectivity(model, k: int, q: int | None = None, samples=None) -> int:
    if not isinstance(model, TorusModel):
        raise InputError("chart injectivity applies to torus models")
    return torus.verify_chart_injectivity(model, k, q, samples)


def _conclusion(model, value: int) -> str:
    if isinstance(model, TorusModel):
        return f"cat_SU({model.n + 1})(SU({model.n + 1})) = {value}"
    if isinstance(model, ProjectiveModel):
        return projective.RELABELS[model.label].format(n=model.n, v=value)
    return f"cat_SO(2)(S^2) = {value}"


def certify_weyl_cat(model, sample_budget: int = DEFAULT_SAMPLE_BUDGET) -> BoundsReport:
    """Run every verifier; the upper bound is the verified cover size, the lower bound the
    number of isolated fixed points."""
    eng = _engine(model)
    G = group_elements(model)
    fps = eng.fixed_points(model)
    for p in fps:
        for w in G:
            if eng.act(w, p) != p:
                raise AssertionError(f"{p} is not fixed by {w}")
    if len(set(fps)) != len(fps):
        raise AssertionError("fixed points are not distinct")
    lower = len(fps)
    pt = fmt_point if not isinstance(model, CircleModel) else fmt
    lower_cert = {"kind": "fixed-components", "points": [pt(p) for p in fps],
                  "note": "the fixed set is finite, so each fixed point is its own component"}

    sets = generate_cover(model)
    results: dict[str, object] = {}
    for s in sets:
        if not eng.member(model, s.k, s.center):
            raise AssertionError(f"center of set {s.k} is not a member")
        for w in G:
            if eng.act(w, s.center) != s.center:
                raise AssertionError(f"center of set {s.k} not fixed")
    results["centers_fixed"] = "pass"
    results["equivariance"] = {"result": "pass", "checks": sum(
        verify_equivariance(model, s, sample_budget) for s in sets)}
    results["star_shaped"] = {"result": "pass", "samples": sum(
        verify_star_shaped(model, s, sample_budget) for s in sets)}
    grid = verify_covering_grid(model)
    results["covering"] = {"result": "pass", "method": grid.method, "points": grid.points}
    if isinstance(model, TorusModel):
        results["injectivity"] = {"result": "pass", "samples": sum(
            verify_chart_injectivity(model, k) for k in range(1, model.n + 1))}
    upper_cert = {
        "sets": [s.describe() for s in sets],
        "verifiers": results,
        "margin": None if grid.margin is None else fmt(grid.margin),
        "mesh": None if grid.mesh is None else fmt(grid.mesh),
        "continuous_covering": grid.continuous,
    }
    upper = len(sets)
    exact = lower == upper
    return BoundsReport(model=model.describe(), lower=lower, lower_certificate=lower_cert,
                        upper=upper, upper_certificate=upper_cert,
                        conclusion=_conclusion(model, lower) if exact else None)
