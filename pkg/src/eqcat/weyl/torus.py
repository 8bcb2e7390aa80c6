"""The maximal torus of SU(n+1) with its Weyl group S_{n+1}, in exact rationals.

Points of the torus are (n+1)-tuples of rationals modulo integer vectors
whose coordinate sum is an integer.  The group permutes coordinates.  The
cover consists of a small ball ``V_0`` around the identity and, for
``k = 1..n``, the chart images ``V_k`` of thickened hypersimplex slabs

    {y : sum(y) = k, -delta < y_i < 1 + delta, spread(y) < 1,
         |y - v|_inf > eps/2 for every 0/1 vector v with k ones}

each contracted along straight lines to the central point ``(k/(n+1))*1``.

All membership and slack computations are written once against an
abstract unit ``one`` so they run both on mpq values (``one = 1``) and on
integers scaled by a common denominator, which the grid scans use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, permutations, product

from gmpy2 import mpq

from ..complex import GComplex, make_complex
from ..errors import Collision, InputError, NotMember, Uncovered
from ..groups import group_from_generators
from .common import CoverSet, GridResult, common_scale, fmt_point, rational

KIND = "torus-sym"


@dataclass(frozen=True)
class TorusModel:
    n: int
    eps: mpq
    delta: mpq
    mesh: mpq
    spread_guard: bool = True

    kind = KIND

    @cached_property
    def group(self) -> tuple[tuple[int, ...], ...]:
        return tuple(permutations(range(self.n + 1)))

    def describe(self) -> dict:
        return {"kind": KIND, "n": self.n, "epsilon": str(self.eps), "delta": str(self.delta),
                "mesh": str(self.mesh), "spread_guard": self.spread_guard}


def torus_model(n: int, epsilon=None, delta=None, mesh=None, spread_guard: bool = True) -> TorusModel:
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    eps = rational(epsilon) if epsilon is not None else min(mpq(1, 4), mpq(2, n + 1))
    dl = rational(delta) if delta is not None else eps / 4
    ms = rational(mesh) if mesh is not None else eps / 8
    if eps <= 0 or dl <= 0 or ms <= 0:
        raise InputError("epsilon, delta and mesh must be positive")
    if eps >= mpq(1, 2):
        raise InputError("epsilon must be below 1/2")
    if dl > mpq(1, 2):
        raise InputError("delta must be at most 1/2")
    if (1 / ms).denominator != 1:
        raise InputError("mesh must be 1/m for an integer m")
    return TorusModel(n=n, eps=eps, delta=dl, mesh=ms, spread_guard=spread_guard)


# -- points and the group action ------------------------------------------------


def canonical(p) -> tuple[mpq, ...]:
    """Reduce every coordinate into [0, 1); the coordinate sum must be an integer."""
    q = tuple(rational(x) % 1 for x in p)
    if sum(q).denominator != 1:
        raise InputError(f"coordinate sum of {fmt_point(p)} is not an integer")
    return q


def act(w, p) -> tuple[mpq, ...]:
    """Move coordinate i to slot w[i]."""
    out = [None] * len(p)
    for i, x in enumerate(p):
        out[w[i]] = x
    return tuple(out)


def fixed_points(model: TorusModel) -> list[tuple[mpq, ...]]:
    n1 = model.n + 1
    return [tuple(mpq(k, n1) for _ in range(n1)) for k in range(n1)]


def cover_sets(model: TorusModel) -> list[CoverSet]:
    return [CoverSet(KIND, k, c) for k, c in enumerate(fixed_points(model))]


# -- slack functions (twice the sup-ball radius left inside a set) ----------------


def _slab_slack2(y, k, eps, delta, one, guard):
    ys = sorted(y)
    lo, hi = ys[0], ys[-1]
    s = min(2 * (lo + delta), 2 * (one + delta - hi))
    if guard:
        s = min(s, one - (hi - lo))
    cut = len(ys) - k
    d = max(max(abs(v) for v in ys[:cut]), max(abs(one - v) for v in ys[cut:]))
    return min(s, 2 * d - eps)


def _ball_lift(p, one):
    y = tuple(x if 2 * x < one else x - one for x in p)
    return y if sum(y) == 0 else None


def _ball_slack2(p, eps, one):
    y = _ball_lift(p, one)
    if y is None:
        return None
    return 2 * (eps - max(abs(v) for v in y))


def _lifts(p, delta, one, n):
    """Integer shifts of a canonical point landing in the delta-box with sum 1..n."""
    opts = []
    for x in p:
        o = [x]
        if x < delta:
            o.append(x + one)
        if x > one - delta:
            o.append(x - one)
        opts.append(o)
    for y in product(*opts):
        s = sum(y)
        if s % one == 0 and one <= s <= n * one:
            yield s // one, y


# -- membership and contraction -------------------------------------------------------


def chart_member(model: TorusModel, k: int, y) -> bool:
    """Exact membership of a chart point ``y`` in the slab set ``V_k'``."""
    y = tuple(rational(v) for v in y)
    if sum(y) != k:
        return False
    return _slab_slack2(y, k, model.eps, model.delta, 1, model.spread_guard) > 0


def representative(model: TorusModel, k: int, p):
    """The chart lift of ``p`` inside ``V_k'`` (``V_0``: the lift near 0), or None."""
    p = canonical(p)
    if k == 0:
        s = _ball_slack2(p, model.eps, 1)
        return _ball_lift(p, 1) if s is not None and s > 0 else None
    for kk, y in _lifts(p, model.delta, 1, model.n):
        if kk == k and _slab_slack2(y, k, model.eps, model.delta, 1, model.spread_guard) > 0:
            return y
    return None


def member(model: TorusModel, k: int, p) -> bool:
    return representative(model, k, p) is not None


def contract(model: TorusModel, k: int, p, t) -> tuple[mpq, ...]:
    """Straight-line homotopy in the chart: t = 0 is ``p``, t = 1 is the center ``z_k``."""
    t = rational(t)
    y = representative(model, k, p)
    if y is None:
        raise NotMember(f"{fmt_point(p)} is not in V_{k}")
    c = mpq(k, model.n + 1)
    return canonical(v + t * (c - v) for v in y)


def slack(model: TorusModel, p) -> mpq:
    """Largest sup-ball radius around ``p`` contained in one chart set (negative if uncovered)."""
    p = canonical(p)
    best = _ball_slack2(p, model.eps, 1)
    best = mpq(-1) if best is None else best
    for k, y in _lifts(p, model.delta, 1, model.n):
        best = max(best, _slab_slack2(y, k, model.eps, model.delta, 1, model.spread_guard))
    return best / 2


# -- verifiers --------------------------------------------------------------------------


def verify_covering_grid(model: TorusModel, mesh=None) -> GridResult:
    """Scan every grid point (one per orbit) and report the minimal slack.

    Any torus point lies within sup-distance < mesh of a grid point, so a
    margin of at least ``mesh`` certifies covering of the whole torus.
    """
    mesh = model.mesh if mesh is None else rational(mesh)
    if (1 / mesh).denominator != 1:
        raise InputError("mesh must be 1/m for an integer m")
    m = int(1 / mesh)
    n = model.n
    S = common_scale(mesh, model.eps, model.delta)
    u = S // m
    eps, delta, guard = int(model.eps * S), int(model.delta * S), model.spread_guard
    worst = None
    count = 0
    for head in combinations_with_replacement(range(m), n):
        last = (-sum(head)) % m
        if last < head[-1]:
            continue
        count += 1
        p = tuple(a * u for a in head) + (last * u,)
        best = _ball_slack2(p, eps, S)
        if best is None:
            best = -S
        for k, y in _lifts(p, delta, S, n):
            s = _slab_slack2(y, k, eps, delta, S, guard)
            if s > best:
                best = s
        if worst is None or best < worst[0]:
            worst = (best, p)
    margin = mpq(worst[0], 2 * S)
    if margin <= 0:
        pt = tuple(mpq(x, S) for x in worst[1])
        raise Uncovered(f"grid point {fmt_point(pt)} lies in no cover set", witness=pt)
    return GridResult(points=count, margin=margin, mesh=mesh, continuous=margin >= mesh,
                      method="orbit grid scan")


def _chart_values(model: TorusModel, q: int):
    vals = {mpq(j, q) for j in range(q + 1)}
    vals |= {-model.delta / 2, 1 + model.delta / 2}
    return sorted(vals)


def default_chart_denominator(n: int) -> int:
    return max(2, 24 // n)


def chart_samples(model: TorusModel, k: int, q: int | None = None) -> list[tuple[mpq, ...]]:
    """Deterministic grid of chart points in ``V_k'``."""
    q = default_chart_denominator(model.n) if q is None else q
    vals = _chart_values(model, q)
    out = []
    for head in product(vals, repeat=model.n):
        y = head + (k - sum(head),)
        if -model.delta < y[-1] < 1 + model.delta and chart_member(model, k, y):
            out.append(y)
    return out


def verify_chart_injectivity(model: TorusModel, k: int, q: int | None = None,
                             samples=None) -> int:
    """Check that distinct chart samples of ``V_k'`` have distinct torus points.

    Returns the number of samples checked; raises Collision with the pair.
    """
    if not 1 <= k <= model.n:
        raise InputError(f"chart index must be in 1..{model.n}")
    pts = chart_samples(model, k, q) if samples is None else [tuple(map(rational, y)) for y in samples]
    seen: dict = {}
    for y in pts:
        c = canonical(y)
        if c in seen and seen[c] != y:
            raise Collision(f"{fmt_point(seen[c])} and {fmt_point(y)} have the same image",
                            witness=(seen[c], y))
        seen[c] = y
    # targeted: integer shifts with entries in {-1, 0, 1} summing to 0
    for y in pts:
        opts = []
        for v in y:
            o = [0]
            if v + 1 < 1 + model.delta:
                o.append(1)
            if v - 1 > -model.delta:
                o.append(-1)
            opts.append(o)
        for d in product(*opts):
            if any(d) and sum(d) == 0:
                z = tuple(v + e for v, e in zip(y, d))
                if chart_member(model, k, z):
                    raise Collision(f"{fmt_point(y)} and {fmt_point(z)} have the same image",
                                    witness=(y, z))
    return len(pts)


def set_samples(model: TorusModel, k: int, count: int) -> list[tuple[mpq, ...]]:
    """Up to ``count`` deterministic member points of ``V_k``, as canonical torus points."""
    if k == 0:
        step = model.eps / 4
        vals = [j * step for j in range(-3, 4)]
        pts = set()
        for head in product(vals, repeat=model.n):
            y = head + (-sum(head),)
            if max(abs(v) for v in y) < model.eps:
                pts.add(canonical(y))
    else:
        pts = {canonical(y) for y in chart_samples(model, k)}
    pts = sorted(pts)
    if len(pts) <= count:
        return pts
    stride = len(pts) / count
    return [pts[int(i * stride)] for i in range(count)]


# -- a discrete shadow for n = 1 -------------------------------------------------------


def discretize_circle(m: int) -> GComplex:
    """The torus of SU(2) as an m-gon, with the coordinate swap acting as j -> -j."""
    if m < 4 or m % 2:
        raise InputError("m must be an even integer >= 4")
    refl = tuple((-j) % m for j in range(m))
    G = group_from_generators(m, [refl])
    return make_complex(m, [(j, (j + 1) % m) for j in range(m)], G,
                        [f"{j}/{m}" for j in range(m)])
