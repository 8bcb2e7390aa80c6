"""Orbit-type stratification, incidence order, hierarchies and lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .complex import GComplex, fixed_subcomplex
from .errors import InputError, NoPrincipal, NotMonotone
from .groups import SubgroupClass, type_leq


@dataclass(frozen=True)
class Stratum:
    id: int
    type: SubgroupClass
    simplices: frozenset
    is_closed: bool
    locally_minimal: bool

    @property
    def orbit_type_order(self) -> int:
        return self.type.order


@dataclass(frozen=True)
class StratificationReport:
    complex: GComplex = field(repr=False)
    strata: tuple[Stratum, ...]
    order: frozenset            # strict pairs (a, b): stratum a precedes stratum b
    cover_edges: frozenset      # pairs (a, b): a meets the closure of b
    minimal: tuple[int, ...]
    fixed_components: tuple[frozenset, ...]
    frontier_condition: bool

    @cached_property
    def owner(self) -> dict[int, int]:
        return {s: st.id for st in self.strata for s in st.simplices}

    def stratum_of(self, sid: int) -> Stratum:
        return self.strata[self.owner[sid]]

    def precedes(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.order


@dataclass(frozen=True)
class LowerBound:
    value: int
    kind: str                 # "fixed-components" | "minimal-strata"
    minimal_strata: int
    fixed_components: int


def _strata_sets(K: GComplex) -> list[tuple[SubgroupClass, frozenset]]:
    by_type: dict[SubgroupClass, list[int]] = {}
    for i, t in enumerate(K.orbit_types):
        by_type.setdefault(t, []).append(i)
    out = []
    for t, ids in by_type.items():
        done: set[int] = set()
        for comp in K.components(ids):
            if min(comp) in done:
                continue
            sat = K.saturate(comp)
            done.update(sat)
            out.append((t, sat))
    out.sort(key=lambda p: min(p[1]))
    return out


def _locally_minimal(K: GComplex, t: SubgroupClass, simplices: frozenset) -> bool:
    # every point near the stratum has type >= t; on a complex this fails
    # exactly when some face of a member simplex has a strictly smaller type
    types = K.orbit_types
    for i in simplices:
        for f in K.faces_of[i]:
            if types[f] != t:
                return False
    return True


def stratify(K: GComplex) -> StratificationReport:
    """Partition open simplices into strata and compute the incidence order."""
    raw = _strata_sets(K)
    strata = []
    for n, (t, simplices) in enumerate(raw):
        strata.append(Stratum(id=n, type=t, simplices=simplices,
                              is_closed=K.is_face_closed(simplices),
                              locally_minimal=_locally_minimal(K, t, simplices)))
    owner = {s: st.id for st in strata for s in st.simplices}

    edges = set()
    for st in strata:
        for i in st.simplices:
            for f in K.faces_of[i]:
                o = owner[f]
                if o != st.id:
                    edges.add((o, st.id))
    order = _transitive_closure(edges, len(strata))

    frontier = True
    for a, b in edges:
        clo = K.closure(strata[b].simplices)
        if not strata[a].simplices <= clo:
            frontier = False
            break

    fix = fixed_subcomplex(K, K.group.elements)
    fixed_components = tuple(K.components(fix))
    minimal = tuple(st.id for st in strata if not any(b == st.id for (_, b) in edges))
    return StratificationReport(complex=K, strata=tuple(strata), order=frozenset(order),
                                cover_edges=frozenset(edges), minimal=minimal,
                                fixed_components=fixed_components,
                                frontier_condition=frontier)


def _transitive_closure(edges, n: int) -> set[tuple[int, int]]:
    succ: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in edges:
        succ[a].add(b)
    out = set()
    for a in range(n):
        stack = list(succ[a])
        seen = set()
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            stack.extend(succ[b])
        out.update((a, b) for b in seen)
    return out


def lower_bound(report: StratificationReport) -> LowerBound:
    """max(#locally minimal strata, #components of Fix(G)) with the attaining certificate."""
    minimal_sets = [report.strata[i].simplices for i in report.minimal]
    for comp in report.fixed_components:
        if not any(comp <= m for m in minimal_sets):
            raise AssertionError("fixed-point component outside every locally minimal stratum")
    m0 = len(report.minimal)
    fc = len(report.fixed_components)
    if fc >= m0 and fc > 0:
        return LowerBound(fc, "fixed-components", m0, fc)
    return LowerBound(m0, "minimal-strata", m0, fc)


def sublevel_set(K: GComplex, H: SubgroupClass) -> frozenset:
    """Simplices whose orbit type is <= (H)."""
    return frozenset(i for i, t in enumerate(K.orbit_types) if type_leq(t, H))


# -- hierarchies ---------------------------------------------------------------

HIERARCHY_KINDS = ("orbit-size", "chain-from-principal", "chain-from-minimal")


@dataclass(frozen=True)
class Hierarchy:
    kind: str
    values: Mapping[SubgroupClass, int]

    def __call__(self, t: SubgroupClass) -> int:
        return self.values[t]


def _occurring(K: GComplex) -> list[SubgroupClass]:
    return sorted(set(K.orbit_types))


def _strictly_below(a: SubgroupClass, b: SubgroupClass) -> bool:
    return a != b and type_leq(a, b)


def _longest_up(types):
    """Longest strict chain (element count) starting at each type and going up."""
    memo: dict = {}

    def up(t):
        if t not in memo:
            memo[t] = 1 + max((up(u) for u in types if _strictly_below(t, u)), default=0)
        return memo[t]

    return {t: up(t) for t in types}


def _longest_down(types):
    memo: dict = {}

    def down(t):
        if t not in memo:
            memo[t] = 1 + max((down(u) for u in types if _strictly_below(u, t)), default=0)
        return memo[t]

    return {t: down(t) for t in types}


def check_monotone(values: Mapping[SubgroupClass, int], types) -> None:
    for a in types:
        for b in types:
            if type_leq(a, b) and values[a] > values[b]:
                raise NotMonotone(
                    f"type of order {a.order} <= type of order {b.order} "
                    f"but value {values[a]} > {values[b]}")


def build_hierarchy(K: GComplex, kind: str, table: Mapping[SubgroupClass, int] | None = None
                    ) -> Hierarchy:
    """Monotone labelling of the occurring orbit types."""
    types = _occurring(K)
    if kind == "orbit-size":
        values = {t: K.group.order // t.order for t in types}
    elif kind == "chain-from-principal":
        maximal = [t for t in types if not any(_strictly_below(t, u) for u in types)]
        if len(maximal) != 1:
            raise NoPrincipal(f"{len(maximal)} maximal orbit types, expected one")
        up = _longest_up(types)
        top = max(up.values())
        values = {t: top - up[t] for t in types}
    elif kind == "chain-from-minimal":
        values = _longest_down(types)
    elif kind == "custom":
        if table is None:
            raise InputError("custom hierarchy needs a table")
        missing = [t for t in types if t not in table]
        if missing:
            raise InputError(f"custom table misses {len(missing)} occurring orbit type(s)")
        values = {t: int(table[t]) for t in types}
        if any(v < 0 for v in values.values()):
            raise NotMonotone("hierarchy values must be natural numbers")
    else:
        raise InputError(f"unknown hierarchy kind {kind!r}")
    check_monotone(values, types)
    return Hierarchy(kind=kind, values=values)


def hierarchy_filtration(report: StratificationReport, h: Hierarchy) -> list[tuple[int, frozenset]]:
    """Levels n with the set of stratum ids whose value is <= n."""
    levels = sorted({h(st.type) for st in report.strata})
    return [(n, frozenset(st.id for st in report.strata if h(st.type) <= n)) for n in levels]


def check_semicontinuity(K: GComplex, h: Hierarchy) -> bool:
    types = K.orbit_types
    return all(h(types[f]) <= h(types[i])
               for i in range(len(K.simplices)) for f in K.faces_of[i])
