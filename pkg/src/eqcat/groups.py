"""Finite permutation groups, subgroup conjugacy classes and the orbit-type order.

Permutations are tuples ``p`` of images: ``p[i]`` is the image of ``i``.
Composition follows function notation, ``compose(p, q)(i) == p[q[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidPermutation, OrderCapExceeded

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 10_080


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(p)
    if len(p) != degree:
        raise InvalidPermutation(f"permutation {list(p)} has length {len(p)}, expected {degree}")
    if sorted(p) != list(range(degree)):
        raise InvalidPermutation(f"{list(p)} is not a permutation of 0..{degree - 1}")
    return p


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for v in cyc:
            if not 0 <= v < degree:
                raise InvalidPermutation(f"cycle entry {v} outside 0..{degree - 1}")
            if v in seen:
                raise InvalidPermutation(f"vertex {v} appears in more than one cycle")
            seen.add(v)
        for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
            img[a] = b
    return tuple(img)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __contains__(self, p) -> bool:
        return tuple(p) in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def orbit(self, v: int) -> frozenset:
        return frozenset(g[v] for g in self.elements)

    def vertex_orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for v in range(self.degree):
            if v not in seen:
                orb = tuple(sorted(self.orbit(v)))
                seen.update(orb)
                out.append(orb)
        return out

    def conjugate(self, subgroup: Iterable[Perm], g: Perm) -> frozenset:
        ginv = inverse(g)
        return frozenset(compose(compose(g, h), ginv) for h in subgroup)

    @cached_property
    def _class_cache(self) -> dict:
        return {}

    def subgroup_class(self, subgroup: Iterable[Perm]) -> "SubgroupClass":
        """Conjugacy class of ``subgroup`` with its canonical key."""
        sub = frozenset(tuple(h) for h in subgroup)
        cache = self._class_cache
        hit = cache.get(sub)
        if hit is not None:
            return hit
        members = frozenset(self.conjugate(sub, g) for g in self.elements)
        key = min(tuple(sorted(m)) for m in members)
        cls = SubgroupClass(representative=tuple(sorted(sub)), members=members, key=key)
        for m in members:
            cache[m] = cls
        return cls


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class ``(H)`` of subgroups, identified by its canonical key.

    The key is the lexicographically least sorted element list over all
    conjugates, so two classes are equal iff their keys are equal.
    """

    representative: tuple[Perm, ...]
    members: frozenset = field(repr=False, compare=False)
    key: tuple[Perm, ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, SubgroupClass) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (len(self.key), self.key) < (len(other.key), other.key)

    @property
    def order(self) -> int:
        return len(self.key)


def type_leq(a: SubgroupClass, b: SubgroupClass) -> bool:
    """``(A) <= (B)``: some conjugate of B is contained in A.

    Bigger stabilizers sit lower, so the fixed-point type is the minimum and
    the free type the maximum.
    """
    if len(b.key) > len(a.key) or len(a.key) % len(b.key):
        return False
    aset = frozenset(a.representative)
    return any(m <= aset for m in b.members)


def group_from_generators(degree: int, generators: Iterable[Sequence[int]],
                          cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    gens = tuple(check_perm(g, degree) for g in generators)
    e = identity(degree)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(seen) > cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    # closure under composition with generators from a finite set already
    # contains inverses
    return PermGroup(degree=degree, generators=gens, elements=tuple(sorted(order)))


def trivial_group(degree: int) -> PermGroup:
    return group_from_generators(degree, [])


# -- catalogue of small groups acting on polygons and point sets ---------------


def cyclic_group(n: int, degree: int | None = None) -> PermGroup:
    """Rotation group of an n-gon, acting on vertices 0..n-1."""
    degree = n if degree is None else degree
    rot = tuple([(i + 1) % n for i in range(n)] + list(range(n, degree)))
    return group_from_generators(degree, [rot] if n > 1 else [])


def dihedral_group(n: int) -> PermGroup:
    """Symmetry group of the n-gon (order 2n)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_generators(n, [rot, ref])


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return trivial_group(n)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return group_from_generators(n, gens)
