"""Finite simplicial complexes with a simplicial permutation-group action.

Open simplices play the role of points: under a regular action the
stabilizer of every point of an open simplex equals the stabilizer of the
simplex itself, so each open simplex carries one orbit type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, NotRegular
from .groups import Perm, PermGroup, SubgroupClass, trivial_group

Simplex = tuple[int, ...]


def _faces(s: Simplex, proper: bool = False):
    top = len(s) - 1 if proper else len(s)
    for r in range(1, top + 1):
        yield from combinations(s, r)


def face_closure(simplices: Iterable[Sequence[int]]) -> set[Simplex]:
    out: set[Simplex] = set()
    for s in simplices:
        s = tuple(sorted(set(s)))
        if s in out:
            continue
        out.update(_faces(s))
    return out


def _order(simplices) -> tuple[Simplex, ...]:
    return tuple(sorted(simplices, key=lambda s: (len(s), s)))


@dataclass(frozen=True, eq=False)
class GComplex:
    """An abstract simplicial complex on vertices ``0..n_vertices-1`` with a group action.

    ``simplices`` is face-closed and sorted by (dimension, vertices); a
    simplex id is its position in that tuple.
    """

    n_vertices: int
    simplices: tuple[Simplex, ...]
    group: PermGroup
    labels: tuple[str, ...] = field(default=())

    # -- indexing --------------------------------------------------------------

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    def __len__(self):
        return len(self.simplices)

    def simplex_id(self, s: Sequence[int]) -> int:
        return self.index[tuple(sorted(s))]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    @property
    def dimension(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(self.index[(v,)] for v in range(self.n_vertices))

    @cached_property
    def faces_of(self) -> tuple[tuple[int, ...], ...]:
        """All nonempty faces (including itself) of each simplex, as ids."""
        idx = self.index
        return tuple(tuple(idx[f] for f in _faces(s)) for s in self.simplices)

    # -- action ----------------------------------------------------------------

    @staticmethod
    def act(g: Perm, s: Simplex) -> Simplex:
        return tuple(sorted(g[v] for v in s))

    @cached_property
    def simplex_perm(self) -> dict[Perm, tuple[int, ...]]:
        """For each group element, the induced permutation of simplex ids."""
        idx = self.index
        return {g: tuple(idx[self.act(g, s)] for s in self.simplices) for g in self.group}

    @cached_property
    def setwise_stabilizers(self) -> tuple[frozenset, ...]:
        stabs: list[list[Perm]] = [[] for _ in self.simplices]
        for g, perm in self.simplex_perm.items():
            for i, j in enumerate(perm):
                if i == j:
                    stabs[i].append(g)
        return tuple(frozenset(s) for s in stabs)

    @cached_property
    def regular(self) -> bool:
        for i, stab in enumerate(self.setwise_stabilizers):
            s = self.simplices[i]
            for g in stab:
                if any(g[v] != v for v in s):
                    return False
        return True

    def simplex_orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        perms = list(self.simplex_perm.values())
        for i in range(len(self.simplices)):
            if i not in seen:
                orb = tuple(sorted({p[i] for p in perms}))
                seen.update(orb)
                out.append(orb)
        return out

    # -- stabilizers and orbit types ------------------------------------------

    def _require_regular(self):
        if not self.regular:
            raise NotRegular("action is not regular; call regularize() first")

    def stabilizer(self, sid: int) -> frozenset:
        self._require_regular()
        return self.setwise_stabilizers[sid]

    @cached_property
    def orbit_types(self) -> tuple[SubgroupClass, ...]:
        self._require_regular()
        return tuple(self.group.subgroup_class(st) for st in self.setwise_stabilizers)

    # -- subcomplexes ------------------------------------------------------------

    def is_face_closed(self, ids: Iterable[int]) -> bool:
        ids = set(ids)
        return all(f in ids for i in ids for f in self.faces_of[i])

    def is_invariant(self, ids: Iterable[int]) -> bool:
        ids = set(ids)
        return all(p[i] in ids for p in self.simplex_perm.values() for i in ids)

    def vertices_of(self, ids: Iterable[int]) -> frozenset:
        return frozenset(v for i in ids for v in self.simplices[i])

    def full_subcomplex(self, vertices: Iterable[int]) -> frozenset:
        vs = set(vertices)
        return frozenset(i for i, s in enumerate(self.simplices) if vs.issuperset(s))

    def is_full(self, ids: Iterable[int]) -> bool:
        ids = frozenset(ids)
        return ids == self.full_subcomplex(self.vertices_of(ids))

    def open_star(self, ids: Iterable[int]) -> frozenset:
        """Open simplices having a face in the (face-closed) subcomplex ``ids``."""
        vs = self.vertices_of(ids)
        return frozenset(i for i, s in enumerate(self.simplices) if not vs.isdisjoint(s))

    def closure(self, ids: Iterable[int]) -> frozenset:
        return frozenset(f for i in ids for f in self.faces_of[i])

    def components(self, ids: Iterable[int]) -> list[frozenset]:
        """Connected components of a simplex set under the face relation inside the set."""
        ids = sorted(set(ids))
        parent = {i: i for i in ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in ids:
            for f in self.faces_of[i]:
                if f in parent:
                    a, b = find(i), find(f)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        groups: dict[int, set[int]] = {}
        for i in ids:
            groups.setdefault(find(i), set()).add(i)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def saturate(self, ids: Iterable[int]) -> frozenset:
        ids = frozenset(ids)
        return frozenset(p[i] for p in self.simplex_perm.values() for i in ids)

    # -- derived complexes -----------------------------------------------------

    def with_group(self, group: PermGroup) -> "GComplex":
        return make_complex(self.n_vertices, self.simplices, group, self.labels)


def make_complex(n_vertices: int, simplices: Iterable[Sequence[int]],
                 group: PermGroup | None = None, labels: Sequence[str] = ()) -> GComplex:
    """Build a GComplex, closing the simplex list under faces and validating the action."""
    simplices = list(simplices)
    for s in simplices:
        if not s:
            raise InputError("empty simplex")
        for v in s:
            if not 0 <= v < n_vertices:
                raise InputError(f"vertex {v} outside 0..{n_vertices - 1}")
        if len(set(s)) != len(s):
            raise InputError(f"simplex {list(s)} repeats a vertex")
    closed = face_closure(simplices)
    closed.update((v,) for v in range(n_vertices))
    group = trivial_group(n_vertices) if group is None else group
    if group.degree != n_vertices:
        raise InputError(f"group degree {group.degree} != vertex count {n_vertices}")
    for g in group.generators:
        for s in closed:
            if GComplex.act(g, s) not in closed:
                raise InputError(f"generator {list(g)} maps simplex {list(s)} outside the complex")
    labels = tuple(labels) if labels else ()
    if labels and len(labels) != n_vertices:
        raise InputError("label count does not match vertex count")
    return GComplex(n_vertices=n_vertices, simplices=_order(closed), group=group, labels=labels)


def subdivide(K: GComplex) -> GComplex:
    """Barycentric subdivision with the induced action.

    New vertex ``i`` is the barycenter of old simplex ``i``; new simplices are
    chains of old simplices ordered by inclusion.
    """
    faces = [set(K.faces_of[i]) - {i} for i in range(len(K.simplices))]
    chains: list[tuple[int, ...]] = []
    memo: dict[int, list[tuple[int, ...]]] = {}

    def chains_ending(i):
        if i not in memo:
            out = [(i,)]
            for f in faces[i]:
                out.extend(c + (i,) for c in chains_ending(f))
            memo[i] = out
        return memo[i]

    for i in range(len(K.simplices)):
        chains.extend(chains_ending(i))
    gens = [K.simplex_perm[g] for g in K.group.generators]
    from .groups import group_from_generators
    group = group_from_generators(len(K.simplices), gens, cap=max(K.group.order, 1))
    labels = []
    for s in K.simplices:
        names = [K.label(v) for v in s]
        labels.append(names[0] if len(names) == 1 else "<" + ",".join(names) + ">")
    return make_complex(len(K.simplices), chains, group, labels)


def is_regular_action(K: GComplex) -> bool:
    return K.regular


def regularize(K: GComplex) -> GComplex:
    """Return a complex whose action is regular.

    Already-regular input is returned unchanged; otherwise one barycentric
    subdivision is tried, then a second.
    """
    if K.regular:
        return K
    K1 = subdivide(K)
    if K1.regular:
        return K1
    return subdivide(K1)


def simplex_stabilizer(K: GComplex, simplex: Sequence[int]) -> frozenset:
    return K.stabilizer(K.simplex_id(simplex))


def orbit_type(K: GComplex, simplex: Sequence[int]) -> SubgroupClass:
    return K.orbit_types[K.simplex_id(simplex)]


def fixed_subcomplex(K: GComplex, H: Iterable[Perm]) -> frozenset:
    """Simplex ids fixed vertex-wise by every element of ``H``."""
    K._require_regular()
    H = list(H)
    return frozenset(i for i, s in enumerate(K.simplices)
                     if all(h[v] == v for h in H for v in s))


def reduced_homology_nonzero(K: GComplex) -> bool:
    """True if some reduced Z/2 Betti number of K is nonzero (so K is not contractible)."""
    by_dim: dict[int, list[int]] = {}
    for i, s in enumerate(K.simplices):
        by_dim.setdefault(len(s) - 1, []).append(i)
    pos = {i: n for d in by_dim for n, i in enumerate(by_dim[d])}
    ranks = {}
    for d in range(1, K.dimension + 1):
        rows = []
        for i in by_dim.get(d, []):
            mask = 0
            for f in combinations(K.simplices[i], d):
                mask |= 1 << pos[K.index[f]]
            rows.append(mask)
        ranks[d] = _gf2_rank(rows)
    # reduced: augmentation makes rank of boundary_0 equal 1
    ranks[0] = 1 if K.simplices else 0
    total = 0
    for d in range(0, K.dimension + 1):
        n_d = len(by_dim.get(d, []))
        total += n_d - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return total != 0


def _gf2_rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                rank += 1
                break
    return rank
