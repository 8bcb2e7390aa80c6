"""Equivariant categorical covers: certificates, verification, search and lifting.

A piece is a closed invariant core ``L`` (a full subcomplex) whose open star
is the certified open set.  Its witness is a chain of vertex maps
``f_0 = inclusion, f_1, ..., f_m`` on the vertices of ``L``; consecutive maps
are contiguous, every map is equivariant, and ``f_m`` sends each simplex of
``L`` to one vertex of a single orbit.  Such a chain is a discrete
equivariant homotopy of ``L`` into an orbit, and the open star deformation
retracts onto ``L`` equivariantly, which makes the open star categorical.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .complex import GComplex, make_complex, reduced_homology_nonzero
from .errors import (BadInitial, BadTerminal, InputError, LiftObstructed, NotContiguous,
                     NotCovering, NotEquivariant, NotFree, NotFull, NotInvariant,
                     NotSubcomplex, SearchBudgetExceeded)
from .strata import lower_bound, stratify

CERT_FORMAT = "eqcat.cover/1"


@dataclass(frozen=True)
class ContiguityWitness:
    """Vertex maps ``f_0..f_m``; ``maps[j][i]`` is the image of the i-th core vertex."""

    target: int
    maps: tuple[tuple[int, ...], ...]

    @property
    def steps(self) -> int:
        return len(self.maps) - 1


@dataclass(frozen=True)
class InvariantPiece:
    core: frozenset           # simplex ids of L
    witness: ContiguityWitness


@dataclass(frozen=True)
class CategoricalCover:
    pieces: tuple[InvariantPiece, ...]

    def __len__(self):
        return len(self.pieces)


@dataclass(frozen=True)
class UpperBound:
    value: int
    cover: CategoricalCover


def core_vertices(K: GComplex, core: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(K.vertices_of(core)))


def make_piece(K: GComplex, core: Iterable[int], target: int,
               maps: Sequence[dict[int, int] | Sequence[int]]) -> InvariantPiece:
    """Build a piece; each map may be a dict vertex -> image or a list aligned with sorted core vertices."""
    core = frozenset(core)
    verts = core_vertices(K, core)
    rows = []
    for m in maps:
        if isinstance(m, dict):
            rows.append(tuple(m[v] for v in verts))
        else:
            rows.append(tuple(m))
    return InvariantPiece(core=core, witness=ContiguityWitness(target=target, maps=tuple(rows)))


# -- verification --------------------------------------------------------------


def _check_core(K: GComplex, piece: InvariantPiece, n: int):
    core = piece.core
    if not core:
        raise NotSubcomplex("empty core", piece=n)
    bad = [i for i in core if not 0 <= i < len(K.simplices)]
    if bad:
        raise NotSubcomplex(f"simplex id {bad[0]} out of range", piece=n)
    for i in sorted(core):
        for f in K.faces_of[i]:
            if f not in core:
                raise NotSubcomplex(f"face {list(K.simplices[f])} of {list(K.simplices[i])} "
                                    "missing from core", piece=n, simplex=K.simplices[i])
    for g, perm in K.simplex_perm.items():
        for i in sorted(core):
            if perm[i] not in core:
                raise NotInvariant(f"g={list(g)} moves core simplex {list(K.simplices[i])} "
                                   "outside the core", piece=n, g=g, simplex=K.simplices[i])
    if not K.is_full(core):
        raise NotFull("core is not a full subcomplex", piece=n)


def verify_piece(K: GComplex, piece: InvariantPiece, n: int | None = None) -> None:
    _check_core(K, piece, n)
    verts = core_vertices(K, piece.core)
    pos = {v: i for i, v in enumerate(verts)}
    maps = piece.witness.maps
    if not maps:
        raise BadInitial("witness has no maps", piece=n)
    for j, m in enumerate(maps):
        if len(m) != len(verts):
            raise InputError(f"piece {n}: map {j} has {len(m)} entries, core has {len(verts)} vertices")
        for x in m:
            if not 0 <= x < K.n_vertices:
                raise InputError(f"piece {n}: map {j} sends a vertex to {x}, not a vertex")
    if tuple(maps[0]) != verts:
        raise BadInitial("f_0 is not the inclusion", piece=n)
    for j, m in enumerate(maps):
        for g in K.group:
            for w in verts:
                if m[pos[g[w]]] != g[m[pos[w]]]:
                    raise NotEquivariant(
                        f"f_{j}(g.w) != g.f_{j}(w) for g={list(g)}, w={w}",
                        piece=n, g=g, w=w, j=j)
    core_simplices = [K.simplices[i] for i in sorted(piece.core)]
    for j in range(len(maps) - 1):
        a, b = maps[j], maps[j + 1]
        for s in core_simplices:
            img = tuple(sorted({a[pos[v]] for v in s} | {b[pos[v]] for v in s}))
            if img not in K.index:
                raise NotContiguous(f"f_{j}(s) and f_{j + 1}(s) do not span a simplex for "
                                    f"s={list(s)}", piece=n, simplex=s, j=j)
    last = maps[-1]
    target = piece.witness.target
    if not 0 <= target < K.n_vertices:
        raise BadTerminal(f"target {target} is not a vertex", piece=n)
    orbit = K.group.orbit(target)
    for s in core_simplices:
        img = {last[pos[v]] for v in s}
        if len(img) != 1:
            raise BadTerminal(f"f_m does not collapse simplex {list(s)} to a vertex",
                              piece=n, simplex=s)
        (x,) = img
        if x not in orbit:
            raise BadTerminal(f"f_m sends {list(s)} to {x}, outside the target orbit",
                              piece=n, simplex=s)


def verify_cover(K: GComplex, cover: CategoricalCover) -> UpperBound:
    """Exhaustively check every witness and the covering condition."""
    for n, piece in enumerate(cover.pieces):
        verify_piece(K, piece, n)
    covered = set()
    for piece in cover.pieces:
        covered |= K.vertices_of(piece.core)
    for s in K.simplices:
        if covered.isdisjoint(s):
            raise NotCovering(f"simplex {list(s)} meets no core", simplex=s)
    return UpperBound(len(cover.pieces), cover)


def stabilizer_growth_check(K: GComplex, piece: InvariantPiece) -> bool:
    """Stab(w) is contained in Stab(f_j(w)) for every core vertex w and step j."""
    verts = core_vertices(K, piece.core)
    vid = K.vertex_ids
    for m in piece.witness.maps:
        for w, x in zip(verts, m):
            if not K.stabilizer(vid[w]) <= K.stabilizer(vid[x]):
                return False
    return True


# -- JSON certificates ---------------------------------------------------------


def cover_to_json(K: GComplex, cover: CategoricalCover) -> dict:
    return {
        "format": CERT_FORMAT,
        "vertex_count": K.n_vertices,
        "simplex_count": len(K.simplices),
        "pieces": [{"core": sorted(p.core), "target": p.witness.target,
                    "maps": [list(m) for m in p.witness.maps]} for p in cover.pieces],
    }


def dumps_cover(K: GComplex, cover: CategoricalCover) -> str:
    return json.dumps(cover_to_json(K, cover), indent=1, sort_keys=True)


def _int_list(x, path) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in x):
        raise InputError("expected a list of integers", path)
    return x


def cover_from_json(K: GComplex, data) -> CategoricalCover:
    if not isinstance(data, dict):
        raise InputError("certificate must be a JSON object")
    if data.get("format") != CERT_FORMAT:
        raise InputError(f"expected format {CERT_FORMAT!r}", "format")
    if data.get("vertex_count") != K.n_vertices:
        raise InputError(f"certificate is for {data.get('vertex_count')} vertices, "
                         f"complex has {K.n_vertices}", "vertex_count")
    if data.get("simplex_count") != len(K.simplices):
        raise InputError(f"certificate is for {data.get('simplex_count')} simplices, "
                         f"complex has {len(K.simplices)}", "simplex_count")
    pieces = data.get("pieces")
    if not isinstance(pieces, list):
        raise InputError("expected a list", "pieces")
    out = []
    for n, p in enumerate(pieces):
        path = f"pieces[{n}]"
        if not isinstance(p, dict):
            raise InputError("expected an object", path)
        core = _int_list(p.get("core"), f"{path}.core")
        target = p.get("target")
        if not isinstance(target, int) or isinstance(target, bool):
            raise InputError("expected an integer", f"{path}.target")
        maps = p.get("maps")
        if not isinstance(maps, list):
            raise InputError("expected a list of maps", f"{path}.maps")
        rows = tuple(tuple(_int_list(m, f"{path}.maps[{j}]")) for j, m in enumerate(maps))
        out.append(InvariantPiece(core=frozenset(core),
                                  witness=ContiguityWitness(target=target, maps=rows)))
    return CategoricalCover(tuple(out))


def loads_cover(K: GComplex, text: str) -> CategoricalCover:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    return cover_from_json(K, data)


# -- witness search ------------------------------------------------------------


class _Core:
    """Search context for one candidate core."""

    def __init__(self, K: GComplex, core: frozenset):
        self.K = K
        self.core = core
        self.verts = core_vertices(K, core)
        self.pos = {v: i for i, v in enumerate(self.verts)}
        self.simplices = [K.simplices[i] for i in sorted(core)]
        G = K.group
        self.orbits = [o for o in G.vertex_orbits() if o[0] in self.pos]
        # for every orbit: representative and, per vertex, an element carrying the rep there
        self.carry = []
        for o in self.orbits:
            rep = o[0]
            c = {}
            for g in G:
                c.setdefault(g[rep], g)
            self.carry.append((rep, c))
        vid = K.vertex_ids
        self.stab = {v: K.stabilizer(vid[v]) for v in range(K.n_vertices)}
        self.neighbors = {v: set() for v in range(K.n_vertices)}
        for s in K.simplices:
            if len(s) == 2:
                a, b = s
                self.neighbors[a].add(b)
                self.neighbors[b].add(a)
        self.components = [sorted(K.vertices_of(c)) for c in K.components(core)]

    def expand(self, reps: tuple[int, ...]) -> tuple[int, ...]:
        img = [0] * len(self.verts)
        for (rep, c), u in zip(self.carry, reps):
            for v, g in c.items():
                img[self.pos[v]] = g[u]
        return tuple(img)

    def contiguous(self, a, b) -> bool:
        idx = self.K.index
        pos = self.pos
        for s in self.simplices:
            img = tuple(sorted({a[pos[v]] for v in s} | {b[pos[v]] for v in s}))
            if img not in idx:
                return False
        return True

    def terminal(self, m) -> int | None:
        G = self.K.group
        pos = self.pos
        first = None
        for comp in self.components:
            vals = {m[pos[v]] for v in comp}
            if len(vals) != 1:
                return None
            (x,) = vals
            if first is None:
                first = x
            elif x not in G.orbit(first):
                return None
        return first

    def search(self, max_depth: int, state_budget: int) -> ContiguityWitness | None:
        start = tuple(rep for rep, _ in self.carry)
        m0 = self.expand(start)
        t = self.terminal(m0)
        if t is not None:
            return ContiguityWitness(target=t, maps=(m0,))
        parent = {start: None}
        queue = deque([(start, 0)])
        while queue:
            reps, depth = queue.popleft()
            if depth >= max_depth:
                continue
            cur = self.expand(reps)
            for k, (rep, _) in enumerate(self.carry):
                w_img = reps[k]
                for u in sorted(self.neighbors[w_img]):
                    if not self.stab[rep] <= self.stab[u]:
                        continue
                    nxt = reps[:k] + (u,) + reps[k + 1:]
                    if nxt in parent:
                        continue
                    new = self.expand(nxt)
                    if not self.contiguous(cur, new):
                        continue
                    parent[nxt] = reps
                    t = self.terminal(new)
                    if t is not None:
                        chain = [nxt]
                        while parent[chain[-1]] is not None:
                            chain.append(parent[chain[-1]])
                        maps = tuple(self.expand(r) for r in reversed(chain))
                        return ContiguityWitness(target=t, maps=maps)
                    if len(parent) > state_budget:
                        return None
                    queue.append((nxt, depth + 1))
        return None


def find_witness(K: GComplex, core: Iterable[int], max_depth: int = 24,
                 state_budget: int = 20_000) -> ContiguityWitness | None:
    """Breadth-first search for a contiguity witness over single-orbit moves."""
    return _Core(K, frozenset(core)).search(max_depth, state_budget)


def candidate_cores(K: GComplex) -> list[frozenset]:
    """Full subcomplexes on unions of vertex orbits, by ascending simplex count."""
    orbits = K.group.vertex_orbits()
    seen = set()
    out = []
    for r in range(1, len(orbits) + 1):
        for combo in combinations(orbits, r):
            core = K.full_subcomplex(v for o in combo for v in o)
            if core not in seen:
                seen.add(core)
                out.append(core)
    out.sort(key=lambda c: (len(c), sorted(c)))
    return out


@dataclass(frozen=True)
class BruteForceResult:
    lower: int
    lower_kind: str
    upper: int | None
    cover: CategoricalCover | None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.upper == self.lower

    @property
    def value(self):
        return self.lower if self.exact else (self.lower, self.upper)


def classical_lower_bound(K: GComplex) -> int:
    """Lower bound for the trivial group: 2 when reduced Z/2 homology is nonzero."""
    return 2 if reduced_homology_nonzero(K) else 1


def combined_lower_bound(K: GComplex) -> tuple[int, str]:
    lb = lower_bound(stratify(K))
    value, kind = lb.value, lb.kind
    if K.group.is_trivial():
        c = classical_lower_bound(K)
        if c > value:
            value, kind = c, "homology"
    return value, kind


def _min_cover(K: GComplex, found: list[InvariantPiece], max_pieces: int,
               exact_size: int | None = None) -> CategoricalCover | None:
    all_vertices = frozenset(range(K.n_vertices))
    vsets = [K.vertices_of(p.core) for p in found]
    # drop pieces whose vertex set is contained in another
    keep = [i for i, a in enumerate(vsets)
            if not any(j != i and a < b for j, b in enumerate(vsets))]
    sizes = [exact_size] if exact_size is not None else range(1, max_pieces + 1)
    for k in sizes:
        for combo in combinations(keep, k):
            if frozenset().union(*(vsets[i] for i in combo)) == all_vertices:
                return CategoricalCover(tuple(found[i] for i in combo))
    return None


def brute_force_cat(K: GComplex, max_pieces: int = 4, max_witness_depth: int = 24,
                    simplex_cap: int = 96, state_budget: int = 20_000) -> BruteForceResult:
    """Exhaustive search for a small verified cover, paired with the certified lower bound."""
    if len(K.simplices) > simplex_cap:
        raise SearchBudgetExceeded(f"{len(K.simplices)} simplices exceeds cap {simplex_cap}")
    lower, kind = combined_lower_bound(K)
    found: list[InvariantPiece] = []
    cover = None
    for core in candidate_cores(K):
        w = find_witness(K, core, max_witness_depth, state_budget)
        if w is None:
            continue
        found.append(InvariantPiece(core=core, witness=w))
        if lower <= max_pieces:
            cover = _min_cover(K, found, max_pieces, exact_size=lower)
            if cover is not None:
                break
    if cover is None:
        cover = _min_cover(K, found, max_pieces)
    if cover is None:
        raise SearchBudgetExceeded(f"no cover with at most {max_pieces} pieces found")
    verify_cover(K, cover)
    return BruteForceResult(lower=lower, lower_kind=kind, upper=len(cover), cover=cover)


# -- free quotients and lifting ------------------------------------------------


@dataclass(frozen=True)
class FreeQuotient:
    quotient: GComplex
    projection: tuple[int, ...]     # vertex of K -> vertex of the quotient


def free_quotient(K: GComplex) -> FreeQuotient:
    """Orbit complex of a free action, required to be simplicial with the same simplex orbits."""
    for i in K.vertex_ids:
        if len(K.stabilizer(i)) != 1:
            raise NotFree(f"vertex {K.simplices[i][0]} has a nontrivial stabilizer")
    orbits = K.group.vertex_orbits()
    proj = [0] * K.n_vertices
    for n, o in enumerate(orbits):
        for v in o:
            proj[v] = n
    images = set()
    for s in K.simplices:
        img = tuple(sorted({proj[v] for v in s}))
        if len(img) != len(s):
            raise LiftObstructed(f"simplex {list(s)} has two vertices in one orbit; "
                                 "subdivide before taking the quotient")
        images.add(img)
    if len(images) != len(K.simplex_orbits()):
        raise LiftObstructed("distinct simplex orbits share a quotient simplex; "
                             "subdivide before taking the quotient")
    labels = ["[" + K.label(o[0]) + "]" for o in orbits]
    Q = make_complex(len(orbits), images, None, labels)
    return FreeQuotient(quotient=Q, projection=tuple(proj))


def lift_cover_through_free_quotient(K: GComplex, qcover: CategoricalCover,
                                     fq: FreeQuotient | None = None) -> CategoricalCover:
    """Lift a verified cover of the orbit complex to an equivariant cover of K."""
    fq = free_quotient(K) if fq is None else fq
    Q, proj = fq.quotient, fq.projection
    verify_cover(Q, qcover)
    nbrs = {v: {v} for v in range(K.n_vertices)}
    for s in K.simplices:
        if len(s) == 2:
            nbrs[s[0]].add(s[1])
            nbrs[s[1]].add(s[0])
    pieces = []
    for n, piece in enumerate(qcover.pieces):
        qverts = core_vertices(Q, piece.core)
        qpos = {v: i for i, v in enumerate(qverts)}
        core = frozenset(i for i, s in enumerate(K.simplices)
                         if Q.index[tuple(sorted(proj[v] for v in s))] in piece.core)
        verts = core_vertices(K, core)
        cur = verts
        maps = [cur]
        for j, qm in enumerate(piece.witness.maps[1:], start=1):
            nxt = []
            for w, x in zip(verts, cur):
                want = qm[qpos[proj[w]]]
                cands = [u for u in nbrs[x] if proj[u] == want]
                if len(cands) != 1:
                    raise LiftObstructed(
                        f"piece {n}, step {j}: vertex {w} has {len(cands)} lifts of its image")
                nxt.append(cands[0])
            cur = tuple(nxt)
            maps.append(cur)
        qt = piece.witness.target
        target = min(v for v in range(K.n_vertices) if proj[v] == qt)
        pieces.append(InvariantPiece(core=core,
                                     witness=ContiguityWitness(target=target, maps=tuple(maps))))
    cover = CategoricalCover(tuple(pieces))
    verify_cover(K, cover)
    return cover


# -- composition -----------------------------------------------------------------


def compose_bounds(K: GComplex, A: Iterable[int], cover_A: CategoricalCover,
                   cover_rest: CategoricalCover) -> CategoricalCover:
    """Concatenate a cover of the closed invariant subcomplex A with one of its complement."""
    A = frozenset(A)
    if not A:
        verify_cover(K, cover_rest)
        return cover_rest
    if A == frozenset(range(len(K.simplices))):
        verify_cover(K, cover_A)
        return cover_A
    if not K.is_face_closed(A):
        raise NotSubcomplex("A is not face-closed")
    if not K.is_invariant(A):
        raise NotInvariant("A is not invariant")
    vs = set()
    for p in cover_A.pieces:
        vs |= K.vertices_of(p.core)
    for i in sorted(A):
        if vs.isdisjoint(K.simplices[i]):
            raise NotCovering(f"cover of A misses simplex {list(K.simplices[i])}",
                              simplex=K.simplices[i])
    cover = CategoricalCover(cover_A.pieces + cover_rest.pieces)
    verify_cover(K, cover)
    return cover
