import networkx as nx
import pytest

from eqcat.complex import make_complex, regularize
from eqcat.errors import NoPrincipal, NotMonotone
from eqcat.groups import symmetric_group
from eqcat.strata import (HIERARCHY_KINDS, build_hierarchy, check_semicontinuity,
                          hierarchy_filtration, lower_bound, stratify)
from eqcat.weyl import discretize_circle

from conftest import polygon, rotation, square_reflection


def oracle_strata(K):
    """Naive stratification: graph on simplices, edges between same-type face pairs,
    components merged along group orbits."""
    types = [K.group.subgroup_class(K.setwise_stabilizers[i]).key for i in range(len(K.simplices))]
    g = nx.Graph()
    g.add_nodes_from(range(len(K.simplices)))
    sims = [frozenset(s) for s in K.simplices]
    for i, a in enumerate(sims):
        for j, b in enumerate(sims):
            if a < b and types[i] == types[j]:
                g.add_edge(i, j)
    comps = [frozenset(c) for c in nx.connected_components(g)]
    merged = nx.Graph()
    merged.add_nodes_from(range(len(comps)))
    where = {s: n for n, c in enumerate(comps) for s in c}
    for perm in K.simplex_perm.values():
        for n, c in enumerate(comps):
            merged.add_edge(n, where[perm[min(c)]])
    return sorted(frozenset().union(*(comps[n] for n in cc))
                  for cc in nx.connected_components(merged))


def test_trivial_group_connected_complex():
    K = make_complex(3, [(0, 1, 2)])
    r = stratify(K)
    assert len(r.strata) == 1 and r.strata[0].is_closed
    assert len(r.minimal) == 1


def test_square_reflection_strata():
    K = square_reflection()
    r = stratify(K)
    assert len(r.strata) == 3
    closed = [s for s in r.strata if s.is_closed]
    assert {K.simplices[min(s.simplices)] for s in closed} == {(0,), (2,)}
    free = [s for s in r.strata if not s.is_closed][0]
    assert len(free.simplices) == 6
    assert sorted(s.simplices for s in r.strata) == sorted(oracle_strata(K))


def test_free_rotation_single_stratum():
    K = polygon(6, [rotation(6, 2)])
    r = stratify(K)
    assert len(r.strata) == 1 and r.strata[0].is_closed
    assert lower_bound(r).value == 1


def test_triangle_s3_matches_oracle():
    K = regularize(make_complex(3, [(0, 1, 2)], symmetric_group(3)))
    r = stratify(K)
    assert sorted(s.simplices for s in r.strata) == sorted(oracle_strata(K))
    assert len(r.strata) == 4
    assert len(r.minimal) == 1
    assert r.strata[r.minimal[0]].type.order == 6


def test_lower_bound_reflection_circle():
    lb = lower_bound(stratify(square_reflection()))
    assert lb.value == 2 and lb.kind == "fixed-components"


def test_lower_bound_discretized_torus_n1():
    # the coordinate swap on the torus of SU(2) has two fixed points
    K = discretize_circle(16)
    lb = lower_bound(stratify(K))
    assert lb.value == 2


def test_incidence_order_is_acyclic():
    K = regularize(make_complex(3, [(0, 1, 2)], symmetric_group(3)))
    r = stratify(K)
    for a, b in r.order:
        assert (b, a) not in r.order


def test_orbit_size_hierarchy_reflection_circle():
    K = square_reflection()
    r = stratify(K)
    h = build_hierarchy(K, "orbit-size")
    fixed = r.strata[r.minimal[0]].type
    free = [s for s in r.strata if not s.is_closed][0].type
    assert h(fixed) == 1 and h(free) == 2
    filt = hierarchy_filtration(r, h)
    assert filt[0] == (1, frozenset(r.minimal))


def test_trivial_group_hierarchy_is_constant():
    K = polygon(5)
    r = stratify(K)
    for kind in HIERARCHY_KINDS:
        h = build_hierarchy(K, kind)
        assert len(set(h.values.values())) == 1
        assert len(hierarchy_filtration(r, h)) == 1


def test_chain_from_principal_reflection_circle():
    K = square_reflection()
    r = stratify(K)
    h = build_hierarchy(K, "chain-from-principal")
    fixed = r.strata[r.minimal[0]].type
    free = [s for s in r.strata if not s.is_closed][0].type
    assert h(fixed) == 0 and h(free) == 1


def test_custom_table_rejects_non_monotone():
    K = square_reflection()
    r = stratify(K)
    fixed = r.strata[r.minimal[0]].type
    free = [s for s in r.strata if not s.is_closed][0].type
    with pytest.raises(NotMonotone):
        build_hierarchy(K, "custom", {fixed: 2, free: 1})
    ok = build_hierarchy(K, "custom", {fixed: 0, free: 5})
    assert check_semicontinuity(K, ok)


def test_chain_hierarchies_semicontinuous_on_triangle():
    K = regularize(make_complex(3, [(0, 1, 2)], symmetric_group(3)))
    for kind in HIERARCHY_KINDS:
        assert check_semicontinuity(K, build_hierarchy(K, kind))


def test_single_orbit_of_points_is_one_stratum():
    # S3 on three points: all stabilizers are conjugate transposition subgroups
    G = symmetric_group(3)
    K = make_complex(3, [(0,), (1,), (2,)], G)
    r = stratify(K)
    assert len(r.strata) == 1
    h = build_hierarchy(K, "chain-from-principal")
    assert set(h.values.values()) == {0}


def test_no_principal_raised():
    from eqcat.groups import group_from_generators
    # Z2 x Z2 on four points: vertex stabilizers are two different order-2 subgroups
    G = group_from_generators(4, [(1, 0, 2, 3), (0, 1, 3, 2)])
    K = make_complex(4, [(0,), (1,), (2,), (3,)], G)
    with pytest.raises(NoPrincipal):
        build_hierarchy(K, "chain-from-principal")
