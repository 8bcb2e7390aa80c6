import json

import pytest

from eqcat import covers
from eqcat.complex import make_complex, subdivide
from eqcat.covers import (CategoricalCover, InvariantPiece, brute_force_cat, compose_bounds,
                          core_vertices, dumps_cover, free_quotient,
                          lift_cover_through_free_quotient, loads_cover, make_piece,
                          stabilizer_growth_check, verify_cover)
from eqcat.errors import (BadInitial, BadTerminal, InputError, LiftObstructed, NotContiguous,
                          NotCovering, NotEquivariant, NotFree, NotFull, NotInvariant,
                          NotSubcomplex)
from eqcat.fixtures import load_certificate, load_fixture
from eqcat.strata import lower_bound, stratify

from conftest import polygon, rotation, square_reflection


def replace_maps(piece, maps):
    w = covers.ContiguityWitness(target=piece.witness.target, maps=tuple(map(tuple, maps)))
    return InvariantPiece(core=piece.core, witness=w)


def with_piece(cover, n, piece):
    pieces = list(cover.pieces)
    pieces[n] = piece
    return CategoricalCover(tuple(pieces))


@pytest.fixture
def octagon():
    K = load_fixture("octagon-reflection").complex
    return K, load_certificate("octagon-reflection")


def test_point_single_piece():
    K = make_complex(1, [(0,)])
    cover = CategoricalCover((make_piece(K, [0], 0, [[0]]),))
    assert verify_cover(K, cover).value == 1


def test_square_reflection_certificate_verifies():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    assert verify_cover(K, cover).value == 2
    assert all(stabilizer_growth_check(K, p) for p in cover.pieces)


def test_octagon_certificate_verifies(octagon):
    K, cover = octagon
    assert verify_cover(K, cover).value == 2
    assert all(stabilizer_growth_check(K, p) for p in cover.pieces)


def test_non_equivariant_move_is_named(octagon):
    K, cover = octagon
    p = cover.pieces[0]
    verts = core_vertices(K, p.core)
    maps = [list(m) for m in p.witness.maps]
    maps[1][verts.index(6)] = 6
    bad = with_piece(cover, 0, replace_maps(p, maps))
    with pytest.raises(NotEquivariant) as e:
        verify_cover(K, bad)
    assert e.value.detail["j"] == 1 and "g" in e.value.detail and "w" in e.value.detail
    assert e.value.piece == 0


def test_deleted_step_is_not_contiguous(octagon):
    K, cover = octagon
    p = cover.pieces[0]
    maps = [p.witness.maps[0], p.witness.maps[2]]
    with pytest.raises(NotContiguous) as e:
        verify_cover(K, with_piece(cover, 0, replace_maps(p, maps)))
    assert e.value.detail["j"] == 0


def test_shrunk_core_is_not_invariant(octagon):
    K, cover = octagon
    p = cover.pieces[0]
    core = set(p.core) - {K.simplex_id((2,)), K.simplex_id((1, 2))}
    verts = core_vertices(K, core)
    old = core_vertices(K, p.core)
    maps = [[m[old.index(v)] for v in verts] for m in p.witness.maps]
    piece = make_piece(K, core, p.witness.target, maps)
    with pytest.raises(NotInvariant):
        verify_cover(K, with_piece(cover, 0, piece))


def test_core_missing_a_face(octagon):
    K, cover = octagon
    p = cover.pieces[0]
    piece = InvariantPiece(core=p.core - {K.simplex_id((0,))}, witness=p.witness)
    with pytest.raises(NotSubcomplex):
        verify_cover(K, with_piece(cover, 0, piece))


def test_core_must_be_full():
    K = polygon(4)
    core = [K.simplex_id((0,)), K.simplex_id((1,)), K.simplex_id((2,)),
            K.simplex_id((0, 1))]
    piece = make_piece(K, core, 0, [[0, 1, 2]])
    with pytest.raises(NotFull):
        verify_cover(K, CategoricalCover((piece,)))


def test_initial_map_must_be_inclusion():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    p = cover.pieces[0]
    bad = replace_maps(p, p.witness.maps[1:])
    with pytest.raises(BadInitial):
        verify_cover(K, with_piece(cover, 0, bad))


def test_terminal_must_collapse():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    p = cover.pieces[0]
    bad = replace_maps(p, p.witness.maps[:1])
    with pytest.raises(BadTerminal):
        verify_cover(K, with_piece(cover, 0, bad))


def test_missing_piece_is_not_covering():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    with pytest.raises(NotCovering) as e:
        verify_cover(K, CategoricalCover(cover.pieces[1:]))
    assert "simplex" in e.value.detail


def test_map_shape_is_input_error():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    p = cover.pieces[0]
    with pytest.raises(InputError):
        verify_cover(K, with_piece(cover, 0, replace_maps(p, [p.witness.maps[0], (0, 0)])))


def test_json_round_trip():
    K = load_fixture("octagon-reflection").complex
    cover = load_certificate("octagon-reflection")
    text = dumps_cover(K, cover)
    assert loads_cover(K, text) == cover
    assert dumps_cover(K, loads_cover(K, text)) == text


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("pieces"), "pieces"),
    (lambda d: d.update(vertex_count=99), "vertex_count"),
    (lambda d: d["pieces"][0].update(core="x"), "pieces[0].core"),
])
def test_malformed_certificates(mutate, path):
    K = square_reflection()
    data = json.loads(dumps_cover(K, load_certificate("square-reflection")))
    mutate(data)
    with pytest.raises(InputError) as e:
        loads_cover(K, json.dumps(data))
    assert path in str(e.value)


def test_truncated_certificate():
    K = square_reflection()
    text = dumps_cover(K, load_certificate("square-reflection"))
    with pytest.raises(InputError):
        loads_cover(K, text[: len(text) // 2])


# -- search ---------------------------------------------------------------------


@pytest.mark.parametrize("name,lower,upper", [
    ("point", 1, 1),
    ("hexagon-trivial", 2, 2),
    ("hexagon-antipodal", 1, 2),
    ("hexagon-rot3", 1, 2),
    ("square-reflection", 2, 2),
    ("triangle-s3", 1, 1),
    ("octagon-reflection", 2, 2),
])
def test_brute_force_on_fixtures(name, lower, upper):
    K = load_fixture(name).complex
    res = brute_force_cat(K)
    assert (res.lower, res.upper) == (lower, upper)
    verify_cover(K, res.cover)
    assert lower_bound(stratify(K)).value <= res.upper


def test_hexagon_trivial_lower_bound_comes_from_homology():
    res = brute_force_cat(load_fixture("hexagon-trivial").complex)
    assert res.exact and res.value == 2 and res.lower_kind == "homology"


def test_inexact_result_reports_pair():
    res = brute_force_cat(load_fixture("hexagon-rot3").complex)
    assert not res.exact and res.value == (1, 2)


def test_simplex_cap():
    from eqcat.errors import SearchBudgetExceeded
    with pytest.raises(SearchBudgetExceeded):
        brute_force_cat(polygon(60))


# -- composition ----------------------------------------------------------------


def test_compose_three_pieces():
    K = square_reflection()
    fixed = frozenset(K.simplex_id((v,)) for v in (0, 2))
    a = CategoricalCover((make_piece(K, [K.simplex_id((0,))], 0, [[0]]),
                          make_piece(K, [K.simplex_id((2,))], 2, [[2]])))
    res = brute_force_cat(K)
    big = [p for p in res.cover.pieces if len(core_vertices(K, p.core)) > 1][0]
    cover = compose_bounds(K, fixed, a, CategoricalCover((big,)))
    assert len(cover) == 3


def test_compose_trivial_cases():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    assert compose_bounds(K, (), CategoricalCover(()), cover) is cover
    assert compose_bounds(K, range(len(K.simplices)), cover, CategoricalCover(())) is cover


def test_compose_rejects_non_invariant_a():
    K = square_reflection()
    cover = load_certificate("square-reflection")
    with pytest.raises(NotInvariant):
        compose_bounds(K, [K.simplex_id((1,))], cover, cover)


# -- free quotients --------------------------------------------------------------


def assert_projects(K, fq, qcover, lifted):
    Q, proj = fq.quotient, fq.projection
    for qp, lp in zip(qcover.pieces, lifted.pieces):
        qv = core_vertices(Q, qp.core)
        lv = core_vertices(K, lp.core)
        for qm, lm in zip(qp.witness.maps, lp.witness.maps):
            for w, x in zip(lv, lm):
                assert proj[x] == qm[qv.index(proj[w])]


def test_trivial_group_lift_is_identity():
    K = polygon(6)
    fq = free_quotient(K)
    qcover = brute_force_cat(fq.quotient).cover
    lifted = lift_cover_through_free_quotient(K, qcover, fq)
    assert lifted == qcover


def test_rot3_lifts_after_subdivision():
    K = polygon(6, [rotation(6, 2)])
    with pytest.raises(LiftObstructed):
        free_quotient(K)
    S = subdivide(K)
    fq = free_quotient(S)
    assert fq.quotient.n_vertices == 4
    qcover = brute_force_cat(fq.quotient).cover
    lifted = lift_cover_through_free_quotient(S, qcover, fq)
    assert verify_cover(S, lifted).value == 2
    assert_projects(S, fq, qcover, lifted)


def test_antipodal_lift_on_octagon():
    K = polygon(8, [rotation(8, 4)])
    fq = free_quotient(K)
    qcover = brute_force_cat(fq.quotient).cover
    lifted = lift_cover_through_free_quotient(K, qcover, fq)
    assert verify_cover(K, lifted).value == 2
    assert_projects(K, fq, qcover, lifted)


def test_square_antipodal_quotient_is_obstructed():
    with pytest.raises(LiftObstructed):
        free_quotient(polygon(4, [rotation(4, 2)]))


def test_non_free_action_rejected():
    with pytest.raises(NotFree):
        free_quotient(square_reflection())
