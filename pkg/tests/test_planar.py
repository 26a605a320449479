import pytest

from conftest import P
from mockalex import catalog
from mockalex.diagram import Corner
from mockalex.errors import DiagramError
from mockalex.invariants import mock_alexander
from mockalex.models import R3Site
from mockalex.moves import move_surgery
from mockalex.planar import (
    at_d_one,
    d_inverted,
    default_outer_face,
    k_bang_star,
    normalized_planar,
    planar_potential,
    planar_walk,
    resolve_outer,
    seifert_data,
)
from mockalex.stars import adjacent_pair_starred, carry_stars, tail_starred


def test_round_unknot_degree():
    sd = seifert_data(catalog.round_unknot(), "o:1")
    assert (sd.p, sd.n_neg, sd.deg) == (1, 0, 1)
    flipped = seifert_data(catalog.round_unknot(), "o:0")
    assert flipped.deg == -1


def test_kink_degree(kink):
    sd = seifert_data(kink, "t1:1")
    assert len(sd.circles) == 2
    assert (sd.p, sd.n_neg, sd.deg) == (1, 1, 0)


def test_knotoid_has_no_circles(simple_knotoid):
    assert seifert_data(simple_knotoid).circles == ()
    assert seifert_data(simple_knotoid).deg == 0


def test_planar_potential(simple_knotoid):
    sd = tail_starred(simple_knotoid)
    p = planar_potential(sd)
    assert p == P("W^2 + W*D - W^-1*D")
    assert normalized_planar(sd) == p
    assert at_d_one(p) == mock_alexander(sd)


def test_k_bang_star(simple_knotoid):
    sd = tail_starred(simple_knotoid)
    kb, outer = k_bang_star(sd)
    p = normalized_planar(kb, outer)
    assert p == P("W^2 + W*D^-1 - W^-1*D^-1")
    assert p == d_inverted(normalized_planar(sd))
    assert at_d_one(p) == mock_alexander(sd)


def test_outer_face_refs(trefoil):
    assert default_outer_face(trefoil).name == "f0"
    assert resolve_outer(trefoil, "f2").key == Corner("t1", 2)
    assert resolve_outer(trefoil, Corner("t2", 2)).name == "f2"
    with pytest.raises(DiagramError):
        resolve_outer(trefoil, "f9")


def test_non_planar_diagrams_are_rejected():
    with pytest.raises(DiagramError):
        seifert_data(catalog.torus_knot())
    with pytest.raises(DiagramError):
        seifert_data(catalog.two_trivial_knotoids())


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_walk_keeps_the_normalized_potential(trefoil, seed):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    before = normalized_planar(sd, "f2")
    walked, outer, trace = planar_walk(sd, "f2", 6, seed, max_crossings=7)
    assert len(trace) == 6
    assert normalized_planar(walked, outer) == before


def test_knotoid_walk_keeps_the_normalized_potential(simple_knotoid):
    sd = tail_starred(simple_knotoid)
    before = normalized_planar(sd, "f2")
    walked, outer, _ = planar_walk(sd, "f2", 6, 3, max_crossings=6)
    assert normalized_planar(walked, outer) == before


def test_rIII_keeps_the_normalized_potential():
    d = catalog.venn_link()
    sd = adjacent_pair_starred(d, "p:1")
    surgery = move_surgery(d, R3Site(crossings=("p", "q", "r")), sd)
    moved = carry_stars(sd, surgery)
    outer = surgery.carry(Corner("u", 0))
    assert outer == Corner("u", 0)
    assert normalized_planar(moved, outer) == normalized_planar(sd, "u:0")


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_walk_with_rIII_keeps_the_normalized_potential(seed):
    sd = adjacent_pair_starred(catalog.venn_link(), "p:1")
    before = normalized_planar(sd, "u:0")
    walked, outer, trace = planar_walk(sd, "u:0", 5, seed, max_crossings=6)
    # every face is a triangle and there is no room to grow, so the first move is an RIII
    assert trace[0].site is not None
    assert trace[0].site.kind == "R3"
    assert normalized_planar(walked, outer) == before
