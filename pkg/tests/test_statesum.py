import random

import pytest

from conftest import P
from mockalex import catalog
from mockalex.stars import StarredDiagram, adjacent_pair_starred, make_starred, tail_starred
from mockalex.statesum import corner_label, enumerate_states, labeling, potential, specialize_mock


def test_mock_corner_labels():
    assert corner_label(1, 1) == P("W")
    assert corner_label(-1, 0) == P("-W")
    assert corner_label(1, 0) == 1
    assert corner_label(1, 3) == P("-B")
    assert corner_label(-1, 2) == P("B")
    with pytest.raises(ValueError):
        corner_label(2, 0)


def test_planar_opposite_corners_multiply_to_units():
    lab = labeling("planar")
    assert lab.label(1, 0) * lab.label(1, 2) == 1
    assert lab.label(1, 1) * lab.label(1, 3) == -1
    assert lab.label(-1, 1) * lab.label(-1, 3) == 1
    assert lab.label(-1, 0) * lab.label(-1, 2) == -1


def test_planar_labels_specialize_to_mock():
    planar, mock = labeling("planar"), labeling("mock-specialized")
    for sign in (1, -1):
        for i in range(4):
            assert planar.label(sign, i).substitute({"D": 1}) == mock.label(sign, i)


def test_trefoil_states(trefoil):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    states = list(enumerate_states(sd))
    assert len(states) == 3
    assert potential(sd) == P("W^2 - W*B + B^2")
    assert specialize_mock(potential(sd)) == P("W^2 - 1 + W^-2")


def test_state_order_does_not_depend_on_the_rng(trefoil):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    assert potential(sd, rng=random.Random(5)) == potential(sd)


def test_labeled_knotoid_potentials(labeled_knotoid):
    assert potential(tail_starred(labeled_knotoid)) == P("W^2 - W*B + W - B + 1")


def test_simple_knotoid(simple_knotoid):
    assert potential(tail_starred(simple_knotoid)) == P("W^2 + W - B")


def test_kink(kink):
    assert potential(make_starred(kink, regions=["f0", "f2"]), "mock-specialized") == P("W - W^-1")
    assert potential(make_starred(kink, regions=["f0", "f1"]), "mock-specialized") == 1


def test_other_star_placements():
    sd = make_starred(catalog.kink(), regions=["f1", "f2"])
    assert potential(sd, "mock-specialized") == 1
    torus = StarredDiagram(catalog.torus_knot())
    assert potential(torus, "mock-specialized") == P("W^2 + 2*W - 2*W^-1 + W^-2")
