import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from mockalex import catalog
from mockalex.errors import MockAlexError
from mockalex.invariants import virtual_closure
from mockalex.matrix import crosscheck, permanent, potential_matrix, render_grid
from mockalex.moves import random_starred
from mockalex.stars import StarredDiagram, adjacent_pair_starred, tail_starred


def test_simple_knotoid_matrix(simple_knotoid):
    m = potential_matrix(tail_starred(simple_knotoid))
    assert m.rows == ("a", "b")
    assert m.column_names == ("f1", "f2")
    assert m.text_grid() == [["W", "1"], ["-B", "W + 1"]]
    assert m.pretty() == "   f1  f2\na  W   1\nb  -B  W + 1"


def test_specialized_matrix(simple_knotoid):
    m = potential_matrix(tail_starred(simple_knotoid), "mock-specialized")
    assert m.text_grid() == [["W", "1"], ["-W^-1", "W + 1"]]
    assert permanent(m) == P("W^2 + W - W^-1")


def test_trident_trefoil_matrix():
    m = potential_matrix(StarredDiagram(catalog.trident_trefoil()), "mock-specialized")
    assert m.rows == ("t1", "t2", "t3")
    assert m.column_names == ("f0", "f1", "f3")
    assert m.text_grid() == [
        ["1", "W + 1", "-W^-1"],
        ["1", "W + 1 - W^-1", "0"],
        ["1", "1 - W^-1", "W"],
    ]
    assert m.pretty() == (
        "    f0  f1            f3\n"
        "t1  1   W + 1         -W^-1\n"
        "t2  1   W + 1 - W^-1  0\n"
        "t3  1   1 - W^-1      W"
    )


def test_torus_closure_matrix(simple_knotoid):
    m = potential_matrix(StarredDiagram(virtual_closure(simple_knotoid).torus), "mock-specialized")
    assert m.rows == ("a", "b")
    assert m.pretty() == "   f0        f1\na  2 - W^-1  W\nb  W + 2     -W^-1"
    # rows and columns reversed
    assert m.permuted([1, 0], [1, 0]).text_grid() == [["-W^-1", "W + 2"], ["W", "2 - W^-1"]]
    assert permanent(m) == P("W^2 + 2*W - 2*W^-1 + W^-2")


def test_matrix_document(simple_knotoid):
    doc = potential_matrix(tail_starred(simple_knotoid)).to_doc()
    assert doc.variables == ["W", "B"]
    assert doc.columns == ["f1", "f2"]


def test_trefoil_permanent(trefoil):
    m = potential_matrix(adjacent_pair_starred(trefoil, "t1:1"))
    assert m.shape == (3, 3)
    assert permanent(m) == P("W^2 - W*B + B^2")
    assert permanent(m, "ryser") == permanent(m)


def test_permuting_keeps_the_permanent(trefoil):
    m = potential_matrix(adjacent_pair_starred(trefoil, "t1:1"))
    shuffled = m.permuted([2, 0, 1], [1, 2, 0])
    assert shuffled.rows == ("t3", "t1", "t2")
    assert permanent(shuffled) == permanent(m)


def test_empty_and_non_square():
    assert permanent(np.empty((0, 0), dtype=object)) == 1
    with pytest.raises(MockAlexError):
        permanent(np.array([[P("W"), P("1")]], dtype=object))


def test_render_grid():
    assert render_grid([["a", "bb"], ["ccc", "d"]]) == "a    bb\nccc  d"
    assert render_grid([]) == ""


@pytest.mark.parametrize("make", [catalog.trident_trefoil, catalog.handle_trefoil])
def test_merged_regions_crosscheck(make):
    sd = StarredDiagram(make())
    assert crosscheck(sd, "mock-specialized")
    assert crosscheck(sd, "mock-specialized", "ryser")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_state_sum_matches_both_permanents(seed):
    sd = random_starred(random.Random(seed), 5)
    assert crosscheck(sd)
    assert crosscheck(sd, engine="ryser")
