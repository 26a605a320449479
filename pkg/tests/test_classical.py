import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from mockalex import catalog
from mockalex.classical import (
    alexander_determinant,
    alexander_matrix,
    alexander_state_sum,
    bareiss_determinant,
    conway_crosscheck,
)
from mockalex.errors import DiagramError
from mockalex.moves import random_link


def test_rows_sum_to_zero(trefoil):
    m = alexander_matrix(trefoil)
    assert m.shape == (3, 5)
    for row in m.entries:
        assert sum(row, P("0")).is_zero


@pytest.mark.parametrize("edge", ["t1:1", "t1:2"])
def test_trefoil_alexander(trefoil, edge):
    expected = P("x^2 - x + 1")
    assert alexander_determinant(trefoil, edge) == expected
    assert alexander_state_sum(trefoil, edge) == expected


def test_kink_alexander(kink):
    assert alexander_determinant(kink, "t1:2") == 1
    assert alexander_state_sum(kink, "t1:2") == 1
    assert conway_crosscheck(kink, "t1:2")


def test_trefoil_crosscheck(trefoil):
    assert conway_crosscheck(trefoil, "t1:1")
    assert conway_crosscheck(trefoil, "t1:1", engine="permanent")


def test_bareiss():
    x = P("x")
    one = P("1")
    a = np.array([[x, one], [one, x]], dtype=object)
    assert bareiss_determinant(a) == P("x^2 - 1")
    swapped = np.array([[P("0"), one], [one, x]], dtype=object)
    assert bareiss_determinant(swapped) == P("-1")
    singular = np.array([[x, x], [x, x]], dtype=object)
    assert bareiss_determinant(singular).is_zero
    assert bareiss_determinant(np.empty((0, 0), dtype=object)) == 1


def test_links_only(simple_knotoid):
    with pytest.raises(DiagramError):
        alexander_matrix(simple_knotoid)
    with pytest.raises(DiagramError):
        alexander_matrix(catalog.torus_knot())
    with pytest.raises(DiagramError):
        alexander_determinant(catalog.round_unknot(), "o:0")


@pytest.mark.slow
@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_random_links_agree(seed):
    link = random_link(random.Random(seed), 5)
    if link.loops or link.n == 0:
        return
    edge = link.edges[0][0]
    if link.left_face(link.edges[0]) == link.right_face(link.edges[0]):
        return
    ref = f"{edge.vertex}:{edge.slot}"
    assert alexander_determinant(link, ref) == alexander_state_sum(link, ref)
    assert conway_crosscheck(link, ref)
