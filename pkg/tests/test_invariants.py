import pytest

from conftest import P
from mockalex import catalog
from mockalex.errors import MockAlexError, StarError
from mockalex.invariants import (
    conjecture1_holds,
    conjecture2_holds,
    conjecture_harness,
    family,
    handle_polynomial,
    mirror,
    mirrored_form,
    mock_alexander,
    nabla_sharp,
    recursion_holds,
    reverse,
    reversed_form,
    skein_triple,
    spiral_closed_form,
    spiral_sequence,
    split_link_vanishes,
    trident_polynomial,
    twist_closed_form,
    verify_skein,
    virtual_closure,
)
from mockalex.poly import conway_z, decompose_symmetric
from mockalex.stars import StarredDiagram, adjacent_pair_starred, make_starred, tail_starred


@pytest.mark.parametrize("engine", ["states", "permanent", "ryser"])
def test_engines_agree(trefoil, engine):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    assert mock_alexander(sd, engine) == P("W^2 - 1 + W^-2")


def test_nabla_sharp(simple_knotoid, labeled_knotoid):
    assert nabla_sharp(simple_knotoid) == P("W^2 + W - W^-1")
    assert nabla_sharp(catalog.trivial_knotoid()) == 1
    assert nabla_sharp(labeled_knotoid) == P("W^2 + W - W^-1")


@pytest.mark.parametrize("n", range(1, 11))
def test_twist_family(n):
    assert mock_alexander(family("twist", n), "permanent") == twist_closed_form(n)


@pytest.mark.parametrize("n", range(2, 11))
def test_spiral_family(n):
    assert mock_alexander(family("spiral", n), "permanent") == spiral_closed_form(n)


def test_families_satisfy_the_conway_recursion():
    twists = [mock_alexander(family("twist", n), "permanent") for n in range(1, 11)]
    spirals = [mock_alexander(family("spiral", n), "permanent") for n in range(2, 11)]
    assert recursion_holds(twists)
    assert recursion_holds(spirals)


def test_spiral_closed_forms():
    z = conway_z()
    assert spiral_closed_form(1) == z
    assert spiral_closed_form(2) == 1 + z * z
    assert spiral_closed_form(3) == 2 * z + z * z * z
    assert recursion_holds(spiral_sequence(8))
    assert not recursion_holds([P("0"), P("1"), P("1")])


def test_family_rejects_small_n():
    with pytest.raises(MockAlexError):
        family("twist", 0)
    with pytest.raises(MockAlexError):
        family("spiral", 1)


def test_virtual_closure(simple_knotoid):
    closure = virtual_closure(simple_knotoid)
    assert closure.nabla_v == P("W^2 + 2*W - 2*W^-1 + W^-2")
    assert closure.nabla_ext == P("W^2 + W - W^-1")
    assert closure.nabla_int == P("W + W^-2 - W^-1")
    assert closure.torus.merges
    assert decompose_symmetric(closure.nabla_v) is not None


def test_closure_needs_separate_endpoint_faces():
    with pytest.raises(StarError):
        virtual_closure(catalog.trivial_knotoid())


def test_trident_and_handle(trefoil):
    assert trident_polynomial(trefoil, ["t1:2", "t1:1", "t2:1"]) == P(
        "2*W^2 + 2*W - 2 - 2*W^-1 + 2*W^-2"
    )
    assert handle_polynomial(trefoil, [("t1:0", "t1:1"), ("t1:2", "t2:1")]) == P(
        "W^3 + 2*W^2 + 2*W - 2 - 2*W^-1 + 2*W^-2 - W^-3"
    )
    assert mock_alexander(StarredDiagram(catalog.trident_trefoil())) == trident_polynomial(
        trefoil, ["t1:2", "t1:1", "t2:1"]
    )


def test_trident_arity(trefoil):
    with pytest.raises(MockAlexError):
        trident_polynomial(trefoil, ["t1:2", "t1:1"])
    with pytest.raises(MockAlexError):
        handle_polynomial(trefoil, [("t1:0", "t1:1")])
    with pytest.raises(MockAlexError):
        trident_polynomial(catalog.simple_knotoid(), ["f0", "f1", "f2"])


def test_skein_on_a_split_linkoid():
    plus = StarredDiagram(catalog.skeinhold(1))
    minus = StarredDiagram(catalog.skeinhold(-1))
    assert mock_alexander(plus) == P("2 + W - W^-1")
    assert mock_alexander(minus) == P("2 - W + W^-1")
    report = verify_skein(skein_triple(plus, "v"))
    assert report.identity == "skein"
    assert report.case == "split linkoid"
    assert report.nabla_zero_connected == "2"
    assert report.verdict is True


def test_skein_on_a_nugatory_kink(kink):
    sd = make_starred(kink, regions=["f0", "f2"])
    report = verify_skein(skein_triple(sd, "t1"))
    assert report.case == "nugatory split stars"
    assert report.nabla_plus == "W - W^-1"
    assert report.nabla_zero_connected == "2"
    assert report.verdict is True


def test_skein_with_in_out_stars(kink):
    sd = make_starred(kink, regions=["f0", "f1"])
    report = verify_skein(skein_triple(sd, "t1"))
    assert report.identity == "equality"
    assert report.verdict is True


@pytest.mark.parametrize("crossing", ["t1", "t2", "t3"])
def test_skein_on_the_trefoil(trefoil, crossing):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    report = verify_skein(skein_triple(sd, crossing))
    assert report.verdict is not False
    if crossing == "t1":
        assert report.case == "ii"
        assert report.verdict is True


@pytest.mark.parametrize(
    ("regions", "case"),
    [(["t1:0", "t1:2"], "iii"), (["t1:1", "t2:1"], "one incident star")],
)
def test_skein_case_names(trefoil, regions, case):
    sd = make_starred(trefoil, regions=regions)
    triple = skein_triple(sd, "t1")
    assert triple.identity == "skein"
    assert triple.case == case
    if case == "iii":
        assert verify_skein(triple).verdict is True


def test_skein_site_cannot_be_starred():
    d = catalog.trefoil().replace(merges=[[("t1", 0), ("t1", 1), ("t1", 2), ("t1", 3)]])
    sd = make_starred(d, crossings=["t2"])
    with pytest.raises(StarError):
        skein_triple(sd, "t2")


@pytest.mark.parametrize("make", [catalog.simple_knotoid, catalog.labeled_knotoid])
def test_reverse_and_mirror(make):
    sd = tail_starred(make())
    p = mock_alexander(sd)
    assert mock_alexander(reverse(sd)) == reversed_form(p)
    assert mock_alexander(mirror(sd)) == mirrored_form(p)


def test_symmetric_forms():
    assert reversed_form(P("W^2 + W")) == P("W^-2 - W^-1")
    assert mirrored_form(P("W^2 + W")) == P("W^-2 + W^-1")


def test_split_link_vanishes():
    link = catalog.split_union(catalog.trefoil(), catalog.trefoil(), "t1:2", "t1:2")
    assert link.k == 2
    assert split_link_vanishes(link, "Lt1:1")
    with pytest.raises(MockAlexError):
        split_link_vanishes(catalog.trefoil(), "t1:1")


def test_conjectures_on_named_knotoids(simple_knotoid, labeled_knotoid):
    for k in (simple_knotoid, labeled_knotoid):
        assert conjecture1_holds(k)[0]
        assert conjecture2_holds(k)[0]
    ok, lhs, rhs = conjecture1_holds(labeled_knotoid)
    assert lhs == "W^2 - W*B + W - B + 1"


@pytest.mark.slow
def test_conjecture_harness():
    report = conjecture_harness(count=12, seed=4, size_bound=4)
    assert report.count == 12
    assert report.conjecture1_passed + report.conjecture1_failed == 12
    assert report.conjecture2_passed + report.conjecture2_failed == 12
    assert len(report.counterexamples) == report.conjecture1_failed + report.conjecture2_failed
