import pytest

from mockalex import catalog
from mockalex.diagram import Corner, switch_surgery
from mockalex.errors import StarError
from mockalex.stars import (
    StarredDiagram,
    adjacent_pair_starred,
    carry_stars,
    head_starred,
    is_balanced,
    load,
    make_starred,
    tail_starred,
)


def test_adjacent_pair(trefoil):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    assert sd.starred_regions == {Corner("t1", 0), Corner("t1", 1)}
    assert sd.region_names() == ["f0", "f1"]
    assert [r.name for r in sd.free_regions()] == ["f2", "f3", "f4"]
    assert sd.free_crossings() == ["t1", "t2", "t3"]


def test_unbalanced_stars_are_rejected(trefoil):
    with pytest.raises(StarError):
        make_starred(trefoil, regions=["f0"])
    with pytest.raises(StarError):
        make_starred(trefoil, regions=["f0", "t1:0"])


def test_regions_and_crossings_do_not_mix(trefoil):
    with pytest.raises(StarError):
        StarredDiagram(trefoil, frozenset({Corner("t1", 0)}), frozenset({"t1"}))


def test_crossing_stars_on_a_merged_diagram():
    d = catalog.trefoil().replace(merges=[[Corner("t1", 0), Corner("t1", 1), Corner("t1", 2), Corner("t1", 3)]])
    sd = make_starred(d, crossings=["t2"])
    assert is_balanced(sd)
    assert sd.star_count == 1


def test_tail_and_head(simple_knotoid):
    assert tail_starred(simple_knotoid).region_names() == ["f0"]
    assert head_starred(simple_knotoid).region_names() == ["f2"]
    with pytest.raises(StarError):
        tail_starred(catalog.trefoil())


def test_stars_follow_a_switch(trefoil):
    sd = adjacent_pair_starred(trefoil, "t1:1")
    switched = carry_stars(sd, switch_surgery(trefoil, "t1"))
    inner = switched.base.face_of(Corner("t2", 0)).key
    assert inner in switched.starred_regions
    assert len(switched.starred_regions) == 2


def test_load_honours_the_stars_block(fixtures_dir):
    sd = load(fixtures_dir / "simple_knotoid.json")
    assert isinstance(sd, StarredDiagram)
    assert sd.region_names() == ["f0"]
    plain = load(fixtures_dir / "trefoil.json")
    assert not isinstance(plain, StarredDiagram)


def test_document_keeps_stars(simple_knotoid):
    doc = tail_starred(simple_knotoid).to_document()
    assert doc.stars is not None
    assert doc.stars.regions == ["f0"]
    assert load(doc) == tail_starred(simple_knotoid)
