import pytest
from pydantic import ValidationError

from mockalex import catalog
from mockalex.diagram import (
    Corner,
    Crossing,
    DiagramMap,
    Port,
    census,
    detect_separating,
    genus,
    is_planar,
    merge_regions,
    mirror_surgery,
    parse,
    reflect,
    reverse_map,
    smooth_crossing,
    switch_crossing,
    to_document,
)
from mockalex.errors import DiagramError


def test_trefoil_census(trefoil):
    report = census(trefoil)
    assert (report.n, report.f, report.e, report.k, report.m) == (3, 5, 6, 1, 0)
    assert report.genus == 0
    assert not report.admissible


def test_trefoil_faces(trefoil):
    names = {f.name: sorted(str(c) for c in f.corners) for f in trefoil.faces}
    assert names["f0"] == ["t1:0", "t2:0", "t3:0"]
    assert names["f1"] == ["t1:1", "t2:3"]
    assert names["f2"] == ["t1:2", "t2:2", "t3:2"]


def test_knotoid_census(simple_knotoid):
    report = census(simple_knotoid)
    assert (report.n, report.f, report.m) == (2, 3, 1)
    assert report.genus == 0


def test_torus_knot_is_admissible():
    report = census(catalog.torus_knot())
    assert report.genus == 1
    assert report.f == 2
    assert report.admissible


def test_trident_and_handle_genus():
    assert genus(catalog.trident_trefoil()) == 2
    assert genus(catalog.handle_trefoil()) == 2
    assert census(catalog.trident_trefoil()).f_effective == 3


def test_split_placement_costs_no_genus():
    d = catalog.two_trivial_knotoids()
    assert d.k == 2
    assert genus(d) == 0
    assert not is_planar(d)


def test_document_round_trip(trefoil):
    doc = to_document(trefoil)
    assert parse(doc) == trefoil
    assert parse(doc.to_json_text()) == trefoil


def test_unpaired_port_is_reported(fixtures_dir):
    with pytest.raises(DiagramError) as e:
        parse(fixtures_dir / "unpaired_port.json")
    assert e.value.location == "edges"


def test_bad_over_slot_fails_validation(fixtures_dir):
    with pytest.raises(ValidationError):
        parse(fixtures_dir / "bad_slot.json")


def test_edge_direction_is_checked():
    with pytest.raises(DiagramError) as e:
        DiagramMap(
            crossings=[Crossing("a", 3)],
            edges=[(("a", 0), ("a", 2)), (("a", 1), ("a", 3))],
        )
    assert e.value.location == "edges[0].from"


def test_duplicate_ids():
    with pytest.raises(DiagramError):
        DiagramMap(loops=["o", "o"])


def test_face_refs(trefoil):
    assert trefoil.resolve_face("t2:3").name == "f1"
    assert trefoil.resolve_face("f2").key == Corner("t1", 2)
    with pytest.raises(DiagramError):
        trefoil.resolve_face("t9:0")
    with pytest.raises(DiagramError):
        trefoil.resolve_face("f7")


def test_switch_and_mirror(trefoil):
    switched = switch_crossing(trefoil, "t1")
    assert switched.crossings["t1"].sign == -1
    assert switched.crossings["t2"].sign == 1
    mirrored = mirror_surgery(trefoil).after
    assert all(c.sign == -1 for c in mirrored.crossings.values())
    assert switch_crossing(switched, "t1") == trefoil


def test_reverse_and_reflect_keep_the_census(simple_knotoid):
    for d in (reverse_map(simple_knotoid), reflect(simple_knotoid)):
        assert census(d) == census(simple_knotoid)
    assert reverse_map(simple_knotoid).tails == ["h"]


def test_smoothing_a_kink_leaves_two_circles(kink):
    smoothed = smooth_crossing(kink, "t1")
    assert smoothed.n == 0
    assert len(smoothed.loops) == 2
    assert smoothed.k == 2
    assert len(smoothed.merges) == 1


def test_smoothing_the_trefoil(trefoil):
    smoothed = smooth_crossing(trefoil, "t1")
    assert smoothed.n == 2
    assert smoothed.k == 1
    assert genus(smoothed) == 0


def test_nugatory_crossing_of_a_connected_sum():
    d = catalog.trefoil_sum()
    assert d.n == 7
    assert genus(d) == 0
    sep = detect_separating(d, "j")
    assert sep.separating and sep.nugatory
    assert not detect_separating(d, "Lt1").separating


def test_merge_validation(trefoil):
    with pytest.raises(DiagramError):
        merge_regions(trefoil, [["f0", "t1:0"]])
    with pytest.raises(DiagramError):
        merge_regions(trefoil, [["f0", "f1"], ["f1", "f2"]])
    merged = merge_regions(trefoil, [["f0", "f1"]])
    assert len(merged.regions) == 4
    assert merged.region_at(Corner("t2", 3)).key == Corner("t1", 0)


def test_ports_and_edges(simple_knotoid):
    e = simple_knotoid.resolve_edge("a:2")
    assert e == (Port("a", 2), Port("b", 3))
    assert simple_knotoid.left_face(e).name == "f2"
    assert simple_knotoid.right_face(e).name == "f1"
