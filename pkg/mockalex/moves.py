"""Reidemeister moves on combinatorial maps.

Every move is built as a :class:`~mockalex.diagram.Surgery` so that merges
and star decorations follow the faces they were attached to. A move may sit
beside starred or glued faces; only the face a kink or finger is drawn into,
and the kink, bigon or triangle a move collapses or flips, must be free of
stars. Illegal sites raise :class:`MoveError` and never produce a value.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from typing import NamedTuple, TypeVar, overload

from structlog.stdlib import BoundLogger
from typing_extensions import assert_never

from mockalex.catalog import round_unknot, trivial_knotoid, twist_universe
from mockalex.diagram import (
    Corner,
    Crossing,
    DiagramMap,
    Edge,
    Face,
    Port,
    Surgery,
    genus,
    switch_surgery,
)
from mockalex.errors import DiagramError, InternalConsistencyError, MoveError, StarError
from mockalex.log_config import get_logger
from mockalex.models import (
    ConnectR2Site,
    ExtendSite,
    MoveSite,
    PortDoc,
    R1AddSite,
    R1RemoveSite,
    R2AddSite,
    R2RemoveSite,
    R3Site,
    Side,
    SwitchSite,
    TraceStep,
)
from mockalex.stars import StarredDiagram, carry_stars, make_starred


Target = TypeVar("Target", DiagramMap, StarredDiagram)

# compass directions in counterclockwise order
_COMPASS = {"E": 0, "N": 1, "W": 2, "S": 3}


class Segment(NamedTuple):
    """A strand piece between crossings: an edge, or a whole free circle."""
    edge: Edge | None
    loop: str | None

    def side_face(self, d: DiagramMap, side: Side) -> Face:
        if self.edge is not None:
            return d.side_face(self.edge, side)
        assert self.loop is not None
        return d.face_of(Corner(self.loop, 0 if side == "left" else 1))

    def ref(self) -> PortDoc:
        if self.edge is not None:
            return (self.edge[0].vertex, self.edge[0].slot)
        assert self.loop is not None
        return (self.loop, 0)

    def splice(self, first_in: Port, last_out: Port) -> list[Edge]:
        """Route this segment through new ports, entering at ``first_in``."""
        if self.edge is not None:
            a, b = self.edge
            return [(a, first_in), (last_out, b)]
        return [(last_out, first_in)]


def segment(d: DiagramMap, ref: PortDoc) -> Segment:
    vertex, slot = ref
    if vertex in d.loops:
        return Segment(None, vertex)
    try:
        return Segment(d.resolve_edge((vertex, slot)), None)
    except DiagramError as e:
        raise MoveError(str(e)) from None


def segments(d: DiagramMap) -> list[Segment]:
    return [Segment(e, None) for e in d.edges] + [Segment(None, o) for o in d.loops]


def _crossing_from_compass(
    cid: str, under: tuple[str, str], over: tuple[str, str]
) -> tuple[Crossing, dict[str, Port]]:
    """Crossing whose strands enter/leave from the given directions.

    Returns the crossing and the port at each compass direction.
    """
    base = _COMPASS[under[0]]

    def slot(direction: str) -> int:
        return (_COMPASS[direction] - base) % 4

    crossing = Crossing(cid, slot(over[0]))
    return crossing, {d: Port(cid, slot(d)) for d in _COMPASS}


def _rebuild(
    d: DiagramMap,
    *,
    drop_crossings: Iterable[str] = (),
    add_crossings: Iterable[Crossing] = (),
    drop_edges: Iterable[Edge] = (),
    add_edges: Iterable[Edge] = (),
    drop_loops: Iterable[str] = (),
) -> DiagramMap:
    drop_c = set(drop_crossings)
    drop_e = set(drop_edges)
    drop_o = set(drop_loops)
    try:
        return DiagramMap(
            crossings=[c for c in d.crossings.values() if c.id not in drop_c] + list(add_crossings),
            endpoints=d.endpoints.values(),
            edges=[e for e in d.edges if e not in drop_e] + list(add_edges),
            loops=[o for o in d.loops if o not in drop_o],
        )
    except DiagramError as e:
        raise MoveError(f"move produces an invalid map: {e}") from None


def _finish(
    d: DiagramMap,
    bare: DiagramMap,
    corner_map: Callable[[Corner], Corner | None],
    drop_merge: frozenset[Corner] | None = None,
) -> Surgery:
    before = d if drop_merge is None else d.replace(merges=[g for g in d.merges if g != drop_merge])
    try:
        after = bare.replace(merges=Surgery(before, bare, corner_map).carry_merges())
    except DiagramError as e:
        raise MoveError(str(e)) from None
    return Surgery(d, after, corner_map)


def _dropping(vertices: Iterable[str]) -> Callable[[Corner], Corner | None]:
    gone = set(vertices)

    def corner_map(k: Corner) -> Corner | None:
        return None if k.vertex in gone else k

    return corner_map


def _replacing(loops: dict[str, Edge]) -> Callable[[Corner], Corner | None]:
    """Identity, except that the corners of a consumed free circle land on the sides of its new edge."""

    def corner_map(k: Corner) -> Corner | None:
        edge = loops.get(k.vertex)
        if edge is None:
            return k
        a = edge[0]
        return Corner(a.vertex, a.slot) if k.index == 0 else Corner(a.vertex, (a.slot - 1) % 4)

    return corner_map


# star guards


def _guard_faces(sd: StarredDiagram | None, faces: Iterable[Face], what: str) -> None:
    if sd is None:
        return
    for face in faces:
        if sd.base.region_of(face).key in sd.starred_regions:
            raise MoveError(f"{what} {face.name} is starred")


def _guard_crossings(sd: StarredDiagram | None, crossings: Iterable[str]) -> None:
    if sd is None:
        return
    for c in crossings:
        if c in sd.starred_crossings:
            raise MoveError(f"crossing {c} is starred")


def _unmerged(d: DiagramMap, face: Face, what: str) -> None:
    if any(face.key in group for group in d.merges):
        raise MoveError(f"{what} {face.name} is merged")


# RI


def r1_add(d: DiagramMap, site: R1AddSite, sd: StarredDiagram | None = None) -> Surgery:
    seg = segment(d, site.edge)
    _guard_faces(sd, [seg.side_face(d, site.side)], "face")
    # first pass under: positive loops to the left; first pass over: to the right
    loop_left = site.side == "left"
    positive = loop_left if site.first == "under" else not loop_left
    v = d.fresh_id("x")
    crossing = Crossing(v, 3 if positive else 1)
    under_in, under_out = Port(v, 0), Port(v, 2)
    over_in, over_out = Port(v, crossing.over_in_slot), Port(v, crossing.over_out_slot)
    if site.first == "under":
        edges = seg.splice(under_in, over_out) + [(under_out, over_in)]
    else:
        edges = seg.splice(over_in, under_out) + [(over_out, under_in)]
    bare = _rebuild(
        d,
        add_crossings=[crossing],
        drop_edges=[seg.edge] if seg.edge else [],
        add_edges=edges,
        drop_loops=[seg.loop] if seg.loop else [],
    )
    return _finish(d, bare, _replacing({seg.loop: edges[0]} if seg.loop else {}))


def _kink_corner(d: DiagramMap, v: str) -> int | None:
    for i in range(4):
        corner = Corner(v, i)
        if d.face_of(corner).corners == (corner,):
            return i
    return None


def r1_remove(d: DiagramMap, site: R1RemoveSite, sd: StarredDiagram | None = None) -> Surgery:
    try:
        c = d.resolve_crossing(site.crossing)
    except DiagramError as e:
        raise MoveError(str(e)) from None
    i = _kink_corner(d, c.id)
    if i is None:
        raise MoveError(f"crossing {c.id} has no kink")
    _guard_crossings(sd, [c.id])
    loop_face = d.face_of(Corner(c.id, i))
    _guard_faces(sd, [loop_face], "kink face")
    _unmerged(d, loop_face, "kink face")
    through = [(i + 2) % 4, (i + 3) % 4]
    p_in = next(s for s in through if c.is_incoming(s))
    p_out = next(s for s in through if not c.is_incoming(s))
    a = d.pair(Port(c.id, p_in))
    b = d.pair(Port(c.id, p_out))
    if a.vertex == c.id or b.vertex == c.id:
        raise MoveError(f"removing the kink at {c.id} leaves a free circle")
    bare = _rebuild(
        d,
        drop_crossings=[c.id],
        drop_edges=[e for e in d.edges if c.id in (e[0].vertex, e[1].vertex)],
        add_edges=[(a, b)],
    )
    return _finish(d, bare, _dropping([c.id]))


# RII


def _r2_build(
    d: DiagramMap, upper: Segment, upper_side: Side, lower: Segment, lower_side: Side, over: bool
) -> tuple[DiagramMap, dict[str, Edge]]:
    """The rebuilt map, and the new edge standing in for each consumed free circle."""
    if upper == lower:
        raise MoveError("RII needs two distinct strand segments")
    # the shared face lies below the upper segment and above the lower one
    upper_ltr = upper_side == "right"
    lower_ltr = lower_side == "left"
    x = d.fresh_id("x")
    y = d.fresh_id("x", [x])
    upper_dirs = {x: ("N", "S"), y: ("S", "N")} if upper_ltr else {y: ("N", "S"), x: ("S", "N")}
    lower_dirs = {v: ("W", "E") if lower_ltr else ("E", "W") for v in (x, y)}
    crossings = []
    ports: dict[str, dict[str, Port]] = {}
    for v in (x, y):
        under, top = (lower_dirs[v], upper_dirs[v]) if over else (upper_dirs[v], lower_dirs[v])
        crossing, ports[v] = _crossing_from_compass(v, under, top)
        crossings.append(crossing)

    def route(seg: Segment, dirs: dict[str, tuple[str, str]], ltr: bool) -> list[Edge]:
        first, second = (x, y) if ltr else (y, x)
        middle = (ports[first][dirs[first][1]], ports[second][dirs[second][0]])
        return seg.splice(ports[first][dirs[first][0]], ports[second][dirs[second][1]]) + [middle]

    upper_edges = route(upper, upper_dirs, upper_ltr)
    lower_edges = route(lower, lower_dirs, lower_ltr)
    bare = _rebuild(
        d,
        add_crossings=crossings,
        drop_edges=[s.edge for s in (upper, lower) if s.edge],
        add_edges=upper_edges + lower_edges,
        drop_loops=[s.loop for s in (upper, lower) if s.loop],
    )
    replaced = {s.loop: es[0] for s, es in ((upper, upper_edges), (lower, lower_edges)) if s.loop}
    return bare, replaced


def r2_add(d: DiagramMap, site: R2AddSite, sd: StarredDiagram | None = None) -> Surgery:
    upper = segment(d, site.upper)
    lower = segment(d, site.lower)
    face = upper.side_face(d, site.upper_side)
    if lower.side_face(d, site.lower_side) != face:
        raise MoveError("the two segments do not share the chosen face")
    _guard_faces(sd, [face], "face")
    _unmerged(d, face, "face")
    bare, replaced = _r2_build(d, upper, site.upper_side, lower, site.lower_side, site.over)
    return _finish(d, bare, _replacing(replaced))


def connect_r2_surgery(d: DiagramMap, site: ConnectR2Site) -> Surgery:
    """RII between two components glued along a merged pair of faces."""
    upper = segment(d, site.upper)
    lower = segment(d, site.lower)
    f1 = upper.side_face(d, site.upper_side)
    f2 = lower.side_face(d, site.lower_side)
    group = frozenset({f1.key, f2.key})
    if group not in d.merges:
        raise MoveError("the chosen faces are not glued to each other alone")
    v1 = (upper.edge[0].vertex if upper.edge else upper.loop) or ""
    v2 = (lower.edge[0].vertex if lower.edge else lower.loop) or ""
    if d.component_index(v1) == d.component_index(v2):
        raise MoveError("connecting RII needs segments on different components")
    bare, replaced = _r2_build(d, upper, site.upper_side, lower, site.lower_side, site.over)
    return _finish(d, bare, _replacing(replaced), drop_merge=group)


def _bigon(d: DiagramMap, x: str, y: str) -> tuple[int, int]:
    for face in d.faces:
        if len(face.corners) != 2:
            continue
        (p, i), (q, j) = face.corners
        if {p, q} == {x, y} and p != q:
            if p == y:
                i, j = j, i
            return i, j
    raise MoveError(f"no bigon between {x} and {y}")


def r2_remove(d: DiagramMap, site: R2RemoveSite, sd: StarredDiagram | None = None) -> Surgery:
    x, y = site.crossings
    if x == y or x not in d.crossings or y not in d.crossings:
        raise MoveError(f"RII removal needs two distinct crossings, got {x}, {y}")
    i, j = _bigon(d, x, y)
    # sides of the bigon: (x, i+1)-(y, j) and (y, j+1)-(x, i)
    if (i + 1) % 2 != j % 2:
        raise MoveError(f"bigon between {x} and {y} is not an RII bigon")
    _guard_crossings(sd, [x, y])
    bigon = d.face_of(Corner(x, i))
    _guard_faces(sd, [bigon], "bigon")
    _unmerged(d, bigon, "bigon")

    new_edges = []
    for (p, s), (q, t) in (((x, (i + 1) % 4), (y, j)), ((y, (j + 1) % 4), (x, i))):
        outer_p = d.pair(Port(p, (s + 2) % 4))
        outer_q = d.pair(Port(q, (t + 2) % 4))
        if outer_p.vertex in (x, y) or outer_q.vertex in (x, y):
            raise MoveError(f"RII removal at {x}, {y} leaves a free circle")
        if d.is_outgoing(Port(p, s)):
            new_edges.append((outer_p, outer_q))
        else:
            new_edges.append((outer_q, outer_p))
    bare = _rebuild(
        d,
        drop_crossings=[x, y],
        drop_edges=[e for e in d.edges if {e[0].vertex, e[1].vertex} & {x, y}],
        add_edges=new_edges,
    )
    surgery = _finish(d, bare, _dropping([x, y]))
    # the two faces beside the bigon become one; that must not close a glued handle
    if surgery.after.k != d.k or genus(surgery.after) != genus(d):
        raise MoveError(f"RII removal at {x}, {y} disconnects the diagram")
    return surgery


# RIII


def _triangle(d: DiagramMap, ids: Sequence[str]) -> Face:
    for face in d.faces:
        if len(face.corners) == 3 and sorted(k.vertex for k in face.corners) == sorted(ids):
            return face
    raise MoveError(f"no triangle face on {', '.join(ids)}")


def r3(d: DiagramMap, site: R3Site, sd: StarredDiagram | None = None) -> Surgery:
    ids = list(site.crossings)
    if len(set(ids)) != 3:
        raise MoveError("RIII needs three distinct crossings")
    tri = _triangle(d, ids)
    corners = list(tri.corners)
    sides = []
    over_both = False
    for k, (p, i) in enumerate(corners):
        q, j = corners[(k + 1) % 3]
        sp, sq = (i + 1) % 4, j
        if sp % 2 == 1 and sq % 2 == 1:
            over_both = True
        if d.is_outgoing(Port(p, sp)):
            sides.append((Port(p, sp), Port(q, sq)))
        else:
            sides.append((Port(q, sq), Port(p, sp)))
    if not over_both:
        raise MoveError("no strand passes over both other strands")

    vertices = set(ids)
    _guard_crossings(sd, ids)
    _guard_faces(sd, [tri], "triangle")
    _unmerged(d, tri, "triangle")
    touching = {d.face_of(Corner(v, i)) for v in ids for i in range(4)}
    for face in touching:
        if face != tri and all(k.vertex in vertices for k in face.corners):
            raise MoveError(f"face {face.name} lies entirely on the triangle")

    drop, add = [], []
    for p_out, q_in in sides:
        p_in = Port(p_out.vertex, (p_out.slot + 2) % 4)
        q_out = Port(q_in.vertex, (q_in.slot + 2) % 4)
        u, w = d.pair(p_in), d.pair(q_out)
        if u.vertex in vertices or w.vertex in vertices:
            raise MoveError("RIII site strands run directly between triangle crossings")
        drop += [(u, p_in), (p_out, q_in), (q_out, w)]
        add += [(u, q_in), (q_out, p_in), (p_out, w)]
    bare = _rebuild(d, drop_edges=drop, add_edges=add)

    tri_corners = set(corners)

    def corner_map(k: Corner) -> Corner | None:
        if k in tri_corners:
            return Corner(k.vertex, (k.index + 2) % 4)
        return None if k.vertex in vertices else k

    surgery = _finish(d, bare, corner_map)
    if genus(surgery.after) != genus(d) or surgery.after.k != d.k:
        raise InternalConsistencyError(f"RIII at {ids} changed the surface")
    return surgery


# endpoint extension (changes the knotoid)


def extend(d: DiagramMap, site: ExtendSite) -> Surgery:
    if site.endpoint not in d.endpoints:
        raise MoveError(f"unknown endpoint {site.endpoint!r}")
    kind = d.endpoints[site.endpoint].kind
    port = Port(site.endpoint, 0)
    own = d.edge_from(port) if kind == "tail" else d.edge_to(port)
    target = segment(d, site.edge)
    if target.edge == own:
        raise MoveError("an endpoint cannot cross its own edge")
    if target.side_face(d, site.side) != d.face_of(Corner(site.endpoint, 0)):
        raise MoveError("the edge does not bound the endpoint's face on that side")

    v = d.fresh_id("x")
    # the endpoint's face lies south of the target, which runs east when it has the face on its right
    target_dirs = ("W", "E") if site.side == "right" else ("E", "W")
    end_dirs = ("N", "S") if kind == "tail" else ("S", "N")
    under, top = (target_dirs, end_dirs) if site.over else (end_dirs, target_dirs)
    crossing, ports = _crossing_from_compass(v, under, top)
    edges = target.splice(ports[target_dirs[0]], ports[target_dirs[1]])
    if kind == "tail":
        edges += [(port, ports["N"]), (ports["S"], own[1])]
    else:
        edges += [(own[0], ports["S"]), (ports["N"], port)]
    bare = _rebuild(
        d,
        add_crossings=[crossing],
        drop_edges=[own] + ([target.edge] if target.edge else []),
        add_edges=edges,
        drop_loops=[target.loop] if target.loop else [],
    )
    surgery = _finish(d, bare, _replacing({target.loop: edges[0]} if target.loop else {}))
    if genus(surgery.after) != genus(d):
        raise InternalConsistencyError("endpoint extension changed the genus")
    return surgery


# dispatch


def move_surgery(d: DiagramMap, site: MoveSite, sd: StarredDiagram | None = None) -> Surgery:
    if isinstance(site, R1AddSite):
        return r1_add(d, site, sd)
    elif isinstance(site, R1RemoveSite):
        return r1_remove(d, site, sd)
    elif isinstance(site, R2AddSite):
        return r2_add(d, site, sd)
    elif isinstance(site, R2RemoveSite):
        return r2_remove(d, site, sd)
    elif isinstance(site, R3Site):
        return r3(d, site, sd)
    elif isinstance(site, ConnectR2Site):
        return connect_r2_surgery(d, site)
    elif isinstance(site, ExtendSite):
        if sd is not None and sd.star_count:
            raise MoveError("endpoint extension is not a star-equivalence move")
        return extend(d, site)
    elif isinstance(site, SwitchSite):
        if sd is not None and sd.star_count:
            raise MoveError("crossing switch is not a star-equivalence move")
        try:
            return switch_surgery(d, site.crossing)
        except DiagramError as e:
            raise MoveError(str(e)) from None
    else:
        assert_never(site)


@overload
def apply_move(target: DiagramMap, site: MoveSite) -> DiagramMap: ...
@overload
def apply_move(target: StarredDiagram, site: MoveSite) -> StarredDiagram: ...


def apply_move(target: DiagramMap | StarredDiagram, site: MoveSite) -> DiagramMap | StarredDiagram:
    if isinstance(target, DiagramMap):
        return move_surgery(target, site).after
    surgery = move_surgery(target.base, site, target)
    try:
        return carry_stars(target, surgery)
    except StarError as e:
        raise MoveError(str(e)) from None


def connect_r2(
    target: DiagramMap | StarredDiagram, over: bool = True, site: ConnectR2Site | None = None
) -> DiagramMap | StarredDiagram:
    """Connect a split diagram across its least legal glued face pair."""
    d = target.base if isinstance(target, StarredDiagram) else target
    if site is None:
        candidates = [s for s in connect_sites(d) if s.over == over]
        if not candidates:
            raise MoveError("diagram has no pair of glued faces on different components")
        site = candidates[0]
    surgery = connect_r2_surgery(d, site)
    if isinstance(target, DiagramMap):
        return surgery.after
    try:
        return carry_stars(target, surgery)
    except StarError as e:
        raise MoveError(str(e)) from None


def connect_sites(d: DiagramMap) -> list[ConnectR2Site]:
    sites = []
    bounding = _bounding_segments(d)
    for group in d.merges:
        if len(group) != 2:
            continue
        k1, k2 = sorted(group)
        if d.component_index(k1.vertex) == d.component_index(k2.vertex):
            continue
        for up, up_side in bounding.get(k1, []):
            for low, low_side in bounding.get(k2, []):
                for over in (True, False):
                    sites.append(
                        ConnectR2Site(upper=up.ref(), upper_side=up_side, lower=low.ref(), lower_side=low_side, over=over)
                    )
    return sites


def connect_until_connected(target: StarredDiagram, over: bool = True) -> StarredDiagram:
    while True:
        d = target.base
        if not connect_sites(d):
            return target
        result = connect_r2(target, over)
        assert isinstance(result, StarredDiagram)
        target = result


# site enumeration


def _bounding_segments(d: DiagramMap) -> dict[Corner, list[tuple[Segment, Side]]]:
    result: dict[Corner, list[tuple[Segment, Side]]] = {}
    for seg in segments(d):
        for side in ("left", "right"):
            result.setdefault(seg.side_face(d, side).key, []).append((seg, side))
    return result


def _receives(sd: StarredDiagram | None, d: DiagramMap, face: Face, glued_ok: bool) -> bool:
    """Whether a kink or finger may be drawn into ``face``."""
    if not glued_ok and any(face.key in group for group in d.merges):
        return False
    return sd is None or d.region_of(face).key not in sd.starred_regions


def legal_sites(
    target: DiagramMap | StarredDiagram,
    max_crossings: int | None = None,
    kinds: Sequence[str] = ("R1+", "R1-", "R2+", "R2-", "R3"),
) -> list[MoveSite]:
    """Legal star-equivalence sites, in a deterministic order."""
    sd = target if isinstance(target, StarredDiagram) else None
    d = sd.base if sd is not None else target
    assert isinstance(d, DiagramMap)
    grow = max_crossings is None or d.n + 2 <= max_crossings
    grow_one = max_crossings is None or d.n + 1 <= max_crossings
    sites: list[MoveSite] = []

    if "R1+" in kinds and grow_one:
        for seg in segments(d):
            for side in ("left", "right"):
                if not _receives(sd, d, seg.side_face(d, side), glued_ok=True):
                    continue
                for first in ("under", "over"):
                    sites.append(R1AddSite(edge=seg.ref(), side=side, first=first))

    if "R2+" in kinds and grow:
        for key, bounding in sorted(_bounding_segments(d).items()):
            if not _receives(sd, d, d.face_of(key), glued_ok=False):
                continue
            for up, up_side in bounding:
                for low, low_side in bounding:
                    if up == low:
                        continue
                    for over in (True, False):
                        sites.append(
                            R2AddSite(upper=up.ref(), upper_side=up_side, lower=low.ref(), lower_side=low_side, over=over)
                        )

    candidates: list[MoveSite] = []
    if "R1-" in kinds:
        candidates += [R1RemoveSite(crossing=c) for c in d.crossings if _kink_corner(d, c) is not None]
    if "R2-" in kinds:
        for face in d.faces:
            names = sorted({k.vertex for k in face.corners})
            # a two-corner face between the endpoints is not a bigon of crossings
            if len(face.corners) == 2 and len(names) == 2 and all(v in d.crossings for v in names):
                candidates.append(R2RemoveSite(crossings=(names[0], names[1])))
    if "R3" in kinds:
        for face in d.faces:
            names = sorted({k.vertex for k in face.corners})
            if len(face.corners) == 3 and len(names) == 3 and all(v in d.crossings for v in names):
                candidates.append(R3Site(crossings=(names[0], names[1], names[2])))
    for site in candidates:
        try:
            apply_move(target, site)
        except MoveError:
            continue
        sites.append(site)
    return sites


def extension_sites(d: DiagramMap) -> list[ExtendSite]:
    sites = []
    bounding = _bounding_segments(d)
    for e in d.endpoints:
        port = Port(e, 0)
        own = d.edge_from(port) if d.endpoints[e].kind == "tail" else d.edge_to(port)
        for seg, side in bounding.get(d.face_of(Corner(e, 0)).key, []):
            if seg.edge == own:
                continue
            for over in (True, False):
                sites.append(ExtendSite(endpoint=e, edge=seg.ref(), side=side, over=over))
    return sites


def random_equivalent(
    target: StarredDiagram,
    steps: int,
    seed: int,
    max_crossings: int | None = None,
    log: BoundLogger | None = None,
) -> tuple[StarredDiagram, list[TraceStep]]:
    """Walk ``steps`` uniformly chosen legal moves. Deterministic for a seed."""
    log = (log or get_logger()).bind(seed=seed, steps=steps)
    rng = random.Random(seed)
    trace: list[TraceStep] = []
    current = target
    for step in range(steps):
        sites = legal_sites(current, max_crossings)
        if not sites:
            trace.append(TraceStep(step=step, skipped=True))
            continue
        site = rng.choice(sites)
        current = apply_move(current, site)
        trace.append(TraceStep(step=step, site=site))
    log.debug("Random walk done", n=current.base.n, skipped=sum(t.skipped for t in trace))
    return current, trace


def replay(target: Target, trace: Sequence[TraceStep]) -> Target:
    for step in trace:
        if step.site is not None:
            target = apply_move(target, step.site)
    return target


# random diagrams

_GROWING = {"R1+": 2, "R2+": 2, "extend": 3}


def _scramble(d: DiagramMap, rng: random.Random, max_crossings: int, steps: int, extend_endpoints: bool) -> DiagramMap:
    for _ in range(steps):
        options: dict[str, list[MoveSite]] = {}
        for site in legal_sites(d, max_crossings):
            options.setdefault(site.kind, []).append(site)
        if d.crossings:
            options["switch"] = [SwitchSite(crossing=c) for c in d.crossings]
        if extend_endpoints and d.n < max_crossings:
            grown = extension_sites(d)
            if grown:
                options["extend"] = list(grown)
        if not options:
            break
        kinds = sorted(options)
        (kind,) = rng.choices(kinds, weights=[_GROWING.get(k, 1) for k in kinds])
        d = apply_move(d, rng.choice(options[kind]))
    return d


def random_knotoid(rng: random.Random, max_crossings: int) -> DiagramMap:
    """Planar knotoid with at most ``max_crossings`` crossings."""
    return _scramble(trivial_knotoid(), rng, max_crossings, 4 * max_crossings, extend_endpoints=True)


def random_link(rng: random.Random, max_crossings: int) -> DiagramMap:
    """Connected planar link diagram with at most ``max_crossings`` crossings."""
    starts = [round_unknot()] + [twist_universe(n) for n in (2, 3) if n <= max_crossings]
    return _scramble(rng.choice(starts), rng, max_crossings, 4 * max_crossings, extend_endpoints=False)


def random_starred(rng: random.Random, max_crossings: int, merges: bool = True) -> StarredDiagram:
    """Random link or knotoid with a random balanced decoration.

    Some draws glue faces into one region, starring crossings when the glued
    diagram has fewer regions than crossings.
    """
    if rng.random() < 0.5:
        d, extra = random_link(rng, max_crossings), 2
    else:
        d, extra = random_knotoid(rng, max_crossings), 1
    faces = [f.key for f in d.faces]
    if merges and rng.random() < 0.3:
        size = extra + 1 + (1 if d.n and rng.random() < 0.5 else 0)
        if len(faces) >= size:
            d = d.replace(merges=[rng.sample(faces, size)])
            return make_starred(d, crossings=rng.sample(sorted(d.crossings), size - 1 - extra))
    return make_starred(d, regions=rng.sample(faces, extra))
