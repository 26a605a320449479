"""Seifert degree and the normalized two-variable planar potential."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

import networkx as nx
from structlog.stdlib import BoundLogger

from mockalex.diagram import (
    Corner,
    DiagramMap,
    Edge,
    Face,
    Port,
    Surgery,
    is_planar,
    mirror_surgery,
    reflect_surgery,
)
from mockalex.errors import DiagramError, MoveError
from mockalex.log_config import get_logger
from mockalex.models import MoveSite, R3Site, TraceStep
from mockalex.moves import legal_sites, move_surgery
from mockalex.poly import LaurentPoly
from mockalex.stars import StarredDiagram, carry_stars
from mockalex.statesum import potential


@dataclass(frozen=True)
class SeifertData:
    circles: tuple[tuple[Edge, ...], ...]
    positive: tuple[bool, ...]

    @property
    def p(self) -> int:
        return sum(self.positive)

    @property
    def n_neg(self) -> int:
        return len(self.positive) - self.p

    @property
    def deg(self) -> int:
        return self.p - self.n_neg


def default_outer_face(d: DiagramMap) -> Face:
    """The face with the most corners, ties broken by face order."""
    return max(d.faces, key=lambda f: len(f.corners))


def resolve_outer(d: DiagramMap, outer_face: str | Corner | None) -> Face:
    if outer_face is None:
        return default_outer_face(d)
    if isinstance(outer_face, str):
        return d.resolve_face(outer_face)
    return d.face_of(outer_face)


def _require_planar(d: DiagramMap) -> None:
    if not is_planar(d) or d.k != 1:
        raise DiagramError("expected a connected diagram in the sphere without merges")


def _smoothed_paths(d: DiagramMap) -> Iterator[tuple[bool, list[Edge]]]:
    """Strands of the all-crossing oriented smoothing, as (closed, edges)."""
    seen: set[Edge] = set()

    def follow(edge: Edge) -> tuple[bool, list[Edge]]:
        path = []
        while edge not in seen:
            seen.add(edge)
            path.append(edge)
            head = edge[1]
            if head.vertex in d.endpoints:
                return False, path
            c = d.crossings[head.vertex]
            edge = d.edge_from(Port(head.vertex, c.smoothing_out(head.slot)))
        return True, path

    for tail in d.tails:
        yield follow(d.edge_from(Port(tail, 0)))
    for edge in d.edges:
        if edge not in seen:
            yield follow(edge)


def seifert_data(d: DiagramMap, outer_face: str | Corner | None = None) -> SeifertData:
    """Seifert circles with their orientation relative to the outer face.

    A circle is positive when the side away from the outer face lies on its left.
    """
    _require_planar(d)
    outer = resolve_outer(d, outer_face)

    regions = nx.utils.UnionFind(f.key for f in d.faces)
    for c in d.crossings.values():
        regions.union(d.face_of(Corner(c.id, c.in_in_corner)).key, d.face_of(Corner(c.id, c.out_out_corner)).key)

    circles: list[tuple[Edge, ...]] = []
    sides: list[tuple[Corner, Corner]] = []
    for closed, path in _smoothed_paths(d):
        if not closed:
            for edge in path:
                regions.union(d.left_face(edge).key, d.right_face(edge).key)
            continue
        circles.append(tuple(path))
        sides.append((d.left_face(path[0]).key, d.right_face(path[0]).key))
    for o in d.loops:
        circles.append(())
        sides.append((d.face_of(Corner(o, 0)).key, d.face_of(Corner(o, 1)).key))

    tree = nx.MultiGraph()
    tree.add_nodes_from(regions[f.key] for f in d.faces)
    for i, (left, right) in enumerate(sides):
        tree.add_edge(regions[left], regions[right], key=i)
    target = regions[outer.key]
    positive = []
    for i, (left, right) in enumerate(sides):
        cut = tree.copy()
        cut.remove_edge(regions[left], regions[right], key=i)
        positive.append(not nx.has_path(cut, regions[left], target))
    return SeifertData(tuple(circles), tuple(positive))


def planar_potential(sd: StarredDiagram) -> LaurentPoly:
    _require_planar(sd.base)
    return potential(sd, "planar")


def normalized_planar(sd: StarredDiagram, outer_face: str | Corner | None = None) -> LaurentPoly:
    """D^-Deg times the planar potential."""
    deg = seifert_data(sd.base, outer_face).deg
    return LaurentPoly.var("D", ("W", "D")) ** (-deg) * planar_potential(sd)


def at_d_one(p: LaurentPoly) -> LaurentPoly:
    return p.substitute({"D": 1}) if "D" in p.variables else p


def d_inverted(p: LaurentPoly) -> LaurentPoly:
    return p.substitute({"D": LaurentPoly.var("D") ** -1}) if "D" in p.variables else p


def _carry_outer(surgery: Surgery, outer: Corner) -> Corner:
    carried = surgery.carry(outer)
    if carried is None:
        raise MoveError("the outer face does not survive the rewrite")
    return carried


def k_bang_star(sd: StarredDiagram, outer_face: str | Corner | None = None) -> tuple[StarredDiagram, Corner]:
    """Reflect the diagram, then switch every crossing. Returns the new outer face too."""
    outer = resolve_outer(sd.base, outer_face).key
    reflected = reflect_surgery(sd.base)
    once = carry_stars(sd, reflected)
    mirrored = mirror_surgery(once.base)
    outer = _carry_outer(mirrored, _carry_outer(reflected, outer))
    return carry_stars(once, mirrored), outer


def _sweeps_outer(d: DiagramMap, site: MoveSite, outer: Corner) -> bool:
    """True for an RIII across the outer face itself, which no planar isotopy performs."""
    if not isinstance(site, R3Site):
        return False
    face = d.face_of(outer)
    return len(face.corners) == 3 and {k.vertex for k in face.corners} == set(site.crossings)


def planar_walk(
    sd: StarredDiagram,
    outer_face: str | Corner | None,
    steps: int,
    seed: int,
    max_crossings: int | None = None,
    log: BoundLogger | None = None,
) -> tuple[StarredDiagram, Corner, list[TraceStep]]:
    """Random Reidemeister walk that keeps track of the outer face.

    Moves that would delete or sweep the outer face (a kink, bigon or triangle
    around the whole diagram) are not planar isotopies and are never chosen.
    """
    log = (log or get_logger()).bind(seed=seed, steps=steps)
    rng = random.Random(seed)
    outer = resolve_outer(sd.base, outer_face).key
    trace: list[TraceStep] = []
    for step in range(steps):
        sites = legal_sites(sd, max_crossings)
        rng.shuffle(sites)
        for site in sites:
            if _sweeps_outer(sd.base, site, outer):
                continue
            surgery = move_surgery(sd.base, site, sd)
            carried = surgery.carry(outer)
            if carried is not None:
                sd, outer = carry_stars(sd, surgery), carried
                trace.append(TraceStep(step=step, site=site))
                break
        else:
            trace.append(TraceStep(step=step, skipped=True))
    log.debug("Planar walk done", n=sd.base.n, skipped=sum(t.skipped for t in trace))
    return sd, outer, trace
