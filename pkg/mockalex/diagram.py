"""Combinatorial maps of link, linkoid and knotoid universes.

A crossing has four ports (slots) in counterclockwise order. Slot 0 is the
incoming under-strand and slot 2 the outgoing under-strand; the incoming
over-strand sits at slot 3 for a positive crossing and at slot 1 for a
negative one. Endpoints have a single port, slot 0. Corner i of a crossing
is the quadrant between slots i and i+1.

Faces are orbits of the corner walk ``next(v, i) = pair(v, i + 1)``, named
``f0, f1, ...`` in the order of their smallest corner. Merge sets glue faces
into one region; a merge set whose faces lie in different components records
how a split diagram sits in the sphere and costs no genus.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Literal, NamedTuple

import networkx as nx

from mockalex.errors import DiagramError, InternalConsistencyError
from mockalex.models import CensusReport, CrossingDoc, DiagramDocument, EdgeDoc, EndpointDoc


class Port(NamedTuple):
    vertex: str
    slot: int

    def __str__(self) -> str:
        return f"{self.vertex}:{self.slot}"


class Corner(NamedTuple):
    vertex: str
    index: int

    def __str__(self) -> str:
        return f"{self.vertex}:{self.index}"


Edge = tuple[Port, Port]


@dataclass(frozen=True)
class Crossing:
    id: str
    over_in_slot: int

    @property
    def sign(self) -> int:
        return 1 if self.over_in_slot == 3 else -1

    @property
    def over_out_slot(self) -> int:
        return (self.over_in_slot + 2) % 4

    def is_incoming(self, slot: int) -> bool:
        return slot in (0, self.over_in_slot)

    @property
    def in_in_corner(self) -> int:
        return 3 if self.over_in_slot == 3 else 0

    @property
    def out_out_corner(self) -> int:
        return 1 if self.over_in_slot == 3 else 2

    @property
    def mixed_corners(self) -> tuple[int, int]:
        return (0, 2) if self.over_in_slot == 3 else (1, 3)

    def smoothing_out(self, in_slot: int) -> int:
        """Outgoing slot joined to ``in_slot`` by the oriented smoothing."""
        if in_slot == 0:
            return self.over_out_slot
        if in_slot == self.over_in_slot:
            return 2
        raise ValueError(f"slot {in_slot} of {self.id} is not incoming")


@dataclass(frozen=True)
class Endpoint:
    id: str
    kind: Literal["tail", "head"]


@dataclass(frozen=True)
class Face:
    name: str
    key: Corner
    corners: tuple[Corner, ...]


@dataclass(frozen=True)
class Region:
    """An effective region: one face, or several glued by a merge set."""
    name: str
    key: Corner
    faces: tuple[Face, ...]

    @cached_property
    def corners(self) -> tuple[Corner, ...]:
        return tuple(sorted(c for f in self.faces for c in f.corners))


@dataclass(frozen=True)
class Strand:
    closed: bool
    edges: tuple[Edge, ...]


class Separation(NamedTuple):
    separating: bool
    nugatory: bool


def _check_vertex_id(vid: str, location: str) -> None:
    if not vid or ":" in vid:
        raise DiagramError(f"invalid vertex id {vid!r}", location)


class DiagramMap:
    """Immutable oriented combinatorial map with endpoints, free circles and merges."""

    def __init__(
        self,
        crossings: Iterable[Crossing] = (),
        endpoints: Iterable[Endpoint] = (),
        edges: Iterable[tuple[tuple[str, int], tuple[str, int]]] = (),
        loops: Iterable[str] = (),
        merges: Iterable[Iterable[Corner]] = (),
    ):
        crossings = list(crossings)
        endpoints = list(endpoints)
        loops = list(loops)
        seen: set[str] = set()
        for kind, items in (("crossings", [c.id for c in crossings]), ("endpoints", [e.id for e in endpoints]), ("loops", loops)):
            for i, vid in enumerate(items):
                _check_vertex_id(vid, f"{kind}[{i}].id")
                if vid in seen:
                    raise DiagramError(f"duplicate vertex id {vid!r}", f"{kind}[{i}].id")
                seen.add(vid)
        for i, c in enumerate(crossings):
            if c.over_in_slot not in (1, 3):
                raise DiagramError(f"over_in_slot must be 1 or 3, got {c.over_in_slot}", f"crossings[{i}].over_in_slot")

        self._crossings = {c.id: c for c in sorted(crossings, key=lambda c: c.id)}
        self._endpoints = {e.id: e for e in sorted(endpoints, key=lambda e: e.id)}
        self._loops = tuple(sorted(loops))

        raw_edges = [(Port(*a), Port(*b)) for a, b in edges]
        self._validate_edges(raw_edges)
        self._edges = tuple(sorted(raw_edges))
        self._edge_from = {a: (a, b) for a, b in self._edges}
        self._edge_to = {b: (a, b) for a, b in self._edges}
        self._pair: dict[Port, Port] = {}
        for a, b in self._edges:
            self._pair[a] = b
            self._pair[b] = a

        self._faces = self._trace()
        self._face_of = {c: f for f in self._faces for c in f.corners}
        self._merges = self._normalize_merges(merges)

    # construction helpers

    def degree(self, vertex: str) -> int:
        if vertex in self._crossings:
            return 4
        if vertex in self._endpoints:
            return 1
        if vertex in self._loops:
            return 0
        raise DiagramError(f"unknown vertex {vertex!r}")

    def is_outgoing(self, port: Port) -> bool:
        if port.vertex in self._crossings:
            return not self._crossings[port.vertex].is_incoming(port.slot)
        return self._endpoints[port.vertex].kind == "tail"

    def _validate_edges(self, edges: list[Edge]) -> None:
        used: dict[Port, str] = {}
        for i, (a, b) in enumerate(edges):
            for port, end, outgoing in ((a, "from", True), (b, "to", False)):
                location = f"edges[{i}].{end}"
                if port.vertex in self._loops or (
                    port.vertex not in self._crossings and port.vertex not in self._endpoints
                ):
                    raise DiagramError(f"unknown vertex {port.vertex!r}", location)
                if not 0 <= port.slot < self.degree(port.vertex):
                    raise DiagramError(f"port {port} out of range", location)
                if port in used:
                    raise DiagramError(f"port {port} already used by {used[port]}", location)
                used[port] = location
                if self.is_outgoing(port) != outgoing:
                    role = "incoming" if outgoing else "outgoing"
                    raise DiagramError(f"port {port} is an {role} slot but used as edge {end}", location)
        for vid in list(self._crossings) + list(self._endpoints):
            for slot in range(self.degree(vid)):
                if Port(vid, slot) not in used:
                    raise DiagramError(f"port {vid}:{slot} is not paired", "edges")

    def _trace(self) -> tuple[Face, ...]:
        seen: set[Corner] = set()
        faces: list[Face] = []
        for start in self.corners():
            if start in seen:
                continue
            orbit = []
            c = start
            while c not in seen:
                seen.add(c)
                orbit.append(c)
                c = self.next_corner(c)
            if c != start:
                raise InternalConsistencyError(f"corner walk from {start} is not a cycle")
            faces.append(Face(name=f"f{len(faces)}", key=start, corners=tuple(orbit)))
        return tuple(faces)

    def _normalize_merges(self, merges: Iterable[Iterable[Corner]]) -> tuple[frozenset[Corner], ...]:
        result: list[frozenset[Corner]] = []
        claimed: set[Corner] = set()
        for i, group in enumerate(merges):
            keys = set()
            for corner in group:
                face = self._face_of.get(Corner(*corner))
                if face is None:
                    raise DiagramError(f"unknown corner {corner}", f"merges[{i}]")
                keys.add(face.key)
            if len(keys) < 2:
                raise DiagramError("a merge set needs at least two distinct faces", f"merges[{i}]")
            if keys & claimed:
                raise DiagramError("merge sets overlap", f"merges[{i}]")
            claimed |= keys
            result.append(frozenset(keys))
        return tuple(sorted(result, key=min))

    # basic accessors

    @property
    def crossings(self) -> Mapping[str, Crossing]:
        return self._crossings

    @property
    def endpoints(self) -> Mapping[str, Endpoint]:
        return self._endpoints

    @property
    def loops(self) -> tuple[str, ...]:
        return self._loops

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def merges(self) -> tuple[frozenset[Corner], ...]:
        return self._merges

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    @property
    def n(self) -> int:
        return len(self._crossings)

    @property
    def tails(self) -> list[str]:
        return [e.id for e in self._endpoints.values() if e.kind == "tail"]

    @property
    def heads(self) -> list[str]:
        return [e.id for e in self._endpoints.values() if e.kind == "head"]

    def vertices(self) -> list[str]:
        return sorted([*self._crossings, *self._endpoints, *self._loops])

    def corners(self) -> list[Corner]:
        result = [Corner(v, i) for v in self._crossings for i in range(4)]
        result += [Corner(v, 0) for v in self._endpoints]
        result += [Corner(v, i) for v in self._loops for i in range(2)]
        return sorted(result)

    def pair(self, port: Port) -> Port:
        return self._pair[port]

    def edge_from(self, port: Port) -> Edge:
        return self._edge_from[port]

    def edge_to(self, port: Port) -> Edge:
        return self._edge_to[port]

    def next_corner(self, corner: Corner) -> Corner:
        if corner.vertex in self._loops:
            return corner
        w = self._pair[Port(corner.vertex, (corner.index + 1) % self.degree(corner.vertex))]
        return Corner(w.vertex, w.slot)

    def face_of(self, corner: Corner) -> Face:
        return self._face_of[corner]

    def left_face(self, edge: Edge) -> Face:
        a = edge[0]
        return self._face_of[Corner(a.vertex, a.slot)]

    def right_face(self, edge: Edge) -> Face:
        a = edge[0]
        return self._face_of[Corner(a.vertex, (a.slot - 1) % self.degree(a.vertex))]

    def side_face(self, edge: Edge, side: str) -> Face:
        return self.left_face(edge) if side == "left" else self.right_face(edge)

    # regions

    @cached_property
    def regions(self) -> tuple[Region, ...]:
        by_key = {f.key: f for f in self._faces}
        grouped: list[tuple[Face, ...]] = []
        merged: set[Corner] = set()
        for group in self._merges:
            grouped.append(tuple(by_key[k] for k in sorted(group)))
            merged |= group
        grouped += [(f,) for f in self._faces if f.key not in merged]
        regions = [Region(name=g[0].name, key=g[0].key, faces=g) for g in grouped]
        return tuple(sorted(regions, key=lambda r: r.key))

    @cached_property
    def _region_by_face(self) -> dict[Corner, Region]:
        return {f.key: r for r in self.regions for f in r.faces}

    def region_of(self, face: Face) -> Region:
        return self._region_by_face[face.key]

    def region_at(self, corner: Corner) -> Region:
        return self._region_by_face[self._face_of[corner].key]

    def region_by_key(self, key: Corner) -> Region:
        return self._region_by_face[key]

    # references

    def resolve_face(self, ref: str) -> Face:
        """Face by canonical name ``f3`` or by a corner ref ``a:1``."""
        if ":" in ref:
            vertex, _, index = ref.rpartition(":")
            try:
                corner = Corner(vertex, int(index))
            except ValueError:
                raise DiagramError(f"malformed corner ref {ref!r}") from None
            if corner not in self._face_of:
                raise DiagramError(f"unknown corner {ref!r}")
            return self._face_of[corner]
        for f in self._faces:
            if f.name == ref:
                return f
        raise DiagramError(f"unknown face {ref!r}")

    def resolve_region(self, ref: str) -> Region:
        return self.region_of(self.resolve_face(ref))

    def resolve_edge(self, ref: str | tuple[str, int]) -> Edge:
        """Edge by the port it leaves from, e.g. ``a:2``."""
        if isinstance(ref, str):
            vertex, _, slot = ref.rpartition(":")
            try:
                port = Port(vertex, int(slot))
            except ValueError:
                raise DiagramError(f"malformed edge ref {ref!r}") from None
        else:
            port = Port(*ref)
        if port not in self._edge_from:
            raise DiagramError(f"no edge leaves port {port}")
        return self._edge_from[port]

    def resolve_crossing(self, ref: str) -> Crossing:
        if ref not in self._crossings:
            raise DiagramError(f"unknown crossing {ref!r}")
        return self._crossings[ref]

    # strands and components

    @cached_property
    def strands(self) -> tuple[Strand, ...]:
        result: list[Strand] = []
        visited: set[Edge] = set()

        def follow(edge: Edge) -> tuple[Edge, ...]:
            path = []
            while edge not in visited:
                visited.add(edge)
                path.append(edge)
                head = edge[1]
                if head.vertex in self._endpoints:
                    break
                edge = self._edge_from[Port(head.vertex, (head.slot + 2) % 4)]
            return tuple(path)

        for tail in self.tails:
            result.append(Strand(closed=False, edges=follow(self._edge_from[Port(tail, 0)])))
        for edge in self._edges:
            if edge not in visited:
                result.append(Strand(closed=True, edges=follow(edge)))
        return tuple(result)

    @property
    def m(self) -> int:
        return len(self.tails)

    @cached_property
    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices())
        g.add_edges_from((a.vertex, b.vertex) for a, b in self._edges)
        return g

    @cached_property
    def components(self) -> tuple[frozenset[str], ...]:
        comps = [frozenset(c) for c in nx.connected_components(self.graph)]
        return tuple(sorted(comps, key=min))

    def component_index(self, vertex: str) -> int:
        for i, comp in enumerate(self.components):
            if vertex in comp:
                return i
        raise DiagramError(f"unknown vertex {vertex!r}")

    @property
    def k(self) -> int:
        return len(self.components)

    # identity

    def _key(self) -> tuple:
        return (
            tuple(self._crossings.values()),
            tuple(self._endpoints.values()),
            self._loops,
            self._edges,
            self._merges,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"DiagramMap(n={self.n}, endpoints={len(self._endpoints)}, loops={len(self._loops)}, faces={len(self._faces)})"

    def replace(self, **changes: Any) -> DiagramMap:
        fields = {
            "crossings": self._crossings.values(),
            "endpoints": self._endpoints.values(),
            "edges": self._edges,
            "loops": self._loops,
            "merges": self._merges,
        }
        fields.update(changes)
        return DiagramMap(**fields)

    def fresh_id(self, prefix: str, taken: Iterable[str] = ()) -> str:
        used = set(self.vertices()) | set(taken)
        k = 1
        while f"{prefix}{k}" in used:
            k += 1
        return f"{prefix}{k}"


# documents


def parse(document: DiagramDocument | Mapping[str, Any] | str | Path) -> DiagramMap:
    """Build a validated map from a diagram document. Any ``stars`` block is ignored here."""
    doc = load_document(document)
    base = DiagramMap(
        crossings=[Crossing(c.id, c.over_in_slot) for c in doc.crossings],
        endpoints=[Endpoint(e.id, e.kind) for e in doc.endpoints],
        edges=[(e.from_, e.to) for e in doc.edges],
        loops=doc.loops,
    )
    if not doc.merges:
        return base
    groups = []
    for i, group in enumerate(doc.merges):
        try:
            groups.append([base.resolve_face(ref).key for ref in group])
        except DiagramError as e:
            raise DiagramError(str(e), f"merges[{i}]") from None
    return base.replace(merges=groups)


def load_document(document: DiagramDocument | Mapping[str, Any] | str | Path) -> DiagramDocument:
    if isinstance(document, DiagramDocument):
        return document
    if isinstance(document, Path):
        return DiagramDocument.from_file(document)
    if isinstance(document, str):
        return DiagramDocument.model_validate(json.loads(document))
    return DiagramDocument.model_validate(document)


def to_document(d: DiagramMap, **extra: Any) -> DiagramDocument:
    by_key = {f.key: f.name for f in d.faces}
    return DiagramDocument(
        crossings=[CrossingDoc(id=c.id, over_in_slot=c.over_in_slot) for c in d.crossings.values()],  # type: ignore[arg-type]
        endpoints=[EndpointDoc(id=e.id, kind=e.kind) for e in d.endpoints.values()],
        loops=list(d.loops),
        edges=[EdgeDoc(from_=(a.vertex, a.slot), to=(b.vertex, b.slot)) for a, b in d.edges],
        merges=[[by_key[k] for k in sorted(group)] for group in d.merges],
        **extra,
    )


# census


def trace_faces(d: DiagramMap) -> list[Face]:
    return list(d.faces)


def component_genera(d: DiagramMap) -> list[int]:
    """Genus of the traced embedding of each connected component."""
    genera = []
    for comp in d.components:
        n_i = sum(1 for v in comp if v in d.crossings)
        m_i = sum(1 for v in comp if v in d.endpoints and d.endpoints[v].kind == "tail")
        v_i = sum(1 for v in comp if v not in d.loops)
        e_i = sum(1 for a, _ in d.edges if a.vertex in comp)
        f_i = sum(1 for f in d.faces if f.key.vertex in comp)
        chi = v_i - e_i + f_i
        if chi % 2 or chi > 2:
            raise InternalConsistencyError(f"component {sorted(comp)} has Euler characteristic {chi}")
        g_i = (2 - chi) // 2
        if f_i - n_i != 2 - 2 * g_i - m_i:
            raise InternalConsistencyError(
                f"component {sorted(comp)}: f - n = {f_i - n_i}, expected {2 - 2 * g_i - m_i}"
            )
        genera.append(g_i)
    return genera


def glued_component_count(d: DiagramMap) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(d.k))
    for group in d.merges:
        comps = sorted({d.component_index(key.vertex) for key in group})
        g.add_edges_from(zip(comps, comps[1:]))
    return nx.number_connected_components(g)


def genus(d: DiagramMap) -> int:
    handles = sum(len(group) - 1 for group in d.merges)
    return sum(component_genera(d)) + handles - (d.k - glued_component_count(d))


def census(d: DiagramMap) -> CensusReport:
    g = genus(d)
    f_eff = len(d.regions)
    m = d.m
    if g == 0 and glued_component_count(d) == 1 and f_eff - d.n != d.k - m + 1:
        raise InternalConsistencyError(
            f"planar diagram violates f - n = k - m + 1: f={f_eff}, n={d.n}, k={d.k}, m={m}"
        )
    return CensusReport(
        n=d.n,
        f=len(d.faces),
        f_effective=f_eff,
        e=len(d.edges),
        k=d.k,
        m=m,
        genus=g,
        admissible=f_eff == d.n,
    )


def is_planar(d: DiagramMap) -> bool:
    return not d.merges and all(g == 0 for g in component_genera(d))


# region merges


def merge_regions(d: DiagramMap, sets: Iterable[Iterable[str | Corner]]) -> DiagramMap:
    groups = []
    for i, group in enumerate(sets):
        keys = []
        for ref in group:
            face = d.resolve_face(ref) if isinstance(ref, str) else d.face_of(ref)
            if face.key in keys:
                raise DiagramError(f"face {face.name} listed twice", f"sets[{i}]")
            keys.append(face.key)
        groups.append(keys)
    return d.replace(merges=[*d.merges, *groups])


# surgery


@dataclass(frozen=True)
class Surgery:
    """Result of a local rewrite plus where the surviving corners went."""
    before: DiagramMap
    after: DiagramMap
    corner_map: Callable[[Corner], Corner | None]

    def carry(self, key: Corner) -> Corner | None:
        """Face key in ``after`` of the face with key ``key`` in ``before``."""
        for corner in self.before.face_of(key).corners:
            mapped = self.corner_map(corner)
            if mapped is not None:
                return self.after.face_of(mapped).key
        return None

    def carry_merges(self) -> list[list[Corner]]:
        groups = []
        for group in self.before.merges:
            keys = {self.carry(k) for k in group}
            if None in keys:
                raise DiagramError("surgery destroys a merged face")
            if len(keys) > 1:
                groups.append(sorted(k for k in keys if k is not None))
        return groups


def _rotate_vertices(
    d: DiagramMap,
    slot_map: Callable[[str, int], int],
    crossing_map: Callable[[Crossing], Crossing],
    corner_map: Callable[[Corner], Corner],
    reverse_edges: bool = False,
    endpoint_map: Callable[[Endpoint], Endpoint] = lambda e: e,
) -> Surgery:
    def port(p: Port) -> Port:
        return Port(p.vertex, slot_map(p.vertex, p.slot))

    edges = [(port(b), port(a)) if reverse_edges else (port(a), port(b)) for a, b in d.edges]
    bare = DiagramMap(
        crossings=[crossing_map(c) for c in d.crossings.values()],
        endpoints=[endpoint_map(e) for e in d.endpoints.values()],
        edges=edges,
        loops=d.loops,
    )
    surgery = Surgery(d, bare, corner_map)
    return Surgery(d, bare.replace(merges=surgery.carry_merges()), corner_map)


def switch_surgery(d: DiagramMap, crossing_id: str) -> Surgery:
    c = d.resolve_crossing(crossing_id)
    o = c.over_in_slot

    def slot_map(v: str, s: int) -> int:
        return (s - o) % 4 if v == c.id else s

    def crossing_map(x: Crossing) -> Crossing:
        return Crossing(x.id, (-o) % 4) if x.id == c.id else x

    def corner_map(k: Corner) -> Corner:
        return Corner(k.vertex, (k.index - o) % 4) if k.vertex == c.id else k

    return _rotate_vertices(d, slot_map, crossing_map, corner_map)


def switch_crossing(d: DiagramMap, crossing_id: str) -> DiagramMap:
    return switch_surgery(d, crossing_id).after


def mirror_surgery(d: DiagramMap) -> Surgery:
    def slot_map(v: str, s: int) -> int:
        return (s - d.crossings[v].over_in_slot) % 4 if v in d.crossings else s

    def corner_map(k: Corner) -> Corner:
        if k.vertex in d.crossings:
            return Corner(k.vertex, (k.index - d.crossings[k.vertex].over_in_slot) % 4)
        return k

    return _rotate_vertices(
        d, slot_map, lambda x: Crossing(x.id, (-x.over_in_slot) % 4), corner_map
    )


def reverse_surgery(d: DiagramMap) -> Surgery:
    """Reverse every component. Old under-out becomes slot 0; signs are kept."""

    def slot_map(v: str, s: int) -> int:
        return (s + 2) % 4 if v in d.crossings else s

    def corner_map(k: Corner) -> Corner:
        if k.vertex in d.crossings:
            return Corner(k.vertex, (k.index + 2) % 4)
        if k.vertex in d.loops:
            return Corner(k.vertex, 1 - k.index)
        return k

    def endpoint_map(e: Endpoint) -> Endpoint:
        return Endpoint(e.id, "head" if e.kind == "tail" else "tail")

    return _rotate_vertices(d, slot_map, lambda x: x, corner_map, reverse_edges=True, endpoint_map=endpoint_map)


def reflect_surgery(d: DiagramMap) -> Surgery:
    """Reverse the rotation at every vertex (a reflection of the surface)."""

    def slot_map(v: str, s: int) -> int:
        return (-s) % 4 if v in d.crossings else s

    def corner_map(k: Corner) -> Corner:
        if k.vertex in d.crossings:
            return Corner(k.vertex, (-k.index - 1) % 4)
        if k.vertex in d.loops:
            return Corner(k.vertex, 1 - k.index)
        return k

    return _rotate_vertices(d, slot_map, lambda x: Crossing(x.id, (-x.over_in_slot) % 4), corner_map)


def reflect(d: DiagramMap) -> DiagramMap:
    return reflect_surgery(d).after


def reverse_map(d: DiagramMap) -> DiagramMap:
    return reverse_surgery(d).after


def smooth_surgery(d: DiagramMap, crossing_id: str) -> Surgery:
    """Oriented smoothing of one crossing.

    Arcs closing up at the crossing become free circles. When the smoothing
    splits a component, the pieces stay glued along the region that contained
    the in-in and out-out corners.
    """
    c = d.resolve_crossing(crossing_id)
    v = c.id

    new_edges: list[Edge] = []
    # every edge touching v ends up inside a new edge or a free circle
    chain_of: dict[Edge, Edge] = {}
    loop_of: dict[Edge, str] = {}
    for edge in d.edges:
        a, b = edge
        if a.vertex != v and b.vertex != v:
            new_edges.append(edge)
            continue
        if a.vertex == v:
            continue
        path = [edge]
        current = b
        while True:
            out_edge = d.edge_from(Port(v, c.smoothing_out(current.slot)))
            path.append(out_edge)
            if out_edge[1].vertex == v:
                current = out_edge[1]
                continue
            joined = (a, out_edge[1])
            new_edges.append(joined)
            chain_of.update((e, joined) for e in path)
            break

    loop_ids: list[str] = []
    for edge in d.edges:
        if edge in chain_of or edge in loop_of or edge[0].vertex != v or edge[1].vertex != v:
            continue
        loop_id = d.fresh_id("o", loop_ids)
        loop_ids.append(loop_id)
        current = edge
        while current not in loop_of:
            loop_of[current] = loop_id
            current = d.edge_from(Port(v, c.smoothing_out(current[1].slot)))

    bare = DiagramMap(
        crossings=[x for x in d.crossings.values() if x.id != v],
        endpoints=d.endpoints.values(),
        edges=new_edges,
        loops=[*d.loops, *loop_ids],
    )

    def corner_map(k: Corner) -> Corner | None:
        if k.vertex != v:
            return k
        # the quadrant survives as one side of the arc through slot k+1
        port = Port(v, (k.index + 1) % 4)
        right = d.is_outgoing(port)
        edge = d.edge_from(port) if right else d.edge_to(port)
        if edge in loop_of:
            return Corner(loop_of[edge], 1 if right else 0)
        a = chain_of[edge][0]
        if right:
            return Corner(a.vertex, (a.slot - 1) % bare.degree(a.vertex))
        return Corner(a.vertex, a.slot)

    glued = {d.face_of(Corner(v, c.in_in_corner)), d.face_of(Corner(v, c.out_out_corner))}
    touching: dict[int, Corner] = {}
    for corner in sorted(k for face in glued for k in face.corners):
        mapped = corner_map(corner)
        assert mapped is not None
        face_key = bare.face_of(mapped).key
        touching.setdefault(bare.component_index(face_key.vertex), face_key)

    surgery = Surgery(d, bare, corner_map)
    merges = surgery.carry_merges()
    join = sorted(set(touching.values()))
    if len(join) > 1:
        merges.append(join)
    return Surgery(d, bare.replace(merges=_combine_groups(merges)), corner_map)


def _combine_groups(groups: list[list[Corner]]) -> list[list[Corner]]:
    """Union overlapping merge groups."""
    g = nx.Graph()
    for group in groups:
        g.add_nodes_from(group)
        g.add_edges_from(zip(group, group[1:]))
    return [sorted(comp) for comp in nx.connected_components(g) if len(comp) > 1]


def smooth_crossing(d: DiagramMap, crossing_id: str) -> DiagramMap:
    return smooth_surgery(d, crossing_id).after


def _resolution_components(d: DiagramMap, c: Crossing, pairing: tuple[tuple[int, int], tuple[int, int]]) -> int:
    g = nx.MultiGraph()
    g.add_nodes_from(v for v in d.vertices() if v != c.id)
    arc_of = {}
    for i, (s, t) in enumerate(pairing):
        node = (c.id, i)
        g.add_node(node)
        arc_of[s] = node
        arc_of[t] = node
    for a, b in d.edges:
        u = arc_of[a.slot] if a.vertex == c.id else a.vertex
        w = arc_of[b.slot] if b.vertex == c.id else b.vertex
        g.add_edge(u, w)
    return nx.number_connected_components(g)


def detect_separating(d: DiagramMap, crossing_id: str) -> Separation:
    c = d.resolve_crossing(crossing_id)
    oriented = ((0, c.over_out_slot), (c.over_in_slot, 2))
    other = ((0, c.over_in_slot), (c.over_out_slot, 2))
    separating = any(_resolution_components(d, c, p) > d.k for p in (oriented, other))
    return Separation(separating=separating, nugatory=separating and d.m == 0)


# builders


def relabel(d: DiagramMap, prefix: str) -> DiagramMap:
    def name(v: str) -> str:
        return f"{prefix}{v}"

    return DiagramMap(
        crossings=[Crossing(name(c.id), c.over_in_slot) for c in d.crossings.values()],
        endpoints=[Endpoint(name(e.id), e.kind) for e in d.endpoints.values()],
        edges=[(Port(name(a.vertex), a.slot), Port(name(b.vertex), b.slot)) for a, b in d.edges],
        loops=[name(o) for o in d.loops],
        merges=[[Corner(name(k.vertex), k.index) for k in group] for group in d.merges],
    )


def connected_sum(
    first: DiagramMap,
    first_edge: str,
    second: DiagramMap,
    second_edge: str,
    sign: int = 1,
    crossing_id: str = "j",
) -> DiagramMap:
    """Join two diagrams through a new crossing that a smoothing separates again.

    The strand of ``first`` leaves along its chosen edge, passes under the new
    crossing into ``second`` and returns over it.
    """
    a = relabel(first, "L")
    b = relabel(second, "R")
    p, q = a.resolve_edge(f"L{first_edge}")
    r, s = b.resolve_edge(f"R{second_edge}")
    over_in = 3 if sign > 0 else 1
    over_out = (over_in + 2) % 4
    j = crossing_id
    edges = [e for e in a.edges if e != (p, q)] + [e for e in b.edges if e != (r, s)]
    edges += [
        (p, Port(j, 0)),
        (Port(j, 2), s),
        (r, Port(j, over_in)),
        (Port(j, over_out), q),
    ]
    return DiagramMap(
        crossings=[*a.crossings.values(), *b.crossings.values(), Crossing(j, over_in)],
        endpoints=[*a.endpoints.values(), *b.endpoints.values()],
        edges=edges,
        loops=[*a.loops, *b.loops],
    )
