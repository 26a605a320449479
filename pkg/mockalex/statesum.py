"""Corner labels, states and the state-sum potential."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from typing import Literal

import networkx as nx
from networkx.algorithms import bipartite

from mockalex.diagram import Corner, DiagramMap
from mockalex.poly import LaurentPoly
from mockalex.stars import StarredDiagram


LabelingName = Literal["mock", "mock-specialized", "planar", "alexander"]


@dataclass(frozen=True)
class Labeling:
    """Corner labels for both crossing signs, indexed by corner 0..3."""
    name: LabelingName
    variables: tuple[str, ...]
    positive: tuple[LaurentPoly, ...]
    negative: tuple[LaurentPoly, ...]

    def label(self, sign: int, corner_index: int) -> LaurentPoly:
        return (self.positive if sign > 0 else self.negative)[corner_index]

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(1, self.variables)


@cache
def labeling(name: LabelingName) -> Labeling:
    if name == "mock":
        variables = ("W", "B")
        W, B = LaurentPoly.var("W", variables), LaurentPoly.var("B", variables)
        one = LaurentPoly.constant(1, variables)
        return Labeling(name, variables, (one, W, one, -B), (-W, one, B, one))
    if name == "mock-specialized":
        variables = ("W",)
        W = LaurentPoly.var("W")
        one = LaurentPoly.constant(1, variables)
        return Labeling(name, variables, (one, W, one, -(W**-1)), (-W, one, W**-1, one))
    if name == "planar":
        variables = ("W", "D")
        W, D = LaurentPoly.var("W", variables), LaurentPoly.var("D", variables)
        return Labeling(name, variables, (D**-1, W, D, -(W**-1)), (-W, D**-1, W**-1, D))
    if name == "alexander":
        x = LaurentPoly.var("x")
        one = LaurentPoly.constant(1, ("x",))
        # x and -x lie left of the under-strand, 1 and -1 right of it
        return Labeling(name, ("x",), (one, -one, x, -x), (one, -one, x, -x))
    raise ValueError(f"unknown labeling {name!r}")


def corner_label(sign: int, corner_index: int, name: LabelingName = "mock") -> LaurentPoly:
    if sign not in (1, -1) or not 0 <= corner_index < 4:
        raise ValueError(f"bad corner ({sign}, {corner_index})")
    return labeling(name).label(sign, corner_index)


@dataclass(frozen=True)
class State:
    """Marker corners keyed by region key, in region order."""
    markers: tuple[tuple[Corner, Corner], ...]

    def dump(self, d: DiagramMap) -> dict[str, tuple[str, int]]:
        return {d.region_by_key(r).name: (c.vertex, c.index) for r, c in self.markers}


def _candidates(sd: StarredDiagram) -> dict[Corner, list[Corner]]:
    free = set(sd.free_crossings())
    return {
        region.key: [c for c in region.corners if c.vertex in free]
        for region in sd.free_regions()
    }


def _hall_ok(regions: list[Corner], candidates: dict[Corner, list[Corner]], used: set[str]) -> bool:
    if not regions:
        return True
    g = nx.Graph()
    top = [("r", r) for r in regions]
    g.add_nodes_from(top)
    for r in regions:
        for c in candidates[r]:
            if c.vertex not in used:
                g.add_edge(("r", r), ("c", c.vertex))
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=top)
    return all(node in matching for node in top)


def enumerate_states(sd: StarredDiagram, rng: random.Random | None = None) -> Iterator[State]:
    """All states, each once.

    Regions are processed by ascending key and corners by ascending index,
    unless ``rng`` is given, which shuffles both orders.
    """
    candidates = _candidates(sd)
    regions = sorted(candidates)
    if len(regions) != len(sd.free_crossings()):
        return
    if rng is not None:
        rng.shuffle(regions)
        for corners in candidates.values():
            rng.shuffle(corners)

    markers: list[tuple[Corner, Corner]] = []
    used: set[str] = set()

    def extend(i: int) -> Iterator[State]:
        if i == len(regions):
            yield State(tuple(sorted(markers)))
            return
        region = regions[i]
        for corner in candidates[region]:
            if corner.vertex in used:
                continue
            used.add(corner.vertex)
            if _hall_ok(regions[i + 1 :], candidates, used):
                markers.append((region, corner))
                yield from extend(i + 1)
                markers.pop()
            used.discard(corner.vertex)

    if _hall_ok(regions, candidates, used):
        yield from extend(0)


def state_weight(sd: StarredDiagram, state: State, name: LabelingName = "mock") -> LaurentPoly:
    lab = labeling(name)
    weight = lab.one()
    for _, corner in state.markers:
        weight = weight * lab.label(sd.base.crossings[corner.vertex].sign, corner.index)
    return weight


def potential(
    sd: StarredDiagram, name: LabelingName = "mock", rng: random.Random | None = None
) -> LaurentPoly:
    """Sum of state weights. Zero when there are no states."""
    total = LaurentPoly.zero(labeling(name).variables)
    for state in enumerate_states(sd, rng):
        total = total + state_weight(sd, state, name)
    return total


def specialize_mock(p: LaurentPoly) -> LaurentPoly:
    """Set B = W^-1."""
    if "B" not in p.variables:
        return p
    return p.substitute({"B": LaurentPoly.var("W") ** -1})
