"""Star decorations restoring the balance f = n."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from mockalex.diagram import Corner, DiagramMap, Region, Surgery, load_document, parse, to_document
from mockalex.errors import DiagramError, StarError
from mockalex.models import DiagramDocument, StarsDoc


@dataclass(frozen=True)
class StarredDiagram:
    base: DiagramMap
    starred_regions: frozenset[Corner] = frozenset()
    starred_crossings: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.starred_regions and self.starred_crossings:
            raise StarError("stars go either on regions or on crossings, not both")
        keys = {r.key for r in self.base.regions}
        for key in self.starred_regions:
            if key not in keys:
                raise StarError(f"starred region {key} is not a region key")
        for c in self.starred_crossings:
            if c not in self.base.crossings:
                raise StarError(f"unknown starred crossing {c!r}")
        regions = len(self.base.regions) - len(self.starred_regions)
        crossings = self.base.n - len(self.starred_crossings)
        if regions != crossings:
            raise StarError(
                f"unbalanced stars: {regions} unstarred regions but {crossings} unstarred crossings"
            )

    @property
    def star_count(self) -> int:
        return len(self.starred_regions) + len(self.starred_crossings)

    def free_regions(self) -> list[Region]:
        return [r for r in self.base.regions if r.key not in self.starred_regions]

    def free_crossings(self) -> list[str]:
        return [c for c in self.base.crossings if c not in self.starred_crossings]

    def is_starred_region(self, region: Region) -> bool:
        return region.key in self.starred_regions

    def region_names(self) -> list[str]:
        return [self.base.region_by_key(k).name for k in sorted(self.starred_regions)]

    def to_document(self, **extra: Any) -> DiagramDocument:
        if self.starred_crossings:
            stars = StarsDoc(crossings=sorted(self.starred_crossings))
        elif self.starred_regions:
            stars = StarsDoc(regions=self.region_names())
        else:
            stars = None
        return to_document(self.base, stars=stars, **extra)


def _region_key(d: DiagramMap, ref: str | Corner) -> Corner:
    try:
        face = d.resolve_face(ref) if isinstance(ref, str) else d.face_of(Corner(*ref))
    except (DiagramError, KeyError) as e:
        raise StarError(f"unknown region {ref!r}") from e
    return d.region_of(face).key


def make_starred(
    d: DiagramMap,
    regions: Iterable[str | Corner] | None = None,
    crossings: Iterable[str] | None = None,
) -> StarredDiagram:
    region_keys: list[Corner] = [_region_key(d, ref) for ref in regions or ()]
    if len(set(region_keys)) != len(region_keys):
        raise StarError("a region can carry at most one star")
    crossing_ids = list(crossings or ())
    if len(set(crossing_ids)) != len(crossing_ids):
        raise StarError("a crossing can carry at most one star")
    return StarredDiagram(d, frozenset(region_keys), frozenset(crossing_ids))


def _require_knotoid(k: DiagramMap) -> None:
    if k.m != 1:
        raise StarError(f"expected a knotoid diagram with one long component, found {k.m}")


def tail_starred(k: DiagramMap) -> StarredDiagram:
    """Star on the region containing the tail's corner."""
    _require_knotoid(k)
    return StarredDiagram(k, frozenset({k.region_at(Corner(k.tails[0], 0)).key}))


def head_starred(k: DiagramMap) -> StarredDiagram:
    _require_knotoid(k)
    return StarredDiagram(k, frozenset({k.region_at(Corner(k.heads[0], 0)).key}))


def adjacent_pair_starred(link: DiagramMap, edge: str | tuple[str, int]) -> StarredDiagram:
    if link.m != 0:
        raise StarError("adjacent-pair starring needs a link diagram")
    e = link.resolve_edge(edge)
    left = link.region_of(link.left_face(e)).key
    right = link.region_of(link.right_face(e)).key
    if left == right:
        raise StarError(f"edge {e[0]} borders the same region on both sides")
    return StarredDiagram(link, frozenset({left, right}))


def carry_stars(sd: StarredDiagram, surgery: Surgery, validate: bool = True) -> StarredDiagram:
    """Move the decorations of ``sd`` across a surgery on its base map."""
    after = surgery.after
    keys = set()
    for key in sd.starred_regions:
        region = sd.base.region_by_key(key)
        carried = {surgery.carry(f.key) for f in region.faces}
        carried.discard(None)
        if not carried:
            raise StarError(f"starred region {region.name} does not survive the rewrite")
        keys.add(after.region_by_key(min(k for k in carried if k is not None)).key)
    if len(keys) != len(sd.starred_regions):
        raise StarError("two starred regions collapse into one")
    crossings = frozenset(c for c in sd.starred_crossings if c in after.crossings)
    if len(crossings) != len(sd.starred_crossings):
        raise StarError("a starred crossing does not survive the rewrite")
    if validate:
        return StarredDiagram(after, frozenset(keys), crossings)
    return unchecked(after, frozenset(keys), crossings)


def unchecked(base: DiagramMap, regions: frozenset[Corner], crossings: frozenset[str] = frozenset()) -> StarredDiagram:
    """A decorated diagram that skips the balance check (smoothed skein terms)."""
    sd = object.__new__(StarredDiagram)
    object.__setattr__(sd, "base", base)
    object.__setattr__(sd, "starred_regions", regions)
    object.__setattr__(sd, "starred_crossings", crossings)
    return sd


def is_balanced(sd: StarredDiagram) -> bool:
    return len(sd.base.regions) - len(sd.starred_regions) == sd.base.n - len(sd.starred_crossings)


def load(document: DiagramDocument | Mapping[str, Any] | str | Path) -> StarredDiagram | DiagramMap:
    """Parse a document, honouring its ``stars`` block when present."""
    doc = load_document(document)
    d = parse(doc)
    if doc.stars is None:
        return d
    if doc.stars.regions and doc.stars.crossings:
        raise StarError("stars block lists both regions and crossings")
    return make_starred(d, regions=doc.stars.regions, crossings=doc.stars.crossings)
