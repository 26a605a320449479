"""Mock Alexander polynomial and the invariants derived from it."""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from structlog.stdlib import BoundLogger
from typing_extensions import assert_never

from mockalex import catalog
from mockalex.diagram import (
    Corner,
    DiagramMap,
    detect_separating,
    genus,
    glued_component_count,
    is_planar,
    merge_regions,
    mirror_surgery,
    reverse_surgery,
    smooth_surgery,
    switch_surgery,
    to_document,
)
from mockalex.errors import InternalConsistencyError, MockAlexError, MoveError, StarError
from mockalex.log_config import get_logger
from mockalex.matrix import permanent, potential_matrix
from mockalex.models import ConjectureReport, Counterexample, SkeinReport
from mockalex.moves import connect_until_connected, random_knotoid
from mockalex.poly import LaurentPoly, conway_z
from mockalex.stars import StarredDiagram, carry_stars, head_starred, is_balanced, tail_starred, unchecked
from mockalex.statesum import potential


Engine = Literal["states", "permanent", "ryser"]


def _w() -> LaurentPoly:
    return LaurentPoly.var("W")


def mock_alexander(sd: StarredDiagram, engine: Engine = "states") -> LaurentPoly:
    """Potential at B = W^-1. Zero for an unbalanced decoration."""
    if not is_balanced(sd):
        return LaurentPoly.zero(("W",))
    if engine == "states":
        return potential(sd, "mock-specialized")
    elif engine == "permanent":
        return permanent(potential_matrix(sd, "mock-specialized"), "sparse")
    elif engine == "ryser":
        return permanent(potential_matrix(sd, "mock-specialized"), "ryser")
    else:
        assert_never(engine)


def nabla_sharp(k: DiagramMap, engine: Engine = "states") -> LaurentPoly:
    return mock_alexander(tail_starred(k), engine)


def reverse(sd: StarredDiagram) -> StarredDiagram:
    return carry_stars(sd, reverse_surgery(sd.base))


def mirror(sd: StarredDiagram) -> StarredDiagram:
    return carry_stars(sd, mirror_surgery(sd.base))


def reversed_form(p: LaurentPoly) -> LaurentPoly:
    """p(-W^-1), the value predicted for the reversed diagram."""
    return p.substitute({"W": -(_w() ** -1)}) if "W" in p.variables else p


def mirrored_form(p: LaurentPoly) -> LaurentPoly:
    return p.substitute({"W": _w() ** -1}) if "W" in p.variables else p


# skein


Identity = Literal["skein", "equality", "unclassified"]


@dataclass(frozen=True)
class SkeinTriple:
    plus: StarredDiagram
    minus: StarredDiagram
    zero: StarredDiagram
    site: str
    identity: Identity
    case: str
    zero_connected: StarredDiagram | None = None


def _star_case(sd: StarredDiagram, crossing: str) -> str:
    """Name the arrangement of stars around a non-separating site.

    "i": no incident region starred. "ii": two regions meeting along a strand.
    "iii": the two mixed regions. A lone incident star is the linkoid case
    when the diagram has endpoints.
    """
    d = sd.base
    c = d.crossings[crossing]
    starred = {i for i in range(4) if d.region_at(Corner(crossing, i)).key in sd.starred_regions}
    regions = {d.region_at(Corner(crossing, i)).key for i in starred}
    if not starred:
        return "i"
    if len(regions) == 1:
        return "non-separating linkoid" if d.m else "one incident star"
    if starred == set(c.mixed_corners):
        return "iii"
    if len(starred) == 2 and (max(starred) - min(starred)) in (1, 3):
        return "ii"
    return "two incident stars"


def _sides_of_stars(sd: StarredDiagram, zero: StarredDiagram, joint: Corner) -> set[int] | None:
    """Components of the smoothed diagram carrying each star, or None if the joint region is starred."""
    if joint in sd.starred_regions:
        return None
    d0 = zero.base
    return {d0.component_index(key.vertex) for key in zero.starred_regions}


def skein_triple(sd: StarredDiagram, crossing: str) -> SkeinTriple:
    d = sd.base
    c = d.resolve_crossing(crossing)
    if crossing in sd.starred_crossings:
        raise StarError(f"skein site {crossing} is starred")
    other = carry_stars(sd, switch_surgery(d, crossing))
    plus, minus = (sd, other) if c.sign > 0 else (other, sd)
    p = plus.base.crossings[crossing]
    r_in = plus.base.region_at(Corner(crossing, p.in_in_corner)).key
    r_out = plus.base.region_at(Corner(crossing, p.out_out_corner)).key

    def triple(zero: StarredDiagram, identity: Identity, case: str, connected: StarredDiagram | None = None) -> SkeinTriple:
        return SkeinTriple(plus, minus, zero, crossing, identity, case, connected)

    if r_in in plus.starred_regions and r_out in plus.starred_regions:
        return triple(unchecked(smooth_surgery(plus.base, crossing).after, frozenset()), "equality", "in-out starred")
    zero = carry_stars(plus, smooth_surgery(plus.base, crossing), validate=False)
    if plus.starred_crossings or d.merges:
        return triple(zero, "unclassified", "decorated surface")
    split = zero.base.k > d.k

    if not split:
        if r_in == r_out:
            return triple(zero, "unclassified", "self-touching site")
        return triple(zero, "skein", _star_case(plus, crossing))

    if d.m == 0:
        if r_in != r_out or not detect_separating(d, crossing).nugatory:
            return triple(zero, "unclassified", "split smoothing")
        sides = _sides_of_stars(plus, zero, r_in)
        if sides is None or len(sides) < 2:
            return triple(zero, "equality", "nugatory")
        return triple(zero, "skein", "nugatory split stars", _connect(zero))

    long_parts = [sum(1 for v in comp if v in zero.base.tails) for comp in zero.base.components]
    if zero.base.k == 2 and long_parts == [1, 1]:
        return triple(zero, "skein", "split linkoid", _connect(zero))
    return triple(zero, "unclassified", "split smoothing")


def _connect(zero: StarredDiagram) -> StarredDiagram | None:
    try:
        return connect_until_connected(zero)
    except (MoveError, StarError):
        return None


def verify_skein(t: SkeinTriple, engine: Engine = "states") -> SkeinReport:
    plus = mock_alexander(t.plus, engine)
    minus = mock_alexander(t.minus, engine)
    raw = mock_alexander(t.zero, engine)
    connected = mock_alexander(t.zero_connected, engine) if t.zero_connected is not None else None
    lhs = plus - minus
    report = SkeinReport(
        identity=t.identity,
        case=t.case,
        site=t.site,
        nabla_plus=plus.to_text(),
        nabla_minus=minus.to_text(),
        nabla_zero_raw=raw.to_text(),
        nabla_zero_connected=connected.to_text() if connected is not None else None,
        lhs=lhs.to_text(),
    )
    if t.identity == "equality":
        report.rhs = "0"
        report.verdict = lhs.is_zero
    elif t.identity == "skein":
        zero = connected if connected is not None else raw
        rhs = conway_z() * zero
        report.rhs = rhs.to_text()
        report.verdict = lhs == rhs
    return report


# closures and merges


@dataclass(frozen=True)
class VirtualClosure:
    torus: DiagramMap
    nabla_v: LaurentPoly
    nabla_ext: LaurentPoly
    nabla_int: LaurentPoly


def virtual_closure(k: DiagramMap, engine: Engine = "states") -> VirtualClosure:
    """Join the endpoints of a knotoid through a handle."""
    ext = tail_starred(k)
    internal = head_starred(k)
    tail_face = k.face_of(Corner(k.tails[0], 0))
    head_face = k.face_of(Corner(k.heads[0], 0))
    if tail_face == head_face:
        raise StarError("head and tail share a region")
    torus = merge_regions(k, [[tail_face.key, head_face.key]])
    nabla_v = mock_alexander(StarredDiagram(torus), engine)
    nabla_ext = mock_alexander(ext, engine)
    nabla_int = mock_alexander(internal, engine)
    if nabla_v != nabla_ext + nabla_int:
        raise InternalConsistencyError(f"closure {nabla_v} differs from {nabla_ext} + {nabla_int}")
    return VirtualClosure(torus, nabla_v, nabla_ext, nabla_int)


def _require_planar_link(link: DiagramMap) -> None:
    if link.m != 0 or link.k != 1 or not is_planar(link):
        raise MockAlexError("expected a connected link diagram in the sphere")


def _merged_polynomial(link: DiagramMap, sets: Sequence[Iterable[str]], engine: Engine) -> tuple[DiagramMap, LaurentPoly]:
    merged = merge_regions(link, sets)
    g = genus(merged)
    if g not in (1, 2) or glued_component_count(merged) != 1:
        raise InternalConsistencyError(f"merged diagram realizes genus {g}")
    try:
        sd = StarredDiagram(merged)
    except StarError as e:
        raise MockAlexError(f"merged diagram is not admissible: {e}") from None
    return merged, mock_alexander(sd, engine)


def trident_polynomial(link: DiagramMap, faces: Sequence[str], engine: Engine = "states") -> LaurentPoly:
    _require_planar_link(link)
    if len(faces) != 3:
        raise MockAlexError(f"a trident glues three faces, got {len(faces)}")
    return _merged_polynomial(link, [faces], engine)[1]


def handle_polynomial(link: DiagramMap, pairs: Sequence[tuple[str, str]], engine: Engine = "states") -> LaurentPoly:
    _require_planar_link(link)
    if len(pairs) != 2:
        raise MockAlexError(f"two handles need two face pairs, got {len(pairs)}")
    return _merged_polynomial(link, [list(p) for p in pairs], engine)[1]


# families


FamilyKind = Literal["twist", "spiral"]


def family(kind: FamilyKind, n: int) -> StarredDiagram:
    if kind == "twist":
        if n < 1:
            raise MockAlexError(f"twist family starts at n = 1, got {n}")
        return catalog.twist(n)
    elif kind == "spiral":
        if n < 2:
            raise MockAlexError(f"spiral family starts at n = 2, got {n}")
        return catalog.spiral(n)
    else:
        assert_never(kind)


def twist_closed_form(n: int) -> LaurentPoly:
    """W^n + (-1)^n W^-n."""
    w = _w()
    return w**n + (-1) ** n * w ** (-n)


def spiral_sequence(n: int) -> list[LaurentPoly]:
    """Values for K_{-1}, K_0, ..., K_n from the recursion with seeds 0, 1, z."""
    z = conway_z()
    values = [LaurentPoly.zero(("W",)), LaurentPoly.constant(1, ("W",))]
    while len(values) < n + 2:
        values.append(z * values[-1] + values[-2])
    return values


def spiral_closed_form(n: int) -> LaurentPoly:
    return spiral_sequence(n)[n + 1]


def recursion_holds(values: Sequence[LaurentPoly]) -> bool:
    """Whether v[i+1] = v[i-1] + z v[i] along the whole sequence."""
    z = conway_z()
    return all(values[i + 1] == values[i - 1] + z * values[i] for i in range(1, len(values) - 1))


# split links


def split_link_vanishes(link: DiagramMap, edge: str | tuple[str, int]) -> bool:
    """Adjacent stars on a split link give the zero polynomial."""
    if link.m != 0 or link.k < 2:
        raise MockAlexError("expected a split link diagram")
    e = link.resolve_edge(edge)
    left = link.region_of(link.left_face(e)).key
    right = link.region_of(link.right_face(e)).key
    if left == right:
        raise StarError(f"edge {e[0]} borders the same region on both sides")
    return mock_alexander(unchecked(link, frozenset({left, right}))).is_zero


# conjectures


def conjecture1_holds(k: DiagramMap) -> tuple[bool, str, str]:
    """Tail-starred potential at (W, B) against head-starred at (-B, -W)."""
    lhs = potential(tail_starred(k))
    w, b = LaurentPoly.var("W", ("W", "B")), LaurentPoly.var("B", ("W", "B"))
    rhs = potential(head_starred(k)).substitute({"W": -b, "B": -w})
    return lhs == rhs, lhs.to_text(), rhs.to_text()


def conjecture2_holds(k: DiagramMap) -> tuple[bool, str, str]:
    lhs = mock_alexander(tail_starred(k))
    rhs = reversed_form(mock_alexander(head_starred(k)))
    return lhs == rhs, lhs.to_text(), rhs.to_text()


def conjecture_harness(
    count: int,
    seed: int,
    size_bound: int,
    log: BoundLogger | None = None,
) -> ConjectureReport:
    """Compare both sides of the two knotoid conjectures on random knotoids.

    Failures are recorded with the offending diagram, never raised.
    """
    log = (log or get_logger()).bind(seed=seed, count=count, size_bound=size_bound)
    rng = random.Random(seed)
    report = ConjectureReport(count=count, seed=seed, size_bound=size_bound)
    for i in range(count):
        k = random_knotoid(rng, size_bound)
        ok1, lhs1, rhs1 = conjecture1_holds(k)
        ok2, lhs2, rhs2 = conjecture2_holds(k)
        if ok1:
            report.conjecture1_passed += 1
        else:
            report.conjecture1_failed += 1
            report.counterexamples.append(_counterexample("conjecture1", lhs1, rhs1, k))
        if ok2:
            report.conjecture2_passed += 1
        else:
            report.conjecture2_failed += 1
            report.counterexamples.append(_counterexample("conjecture2", lhs2, rhs2, k))
        if not (ok1 and ok2):
            log.warning("Conjecture counterexample", index=i, n=k.n)
    log.info(
        "Conjecture harness done",
        conjecture1_failed=report.conjecture1_failed,
        conjecture2_failed=report.conjecture2_failed,
    )
    return report


def _counterexample(identity: str, lhs: str, rhs: str, k: DiagramMap) -> Counterexample:
    return Counterexample(identity=identity, detail=f"{lhs} != {rhs}", diagram=to_document(k))
