"""Named diagrams used by the CLI, the fuzz suites and the tests."""

from __future__ import annotations

from collections.abc import Callable

from mockalex.diagram import Corner, Crossing, DiagramMap, Endpoint, Port, connected_sum, merge_regions, relabel
from mockalex.errors import MockAlexError
from mockalex.stars import StarredDiagram, make_starred


def _edges(*pairs: str) -> list[tuple[Port, Port]]:
    """Edges written as ``"a:2>b:3"``."""
    result = []
    for pair in pairs:
        src, dst = pair.split(">")
        a, s = src.split(":")
        b, t = dst.split(":")
        result.append((Port(a, int(s)), Port(b, int(t))))
    return result


def _positive(*ids: str) -> list[Crossing]:
    return [Crossing(c, 3) for c in ids]


def twist_universe(n: int) -> DiagramMap:
    """Closed two-strand twist with n positive crossings t1..tn."""
    if n < 1:
        raise MockAlexError(f"twist needs n >= 1, got {n}")
    ids = [f"t{i}" for i in range(1, n + 1)]
    edges = []
    for i, c in enumerate(ids):
        nxt = ids[(i + 1) % n]
        edges += _edges(f"{c}:2>{nxt}:3", f"{c}:1>{nxt}:0")
    return DiagramMap(crossings=_positive(*ids), edges=edges)


def twist(n: int) -> StarredDiagram:
    """Twist diagram with stars on the two faces meeting every crossing."""
    return make_starred(twist_universe(n), regions=[Corner("t1", 0), Corner("t1", 2)])


def spiral_universe(n: int) -> DiagramMap:
    if n < 1:
        raise MockAlexError(f"spiral needs n >= 1, got {n}")
    ids = [f"c{i}" for i in range(1, n + 1)]
    edges = _edges(f"{ids[0]}:1>{ids[0]}:0", f"{ids[-1]}:2>{ids[-1]}:3")
    for a, b in zip(ids, ids[1:]):
        edges += _edges(f"{a}:2>{b}:0", f"{b}:1>{a}:3")
    return DiagramMap(crossings=_positive(*ids), edges=edges)


def spiral(n: int) -> StarredDiagram:
    ids = [f"c{i}" for i in range(1, n + 1)]
    return make_starred(spiral_universe(n), regions=[Corner(ids[0], 0), Corner(ids[-1], 2)])


def trefoil() -> DiagramMap:
    return twist_universe(3)


def kink() -> DiagramMap:
    """One-crossing figure-eight curve; its two lobes are the faces t1:0 and t1:2."""
    return twist_universe(1)


def round_unknot() -> DiagramMap:
    """A crossingless circle whose face o:0 lies on its left."""
    return DiagramMap(loops=["o"])


def trivial_knotoid() -> DiagramMap:
    return DiagramMap(
        endpoints=[Endpoint("t", "tail"), Endpoint("h", "head")],
        edges=_edges("t:0>h:0"),
    )


def simple_knotoid() -> DiagramMap:
    """Two-crossing knotoid whose tail-starred polynomial is W^2 + W - W^-1."""
    return DiagramMap(
        crossings=_positive("a", "b"),
        endpoints=[Endpoint("t", "tail"), Endpoint("h", "head")],
        edges=_edges("t:0>a:0", "a:2>b:3", "b:1>a:3", "a:1>b:0", "b:2>h:0"),
    )


def labeled_knotoid() -> DiagramMap:
    """Three-crossing knotoid; tail- and head-starred it gives the K1/K2 pair."""
    return DiagramMap(
        crossings=_positive("a", "b", "c"),
        endpoints=[Endpoint("t", "tail"), Endpoint("h", "head")],
        edges=_edges("t:0>a:0", "a:2>c:0", "c:2>b:3", "b:1>a:3", "a:1>b:0", "b:2>c:3", "c:1>h:0"),
    )


def skeinhold(sign: int = 1) -> DiagramMap:
    """Two arcs crossing once: the first passes under, the second over."""
    over_in = 3 if sign > 0 else 1
    over_out = (over_in + 2) % 4
    return DiagramMap(
        crossings=[Crossing("v", over_in)],
        endpoints=[
            Endpoint("t1", "tail"),
            Endpoint("h1", "head"),
            Endpoint("t2", "tail"),
            Endpoint("h2", "head"),
        ],
        edges=_edges("t1:0>v:0", "v:2>h1:0", f"t2:0>v:{over_in}", f"v:{over_out}>h2:0"),
    )


def torus_knot() -> DiagramMap:
    """Two-crossing knot whose rotation system lives on the torus (f = n = 2)."""
    return DiagramMap(
        crossings=_positive("a", "b"),
        edges=_edges("a:2>b:3", "b:1>a:3", "a:1>b:0", "b:2>a:0"),
    )


def venn_link() -> DiagramMap:
    """Three overlapping circles; the strands around the central triangle p, q, r admit an RIII."""
    return DiagramMap(
        crossings=[*_positive("p"), Crossing("q", 1), *_positive("r", "u", "v", "w")],
        edges=_edges(
            "u:2>q:1", "q:3>p:3", "p:1>v:3", "v:1>u:0",
            "p:2>r:3", "r:1>u:3", "u:1>w:0", "w:2>p:0",
            "v:2>r:0", "r:2>q:0", "q:2>w:3", "w:1>v:0",
        ),
    )


def split_union(first: DiagramMap, second: DiagramMap, first_face: str, second_face: str) -> DiagramMap:
    """Disjoint union with ``second`` placed inside a face of ``first``."""
    a = relabel(first, "L")
    b = relabel(second, "R")
    union = DiagramMap(
        crossings=[*a.crossings.values(), *b.crossings.values()],
        endpoints=[*a.endpoints.values(), *b.endpoints.values()],
        edges=[*a.edges, *b.edges],
        loops=[*a.loops, *b.loops],
        merges=[*a.merges, *b.merges],
    )
    return merge_regions(union, [[f"L{first_face}", f"R{second_face}"]])


def two_trivial_knotoids() -> DiagramMap:
    return split_union(trivial_knotoid(), trivial_knotoid(), "t:0", "t:0")


def split_linkoid() -> DiagramMap:
    """Two disjoint components carrying three knotoid components; admissible."""
    return split_union(skeinhold(), trivial_knotoid(), "t1:0", "t:0")


def trefoil_sum() -> DiagramMap:
    """Two trefoils joined through a nugatory crossing ``j``."""
    return connected_sum(trefoil(), "t1:2", trefoil(), "t1:2")


def trident_trefoil() -> DiagramMap:
    """Trefoil with the outer face and two bigons merged into one region."""
    return merge_regions(trefoil(), [["t1:2", "t1:1", "t2:1"]])


def handle_trefoil() -> DiagramMap:
    return merge_regions(trefoil(), [["t1:0", "t1:1"], ["t1:2", "t2:1"]])


NAMED: dict[str, Callable[[], DiagramMap | StarredDiagram]] = {
    "trefoil": trefoil,
    "kink": kink,
    "round-unknot": round_unknot,
    "trivial-knotoid": trivial_knotoid,
    "simple-knotoid": simple_knotoid,
    "labeled-knotoid": labeled_knotoid,
    "skeinhold": skeinhold,
    "torus-knot": torus_knot,
    "venn-link": venn_link,
    "two-trivial-knotoids": two_trivial_knotoids,
    "split-linkoid": split_linkoid,
    "trefoil-sum": trefoil_sum,
    "trident-trefoil": trident_trefoil,
    "handle-trefoil": handle_trefoil,
}
