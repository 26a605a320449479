"""Alexander determinant and black-hole state sum, used as independent oracles."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from mockalex.diagram import DiagramMap, Edge, is_planar
from mockalex.errors import DiagramError
from mockalex.invariants import Engine, mock_alexander, skein_triple, verify_skein
from mockalex.matrix import PotentialMatrix
from mockalex.poly import LaurentPoly, divide_exact, doteq, unit_normalize
from mockalex.stars import adjacent_pair_starred
from mockalex.statesum import enumerate_states, labeling, state_weight


AlexanderMatrix = PotentialMatrix

_X = ("x",)


def _require_link(link: DiagramMap) -> None:
    if link.m != 0 or link.loops or link.k != 1 or not is_planar(link):
        raise DiagramError("expected a connected link diagram in the sphere")


def alexander_matrix(link: DiagramMap) -> AlexanderMatrix:
    """Crossing by face matrix of Alexander labels; every row sums to zero."""
    _require_link(link)
    lab = labeling("alexander")
    rows = tuple(sorted(link.crossings))
    row_index = {c: i for i, c in enumerate(rows)}
    entries = np.empty((len(rows), len(link.faces)), dtype=object)
    entries.fill(LaurentPoly.zero(_X))
    for j, face in enumerate(link.faces):
        for corner in face.corners:
            i = row_index[corner.vertex]
            entries[i, j] = entries[i, j] + lab.label(link.crossings[corner.vertex].sign, corner.index)
    return AlexanderMatrix(
        rows=rows,
        columns=tuple(f.key for f in link.faces),
        column_names=tuple(f.name for f in link.faces),
        variables=_X,
        entries=entries,
    )


def bareiss_determinant(a: np.ndarray) -> LaurentPoly:
    """Fraction-free elimination; every division is exact over the Laurent ring."""
    m = np.array(a, dtype=object, copy=True)
    n = m.shape[0]
    if n == 0:
        return LaurentPoly.constant(1, _X)
    sign = 1
    prev = LaurentPoly.constant(1, _X)
    for k in range(n - 1):
        if m[k, k].is_zero:
            swap = next((i for i in range(k + 1, n) if not m[i, k].is_zero), None)
            if swap is None:
                return LaurentPoly.zero(_X)
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = divide_exact(m[i, j] * m[k, k] - m[i, k] * m[k, j], prev)
        prev = m[k, k]
    return m[n - 1, n - 1] if sign > 0 else -m[n - 1, n - 1]


def _adjacent_columns(link: DiagramMap, edge: str | tuple[str, int]) -> tuple[Edge, Sequence[int]]:
    e = link.resolve_edge(edge)
    left, right = link.left_face(e), link.right_face(e)
    if left == right:
        raise DiagramError(f"edge {e[0]} borders the same face on both sides")
    return e, [j for j, f in enumerate(link.faces) if f.key not in (left.key, right.key)]


def alexander_determinant(link: DiagramMap, edge: str | tuple[str, int]) -> LaurentPoly:
    m = alexander_matrix(link)
    _, keep = _adjacent_columns(link, edge)
    return unit_normalize(bareiss_determinant(m.entries[:, keep]))


def alexander_state_sum(link: DiagramMap, edge: str | tuple[str, int]) -> LaurentPoly:
    """Alexander-labelled states, each signed by (-1) to the number of black holes.

    A black hole is a marker in the corner between the two incoming strands.
    """
    _require_link(link)
    _adjacent_columns(link, edge)
    sd = adjacent_pair_starred(link, edge)
    total = LaurentPoly.zero(_X)
    for state in enumerate_states(sd):
        holes = sum(1 for _, c in state.markers if c.index == link.crossings[c.vertex].in_in_corner)
        weight = state_weight(sd, state, "alexander")
        total = total - weight if holes % 2 else total + weight
    return unit_normalize(total)


def conway_crosscheck(link: DiagramMap, edge: str | tuple[str, int], engine: Engine = "states") -> bool:
    """Mock polynomial against the determinant at x = W^2, plus the Conway skein at every crossing."""
    sd = adjacent_pair_starred(link, edge)
    mock = mock_alexander(sd, engine)
    det = alexander_determinant(link, edge)
    if not doteq(det.rescale("x", "W", 2), mock):
        return False
    for crossing in sorted(link.crossings):
        if verify_skein(skein_triple(sd, crossing), engine).verdict is False:
            return False
    return True
