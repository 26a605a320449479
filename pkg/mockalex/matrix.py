"""Potential matrices and exact permanents."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Literal

import numpy as np
from typing_extensions import assert_never

from mockalex.diagram import Corner
from mockalex.errors import MockAlexError
from mockalex.models import MatrixDoc
from mockalex.poly import LaurentPoly
from mockalex.stars import StarredDiagram
from mockalex.statesum import LabelingName, labeling, potential


Engine = Literal["sparse", "ryser"]


@dataclass(frozen=True)
class PotentialMatrix:
    """Rows are unstarred crossings, columns unstarred regions, both in canonical order."""
    rows: tuple[str, ...]
    columns: tuple[Corner, ...]
    column_names: tuple[str, ...]
    variables: tuple[str, ...]
    entries: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.columns))

    def permuted(self, row_order: Sequence[int], column_order: Sequence[int]) -> PotentialMatrix:
        return PotentialMatrix(
            rows=tuple(self.rows[i] for i in row_order),
            columns=tuple(self.columns[j] for j in column_order),
            column_names=tuple(self.column_names[j] for j in column_order),
            variables=self.variables,
            entries=self.entries[np.ix_(list(row_order), list(column_order))],
        )

    def text_grid(self) -> list[list[str]]:
        return [[p.to_text() for p in row] for row in self.entries]

    def pretty(self, labels: bool = True) -> str:
        grid = self.text_grid()
        if labels:
            grid = [["", *self.column_names]] + [[r, *row] for r, row in zip(self.rows, grid)]
        return render_grid(grid)

    def to_doc(self) -> MatrixDoc:
        return MatrixDoc(
            variables=list(self.variables),
            rows=list(self.rows),
            columns=list(self.column_names),
            entries=self.text_grid(),
        )


def render_grid(grid: Sequence[Sequence[str]]) -> str:
    """Left-aligned columns separated by two spaces, no trailing blanks."""
    if not grid:
        return ""
    widths = [max(len(row[j]) for row in grid) for j in range(len(grid[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid
    )


def potential_matrix(sd: StarredDiagram, name: LabelingName = "mock") -> PotentialMatrix:
    lab = labeling(name)
    d = sd.base
    rows = tuple(sd.free_crossings())
    regions = sd.free_regions()
    row_index = {c: i for i, c in enumerate(rows)}
    entries = np.empty((len(rows), len(regions)), dtype=object)
    for i in range(len(rows)):
        for j in range(len(regions)):
            entries[i, j] = LaurentPoly.zero(lab.variables)
    for j, region in enumerate(regions):
        for corner in region.corners:
            i = row_index.get(corner.vertex)
            if i is not None:
                sign = d.crossings[corner.vertex].sign
                entries[i, j] = entries[i, j] + lab.label(sign, corner.index)
    return PotentialMatrix(
        rows=rows,
        columns=tuple(r.key for r in regions),
        column_names=tuple(r.name for r in regions),
        variables=lab.variables,
        entries=entries,
    )


def _as_array(m: PotentialMatrix | np.ndarray) -> tuple[np.ndarray, tuple[str, ...]]:
    if isinstance(m, PotentialMatrix):
        return m.entries, m.variables
    a = np.asarray(m, dtype=object)
    variables = a.flat[0].variables if a.size else ()
    return a, variables


def permanent(m: PotentialMatrix | np.ndarray, engine: Engine = "sparse") -> LaurentPoly:
    a, variables = _as_array(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MockAlexError(f"permanent needs a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return LaurentPoly.constant(1, variables)
    if engine == "sparse":
        return _permanent_sparse(a, variables)
    elif engine == "ryser":
        return _permanent_ryser(a, variables)
    else:
        assert_never(engine)


def _permanent_ryser(a: np.ndarray, variables: tuple[str, ...]) -> LaurentPoly:
    """Ryser inclusion-exclusion, visiting column subsets in Gray-code order."""
    n = a.shape[0]
    zero = LaurentPoly.zero(variables)
    row_sums = np.array([zero] * n, dtype=object)
    in_subset = [False] * n
    total = zero
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_subset[j]:
            row_sums = row_sums - a[:, j]
        else:
            row_sums = row_sums + a[:, j]
        in_subset[j] = not in_subset[j]
        term = reduce(mul, row_sums)
        total = total - term if sum(in_subset) % 2 else total + term
    return -total if n % 2 else total


def _permanent_sparse(a: np.ndarray, variables: tuple[str, ...]) -> LaurentPoly:
    """Row-by-row expansion over nonzero entries, memoized on the used columns."""
    n = a.shape[0]
    support = [[j for j in range(n) if not a[i, j].is_zero] for i in range(n)]
    zero = LaurentPoly.zero(variables)
    memo: dict[tuple[int, int], LaurentPoly] = {}

    def expand(i: int, used: int) -> LaurentPoly:
        if i == n:
            return LaurentPoly.constant(1, variables)
        key = (i, used)
        if key in memo:
            return memo[key]
        # a later row with every column taken kills the branch
        if any(all(used >> j & 1 for j in support[r]) for r in range(i, n)):
            memo[key] = zero
            return zero
        total = zero
        for j in support[i]:
            if not used >> j & 1:
                rest = expand(i + 1, used | 1 << j)
                if not rest.is_zero:
                    total = total + a[i, j] * rest
        memo[key] = total
        return total

    return expand(0, 0)


def crosscheck(sd: StarredDiagram, name: LabelingName = "mock", engine: Engine = "sparse") -> bool:
    """Whether the state sum equals the permanent of the potential matrix."""
    return potential(sd, name) == permanent(potential_matrix(sd, name), engine)
