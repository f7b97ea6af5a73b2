"""Latin squares and rectangles, plus the operators the representation
constructions are assembled from: circulant and idempotent squares,
completion of rectangles via bipartite matching (Hall's condition always
holds), prescribed-row squares, symbol translation, and the row-duplication
operator that turns a latin square into an array where exactly one chosen set
of rows agrees everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence


@dataclass(frozen=True)
class LatinRectangle:
    """r x n array: every row a permutation of the symbol set, no symbol twice in a column."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells:
            raise ValueError("rectangle must have at least one row")
        n = len(self.cells[0])
        symbols = frozenset(self.cells[0])
        if len(symbols) != n:
            raise ValueError("row 1 repeats a symbol")
        if len(self.cells) > n:
            raise ValueError("more rows than columns")
        for i, row in enumerate(self.cells):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has wrong length")
            if frozenset(row) != symbols:
                raise ValueError(f"row {i + 1} is not a permutation of the symbol set")
        for j in range(n):
            col = [row[j] for row in self.cells]
            if len(set(col)) != len(col):
                raise ValueError(f"column {j + 1} repeats a symbol")

    @property
    def r(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells[0])

    @property
    def symbols(self) -> frozenset[int]:
        return frozenset(self.cells[0])

    @property
    def is_square(self) -> bool:
        return self.r == self.n

    def row(self, i: int) -> tuple[int, ...]:
        """1-based row access."""
        return self.cells[i - 1]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.cells)


class LatinSquare(LatinRectangle):
    def __post_init__(self):
        super().__post_init__()
        if self.r != self.n:
            raise ValueError("latin square must have as many rows as columns")


def square(cells: Sequence[Sequence[int]]) -> LatinSquare:
    return LatinSquare(tuple(tuple(row) for row in cells))


def rectangle(cells: Sequence[Sequence[int]]) -> LatinRectangle:
    return LatinRectangle(tuple(tuple(row) for row in cells))


def circulant(n: int) -> LatinSquare:
    """cell(i,j) = j-i+1 if j >= i else n+1+j-i; row 1 is (1, 2, ..., n).

    >>> circulant(3).cells
    ((1, 2, 3), (3, 1, 2), (2, 3, 1))
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    return square([[(j - i) % n + 1 for j in range(n)] for i in range(n)])


def idempotent(n: int) -> LatinSquare:
    """An idempotent latin square of order n (diagonal = 1..n); exists for all n != 2.

    Odd orders use the commutative quasigroup x*y = (x+y)(n+1)/2 mod n.
    Even orders n >= 4 prolong the odd square of order n-1 along an
    off-diagonal transversal, which keeps the diagonal intact.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n == 2:
        raise ValueError("no idempotent latin square of order 2")
    if n % 2 == 1:
        return square(_odd_idempotent_cells(n))

    m = n - 1
    base = _odd_idempotent_cells(m)
    # transversal at (i, i+1 mod m): symbols i + c distinct mod m, never on the diagonal
    cells = [list(row) + [0] for row in base]
    cells.append([0] * n)
    for i in range(m):
        j = (i + 1) % m
        cells[i][n - 1] = cells[i][j]
        cells[m][j] = cells[i][j]
        cells[i][j] = n
    cells[m][n - 1] = n
    return square(cells)


def _odd_idempotent_cells(n: int) -> list[list[int]]:
    c = (n + 1) // 2
    return [[((i + j) * c - 1) % n + 1 for j in range(1, n + 1)] for i in range(1, n + 1)]


def shift_symbols(rect: LatinRectangle, offset: int) -> LatinRectangle:
    """Translate every symbol by a nonnegative offset."""
    if offset < 0:
        raise ValueError("offset must be >= 0")
    cells = tuple(tuple(x + offset for x in row) for row in rect.cells)
    return LatinSquare(cells) if rect.is_square else LatinRectangle(cells)


def _extend_rows(n: int, symbols: Sequence[int], used_per_column: list[set[int]], rows_needed: int) -> list[tuple[int, ...]]:
    """Add ``rows_needed`` rows, each a permutation of ``symbols`` avoiding the
    used symbols per column, via augmenting-path bipartite matching.

    Columns are scanned in ascending order and symbols in ascending order, so
    the result is deterministic.  Used internally by hall_extend and by the
    constructions that extend improper rectangles (duplicated column symbols
    only shrink the availability sets, Hall's condition still holds there).
    """
    syms = sorted(symbols)
    out = []
    for _ in range(rows_needed):
        avail = [[s for s in syms if s not in used_per_column[j]] for j in range(n)]
        match_col: dict[int, int] = {}  # symbol -> column
        match_sym: list[int | None] = [None] * n

        def try_assign(j: int, banned: set[int]) -> bool:
            for s in avail[j]:
                if s in banned:
                    continue
                banned.add(s)
                if s not in match_col or try_assign(match_col[s], banned):
                    match_col[s] = j
                    match_sym[j] = s
                    return True
            return False

        for j in range(n):
            if not try_assign(j, set()):
                raise RuntimeError("internal invariant violated: no system of distinct representatives")
        row = tuple(match_sym)  # type: ignore[arg-type]
        out.append(row)
        for j, s in enumerate(row):
            used_per_column[j].add(s)
    return out


def hall_extend(rect: LatinRectangle) -> LatinSquare:
    """Complete a latin rectangle to a latin square containing it as a prefix.

    >>> hall_extend(rectangle([[1, 2, 3]])).row(1)
    (1, 2, 3)
    """
    if rect.is_square:
        raise ValueError("rectangle is already square; nothing to extend")
    used = [set(row[j] for row in rect.cells) for j in range(rect.n)]
    new_rows = _extend_rows(rect.n, sorted(rect.symbols), used, rect.n - rect.r)
    return LatinSquare(rect.cells + tuple(new_rows))


def prescribe_rows(rows: Sequence[Sequence[int]], n: int) -> LatinSquare:
    """Latin square of order n over symbols [1..n] whose first rows are exactly ``rows``."""
    cells = tuple(tuple(r) for r in rows)
    for i, row in enumerate(cells):
        if sorted(row) != list(range(1, n + 1)):
            raise ValueError(f"prescribed rows conflict: row {i + 1} is not a permutation of [1..{n}]")
    try:
        rect = LatinRectangle(cells)
    except ValueError as e:
        raise ValueError(f"prescribed rows conflict: {e}") from e
    if rect.r == n:
        return LatinSquare(cells)
    return hall_extend(rect)


@dataclass(frozen=True)
class RowDuplicatedArray:
    """n x (n-k+1) array built from a latin square by duplicating one row into
    the positions of S: rows agree in every column iff both indices lie in S,
    and differ in every column otherwise."""

    cells: tuple[tuple[int, ...], ...]
    dup_rows: frozenset[int]  # 1-based row indices

    def __post_init__(self):
        rows = self.cells
        for (i, a), (j, b) in combinations(enumerate(rows, start=1), 2):
            in_s = i in self.dup_rows and j in self.dup_rows
            if in_s:
                if a != b:
                    raise ValueError(f"duplicated rows {i},{j} differ")
            elif any(x == y for x, y in zip(a, b)):
                raise ValueError(f"rows {i},{j} agree in some column but are not both duplicated")


def duplicate_rows(sq: LatinSquare, dup: Sequence[int], n: int) -> RowDuplicatedArray:
    """Expand an order n-k+1 latin square to n rows, writing row s_1's content
    into every position of ``dup`` = {s_1 < ... < s_k} and shifting the
    remaining source rows downward in order.
    """
    s = sorted(dup)
    k = len(s)
    if k < 2:
        raise ValueError("need at least two duplicate positions")
    if len(set(s)) != k or s[0] < 1 or s[-1] > n:
        raise ValueError("duplicate positions must be distinct indices in [1..n]")
    if sq.n != n - k + 1:
        raise ValueError(f"source order {sq.n} does not match n-k+1 = {n - k + 1}")

    rows = []
    for i in range(1, n + 1):
        if i in s[1:]:
            rows.append(sq.row(s[0]))
        else:
            shift = sum(1 for t in s[1:] if t < i)
            rows.append(sq.row(i - shift))
    return RowDuplicatedArray(tuple(rows), frozenset(s))
