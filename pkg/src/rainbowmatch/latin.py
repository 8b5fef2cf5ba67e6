"""Latin squares: construction, parsing, transversal search, exhaustive
small-order sweeps, and conversion to the partite rainbow setting.

Symbols are 1-based (cells hold 1..n); rows and columns are 0-based.  The
text interchange format is: first line n, then n lines of n space-separated
symbols; parsing is strict.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import _backend
from .core import EdgeFamilySystem, make_system

ENUMERATION_GUARD = 5


class LatinFormatError(ValueError):
    """Strict square-file parse failure."""


class GuardError(RuntimeError):
    """Parameters exceed a hard enumeration guard."""


@dataclass(frozen=True)
class LatinSquare:
    """Order-n square over symbols 1..n, each once per row and column."""

    n: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple(tuple(int(c) for c in row) for row in self.cells)
        )
        full = set(range(1, self.n + 1))
        if len(self.cells) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.cells)}")
        for i, row in enumerate(self.cells):
            if len(row) != self.n:
                raise ValueError(f"row {i} has {len(row)} cells, expected {self.n}")
            if set(row) != full:
                raise ValueError(f"row {i} is not a permutation of 1..{self.n}")
        for j in range(self.n):
            if {row[j] for row in self.cells} != full:
                raise ValueError(f"column {j} is not a permutation of 1..{self.n}")

    def transpose(self) -> "LatinSquare":
        return LatinSquare(self.n, tuple(zip(*self.cells)))

    def permute_symbols(self, perm) -> "LatinSquare":
        """Apply symbol map s -> perm[s-1] (perm is a permutation of 1..n)."""
        return LatinSquare(
            self.n, tuple(tuple(perm[c - 1] for c in row) for row in self.cells)
        )


@dataclass(frozen=True)
class Transversal:
    """Cells with pairwise-distinct rows, columns and symbols."""

    cells: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple((int(r), int(c)) for r, c in self.cells)
        )

    def __len__(self) -> int:
        return len(self.cells)

    def is_valid_for(self, square: LatinSquare) -> bool:
        rows = [r for r, _ in self.cells]
        cols = [c for _, c in self.cells]
        syms = [square.cells[r][c] for r, c in self.cells]
        return (
            len(set(rows)) == len(rows)
            and len(set(cols)) == len(cols)
            and len(set(syms)) == len(syms)
        )


def cyclic(n: int) -> LatinSquare:
    """The addition-table square: cell (i, j) holds ((i + j) mod n) + 1."""
    if n < 1:
        raise ValueError("order must be positive")
    return LatinSquare(
        n, tuple(tuple((i + j) % n + 1 for j in range(n)) for i in range(n))
    )


def random_latin(n: int, seed: int) -> LatinSquare:
    """Seeded row-by-row completion with backtracking.

    Each row is searched as a random-preference permutation consistent with
    the columns filled so far; any Latin rectangle extends to a square, so
    no cross-row backtracking is needed.  Deterministic per seed; the
    distribution is not uniform.
    """
    if n < 1:
        raise ValueError("order must be positive")
    rng = random.Random(seed)
    col_used = [set() for _ in range(n)]
    rows = []
    for _ in range(n):
        order = list(range(1, n + 1))
        rng.shuffle(order)
        row = _complete_row(n, order, col_used)
        assert row is not None, "Latin rectangle extension must exist"
        for j, s in enumerate(row):
            col_used[j].add(s)
        rows.append(tuple(row))
    return LatinSquare(n, tuple(rows))


def _complete_row(n, preference, col_used):
    row = []
    used = set()

    def extend(j):
        if j == n:
            return True
        for s in preference:
            if s not in used and s not in col_used[j]:
                row.append(s)
                used.add(s)
                if extend(j + 1):
                    return True
                row.pop()
                used.remove(s)
        return False

    return row if extend(0) else None


def to_hypergraph(square: LatinSquare) -> EdgeFamilySystem:
    """3-partite view (rows, columns, symbols): one family per symbol,
    holding that symbol's n cells as (row, column, symbol-1) edges.

    Rainbow selections of size t correspond bijectively to partial
    transversals of size t: picks from distinct families carry distinct
    symbol coordinates, so disjointness is exactly the transversal
    condition.
    """
    n = square.n
    families = []
    for symbol in range(1, n + 1):
        edges = tuple(
            (i, j, symbol - 1)
            for i in range(n)
            for j in range(n)
            if square.cells[i][j] == symbol
        )
        families.append(edges)
    return make_system((n, n, n), families)


def max_transversal(
    square: LatinSquare, target: int | None = None
) -> tuple[int, Transversal]:
    """Exact maximum partial transversal size with a witness.

    Backtracks over rows (pick a column compatible in column and symbol, or
    skip the row), pruning on remaining rows.  ``target`` stops the search
    early once that size is reached.
    """
    n = square.n
    goal = n if target is None else min(target, n)
    flat = [square.cells[i][j] - 1 for i in range(n) for j in range(n)]
    best, picks, _ = _backend.solve_transversal(flat, n, goal)
    return best, Transversal(tuple(picks))


def enumerate_all(n: int):
    """Yield every Latin square of order n exactly once, in lexicographic
    order of the row-concatenated symbol sequence (n <= 5)."""
    if n > ENUMERATION_GUARD:
        raise GuardError(
            f"exhaustive enumeration is guarded at order {ENUMERATION_GUARD}"
        )
    if n < 1:
        raise ValueError("order must be positive")
    for first in itertools.permutations(range(1, n + 1)):
        yield from _complete_square(n, [first])


def _complete_square(n, rows):
    if len(rows) == n:
        yield LatinSquare(n, tuple(rows))
        return
    col_used = [set(row[j] for row in rows) for j in range(n)]
    for row in _extend_rows(n, col_used, [], set()):
        rows.append(tuple(row))
        yield from _complete_square(n, rows)
        rows.pop()


def _extend_rows(n, col_used, row, used):
    # all completions of the next row, symbols tried ascending per cell
    j = len(row)
    if j == n:
        yield list(row)
        return
    for s in range(1, n + 1):
        if s not in used and s not in col_used[j]:
            row.append(s)
            used.add(s)
            yield from _extend_rows(n, col_used, row, used)
            row.pop()
            used.remove(s)


@dataclass(frozen=True)
class SweepReport:
    """Exhaustive transversal scan over every square of one order."""

    order: int
    squares_seen: int
    min_max_transversal: int
    min_witness: LatinSquare
    brualdi_stein_violation: LatinSquare | None
    ryser_violation: LatinSquare | None


def sweep(n: int, workers: int = 1) -> SweepReport:
    """Scan every order-n square; report the minimum max-transversal size,
    the first square attaining it, and any square falling below the n-1
    (Brualdi-Stein) or, for odd n, n (Ryser) thresholds.

    The scan is sharded by first row; shards are independent, so the result
    is identical for any worker count.
    """
    if n > ENUMERATION_GUARD:
        raise GuardError(f"sweep is guarded at order {ENUMERATION_GUARD}")
    if n < 1:
        raise ValueError("order must be positive")
    shards = list(itertools.permutations(range(1, n + 1)))

    def scan(first_row):
        count = 0
        cur_min = n + 1
        witness = None
        for square in _complete_square(n, [first_row]):
            count += 1
            size, _ = max_transversal(square, target=cur_min)
            if size < cur_min:
                cur_min = size
                witness = square
        return count, cur_min, witness

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, shards))
    else:
        results = [scan(first) for first in shards]

    total = sum(count for count, _, _ in results)
    overall = min(cur_min for _, cur_min, _ in results)
    min_witness = next(w for _, cur_min, w in results if cur_min == overall)
    return SweepReport(
        order=n,
        squares_seen=total,
        min_max_transversal=overall,
        min_witness=min_witness,
        brualdi_stein_violation=min_witness if overall < n - 1 else None,
        ryser_violation=min_witness if n % 2 == 1 and overall < n else None,
    )


# -- text interchange format -------------------------------------------------

def format_latin(square: LatinSquare) -> str:
    lines = [str(square.n)]
    lines.extend(" ".join(str(c) for c in row) for row in square.cells)
    return "\n".join(lines) + "\n"


def parse_latin(text: str) -> LatinSquare:
    """Strict parse: exact line and token counts, symbols in 1..n."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise LatinFormatError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError as exc:
        raise LatinFormatError(f"first line must be the order, got {lines[0]!r}") from exc
    if n < 1:
        raise LatinFormatError("order must be positive")
    if len(lines) != n + 1:
        raise LatinFormatError(f"expected {n} rows, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != n:
            raise LatinFormatError(f"row {i} has {len(tokens)} entries, expected {n}")
        try:
            row = tuple(int(t) for t in tokens)
        except ValueError as exc:
            raise LatinFormatError(f"row {i} has a non-integer entry") from exc
        if any(not 1 <= s <= n for s in row):
            raise LatinFormatError(f"row {i} has symbols outside 1..{n}")
        rows.append(row)
    try:
        return LatinSquare(n, tuple(rows))
    except ValueError as exc:
        raise LatinFormatError(str(exc)) from exc
