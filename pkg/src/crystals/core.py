"""Words, partitions, semistandard tableaux, insertion and dualities.

Conventions used throughout the package:

* A *partition* is a tuple of weakly decreasing positive integers
  (trailing zeros trimmed; the empty partition is ``()``).
* A *word* is a tuple of integers >= 1 over the alphabet [n] = {1,..,n}.
* A *tableau* is a tuple of row tuples: rows weakly increase left to
  right, columns strictly increase top to bottom.  A tableau is
  identified with its column reading word: columns left to right, each
  column read bottom to top (so each column contributes a strictly
  decreasing run).
* A *column factorization* is a tuple of strictly decreasing (possibly
  empty) column words, stored left to right in word order.
"""

from bisect import bisect_right
from functools import cache


# ---------------------------------------------------------------------------
# partitions

def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def normalize_partition(parts) -> tuple[int, ...]:
    """Sort decreasingly and trim zeros."""
    out = tuple(sorted((p for p in parts if p), reverse=True))
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {parts!r}")
    return out


def transpose(parts) -> tuple[int, ...]:
    parts = tuple(parts)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def first_columns_size(parts, i: int) -> int:
    """Number of cells of the partition in its first ``i`` columns."""
    return sum(min(p, i) for p in parts)


def cells_right_of_column(parts, s: int) -> int:
    """Number of cells strictly to the right of column ``s``."""
    return sum(p - s for p in parts if p > s)


def contains(outer, inner) -> bool:
    inner = tuple(inner)
    outer = tuple(outer)
    return len(inner) <= len(outer) and all(
        o >= i for o, i in zip(outer, inner))


@cache
def partitions_of(size: int, max_part: int | None = None):
    """All partitions of ``size`` with parts bounded by ``max_part``."""
    if max_part is None or max_part > size:
        max_part = size
    if size == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions_of(size - first, first):
            out.append((first,) + rest)
    return tuple(out)


@cache
def partitions_in_box(rows: int, cols: int):
    """All partitions with at most ``rows`` parts, each at most ``cols``."""
    if rows == 0 or cols == 0:
        return ((),)
    out = [()]
    for first in range(1, cols + 1):
        for rest in partitions_in_box(rows - 1, first):
            out.append((first,) + rest)
    return tuple(out)


# ---------------------------------------------------------------------------
# words and tableaux

def content(word, n: int) -> tuple[int, ...]:
    """Multiplicity vector (m_1, ..., m_n) of the word."""
    counts = [0] * n
    for x in word:
        counts[x - 1] += 1
    return tuple(counts)


def shape_of(tableau) -> tuple[int, ...]:
    return tuple(len(row) for row in tableau)


def is_tableau(rows) -> bool:
    rows = tuple(tuple(r) for r in rows)
    shape = shape_of(rows)
    if list(shape) != sorted(shape, reverse=True) or 0 in shape:
        return False
    for row in rows:
        if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
            return False
    for i in range(len(rows) - 1):
        if any(rows[i][j] >= rows[i + 1][j] for j in range(len(rows[i + 1]))):
            return False
    return True


def columns_of(tableau) -> tuple[tuple[int, ...], ...]:
    """Columns left to right, each read bottom to top (decreasing)."""
    shape = shape_of(tableau)
    width = shape[0] if shape else 0
    return tuple(
        tuple(tableau[i][c] for i in range(len(shape) - 1, -1, -1)
              if shape[i] > c)
        for c in range(width))


def column_word(tableau) -> tuple[int, ...]:
    return tuple(x for col in columns_of(tableau) for x in col)


def tableau_from_columns(cols) -> tuple[tuple[int, ...], ...]:
    """Reassemble rows from bottom-to-top column words."""
    heights = tuple(len(c) for c in cols)
    depth = max(heights, default=0)
    rows = []
    for i in range(depth):
        # row i (from the top) takes the (h - 1 - i)-th letter of each
        # column of height h > i counted from the bottom
        row = tuple(col[len(col) - 1 - i] for col in cols if len(col) > i)
        rows.append(row)
    return tuple(rows)


def refill_shape(shape, word):
    """Cut ``word`` into the column heights of ``shape`` and reassemble."""
    heights = transpose(shape)
    cols, pos = [], 0
    for h in heights:
        cols.append(tuple(word[pos:pos + h]))
        pos += h
    assert pos == len(word)
    return tableau_from_columns(cols)


def insert(word) -> tuple[tuple[int, ...], ...]:
    """Schensted row insertion of the word, left to right."""
    rows: list[list[int]] = []
    for x in word:
        for row in rows:
            j = bisect_right(row, x)
            if j == len(row):
                row.append(x)
                break
            row[j], x = x, row[j]
        else:
            rows.append([x])
    return tuple(tuple(r) for r in rows)


def restrict(word, lo: int, hi: int) -> tuple[int, ...]:
    """Erase the letters outside the interval [lo, hi]."""
    return tuple(x for x in word if lo <= x <= hi)


# ---------------------------------------------------------------------------
# recording tableaux

def record(cols) -> tuple[tuple[int, ...], ...]:
    """Transposed recording tableau of a column factorization.

    The columns are processed right to left; the cells created while the
    j-th column from the right is inserted are labelled j.  Returned is
    the transpose of that recording, which is semistandard.
    """
    n_cols = len(cols)
    word: tuple[int, ...] = ()
    shapes = [()]
    for j in range(1, n_cols + 1):
        word = tuple(cols[n_cols - j]) + word
        shapes.append(shape_of(insert(word)))
        assert contains(shapes[-1], shapes[-2]), "shapes must be nested"
    final = shapes[-1]
    grid = {}
    for j in range(1, n_cols + 1):
        prev, cur = shapes[j - 1], shapes[j]
        for i in range(len(cur)):
            lo = prev[i] if i < len(prev) else 0
            for c in range(lo, cur[i]):
                grid[(i, c)] = j
    # transpose the filling
    tshape = transpose(final)
    return tuple(
        tuple(grid[(i, c)] for i in range(tshape[c]))
        for c in range(len(tshape)))


# ---------------------------------------------------------------------------
# dualities

def dual_column(col, n: int) -> tuple[int, ...]:
    """Complement of a strictly decreasing column word within [n]."""
    col = tuple(col)
    if any(col[i] <= col[i + 1] for i in range(len(col) - 1)):
        raise ValueError(f"not a column word: {col!r}")
    missing = set(range(1, n + 1)) - set(col)
    return tuple(sorted(missing, reverse=True))


def dual_cols(cols, n: int):
    """Complement every column in [n] and reverse the column order."""
    return tuple(dual_column(c, n) for c in reversed(cols))


def dual_word(word, heights, n: int) -> tuple[int, ...]:
    """The word of :func:`dual_cols` for an explicit factorization.

    ``heights`` lists the column lengths of ``word``, left to right;
    trailing empty columns are allowed and matter for the result.
    """
    cols, pos = [], 0
    for h in heights:
        cols.append(tuple(word[pos:pos + h]))
        pos += h
    if pos != len(word):
        raise ValueError("heights do not exhaust the word")
    return tuple(x for c in dual_cols(cols, n) for x in c)


def dual_partition(parts, n: int, width: int) -> tuple[int, ...]:
    """Complement of the shape in the n x width box, rotated."""
    parts = tuple(parts) + (0,) * (n - len(parts))
    if len(parts) > n or (parts and parts[0] > width):
        raise ValueError("partition does not fit in the box")
    return tuple(sorted((width - p for p in parts if p < width),
                        reverse=True))


def star_word(word, n: int) -> tuple[int, ...]:
    """Replace each letter i by n + 1 - i and reverse the word."""
    return tuple(n + 1 - x for x in reversed(word))


def star_tableau(tableau, n: int):
    """Rotate the tableau by 180 degrees and complement its letters."""
    return tuple(
        tuple(n + 1 - x for x in reversed(row))
        for row in reversed(tableau))


def evacuate(tableau, n: int):
    """The tableau P(t*): Schuetzenberger evacuation within [n]."""
    return insert(star_word(column_word(tableau), n))


def dual_tableau(tableau, n: int, width: int):
    """Columnwise complement of a tableau inside the n x width box.

    The factorization is padded with empty columns up to ``width``
    before complementing within [n] and reversing, so the result has
    shape lam' with lam'_i = width - lam_{n+1-i}.  The same function
    with the roles of alphabet and width exchanged realizes the
    box-complement duality on tableaux over column-count alphabets.
    """
    cols = columns_of(tableau)
    if len(cols) > width:
        raise ValueError("tableau wider than the box")
    cols = cols + ((),) * (width - len(cols))
    return insert(tuple(x for c in dual_cols(cols, n) for x in c))
