from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from crystals.core import (
    column_word, columns_of, content, contains, dual_cols, dual_column,
    dual_partition, dual_tableau, dual_word, evacuate, first_columns_size,
    insert, is_partition, is_tableau, partitions_in_box, partitions_of,
    record, restrict, shape_of, star_tableau, star_word, tableau_from_columns,
    transpose)


# ---------------------------------------------------------------------------
# oracles

def knuth_moves(word):
    """All words one elementary Knuth transposition away from ``word``."""
    out = set()
    w = list(word)
    for i in range(len(w) - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        # xzy ~ zxy with x <= y < z  (swap first two letters)
        if b > a and a <= c < b:       # w = x z y -> z x y
            out.add(tuple(w[:i] + [b, a, c] + w[i + 3:]))
        if a > b and b <= c < a:       # w = z x y -> x z y
            out.add(tuple(w[:i] + [b, a, c] + w[i + 3:]))
        # yzx ~ yxz with x < y <= z  (swap last two letters)
        if b > c and c < a <= b:       # w = y z x -> y x z
            out.add(tuple(w[:i] + [a, c, b] + w[i + 3:]))
        if c > b and b < a <= c:       # w = y x z -> y z x
            out.add(tuple(w[:i] + [a, c, b] + w[i + 3:]))
    return out


def knuth_class(word):
    seen = {tuple(word)}
    frontier = [tuple(word)]
    while frontier:
        nxt = []
        for w in frontier:
            for v in knuth_moves(w):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def brute_tableaux(shape, n):
    """All semistandard tableaux of the given shape over [n]."""
    cells = [(i, j) for i, p in enumerate(shape) for j in range(p)]
    out = []

    def grow(filled):
        if len(filled) == len(cells):
            rows = tuple(
                tuple(filled[(i, j)] for j in range(p))
                for i, p in enumerate(shape))
            out.append(rows)
            return
        i, j = cells[len(filled)]
        lo = 1
        if j > 0:
            lo = max(lo, filled[(i, j - 1)])
        if i > 0:
            lo = max(lo, filled[(i - 1, j)] + 1)
        for x in range(lo, n + 1):
            filled[(i, j)] = x
            grow(filled)
            del filled[(i, j)]

    grow({})
    return out


def all_columns(n):
    cols = [()]
    for k in range(1, n + 1):
        for c in combinations(range(1, n + 1), k):
            cols.append(tuple(sorted(c, reverse=True)))
    return cols


# ---------------------------------------------------------------------------
# partitions

def test_partition_basics():
    assert is_partition((3, 2, 2))
    assert not is_partition((2, 3))
    assert transpose((4, 2, 1)) == (3, 2, 1, 1)
    assert transpose(transpose((5, 3, 3, 1))) == (5, 3, 3, 1)
    assert first_columns_size((4, 2, 1), 2) == 5
    assert contains((3, 2), (2, 2)) and not contains((3, 2), (1, 1, 1))


def test_partition_enumeration():
    assert len(partitions_of(6)) == 11
    box = partitions_in_box(2, 2)
    assert sorted(box) == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]
    # q-binomial sanity: number of partitions in an m x p box
    assert len(partitions_in_box(3, 4)) == 35


# ---------------------------------------------------------------------------
# insertion

def test_insert_two_column_example():
    t = insert((4, 2, 6, 5, 2, 1))
    assert columns_of(t) == ((6, 4, 2, 1), (5, 2))
    assert t == ((1, 2), (2, 5), (4,), (6,))


def test_insert_column_word_is_fixed_point():
    col = (6, 4, 2, 1)
    assert columns_of(insert(col)) == (col,)
    # a tableau inserts to itself
    t = ((1, 1, 2), (2, 3, 3), (4, 4, 5))
    assert insert(column_word(t)) == t


@given(st.lists(st.integers(1, 4), max_size=6))
def test_insert_is_knuth_class_invariant(letters):
    word = tuple(letters)
    cls = knuth_class(word)
    t = insert(word)
    assert is_tableau(t)
    assert column_word(t) in cls
    assert all(insert(w) == t for w in cls)


def test_insert_concatenation_morphism():
    u, v = (3, 1, 2), (2, 2, 1, 3)
    assert insert(column_word(insert(u)) + column_word(insert(v))) \
        == insert(u + v)


def test_columns_roundtrip():
    t = ((1, 2, 2), (2, 3), (4,))
    assert tableau_from_columns(columns_of(t)) == t


# ---------------------------------------------------------------------------
# recording

def test_record_single_column():
    assert record(((4, 2, 1),)) == ((1, 1, 1),)


def test_record_shape_matches_insert():
    for cols in product(all_columns(3), repeat=3):
        word = tuple(x for c in cols for x in c)
        assert shape_of(record(cols)) == transpose(shape_of(insert(word)))


def test_record_content_counts_column_heights():
    cols = ((3, 1), (2,), (3, 2, 1))
    qt = record(cols)
    n_cols = len(cols)
    flat = [x for row in qt for x in row]
    for j in range(1, n_cols + 1):
        # letter j records the j-th column from the right
        assert flat.count(j) == len(cols[n_cols - j])


# ---------------------------------------------------------------------------
# dualities

def test_dual_word_paper_example():
    cols = ((4, 2), (6, 5, 2, 1))
    assert dual_cols(cols, 6) == ((4, 3), (6, 5, 3, 1))
    dualized = tuple(x for c in dual_cols(cols, 6) for x in c)
    assert columns_of(insert(dualized)) == ((6, 4, 3, 1), (5, 3))


def test_dual_column_edge_cases():
    assert dual_column((3, 2, 1), 3) == ()
    assert dual_column((), 3) == (3, 2, 1)
    with pytest.raises(ValueError):
        dual_column((1, 2), 3)


def test_dual_word_needs_exhaustive_heights():
    with pytest.raises(ValueError):
        dual_word((2, 1), (1,), 3)
    assert dual_word((2, 1), (1, 1), 3) == (3, 2, 3, 1)


def test_dual_shape_rule():
    n = width = 3
    for shape in partitions_in_box(n, width):
        for t in brute_tableaux(shape, n):
            dt = dual_tableau(t, n, width)
            assert shape_of(dt) == dual_partition(shape, n, width)
            # involution
            assert dual_tableau(dt, n, width) == insert(column_word(t))


def test_dual_commutes_with_insert():
    n = 3
    for cols in product(all_columns(n), repeat=2):
        word = tuple(x for c in cols for x in c)
        left = insert(tuple(x for c in dual_cols(cols, n) for x in c))
        assert left == dual_tableau(insert(word), n, len(cols))


def test_star_word_trivial():
    assert star_word((1, 2), 2) == (1, 2)
    assert star_word(star_word((3, 1, 2, 2), 4), 4) == (3, 1, 2, 2)


def test_evacuation_involution_and_rectangles():
    # a self-complementary rectangle is fixed
    assert evacuate(((1, 1), (2, 2)), 2) == ((1, 1), (2, 2))
    # rectangular tableaux: evacuation equals rotate-and-complement
    for t in brute_tableaux((2, 2), 3):
        assert evacuate(t, 3) == star_tableau(t, 3)
    for t in brute_tableaux((2, 1), 3):
        ev = evacuate(t, 3)
        assert shape_of(ev) == (2, 1)
        assert evacuate(ev, 3) == t


def test_star_dual_commute():
    n = 3
    for cols in product(all_columns(n), repeat=2):
        via_dual_first = insert(star_word(
            tuple(x for c in dual_cols(cols, n) for x in c), n))
        starred_cols = tuple(star_word(c, n) for c in reversed(cols))
        via_star_first = insert(
            tuple(x for c in dual_cols(starred_cols, n) for x in c))
        assert via_dual_first == via_star_first


def test_record_dual():
    # transposed recording of the vee-star factorization is the box
    # complement of the transposed recording
    n = 3
    for n_cols in (1, 2, 3):
        for cols in product(all_columns(n), repeat=n_cols):
            qt = record(cols)
            vs_cols = tuple(
                star_word(dual_column(c, n), n) for c in cols)
            assert record(vs_cols) == dual_tableau(qt, n_cols, n)


# ---------------------------------------------------------------------------
# restriction

def test_restrict():
    assert restrict((3, 1, 4, 2), 1, 2) == (1, 2)
    assert restrict((3, 1, 4, 2), 1, 4) == (3, 1, 4, 2)


@given(st.lists(st.integers(1, 4), max_size=5))
def test_restrict_knuth_compatible(letters):
    word = tuple(letters)
    for v in knuth_moves(word):
        assert insert(restrict(v, 1, 2)) == insert(restrict(word, 1, 2))
        assert insert(restrict(v, 2, 4)) == insert(restrict(word, 2, 4))


def test_content():
    assert content((1, 3, 1), 3) == (2, 0, 1)
