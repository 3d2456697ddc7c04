"""Rigged configurations and their bijections with paths and LR tableaux.

A rigged configuration is stored as a tuple of *levels*; level k (index
k-1) is a tuple of strings (length, rigging) sorted by (length desc,
rigging desc), with trailing empty levels trimmed.  The context needed
to interpret riggings is a sequence ``rects`` of (rows, cols) pairs in
the order R_1, ..., R_L where R_1 belongs to the rightmost tensor
factor.

LR tableaux over the alphabet [N], N = sum of the row counts of R, are
ordinary tableaux identified with their column reading words.
"""

from functools import cache
from itertools import permutations, product

from .core import (column_word, columns_of, contains, first_columns_size,
                   cells_right_of_column, dual_tableau, insert, is_tableau,
                   partitions_in_box, partitions_of, record, restrict,
                   shape_of, tableau_from_columns)
from .crystal import enumerate_rectangle, eps_word, phi_word
from .energy import energy, sigma_at

INF = None  # sentinel for an unbounded selection


# ---------------------------------------------------------------------------
# vacancy numbers, cocharge and basic maps

def nu_of(rc):
    """The underlying sequence of partitions."""
    return tuple(tuple(ln for ln, _ in level) for level in rc)


def vacancy(nu, rects, k: int, i: int) -> int:
    """Vacancy number of strings of length i at level k.

    ``nu`` is a sequence of partitions; ``rects`` supplies one width per
    rectangle of height k.
    """
    heights = tuple(s for r, s in rects if r == k)

    def q(parts):
        return first_columns_size(parts, i)

    below = nu[k - 2] if k >= 2 and k - 2 < len(nu) else ()
    here = nu[k - 1] if k - 1 < len(nu) else ()
    above = nu[k] if k < len(nu) else ()
    return q(below) - 2 * q(here) + q(above) + q(heights)


def normalize_rc(levels):
    """Canonical form: strings sorted, trailing empty levels trimmed."""
    out = [tuple(sorted((tuple(s) for s in level), key=lambda s: (-s[0], -s[1])))
           for level in levels]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def cocharge(rc) -> int:
    """cc(nu) plus the sum of all riggings."""
    nu = nu_of(rc)
    total = sum(rig for level in rc for _, rig in level)
    for k in range(len(nu)):
        here = nu[k]
        above = nu[k + 1] if k + 1 < len(nu) else ()
        width = here[0] if here else 0
        for i in range(1, width + 1):
            a = sum(1 for p in here if p >= i)
            b = sum(1 for p in above if p >= i)
            total += a * (a - b)
    return total


def comp(rc, rects):
    """Complement every rigging within its m x P box (an involution)."""
    nu = nu_of(rc)
    out = []
    for k, level in enumerate(rc, start=1):
        new_level = []
        for length in sorted({ln for ln, _ in level}, reverse=True):
            p = vacancy(nu, rects, k, length)
            riggings = [rig for ln, rig in level if ln == length]
            new_level.extend((length, p - rig) for rig in riggings)
        out.append(new_level)
    return normalize_rc(out)


def wedge_rc(rc, n: int):
    """Reverse the levels 1..n-1, transporting the riggings."""
    levels = list(rc) + [()] * (n - 1 - len(rc))
    if len(levels) != n - 1:
        raise ValueError("configuration has more than n - 1 levels")
    return normalize_rc(reversed(levels))


def is_admissible(rc, lam, rects) -> bool:
    """Sizes, vacancy nonnegativity and rigging bounds for RC(lam, R)."""
    nu = nu_of(rc)
    depth = max((r for r, _ in rects), default=0)
    depth = max(depth, len(lam), len(nu))
    for k in range(1, depth + 1):
        here = nu[k - 1] if k - 1 < len(nu) else ()
        want = -sum(lam[:k]) + sum(s * min(r, k) for r, s in rects)
        if sum(here) != want:
            return False
        for i in range(1, (here[0] if here else 0) + 1):
            if vacancy(nu, rects, k, i) < 0:
                return False
    for k, level in enumerate(rc, start=1):
        for length, rig in level:
            if not 0 <= rig <= vacancy(nu, rects, k, length):
                return False
    return True


def enumerate_rc(lam, rects):
    """All rigged configurations in RC(lam, R)."""
    lam = tuple(lam)
    if sum(lam) != sum(r * s for r, s in rects):
        return ()
    depth = max(max((r for r, _ in rects), default=0), len(lam))
    sizes = [-sum(lam[:k]) + sum(s * min(r, k) for r, s in rects)
             for k in range(1, depth + 1)]
    if any(size < 0 for size in sizes):
        return ()
    while sizes and sizes[-1] == 0:
        sizes.pop()
    out = []
    for nu in product(*(partitions_of(size) for size in sizes)):
        boxes = []
        for k, parts in enumerate(nu, start=1):
            for length in sorted(set(parts), reverse=True):
                p = vacancy(nu, rects, k, length)
                if p < 0:
                    break
                m = sum(1 for q in parts if q == length)
                boxes.append((k, length, m, p))
            else:
                continue
            break
        else:
            for riggings in product(
                    *(partitions_in_box(m, p) for _, _, m, p in boxes)):
                levels = [[] for _ in nu]
                for (k, length, m, _), rig in zip(boxes, riggings):
                    rig = tuple(rig) + (0,) * (m - len(rig))
                    levels[k - 1].extend((length, x) for x in rig)
                out.append(normalize_rc(levels))
    return tuple(out)


def rc_to_json(rc):
    return [[{"len": ln, "rig": rig} for ln, rig in level] for level in rc]


def rc_from_json(data):
    return normalize_rc(
        [(entry["len"], entry["rig"]) for entry in level] for level in data)


# ---------------------------------------------------------------------------
# LR tableaux

def lr_blocks(rects):
    """Per rectangle: (first letter, rows, cols) of its subalphabet."""
    out, start = [], 1
    for rows, cols in rects:
        out.append((start, rows, cols))
        start += rows
    return tuple(out)


def lr_content(rects) -> tuple[int, ...]:
    """Letter multiplicities: each of the r_j letters occurs s_j times."""
    return tuple(s for r, s in rects for _ in range(r))


def is_lr(t, rects) -> bool:
    """Tableau of partition shape, content gamma(R), eta-balanced."""
    if not is_tableau(t):
        return False
    gamma = lr_content(rects)
    word = column_word(t)
    counts = [0] * len(gamma)
    for x in word:
        if not 1 <= x <= len(gamma):
            return False
        counts[x - 1] += 1
    if tuple(counts) != gamma:
        return False
    for start, rows, _ in lr_blocks(rects):
        for i in range(start, start + rows - 1):
            if eps_word(i, word) or phi_word(i, word):
                return False
    return True


def enumerate_lr(lam, rects):
    """All LR tableaux of shape lam and rectangle sequence R."""
    lam = tuple(lam)
    gamma = lr_content(rects)
    if sum(lam) != sum(gamma):
        return ()

    def extend(shape, letter):
        if letter == len(gamma):
            yield (shape,) if shape == lam else ()
            return
        size = gamma[letter]
        # all horizontal strip extensions of the shape inside lam
        rows = len(lam)
        padded = shape + (0,) * (rows - len(shape))

        def rowfill(i, left, upper):
            if i == rows:
                if left == 0:
                    yield ()
                return
            lo, hi = padded[i], min(lam[i], upper)
            for take in range(min(left, hi - lo) + 1):
                for rest in rowfill(i + 1, left - take, padded[i]):
                    yield (padded[i] + take,) + rest

        for grown in rowfill(0, size, lam[0]):
            grown = tuple(p for p in grown if p)
            for chain in extend(grown, letter + 1):
                if chain:
                    yield (shape,) + chain

    out = []
    for chain in extend((), 0):
        rows = [[] for _ in lam]
        for letter in range(1, len(gamma) + 1):
            prev, cur = chain[letter - 1], chain[letter]
            for i in range(len(cur)):
                lo = prev[i] if i < len(prev) else 0
                rows[i].extend([letter] * (cur[i] - lo))
        t = tuple(tuple(row) for row in rows if row)
        if is_lr(t, rects):
            out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# the columnwise bijection, tableau version

def _select(state, nu, ctx, c, cp):
    """Maximal singular strings at levels c-1 down to cp, weakly
    decreasing in length; INF-bounded at the top, new strings length 0."""
    chosen = []
    bound = INF
    for k in range(c - 1, cp - 1, -1):
        level = state[k - 1] if k - 1 < len(state) else ()
        best_len, best_idx = 0, None
        for idx, (ln, rig) in enumerate(level):
            if (bound is INF or ln <= bound) and ln >= best_len \
                    and rig == vacancy(nu, ctx, k, ln):
                best_len, best_idx = ln, idx
        chosen.append((k, best_len, best_idx))
        bound = best_len
    return chosen


def _apply(state, chosen, ctx_new):
    """Add one box to each chosen string; keep them singular."""
    touched = []
    for k, length, idx in chosen:
        while len(state) < k:
            state.append([])
        if idx is None:
            state[k - 1].append([1, 0])
            idx = len(state[k - 1]) - 1
        else:
            state[k - 1][idx][0] += 1
        touched.append((k, idx))
    nu = tuple(tuple(ln for ln, _ in level) for level in state)
    for k, idx in touched:
        state[k - 1][idx][1] = vacancy(nu, ctx_new, k, state[k - 1][idx][0])


def _snapshot(state, ctx):
    nu = tuple(tuple(ln for ln, _ in level) for level in state)
    return tuple(
        tuple(sorted(((vacancy(nu, ctx, k, ln), ln, rig)
                      for ln, rig in level), key=lambda s: (-s[1], -s[2])))
        for k, level in enumerate(state, start=1))


def _lr_contexts(rects):
    """Per letter x of the relabelled tableau: (block j, column in the
    labelling tableau, rectangle context for the vacancy numbers)."""
    out = []
    done = []
    for rows, cols in rects:
        for pos in range(1, rows * cols + 1):
            cp, h = (pos - 1) // rows + 1, (pos - 1) % rows + 1
            if h == rows:
                pieces = [(cp, rows)]
            else:
                pieces = [(cp, h)]
                if cp > 1:
                    pieces.append((cp - 1, rows - h))
            # the pieces are already transposed, matching RC(lam^t, R^t)
            ctx = done + pieces
            out.append((len(done) + 1, cp, tuple(ctx)))
        done.append((cols, rows))
    return out


def relabel_lr(t, rects):
    """Standardize block letters: the i-th occurrence (left to right) of
    the a-th smallest letter of block j becomes offset + (i-1) r_j + a."""
    positions = {}
    for r, row in enumerate(t):
        for c, x in enumerate(row):
            positions.setdefault(x, []).append((c, r))
    new_rows = [list(row) for row in t]
    offset = 0
    for start, rows, cols in lr_blocks(rects):
        for a in range(1, rows + 1):
            cells = sorted(positions.get(start + a - 1, []))
            for i, (c, r) in enumerate(cells, start=1):
                new_rows[r][c] = offset + (i - 1) * rows + a
        offset += rows * cols
    return tuple(tuple(row) for row in new_rows)


def phi_bar_lr(t, rects, trace=False):
    """Columnwise bijection from an LR tableau to RC(lam^t, R^t).

    With ``trace`` also returns the per-letter steps: (letter, context,
    selected (level, length) pairs, annotated snapshot).
    """
    if not is_lr(t, rects):
        raise ValueError("not an LR tableau for the given rectangles")
    big = relabel_lr(t, rects)
    column_of = {}
    for row in big:
        for c, x in enumerate(row, start=1):
            column_of[x] = c
    state: list[list[list[int]]] = []
    steps = []
    ctx_prev: tuple = ()
    prev_sel: dict[int, int] = {}
    prev_block = prev_col = 0
    for x, (block, cp, ctx) in enumerate(_lr_contexts(rects), start=1):
        c = column_of[x]
        assert c >= cp
        nu = tuple(tuple(ln for ln, _ in level) for level in state)
        chosen = _select(state, nu, ctx_prev, c, cp)
        sel = {k: ln for k, ln, _ in chosen}
        if block == prev_block and cp == prev_col + 1 and rects[block - 1][0] == 1:
            # appending along a single-row rectangle: selections slide
            for k, ln in sel.items():
                if k - 1 in prev_sel:
                    assert ln <= prev_sel[k - 1]
        _apply(state, chosen, ctx)
        if trace:
            steps.append((x, ctx, tuple(sorted(sel.items())),
                          _snapshot(state, ctx)))
        ctx_prev, prev_sel, prev_block, prev_col = ctx, sel, block, cp
    rc = normalize_rc(state)
    return (rc, steps) if trace else rc


def phi_tilde_lr(t, rects, trace=False):
    """The rigging-complemented variant of :func:`phi_bar_lr`."""
    res = phi_bar_lr(t, rects, trace)
    rc, steps = res if trace else (res, None)
    rc = comp(rc, tuple((s, r) for r, s in rects))
    return (rc, steps) if trace else rc


# ---------------------------------------------------------------------------
# the columnwise bijection, path version

def rects_of_path(b):
    """Rectangle sequence (R_1, ..., R_L) of a tensor element, R_1 being
    the rightmost factor."""
    out = []
    for t in reversed(b):
        shape = shape_of(t)
        if len(set(shape)) > 1:
            raise ValueError("factors must be rectangular")
        out.append((len(shape), shape[0] if shape else 0))
    return tuple(out)


def _path_positions(rects):
    """Forward processing order: the factors right to left, each factor
    row by row top-down and each row right to left.  Yields the factor
    index i, the column j from the right, the height cp and the
    rectangle context for intermediate vacancy numbers."""
    out = []
    done = []
    for r, s in rects:
        for cp in range(1, r + 1):
            for j in range(1, s + 1):
                if j == s:
                    pieces = [(cp, s)]
                else:
                    pieces = [(cp, j)]
                    if cp > 1:
                        pieces.append((cp - 1, s - j))
                out.append((len(done) + 1, j, cp, tuple(done + pieces)))
        done.append((r, s))
    return out


def phi_bar_path(b, trace=False):
    """Bijection from a path to RC(lam, R)."""
    rects = rects_of_path(b)
    L = len(b)
    state: list[list[list[int]]] = []
    steps = []
    ctx_prev: tuple = ()
    cols_by_factor = {
        i: tuple(reversed(columns_of(b[L - i]))) for i in range(1, L + 1)}
    for i, j, cp, ctx in _path_positions(rects):
        col = cols_by_factor[i][j - 1]          # stored bottom to top
        c = col[len(col) - cp]
        if c < cp:
            raise ValueError("letter below its height")
        nu = tuple(tuple(ln for ln, _ in lvl) for lvl in state)
        chosen = _select(state, nu, ctx_prev, c, cp)
        _apply(state, chosen, ctx)
        if trace:
            steps.append(((i, j, c), ctx,
                          tuple(sorted((k, ln) for k, ln, _ in chosen)),
                          _snapshot(state, ctx)))
        ctx_prev = ctx
    rc = normalize_rc(state)
    return (rc, steps) if trace else rc


def phi_tilde_path(b):
    return comp(phi_bar_path(b), rects_of_path(b))


def _peel_column(state, done, r):
    """Remove the letters of a single column of height r, bottom up.

    ``done`` are the rectangles still to be peeled.  At height cp the
    minimal weakly increasing chain of singular strings starting at
    level cp is shortened by one box each; the first level with no
    admissible singular string is the recovered letter.  Returns the
    column letters bottom to top.
    """
    letters = []
    for cp in range(r, 0, -1):
        ctx = tuple(done + [(cp, 1)])
        ctx_prev = tuple(done + ([(cp - 1, 1)] if cp > 1 else []))
        nu = tuple(tuple(ln for ln, _ in level) for level in state)
        chosen = []
        floor = 1
        k = cp
        while True:
            level = state[k - 1] if k - 1 < len(state) else ()
            best_len, best_idx = INF, None
            for idx, (ln, rig) in enumerate(level):
                if ln >= floor and (best_len is INF or ln <= best_len) \
                        and rig == vacancy(nu, ctx, k, ln):
                    best_len, best_idx = ln, idx
            if best_idx is None:
                c = k
                break
            chosen.append((k, best_len, best_idx))
            floor = best_len
            k += 1
        for k, _, idx in chosen:
            state[k - 1][idx][0] -= 1
        for k, length, idx in chosen:
            if state[k - 1][idx][0] == 0:
                continue
            new_nu = tuple(tuple(ln for ln, _ in lvl) for lvl in state)
            p = vacancy(new_nu, ctx_prev, k, state[k - 1][idx][0])
            if p < 0:
                raise ValueError("inadmissible rigged configuration")
            state[k - 1][idx][1] = p
        for k in range(len(state)):
            state[k] = [s for s in state[k] if s[0] > 0]
        if letters and c >= letters[-1]:
            raise ValueError("inadmissible rigged configuration")
        letters.append(c)
    return tuple(letters)


def phi_bar_inverse(rc, rects):
    """Inverse of :func:`phi_bar_path`: recover the path from RC(lam, R).

    The leftmost factor is peeled column by column, leftmost column
    first; splitting a column off the leftmost rectangle leaves the
    rigged configuration unchanged, so each column is removed with the
    single-column rule of :func:`_peel_column`.
    """
    state = [[list(s) for s in level] for level in rc]
    factors = []
    rem = list(rects)
    while rem:
        r, s = rem.pop()
        cols = []
        for j in range(s, 0, -1):
            done = rem + ([(r, j - 1)] if j > 1 else [])
            cols.append(_peel_column(state, done, r))
        factors.append(tableau_from_columns(tuple(cols)))
    if any(st for level in state for st in level):
        raise ValueError("inadmissible rigged configuration")
    b = tuple(factors)
    if rects_of_path(b) != rects or not all(is_tableau(t) for t in b):
        raise ValueError("inadmissible rigged configuration")
    return b


# ---------------------------------------------------------------------------
# paths from LR tableaux, conjugation automorphisms and charge

def preimage_path(t, rects):
    """The highest weight path over R^t whose recording tableau is t.

    The letter at height h of the j-th column from the right of the
    i-th factor from the right equals the column of t holding the
    corresponding occurrence of the letter of block i, column j.
    """
    if not is_lr(t, rects):
        raise ValueError("not an LR tableau for the given rectangles")
    cells = {}
    for r, row in enumerate(t):
        for c, x in enumerate(row, start=1):
            cells.setdefault(x, []).append(c)
    factors = []
    letter = 1
    for rows, cols in rects:
        factor_cols = []
        for j in range(rows):
            factor_cols.append(tuple(sorted(cells[letter + j], reverse=True)))
        letter += rows
        factors.append(tableau_from_columns(tuple(reversed(factor_cols))))
    return tuple(reversed(factors))


def record_path(b):
    """The transposed recording tableau of a path, one label per column."""
    return record([c for t in b for c in columns_of(t)])


def tau(p: int, t, rects):
    """Exchange rectangles p and p+1 through the local isomorphism on a
    preimage path; returns (new tableau, new rectangle sequence)."""
    n = shape_of(t)[0] if t else 1
    b = preimage_path(t, rects)
    swapped = sigma_at(p, b, n)
    new_rects = list(rects)
    new_rects[p - 1], new_rects[p] = new_rects[p], new_rects[p - 1]
    return record_path(swapped), tuple(new_rects)


def _d_pair(t, rects, j: int) -> int:
    """Cells beyond column max(mu_j, mu_{j+1}) in the insertion shape of
    the restriction to blocks j and j+1."""
    blocks = lr_blocks(rects)
    lo = blocks[j - 1][0]
    hi = blocks[j][0] + blocks[j][1] - 1
    shape = shape_of(insert(restrict(column_word(t), lo, hi)))
    return cells_right_of_column(shape, max(rects[j - 1][1], rects[j][1]))


def charge(t, rects, method: str = "direct") -> int:
    """Generalized charge of an LR tableau.

    ``direct`` averages the pairwise statistics over all L! rectangle
    orderings reached through :func:`tau`; ``energy`` evaluates minus
    the energy of the preimage path.
    """
    L = len(rects)
    if method == "energy":
        n = shape_of(t)[0] if t else 1
        return -energy(preimage_path(t, rects), n)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    if L > 6:
        raise ValueError("direct charge needs L <= 6")
    reached = {tuple(range(L)): (t, tuple(rects))}
    frontier = list(reached)
    while frontier:
        nxt = []
        for order in frontier:
            cur_t, cur_r = reached[order]
            for p in range(1, L):
                new_order = list(order)
                new_order[p - 1], new_order[p] = new_order[p], new_order[p - 1]
                new_order = tuple(new_order)
                if new_order not in reached:
                    reached[new_order] = tau(p, cur_t, cur_r)
                    nxt.append(new_order)
        frontier = nxt
    total = 0
    for order in permutations(range(L)):
        ot, orr = reached[order]
        total += sum((L - j) * _d_pair(ot, orr, j) for j in range(1, L))
    fact = 1
    for m in range(2, L + 1):
        fact *= m
    assert total % fact == 0
    return total // fact


def wedge_lr(t, rects, n: int):
    """Box-complement duality on LR tableaux: shape complemented in the
    N x n box, widths complemented to n - mu_j."""
    big_n = sum(r for r, _ in rects)
    return (dual_tableau(t, big_n, n),
            tuple((r, n - s) for r, s in rects))


# ---------------------------------------------------------------------------
# the height-exchanging embedding

@cache
def _pair_table(rect_left, rect_right, n):
    table = {}
    for u in enumerate_rectangle(*rect_left, n):
        for v in enumerate_rectangle(*rect_right, n):
            key = insert(column_word(u) + column_word(v))
            table[key] = (u, v)
    return table


def i_emb(u, v, n: int):
    """Move a box between column heights: B^{a,s} x B^{b,s} with a > b
    goes to the insertion-equal pair in B^{b+1,s} x B^{a-1,s}."""
    (a, s), (b, s2) = rects_of_path((u, v))[::-1]
    if s != s2 or a <= b + 1:
        raise ValueError("need equal widths and left height exceeding "
                         "right height by at least 2")
    key = insert(column_word(u) + column_word(v))
    try:
        return _pair_table((b + 1, s), (a - 1, s), n)[key]
    except KeyError:
        raise ValueError("pair not in the image of the embedding") from None


def j_emb(rc, rects, n: int):
    """Counterpart of :func:`i_emb` on rigged configurations: one
    singular string of length s is added at levels r+1, ..., 2n-r-1."""
    r, s = rects[-2]
    if rects[-1] != (2 * n - r, s):
        raise ValueError("last two rectangles must have heights r, 2n-r")
    new_rects = rects[:-2] + ((r + 1, s), (2 * n - r - 1, s))
    state = [list(level) for level in rc]
    while len(state) < 2 * n - r - 1:
        state.append([])
    for k in range(r + 1, 2 * n - r):
        state[k - 1] = list(state[k - 1]) + [(s, 0)]
    nu = tuple(tuple(ln for ln, _ in level) for level in state)
    for k in range(r + 1, 2 * n - r):
        level = list(state[k - 1])
        level[-1] = (s, vacancy(nu, new_rects, k, s))
        state[k - 1] = level
    return normalize_rc(state), new_rects
