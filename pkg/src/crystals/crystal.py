"""Classical and affine type-A crystal structure.

Elements of B^{r,s} are semistandard tableaux of shape (s^r) over [n].
Tensor elements are tuples of tableaux stored in display order
b_L, ..., b_1 — the rightmost factor acts first, so the concatenation of
the factors' column reading words carries the crystal structure of the
whole tensor product.  Rectangle signatures passed around as ``rects``
are aligned with the display order of the factors.
"""

import os
from functools import cache
from itertools import product

from .core import (column_word, content, insert, refill_shape, restrict,
                   shape_of)

DEFAULT_MAX_NODES = 200_000


def max_nodes() -> int:
    return int(os.environ.get("CRYSTAL_MAX_NODES", DEFAULT_MAX_NODES))


# ---------------------------------------------------------------------------
# signature rule on words

def signature(i: int, word):
    """Positions of the surviving '-' and '+' signs of the i-signature.

    Letter i contributes '-', letter i+1 contributes '+'; adjacent "+-"
    pairs cancel until the pattern is minuses followed by pluses.
    """
    # cancel "+-" (a '+' immediately left of a '-') repeatedly
    stack: list[tuple[str, int]] = []
    for pos, x in enumerate(word):
        if x == i + 1:                       # phi/eps of a letter: '+'
            stack.append(("+", pos))
        elif x == i:                         # '-'
            if stack and stack[-1][0] == "+":
                stack.pop()
            else:
                stack.append(("-", pos))
    minus = [pos for sgn, pos in stack if sgn == "-"]
    plus = [pos for sgn, pos in stack if sgn == "+"]
    return minus, plus


def phi_word(i: int, word) -> int:
    return len(signature(i, word)[0])


def eps_word(i: int, word) -> int:
    return len(signature(i, word)[1])


def f_word(i: int, word):
    """Lowering operator on a word; None when the string is exhausted."""
    minus, _ = signature(i, word)
    if not minus:
        return None
    pos = minus[-1]
    return word[:pos] + (i + 1,) + word[pos + 1:]


def e_word(i: int, word):
    """Raising operator on a word; None when the string is exhausted."""
    _, plus = signature(i, word)
    if not plus:
        return None
    pos = plus[0]
    return word[:pos] + (i,) + word[pos + 1:]


# ---------------------------------------------------------------------------
# tableaux and tensor elements

def tensor_word(factors) -> tuple[int, ...]:
    return tuple(x for t in factors for x in column_word(t))


def _split_like(factors, word):
    out, pos = [], 0
    for t in factors:
        size = sum(shape_of(t))
        out.append(refill_shape(shape_of(t), word[pos:pos + size]))
        pos += size
    return tuple(out)


def f_tableau(i: int, t):
    w = f_word(i, column_word(t))
    return None if w is None else refill_shape(shape_of(t), w)


def e_tableau(i: int, t):
    w = e_word(i, column_word(t))
    return None if w is None else refill_shape(shape_of(t), w)


def f_tensor(i: int, factors):
    w = f_word(i, tensor_word(factors))
    return None if w is None else _split_like(factors, w)


def e_tensor(i: int, factors):
    w = e_word(i, tensor_word(factors))
    return None if w is None else _split_like(factors, w)


def eps_phi(i: int, factors) -> tuple[int, int]:
    minus, plus = signature(i, tensor_word(factors))
    return len(plus), len(minus)


def weight(factors, n: int) -> tuple[int, ...]:
    return content(tensor_word(factors), n)


# ---------------------------------------------------------------------------
# distinguished elements

def yamanouchi(shape):
    """Highest weight tableau: row i filled with the letter i."""
    return tuple(tuple(i + 1 for _ in range(p))
                 for i, p in enumerate(shape))


def u_of_brs(r: int, s: int):
    return yamanouchi((s,) * r)


def b_natural(r: int, s: int, n: int):
    """The tableau whose i-th row from the bottom is filled with n+1-i."""
    return tuple(tuple(n - r + i + 1 for _ in range(s)) for i in range(r))


# ---------------------------------------------------------------------------
# promotion and affine operators

@cache
def promotion_inv(t, n: int):
    """Inverse promotion on a rectangular tableau over [n].

    Restricted to [n-1] the result is P(t|_[2,n]) - 1; the letter n
    fills the remaining cells of the rectangle.
    """
    shape = shape_of(t)
    if len(set(shape)) > 1:
        raise ValueError("promotion needs a rectangular tableau")
    width = shape[0] if shape else 0
    lowered = insert(tuple(
        x - 1 for x in restrict(column_word(t), 2, n)))
    rows = [row + (n,) * (width - len(row)) for row in lowered]
    rows += [(n,) * width] * (len(shape) - len(rows))
    out = tuple(rows)
    assert shape_of(out) == shape
    return out


@cache
def promotion(t, n: int):
    """Promotion: the order-n inverse of :func:`promotion_inv`."""
    out = t
    for _ in range(n - 1):
        out = promotion_inv(out, n)
    return out


def f_affine(i: int, factors, n: int):
    """Affine lowering operator f_i, 0 <= i <= n-1, on a tensor element.

    For i = 0 this is psi^{-1} o f_1 o psi with the promotion applied
    factorwise.
    """
    if i != 0:
        return f_tensor(i, factors)
    shifted = tuple(promotion(t, n) for t in factors)
    res = f_tensor(1, shifted)
    if res is None:
        return None
    return tuple(promotion_inv(t, n) for t in res)


def e_affine(i: int, factors, n: int):
    if i != 0:
        return e_tensor(i, factors)
    shifted = tuple(promotion(t, n) for t in factors)
    res = e_tensor(1, shifted)
    if res is None:
        return None
    return tuple(promotion_inv(t, n) for t in res)


def eps_phi_affine(i: int, factors, n: int) -> tuple[int, int]:
    if i != 0:
        return eps_phi(i, factors)
    shifted = tuple(promotion(t, n) for t in factors)
    return eps_phi(1, shifted)


# ---------------------------------------------------------------------------
# enumeration

@cache
def enumerate_rectangle(r: int, s: int, n: int):
    """All of B^{r,s} over [n], by closure of the highest weight vector."""
    if r > n:
        return ()
    seed = u_of_brs(r, s)
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for i in range(1, n):
                ft = f_tableau(i, t)
                if ft is not None and ft not in seen:
                    seen.add(ft)
                    nxt.append(ft)
        frontier = nxt
    return tuple(sorted(seen))


def enumerate_paths(rects, n: int):
    """All tensor elements with the given display-order rectangles."""
    pools = [enumerate_rectangle(r, s, n) for r, s in rects]
    return [tuple(p) for p in product(*pools)]


def highest_weight_paths(rects, lam, n: int):
    """Classically restricted paths: highest weight of content ``lam``."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    out = []
    for b in enumerate_paths(rects, n):
        w = tensor_word(b)
        if content(w, n) != lam:
            continue
        if all(eps_word(i, w) == 0 for i in range(1, n)):
            out.append(b)
    return out


def crystal_graph(seeds, ops, cap=None):
    """BFS closure of ``seeds`` under the partial maps in ``ops``.

    ``ops`` maps an edge label to a function node -> node-or-None.
    Returns a dict node -> {label: target}.
    """
    if cap is None:
        cap = max_nodes()
    graph = {}
    frontier = list(dict.fromkeys(seeds))
    for b in frontier:
        graph[b] = {}
    while frontier:
        nxt = []
        for b in frontier:
            for label, op in ops.items():
                fb = op(b)
                if fb is None:
                    continue
                graph[b][label] = fb
                if fb not in graph:
                    if len(graph) >= cap:
                        raise RuntimeError(
                            f"crystal graph exceeded {cap} nodes")
                    graph[fb] = {}
                    nxt.append(fb)
        frontier = nxt
    return graph
