"""Combinatorial R-matrix, energy functions and one-dimensional sums.

Rectangle sequences ``R = (R_1, ..., R_L)`` are tuples of (rows, cols)
pairs indexed as in the tensor product b_L (x) ... (x) b_1: R_1 belongs
to the rightmost factor.  Tensor elements are stored in display order
(b_L first), so the factor of rectangle R_p sits at display index L - p.
"""

from functools import cache

from .core import cells_right_of_column, column_word, insert, shape_of
from .crystal import enumerate_rectangle


# ---------------------------------------------------------------------------
# exact Laurent polynomials in q with half-integer exponents

class QLaurent:
    """Exact polynomial in q with exponents in (1/2)Z, stored doubled."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def q_power(cls, exp_x2: int, coef: int = 1):
        return cls({exp_x2: coef})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return QLaurent(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return QLaurent({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QLaurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def inverted(self):
        """Substitute q -> 1/q."""
        return QLaurent({-e: c for e, c in self.terms.items()})

    def at_one(self) -> int:
        return sum(self.terms.values())

    def substituted(self, t: int):
        """Substitute q -> q^t."""
        return QLaurent({e * t: c for e, c in self.terms.items()})

    def to_json(self):
        return [{"exp_x2": e, "coef": c}
                for e, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            if e == 0:
                bits.append(f"{c}")
                continue
            pw = f"q^{e // 2}" if e % 2 == 0 else f"q^({e}/2)"
            head = "" if c == 1 else f"{c}*"
            bits.append(f"{head}{pw}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# combinatorial R-matrix

@cache
def _rmatrix_table(rect2, rect1, n):
    """Map P(b1' b2') -> (b1', b2') over B1 x B2; injective because the
    tensor product of two rectangles is multiplicity free."""
    r1, s1 = rect1
    r2, s2 = rect2
    table = {}
    for b1 in enumerate_rectangle(r1, s1, n):
        for b2 in enumerate_rectangle(r2, s2, n):
            key = insert(column_word(b1) + column_word(b2))
            assert key not in table
            table[key] = (b1, b2)
    return table


def rmatrix(b2, b1, n):
    """The local isomorphism: the unique b1' (x) b2' with equal P tableau."""
    rect2 = (len(shape_of(b2)), shape_of(b2)[0] if b2 else 0)
    rect1 = (len(shape_of(b1)), shape_of(b1)[0] if b1 else 0)
    key = insert(column_word(b2) + column_word(b1))
    return _rmatrix_table(rect2, rect1, n)[key]


def rmatrix_single_column(b2, b1, n):
    """Dot pairing rule for single columns (heights r2 >= r1).

    Each letter of b1, from largest down, grabs the largest unused
    letter of b2 that does not exceed it, wrapping around cyclically;
    the grabbed letters form b1', and b2' is b1 plus the unused letters
    of b2.
    """
    col2 = set(column_word(b2))
    col1 = list(column_word(b1))
    if len(col2) < len(col1):
        raise ValueError("need r2 >= r1")
    paired = []
    free = sorted(col2, reverse=True)
    for x in sorted(col1, reverse=True):
        match = next((y for y in free if y <= x), None)
        if match is None:            # periodic boundary: wrap to the top
            match = free[0]
        free.remove(match)
        paired.append(match)
    new1 = tuple(sorted(paired, reverse=True))
    new2 = tuple(sorted(col1 + free, reverse=True))
    return (tuple((x,) for x in reversed(new1)),
            tuple((x,) for x in reversed(new2)))


# ---------------------------------------------------------------------------
# local energy

def local_energy(b2, b1, n, convention: str = "standard") -> int:
    """H(b2 (x) b1) for rectangle factors.

    ``standard`` is normalized by H(u (x) u) = 0 and is nonpositive;
    ``unshifted`` keeps only the cells-beyond-the-column count d, the
    older nonnegative normalization.
    """
    shape2, shape1 = shape_of(b2), shape_of(b1)
    r2, s2 = len(shape2), shape2[0] if shape2 else 0
    r1, s1 = len(shape1), shape1[0] if shape1 else 0
    lam = shape_of(insert(column_word(b2) + column_word(b1)))
    d = cells_right_of_column(lam, max(s1, s2))
    if convention == "unshifted":
        return d
    if convention != "standard":
        raise ValueError(f"unknown convention {convention!r}")
    return d - min(r1, r2) * min(s1, s2)


# ---------------------------------------------------------------------------
# word-indexed isomorphisms and energies

def sigma_at(p: int, b, n):
    """Apply the local isomorphism at positions p, p+1 (from the right)."""
    L = len(b)
    if not 1 <= p <= L - 1:
        raise IndexError(f"sigma index {p} out of range for {L} factors")
    left, right = b[L - p - 1], b[L - p]
    new_left, new_right = rmatrix(left, right, n)
    return b[:L - p - 1] + (new_left, new_right) + b[L - p + 1:]


def local_energy_at(p: int, b, n, convention: str = "standard") -> int:
    L = len(b)
    return local_energy(b[L - p - 1], b[L - p], n, convention)


def sigma_word(word, b, n):
    """sigma_{a_1} ... sigma_{a_p} applied right to left."""
    for p in reversed(word):
        b = sigma_at(p, b, n)
    return b


def energy_word(word, b, n, convention: str = "standard") -> int:
    """E_a = sum_j H_{a_j} sigma_{a_{j+1}} ... sigma_{a_p}."""
    total = 0
    for p in reversed(word):
        total += local_energy_at(p, b, n, convention)
        b = sigma_at(p, b, n)
    return total


def energy(b, n, convention: str = "standard") -> int:
    """E_B = sum_{i<j} H_i sigma_{i+1} ... sigma_{j-1}."""
    L = len(b)
    total = 0
    for j in range(2, L + 1):
        cur = b
        for i in range(j - 1, 0, -1):
            total += local_energy_at(i, cur, n, convention)
            if i > 1:
                cur = sigma_at(i, cur, n)
    return total


def intrinsic_energy(b, n, convention: str = "standard") -> int:
    """D_B; equal to E_B since rectangles carry zero intrinsic energy."""
    return energy(b, n, convention)


# ---------------------------------------------------------------------------
# one-dimensional sums and Kostka polynomials

def _display(rects):
    return tuple(reversed(tuple(rects)))


def norm_of(rects) -> int:
    """||R|| = sum over pairs of min(r_i, r_j) min(s_i, s_j)."""
    rects = tuple(rects)
    return sum(
        min(rects[i][0], rects[j][0]) * min(rects[i][1], rects[j][1])
        for i in range(len(rects)) for j in range(i + 1, len(rects)))


def onedim_sum(rects, lam, n) -> QLaurent:
    """Classically restricted sum X(B_R, lam; q) over highest paths."""
    from .crystal import highest_weight_paths
    out = QLaurent.zero()
    for b in highest_weight_paths(_display(rects), lam, n):
        out = out + QLaurent.q_power(2 * intrinsic_energy(b, n))
    return out


def kostka(lam, rects, n) -> QLaurent:
    return QLaurent.q_power(2 * norm_of(rects)) * onedim_sum(rects, lam, n)


def cokostka(lam, rects, n) -> QLaurent:
    """The transposed-charge variant X(B_R, lam; 1/q)."""
    return onedim_sum(rects, lam, n).inverted()
