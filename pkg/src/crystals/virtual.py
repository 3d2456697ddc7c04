"""Crystals of the doubled affine families realized inside type A.

Four affine families -- D_{n+1}^(2), A_{2n}^(2), A_{2n}^(2)dagger and
C_n^(1), tagged "D2", "A2", "A2D" and "C1" -- embed into type-A crystals
over the alphabet [2n]: every operator of the small rank-n diagram is a
composite of ambient type-A operators, with node 0 raised to the power
``gamma_prime`` and node n to the power ``gamma``.

A :class:`VirtualElement` carries the tag, the rank n, the rectangle
label (r, s) and the ambient tensor element (display order, leftmost
factor first).  Energies inherited from the ambient crystal live in
(1/gamma')Z and are therefore returned doubled.
"""

from itertools import product
from typing import NamedTuple

from .core import columns_of, shape_of, tableau_from_columns
from .crystal import (crystal_graph, e_affine, e_tensor, enumerate_paths,
                      eps_phi, eps_phi_affine, f_affine, f_tensor, promotion,
                      u_of_brs, weight)
from .energy import energy, rmatrix

TAGS = ("D2", "A2", "A2D", "C1")


def _check_tag(tag: str):
    if tag not in TAGS:
        raise ValueError(f"unknown type tag {tag!r}; expected one of {TAGS}")


def gamma(tag: str) -> int:
    """Multiplicity of the ambient operator behind node n."""
    _check_tag(tag)
    return 2 if tag in ("A2", "C1") else 1


def gamma_prime(tag: str) -> int:
    """Multiplicity of the ambient operator behind node 0."""
    _check_tag(tag)
    return 2 if tag in ("A2D", "C1") else 1


def mu_coeff(tag: str, n: int, i: int) -> int:
    """Stretching factor of the i-th fundamental weight in components."""
    _check_tag(tag)
    return 2 if tag == "A2D" and i == n else 1


class VirtualElement(NamedTuple):
    tag: str
    n: int
    r: int
    s: int
    ambient: tuple  # tensor element over [2n], display order


# ---------------------------------------------------------------------------
# ambient shape and extremal vector

def ambient_rects(tag: str, n: int, r: int, s: int):
    """Display-order rectangles of the ambient tensor product."""
    _check_tag(tag)
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if s < 1:
        raise ValueError(f"need s >= 1, got s={s}")
    if r < n:
        return ((2 * n - r, s), (r, s))
    if tag == "D2":
        return ((n, s),)
    if tag == "C1":
        return ((n, 2 * s),)
    return ((n, s), (n, s))


def u_virtual(tag: str, n: int, r: int, s: int) -> VirtualElement:
    ambient = tuple(u_of_brs(rr, ss) for rr, ss in ambient_rects(tag, n, r, s))
    return VirtualElement(tag, n, r, s, ambient)


# ---------------------------------------------------------------------------
# virtual operators

def virtual_f_ambient(i: int, ambient, tag: str, n: int):
    """Composite lowering operator on a raw ambient tensor; None if any
    ambient step dies."""
    n2 = 2 * n
    if not 0 <= i <= n:
        raise IndexError(f"node {i} out of range 0..{n}")
    if i == 0:
        for _ in range(gamma_prime(tag)):
            ambient = f_affine(0, ambient, n2)
            if ambient is None:
                return None
        return ambient
    steps = (i,) * gamma(tag) if i == n else (n2 - i, i)
    for j in steps:
        ambient = f_tensor(j, ambient)
        if ambient is None:
            return None
    return ambient


def virtual_e_ambient(i: int, ambient, tag: str, n: int):
    n2 = 2 * n
    if not 0 <= i <= n:
        raise IndexError(f"node {i} out of range 0..{n}")
    if i == 0:
        for _ in range(gamma_prime(tag)):
            ambient = e_affine(0, ambient, n2)
            if ambient is None:
                return None
        return ambient
    steps = (i,) * gamma(tag) if i == n else (n2 - i, i)
    for j in steps:
        ambient = e_tensor(j, ambient)
        if ambient is None:
            return None
    return ambient


def virtual_f(i: int, v: VirtualElement):
    res = virtual_f_ambient(i, v.ambient, v.tag, v.n)
    return None if res is None else v._replace(ambient=res)


def virtual_e(i: int, v: VirtualElement):
    res = virtual_e_ambient(i, v.ambient, v.tag, v.n)
    return None if res is None else v._replace(ambient=res)


def eps_phi_virtual(i: int, v: VirtualElement) -> tuple[int, int]:
    """String lengths (eps_i, phi_i) of the composite operators."""
    n = v.n
    if i == 0:
        e, p = eps_phi_affine(0, v.ambient, 2 * n)
        g = gamma_prime(v.tag)
        return e // g, p // g
    if i == n:
        e, p = eps_phi(n, v.ambient)
        g = gamma(v.tag)
        return e // g, p // g
    e1, p1 = eps_phi(i, v.ambient)
    e2, p2 = eps_phi(2 * n - i, v.ambient)
    return min(e1, e2), min(p1, p2)


def is_aligned(v: VirtualElement) -> bool:
    """Paired string lengths equal; node-0 and node-n ones divisible by
    the operator multiplicities."""
    n, amb = v.n, v.ambient
    gp, g = gamma_prime(v.tag), gamma(v.tag)
    e0, p0 = eps_phi_affine(0, amb, 2 * n)
    if e0 % gp or p0 % gp:
        return False
    en, pn = eps_phi(n, amb)
    if en % g or pn % g:
        return False
    for i in range(1, n):
        if eps_phi(i, amb) != eps_phi(2 * n - i, amb):
            return False
    return True


# ---------------------------------------------------------------------------
# generation

def virtual_closure(seeds, classical: bool = False, cap=None):
    """BFS closure of VirtualElements under the virtual operators.

    ``classical`` restricts to nodes 1..n.  Returns the graph dict of
    :func:`crystals.crystal.crystal_graph`; raises on the node cap.
    """
    seeds = list(seeds)
    n = seeds[0].n
    ops = {}
    for i in range(1 if classical else 0, n + 1):
        ops[("f", i)] = lambda b, i=i: virtual_f(i, b)
        ops[("e", i)] = lambda b, i=i: virtual_e(i, b)
    return crystal_graph(seeds, ops, cap)


def generate_graph(tag: str, n: int, r: int, s: int, cap=None):
    return virtual_closure([u_virtual(tag, n, r, s)], cap=cap)


def generate_V(tag: str, n: int, r: int, s: int, cap=None):
    """The closure of the extremal vector, as a sorted tuple."""
    return tuple(sorted(generate_graph(tag, n, r, s, cap)))


# ---------------------------------------------------------------------------
# self-duality

def vee_star_tableau(t, n: int):
    """Columnwise complement within [n] composed with the letter-reversing
    involution; keeps the column order, sends heights h to n - h."""
    cols = tuple(
        tuple(y for y in range(n, 0, -1) if n + 1 - y not in set(c))
        for c in columns_of(t))
    return tableau_from_columns(cols)


def sigma_pair(ambient, n2: int):
    """The local isomorphism to the factor-reversed tensor (identity for
    a single factor)."""
    if len(ambient) == 1:
        return ambient
    if len(ambient) != 2:
        raise ValueError("expected at most two ambient factors")
    return rmatrix(ambient[0], ambient[1], n2)


def is_self_dual(ambient, n2: int) -> bool:
    """sigma(b) equals the factorwise dual of b."""
    dual = tuple(vee_star_tableau(t, n2) for t in ambient)
    return sigma_pair(ambient, n2) == dual


# ---------------------------------------------------------------------------
# membership

def _cols_tableau(left, right) -> bool:
    """Do the two columns, sorted increasingly, stack into a tableau?"""
    left, right = sorted(left), sorted(right)
    return len(left) >= len(right) and all(
        x <= y for x, y in zip(left, right))


def member_V(v: VirtualElement) -> bool:
    """Closed-form membership test; errors where only generation works."""
    tag, n, r, s, amb = v
    n2 = 2 * n
    rects = ambient_rects(tag, n, r, s)
    if tuple(shape_of(t) for t in amb) != tuple(
            (ss,) * rr for rr, ss in rects):
        return False
    if tag == "D2":
        return is_self_dual(amb, n2)
    if s != 1:
        raise ValueError(
            f"no closed membership test for {tag} with s={s}; generate")
    if tag == "A2D":
        ucol = sorted(x for row in amb[0] for x in row)
        vcol = sorted(x for row in amb[1] for x in row)
        return _cols_tableau(ucol, vcol) and is_self_dual(amb, n2)
    if r < n or tag == "A2":
        ucol = [x for row in amb[0] for x in row]
        vcol = [x for row in amb[1] for x in row]
    else:  # C1 with r = n: one two-column factor
        left, right = columns_of(amb[0])
        ucol, vcol = list(left), list(right)
    if tag == "A2":
        u2 = [x for x in ucol if x > n]
        v2 = [x for x in vcol if x > n]
        return (is_self_dual(amb, n2) and _cols_tableau(u2, v2)
                and len(u2) - len(v2) >= n - r)
    # C1
    u1 = [x for x in ucol if x <= n]
    v1 = [x for x in vcol if x <= n]
    return (is_self_dual(amb, n2) and _cols_tableau(u1, v1)
            and len(u1) - len(v1) == n - r)


# ---------------------------------------------------------------------------
# weights

def embed_weight(coeffs, tag: str, n: int):
    """Fundamental-weight coefficients (m_1..m_n) -> the ambient
    coefficient vector of length 2n - 1."""
    m = tuple(coeffs) + (0,) * (n - len(coeffs))
    a = [0] * (2 * n - 1)
    for i in range(1, n):
        a[i - 1] += m[i - 1]
        a[2 * n - i - 1] += m[i - 1]
    a[n - 1] += gamma(tag) * m[n - 1]
    return tuple(a)


def virtual_weight(v: VirtualElement):
    """Invert the weight embedding; abort loudly off the image."""
    n = v.n
    c = weight(v.ambient, 2 * n)
    a = tuple(c[i] - c[i + 1] for i in range(2 * n - 1))
    for i in range(1, n):
        if a[i - 1] != a[2 * n - i - 1]:
            raise ValueError(
                f"ambient weight {a} breaks the node {i}/{2 * n - i} "
                "symmetry; the element is outside the embedded image")
    g = gamma(v.tag)
    if a[n - 1] % g:
        raise ValueError(
            f"ambient weight {a}: node-{n} coefficient {a[n - 1]} is not "
            f"divisible by {g}; the element is outside the embedded image")
    return a[:n - 1] + (a[n - 1] // g,)


# ---------------------------------------------------------------------------
# energies and decomposition

def virtual_D(v: VirtualElement) -> int:
    """Intrinsic energy inherited from the ambient tensor, doubled."""
    return 2 * energy(v.ambient, 2 * v.n) // gamma_prime(v.tag)


def decompose(tag: str, n: int, r: int, s: int, cap=None):
    """Sorted (weight, doubled energy) pairs of the classical components
    of the generated set, located at its highest weight vectors."""
    out = []
    for v in generate_V(tag, n, r, s, cap):
        if all(eps_phi_virtual(i, v)[0] == 0 for i in range(1, n + 1)):
            out.append((virtual_weight(v), virtual_D(v)))
    return tuple(sorted(out))


def expected_components(tag: str, n: int, r: int, s: int):
    """The prescribed component census with doubled energies."""
    _check_tag(tag)
    gp = gamma_prime(tag)
    if r == n and tag in ("D2", "C1"):
        return (((0,) * (n - 1) + (s,), 0),)
    out = []
    for m in product(range(s + 1), repeat=r):
        if sum(m) > s or (s - m[r - 1]) % gp:
            continue
        if any(m[i] % gp for i in range(r - 1)):
            continue
        lam = tuple(m[i] * mu_coeff(tag, n, i + 1)
                    for i in range(r)) + (0,) * (n - r)
        d2 = 2 * (-r * s + sum((j + 1) * m[j] for j in range(r))) // gp
        out.append((lam, d2))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# the diagram-rotating automorphism (symplectic family only)

def psi_C(v: VirtualElement) -> VirtualElement:
    """The involution swapping nodes i and n - i; factorwise n-fold
    rotation of the ambient alphabet."""
    if v.tag != "C1":
        raise ValueError(f"the rotation automorphism needs tag C1, "
                         f"got {v.tag!r}")
    n2 = 2 * v.n
    ambient = []
    for t in v.ambient:
        for _ in range(v.n):
            t = promotion(t, n2)
        ambient.append(t)
    return v._replace(ambient=tuple(ambient))


# ---------------------------------------------------------------------------
# one-column elements of the symplectic classical crystal

def column_parts(P, n: int):
    """Unbarred and barred letter sets of a one-column element.

    Letters are encoded in [2n] with the barred letter i-bar stored as
    2n + 1 - i; both parts are returned as subsets of [n].
    """
    P = tuple(P)
    if len(set(P)) != len(P) or any(not 1 <= x <= 2 * n for x in P):
        raise ValueError(f"column letters must be distinct and in [2n]: {P}")
    plus = frozenset(x for x in P if x <= n)
    minus = frozenset(2 * n + 1 - x for x in P if x > n)
    return plus, minus


def is_one_column(P, n: int) -> bool:
    """Admissibility: whenever i and i-bar coexist, the letters up to i
    may not exceed i slots."""
    plus, minus = column_parts(P, n)
    return all(
        sum(1 for x in plus if x <= i) + sum(1 for x in minus if x <= i) <= i
        for i in plus & minus)


def split_column(P, n: int):
    """-> (Q_plus, Q_minus), decreasing tuples: the doubled letters are
    replaced by the largest unused free letters below them."""
    plus, minus = column_parts(P, n)
    if not is_one_column(P, n):
        raise ValueError(f"column {tuple(P)} fails the one-column bound")
    free = sorted(set(range(1, n + 1)) - plus - minus)
    picked = []
    for i in sorted(plus & minus, reverse=True):
        below = [h for h in free if h < i]
        assert below, "admissible columns always leave a free letter below"
        free.remove(below[-1])
        picked.append(below[-1])
    doubles = plus & minus
    q_plus = sorted((plus - doubles) | set(picked), reverse=True)
    q_minus = sorted((minus - doubles) | set(picked), reverse=True)
    return tuple(q_plus), tuple(q_minus)


def embed_col(P, n: int) -> VirtualElement:
    """The two-column ambient realization of a one-column element."""
    plus, minus = column_parts(P, n)
    q_plus, q_minus = split_column(P, n)
    n2 = 2 * n
    left = sorted(
        {n2 + 1 - x for x in set(range(1, n + 1)) - set(q_plus)}
        | (set(range(1, n + 1)) - minus), reverse=True)
    right = sorted({n2 + 1 - x for x in q_minus} | plus, reverse=True)
    r = len(plus) + len(minus)
    if r < n:
        ambient = (tableau_from_columns((tuple(left),)),
                   tableau_from_columns((tuple(right),)))
    else:
        ambient = (tableau_from_columns((tuple(left), tuple(right))),)
    return VirtualElement("C1", n, r, 1, ambient)


def one_column_elements(n: int, r: int):
    """All admissible one-column elements of height r, encoded in [2n]."""
    from itertools import combinations
    return tuple(P for P in combinations(range(1, 2 * n + 1), r)
                 if is_one_column(P, n))


# ---------------------------------------------------------------------------
# tensor products of virtual elements

def _compose_checked(parts):
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty tensor")
    if len({(p.tag, p.n) for p in parts}) != 1:
        raise ValueError("tensor factors must share tag and rank")
    for p in parts:
        if not is_aligned(p):
            raise ValueError(
                "tensor factors must be aligned; refusing to compose "
                f"operators around {p.ambient}")
    return parts


def _resplit(parts, ambient):
    out, pos = [], 0
    for p in parts:
        size = len(p.ambient)
        out.append(p._replace(ambient=tuple(ambient[pos:pos + size])))
        pos += size
    return tuple(out)


def virtual_f_tensor(i: int, parts):
    """Lowering operator on a tensor of virtual elements; refuses
    unaligned factors, for which the composite rule is wrong."""
    parts = _compose_checked(parts)
    tag, n = parts[0].tag, parts[0].n
    ambient = tuple(t for p in parts for t in p.ambient)
    res = virtual_f_ambient(i, ambient, tag, n)
    return None if res is None else _resplit(parts, res)


def virtual_e_tensor(i: int, parts):
    parts = _compose_checked(parts)
    tag, n = parts[0].tag, parts[0].n
    ambient = tuple(t for p in parts for t in p.ambient)
    res = virtual_e_ambient(i, ambient, tag, n)
    return None if res is None else _resplit(parts, res)


def pair_energy(amb2, amb1, n2: int) -> int:
    """Energy between two grouped ambient blocks: the cross terms of the
    total intrinsic energy."""
    return (energy(amb2 + amb1, n2) - energy(amb2, n2) - energy(amb1, n2))
