"""Fermionic sums for the folded affine families.

Tag-specific rigged configurations (admissible configurations, vacancy
numbers, cocharge), exact q-binomials, the fermionic sum M in three
equivalent forms, and a verifier that compares M with the graded census
of classically highest weight elements of the corresponding virtual
crystals.

Cocharges and energies are stored doubled so that the half-integer
gradings of the tags with doubling factor 2 stay integral; QLaurent
exponents follow the same convention.  Weights are given as tuples of
fundamental-weight multiplicities (m_1, ..., m_n); for D2 the n-th
fundamental weight contributes columns of width one half, which the
doubled storage absorbs.
"""

import time
from fractions import Fraction
from functools import cache
from itertools import product

from .core import (first_columns_size, partitions_in_box, partitions_of,
                   transpose)
from .crystal import eps_phi, weight as path_weight
from .energy import QLaurent, energy
from .virtual import TAGS, ambient_rects, gamma, gamma_prime, generate_V

#: tags with a direct rigged-configuration model (A2D has none; it only
#: carries the conjectural sum M_Atd below)
RC_TAGS = ("D2", "A2", "C1")


def _check_rc_tag(tag):
    if tag not in RC_TAGS:
        raise ValueError(
            f"no rigged-configuration model for tag {tag!r}; "
            f"expected one of {RC_TAGS} (for A2D use M_Atd)")


# ---------------------------------------------------------------------------
# q-binomials

@cache
def _gauss(m: int, p: int):
    """Coefficient tuple of the Gaussian binomial (partitions in m x p)."""
    if m < 0 or p < 0:
        return ()
    if m == 0 or p == 0:
        return (1,)
    low = _gauss(m - 1, p)
    high = _gauss(m, p - 1)
    out = [0] * (m * p + 1)
    for k, c in enumerate(low):
        out[k] += c
    for k, c in enumerate(high):
        out[k + m] += c
    return tuple(out)


def qbinom(m: int, p: int, t: int = 1) -> QLaurent:
    """Gaussian binomial coefficient [m+p, m] in the variable q^t."""
    return QLaurent({2 * t * k: c for k, c in enumerate(_gauss(m, p)) if c})


# ---------------------------------------------------------------------------
# per-tag constants

def t_vec(tag: str, n: int):
    """Length scalings t_a of the folded root system."""
    if tag not in TAGS:
        raise ValueError(f"unknown tag {tag!r}")
    if tag == "C1":
        return (2,) * (n - 1) + (1,)
    return (1,) * n


def t_vee(tag: str, n: int):
    """Dual length scalings; the q-binomial at level a lives in q^{t_a^v}."""
    if tag == "D2":
        return (2,) * (n - 1) + (1,)
    if tag == "A2":
        return (2,) * n
    if tag in ("A2D", "C1"):
        return (1,) * n
    raise ValueError(f"unknown tag {tag!r}")


def _pairing2(tag: str, n: int):
    """Doubled symmetric pairing 2(alpha_a | alpha_b) of the folded roots."""
    B = [[0] * n for _ in range(n)]
    if tag in ("D2", "A2"):
        diag, last, off = 8, 4, -4
    elif tag == "A2D":
        diag, last, off = 4, 2, -2
    else:  # C1
        diag, last, off = 2, 4, None
    for a in range(n):
        B[a][a] = last if a == n - 1 else diag
    for a in range(n - 1):
        step = off if off is not None else (-2 if a == n - 2 else -1)
        B[a][a + 1] = B[a + 1][a] = step
    return B


def _cartan(tag: str, n: int):
    """Folded Cartan matrix A[a][b] = <h_a, alpha_b>."""
    B = _pairing2(tag, n)
    return [[2 * B[a][b] // B[a][a] for b in range(n)] for a in range(n)]


def _epsilon(tag: str, n: int, a: int) -> int:
    """Stretch of the a-th fundamental weight under the lattice folding."""
    return 2 if (tag in ("A2", "A2D") and a == n) else 1


# ---------------------------------------------------------------------------
# weights and sizes

def lam2_of_weight(wt, tag: str, n: int):
    """Doubled column-height partition of a dominant weight.

    A multiplicity at node a contributes a column of height a; for D2
    the node-n column has width one half, hence the doubled parts.
    """
    m = tuple(wt) + (0,) * (n - len(tuple(wt)))
    if len(m) > n or any(x < 0 for x in m):
        raise ValueError(f"weight {wt} is not dominant for rank {n}")
    lam2 = []
    for i in range(1, n + 1):
        part = 2 * sum(m[i - 1:n - 1]) + (m[n - 1] if tag == "D2"
                                          else 2 * m[n - 1])
        lam2.append(part)
    while lam2 and lam2[-1] == 0:
        lam2.pop()
    return tuple(lam2)


def _sizes(tag: str, n: int, lam2, rects):
    """Sizes |nu^{(a)}| for a = 1..n, or None if infeasible."""
    sizes = []
    for a in range(1, n + 1):
        s2 = -sum(lam2[:a])
        for r, s in rects:
            if tag == "D2" and r == n:
                s2 += s * a
            else:
                s2 += 2 * s * min(r, a)
        if s2 < 0 or s2 % 2:
            return None
        sizes.append(s2 // 2)
    return tuple(sizes)


def _xi(rects, a: int):
    return tuple(sorted((s for r, s in rects if r == a), reverse=True))


# ---------------------------------------------------------------------------
# vacancy numbers and cocharge

def _vac2(tag, n, nu, rects, a, i):
    """Doubled vacancy number of strings of length i at level a."""
    Q = first_columns_size
    below = nu[a - 2] if a >= 2 else ()
    here = nu[a - 1]
    if a < n:
        above = nu[a]
        return 2 * (Q(below, i) - 2 * Q(here, i) + Q(above, i)
                    + Q(_xi(rects, a), i))
    if tag == "C1":
        wide = tuple(2 * s for s in _xi(rects, n))
        return 2 * Q(below, i) - 2 * Q(here, i) + Q(wide, i)
    if tag == "A2":
        return 2 * (Q(below, i) - Q(here, i) + Q(_xi(rects, n), i))
    # D2
    return 2 * (2 * Q(below, i) - 2 * Q(here, i) + Q(_xi(rects, n), i))


def vacancy_g(tag: str, nu, rects, a: int, i: int) -> int:
    """Vacancy number at level a, length i; the level count is len(nu)."""
    _check_rc_tag(tag)
    v2 = _vac2(tag, len(nu), nu, rects, a, i)
    if v2 % 2:
        raise ValueError(
            f"vacancy at level {a}, length {i} is half-integral "
            f"(doubled value {v2}); no string may live there")
    return v2 // 2


def _cc2_config(tag, nu):
    """Doubled cocharge of a bare configuration."""
    n = len(nu)
    alpha = [transpose(level) for level in nu]
    pair, square = (2, 1) if tag == "C1" else (4, 2)
    total = 0
    for a in range(n - 1):
        here, above = alpha[a], alpha[a + 1]
        for i, col in enumerate(here):
            up = above[i] if i < len(above) else 0
            total += pair * col * (col - up)
    total += square * sum(col * col for col in alpha[n - 1])
    return total


def cc_g(tag: str, rc) -> int:
    """Doubled cocharge of a rigged configuration (n levels of strings)."""
    _check_rc_tag(tag)
    n = len(rc)
    nu = tuple(tuple(ln for ln, _ in level) for level in rc)
    total = _cc2_config(tag, nu)
    for a, level in enumerate(rc, start=1):
        if tag == "C1":
            w = 2
        elif tag == "A2":
            w = 4
        else:  # D2
            w = 4 if a < n else 2
        total += w * sum(rig for _, rig in level)
    return total


# ---------------------------------------------------------------------------
# enumeration

def enumerate_config_g(tag: str, n: int, wt, rects):
    """All admissible configurations for the given weight and rectangles."""
    _check_rc_tag(tag)
    rects = tuple(rects)
    lam2 = lam2_of_weight(wt, tag, n)
    sizes = _sizes(tag, n, lam2, rects)
    if sizes is None:
        return ()
    per_level = []
    for a, size in enumerate(sizes, start=1):
        if tag == "C1" and a == n:
            if size % 2:
                return ()
            per_level.append(tuple(
                tuple(2 * p for p in q) for q in partitions_of(size // 2)))
        else:
            per_level.append(partitions_of(size))
    out = []
    for nu in product(*per_level):
        bound = max([1] + [p for q in nu for p in q]
                    + [2 * s for _, s in rects])
        if all(_vac2(tag, n, nu, rects, a, i) >= 0
               for a in range(1, n + 1) for i in range(1, bound + 1)):
            out.append(nu)
    return tuple(out)


def _string_boxes(tag, n, nu, rects):
    boxes = []
    for a in range(1, n + 1):
        parts = nu[a - 1]
        for ln in sorted(set(parts), reverse=True):
            v2 = _vac2(tag, n, nu, rects, a, ln)
            assert v2 % 2 == 0, "half-integral vacancy at an occupied length"
            boxes.append((a, ln, parts.count(ln), v2 // 2))
    return boxes


def enumerate_RC_g(tag: str, n: int, wt, rects):
    """All rigged configurations for the given weight and rectangles."""
    rects = tuple(rects)
    out = []
    for nu in enumerate_config_g(tag, n, wt, rects):
        boxes = _string_boxes(tag, n, nu, rects)
        for rigs in product(*(partitions_in_box(m, p)
                              for _, _, m, p in boxes)):
            levels = [[] for _ in range(n)]
            for (a, ln, m, _), rig in zip(boxes, rigs):
                rig = tuple(rig) + (0,) * (m - len(rig))
                levels[a - 1].extend((ln, x) for x in rig)
            out.append(tuple(
                tuple(sorted(lvl, key=lambda s: (-s[0], -s[1])))
                for lvl in levels))
    return tuple(out)


# ---------------------------------------------------------------------------
# the fermionic sum, three ways

def M_sum(tag: str, n: int, wt, rects) -> QLaurent:
    """Sum over configurations of q^cc times the q-binomial product."""
    rects = tuple(rects)
    tv = t_vee(tag, n)
    out = QLaurent.zero()
    for nu in enumerate_config_g(tag, n, wt, rects):
        term = QLaurent.q_power(_cc2_config(tag, nu))
        for a, ln, m, p in _string_boxes(tag, n, nu, rects):
            term = term * qbinom(m, p, tv[a - 1])
        out = out + term
    return out


def M_sum_rc(tag: str, n: int, wt, rects) -> QLaurent:
    """The same sum, string by string over full rigged configurations."""
    out = QLaurent.zero()
    for rc in enumerate_RC_g(tag, n, wt, tuple(rects)):
        out = out + QLaurent.q_power(cc_g(tag, rc))
    return out


def _solve_string_totals(tag, n, wt, rects):
    """Totals N_a = sum_i i m_i^{(a)} fixed by the weight constraint."""
    m = tuple(wt) + (0,) * (n - len(tuple(wt)))
    A = _cartan(tag, n)
    if tag == "A2D":
        # the top-level factors carry a doubled fundamental weight while
        # the folded coefficients of the weight itself enter unscaled
        d = [Fraction((2 if a == n else 1)
                      * sum(s for r, s in rects if r == a) - m[a - 1])
             for a in range(1, n + 1)]
    else:
        d = [Fraction(_epsilon(tag, n, a)
                      * (sum(s for r, s in rects if r == a) - m[a - 1]))
             for a in range(1, n + 1)]
    rows = [[Fraction(A[a][b]) for b in range(n)] for a in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        d[col], d[piv] = d[piv], d[col]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col] / rows[col][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
                d[r] = d[r] - f * d[col]
    N = [d[a] / rows[a][a] for a in range(n)]
    if any(x.denominator != 1 or x < 0 for x in N):
        return None
    return tuple(int(x) for x in N)


def _p2num(tag, n, mlevels, rects, a, i):
    """t_a^v times the doubled vacancy of the occupancy variables."""
    t = t_vec(tag, n)
    B = _pairing2(tag, n)
    tv = t_vee(tag, n)
    num = 2 * tv[a - 1] * sum(min(i, s) for r, s in rects if r == a)
    for b in range(1, n + 1):
        for k, mult in mlevels[b - 1].items():
            num -= B[a - 1][b - 1] * min(t[b - 1] * i, t[a - 1] * k) * mult
    return num


def _cc2_occupancy(tag, n, mlevels):
    t = t_vec(tag, n)
    B = _pairing2(tag, n)
    cc4 = 0
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for j, mj in mlevels[a - 1].items():
                for k, mk in mlevels[b - 1].items():
                    cc4 += (B[a - 1][b - 1]
                            * min(t[b - 1] * j, t[a - 1] * k) * mj * mk)
    assert cc4 % 2 == 0
    return cc4 // 2


def _occupancy_assignments(tag, n, wt, rects):
    """Yield (mlevels, bound) for each solution of the weight constraint."""
    totals = _solve_string_totals(tag, n, wt, rects)
    if totals is None:
        return
    per_level = [partitions_of(N) for N in totals]
    widths = max([1] + [s for _, s in rects])
    for combo in product(*per_level):
        mlevels = [{i: parts.count(i) for i in set(parts)}
                   for parts in combo]
        longest = max([widths] + [i for lvl in mlevels for i in lvl])
        yield mlevels, 2 * (longest + 1)


def M_sum_mform(tag: str, n: int, wt, rects) -> QLaurent:
    """The occupancy-variable form of the fermionic sum."""
    if tag == "A2D":
        raise ValueError("tag 'A2D' uses the parity-refined sum M_Atd")
    rects = tuple(rects)
    tv = t_vee(tag, n)
    out = QLaurent.zero()
    for mlevels, bound in _occupancy_assignments(tag, n, wt, rects):
        term = QLaurent.q_power(_cc2_occupancy(tag, n, mlevels))
        for a in range(1, n + 1):
            for i in range(1, bound + 1):
                num = _p2num(tag, n, mlevels, rects, a, i)
                if num < 0:
                    term = QLaurent.zero()
                    break
                m = mlevels[a - 1].get(i, 0)
                if m:
                    assert num % (2 * tv[a - 1]) == 0
                    term = term * qbinom(m, num // (2 * tv[a - 1]),
                                         tv[a - 1])
            if not term:
                break
        out = out + term
    return out


def M_Atd(n: int, wt, rects) -> QLaurent:
    """Parity-refined fermionic sum for tag A2D (conjectural)."""
    tag = "A2D"
    rects = tuple(rects)
    out = QLaurent.zero()
    for mlevels, bound in _occupancy_assignments(tag, n, wt, rects):
        term = QLaurent.q_power(_cc2_occupancy(tag, n, mlevels))
        for a in range(1, n + 1):
            for i in range(1, bound + 1):
                num = _p2num(tag, n, mlevels, rects, a, i)
                if num < 0:
                    term = QLaurent.zero()
                    break
                m = mlevels[a - 1].get(i, 0)
                if not m:
                    continue
                assert num % 2 == 0
                p = num // 2
                if a == n and i % 2:
                    # odd lengths at the top level carry a half charge
                    # and one reserved unit of vacancy
                    term = term * QLaurent.q_power(m) * qbinom(m, p - 1)
                else:
                    term = term * qbinom(m, p)
            if not term:
                break
        out = out + term
    return out


# ---------------------------------------------------------------------------
# the three-way verifier

def ambient_path_rects(tag: str, n: int, rects):
    """Blocks of the ambient tensor product, in block (not display) order."""
    return tuple(x for r, s in rects
                 for x in reversed(ambient_rects(tag, n, r, s)))


def _fold_weight(tag, n, amb_partition):
    a = tuple(amb_partition) + (0,) * (2 * n - len(tuple(amb_partition)))
    diffs = tuple(a[i] - a[i + 1] for i in range(2 * n - 1))
    for i in range(1, n):
        if diffs[i - 1] != diffs[2 * n - i - 1]:
            return None
    if diffs[n - 1] % gamma(tag):
        return None
    wt = diffs[:n - 1] + (diffs[n - 1] // gamma(tag),)
    while wt and wt[-1] == 0:
        wt = wt[:-1]
    return wt


def x_paths(tag: str, n: int, rects):
    """Graded census of highest weight elements, keyed by folded weight."""
    gp = gamma_prime(tag)
    factors = [generate_V(tag, n, r, s) for r, s in reversed(tuple(rects))]
    out = {}
    for combo in product(*factors):
        amb = tuple(t for v in combo for t in v.ambient)
        if any(eps_phi(i, amb)[0] for i in range(1, 2 * n)):
            continue
        lam = path_weight(amb, 2 * n)
        wt = _fold_weight(tag, n, lam)
        if wt is None:
            raise ValueError(
                f"highest weight element with ambient weight {lam} "
                "folds outside the embedded weight lattice")
        d2 = 2 * energy(amb, 2 * n)
        assert d2 % gp == 0
        out[wt] = out.get(wt, QLaurent.zero()) + QLaurent.q_power(-d2 // gp)
    return out


def _ambient_rc_ok(tag, n, rc):
    levels = list(rc) + [()] * (2 * n - 1 - len(rc))
    if len(levels) != 2 * n - 1:
        return False
    for k in range(1, n):
        if levels[k - 1] != levels[2 * n - k - 1]:
            return False
    top = levels[n - 1]
    if tag == "C1" and any(ln % 2 for ln, _ in top):
        return False
    if tag in ("C1", "A2") and any(rig % 2 for _, rig in top):
        return False
    if tag == "A2D" and any((rig - ln) % 2 for ln, rig in top):
        return False
    return True


def x_rc_filtered(tag: str, n: int, rects, wt):
    """The same census from symmetry-filtered flat rigged configurations."""
    from .rc import cocharge, enumerate_rc
    rhat = ambient_path_rects(tag, n, rects)
    lamhat = _ambient_lambda(tag, n, wt, sum(r * s for r, s in rhat))
    gp = gamma_prime(tag)
    out = QLaurent.zero()
    if lamhat is None:
        return out
    for rc in enumerate_rc(lamhat, rhat):
        if _ambient_rc_ok(tag, n, rc):
            out = out + QLaurent.q_power(2 * cocharge(rc) // gp)
    return out


def _ambient_lambda(tag, n, wt, total):
    """Content partition of the unfolded weight inside a tensor of
    ``total`` cells, or None when no such content exists."""
    from .virtual import embed_weight
    a = embed_weight(wt, tag, n)
    lam = [sum(a[i:]) for i in range(2 * n - 1)] + [0]
    extra = total - sum(lam)
    if extra < 0 or extra % (2 * n):
        return None
    lam = tuple(x + extra // (2 * n) for x in lam)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    return lam


def _candidate_weights(tag, n, rects):
    total = sum(r * s for r, s in ambient_path_rects(tag, n, rects))
    seen = set()
    for lam in partitions_of(total):
        if len(lam) > 2 * n:
            continue
        wt = _fold_weight(tag, n, lam)
        if wt is not None:
            seen.add(wt)
    return sorted(seen)


def _verify_weight(tag, n, rects, w, paths):
    xp = paths.get(w, QLaurent.zero())
    xb = x_rc_filtered(tag, n, rects, w)
    xm = M_Atd(n, w, rects) if tag == "A2D" else M_sum(tag, n, w, rects)
    ok = xp == xb == xm
    entry = {
        "Lambda": list(w),
        "x_paths": xp.to_json(),
        "x_rc_filtered": xb.to_json(),
        "m_sum": xm.to_json(),
        "verdict": "pass" if ok else "fail",
    }
    if not ok:
        entry["counterexample"] = {
            "tag": tag, "n": n, "R": [list(r) for r in rects],
            "Lambda": list(w)}
    return entry


def verify_XM(tag: str, n: int, rects, wt=None, jobs: int = 1):
    """Compare the path census with the filtered and fermionic sums.

    Returns a report dict; with wt=None every candidate dominant weight
    is covered and the verdicts are combined.  ``jobs`` fans the
    per-weight comparisons over a thread pool.
    """
    rects = tuple(tuple(r) for r in rects)
    start = time.perf_counter()
    paths = x_paths(tag, n, rects)
    weights = [tuple(wt)] if wt is not None else _candidate_weights(
        tag, n, rects)
    experimental = tag == "A2D"
    scope = ("theorem"
             if not experimental and all(s == 1 for _, s in rects)
             else "conjecture")
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(
                lambda w: _verify_weight(tag, n, rects, w, paths), weights))
    else:
        reports = [_verify_weight(tag, n, rects, w, paths) for w in weights]
    verdict = ("pass" if all(e["verdict"] == "pass" for e in reports)
               else "fail")
    return {
        "tag": tag,
        "n": n,
        "R": [list(r) for r in rects],
        "scope": scope,
        "experimental": experimental,
        "reports": reports,
        "verdict": verdict,
        "runtime_ms": int(1000 * (time.perf_counter() - start)),
    }
