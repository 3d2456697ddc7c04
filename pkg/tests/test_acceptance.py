"""Acceptance suite: twelve end-to-end criteria, one pass/fail line each.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines.
"""

import json
import math
import os
import time
from itertools import product

import pytest
from click.testing import CliRunner

from crystals.cli import main as cli_main
from crystals.core import column_word
from crystals.crystal import (enumerate_paths, highest_weight_paths,
                              promotion, promotion_inv, u_of_brs)
from crystals.energy import (local_energy_at, rmatrix, rmatrix_single_column,
                             sigma_at, sigma_word)
from crystals.rc import (charge, cocharge, enumerate_lr, enumerate_rc,
                         phi_bar_inverse, phi_bar_lr, phi_bar_path,
                         phi_tilde_lr, wedge_lr, wedge_rc)
from crystals.virtual import (TAGS, VirtualElement, ambient_rects, decompose,
                              expected_components, generate_V, is_aligned,
                              is_one_column, member_V, split_column,
                              virtual_f_tensor)
from crystals.fermionic import verify_XM

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")
ARTIFACTS = os.path.join(os.path.dirname(__file__), "artifacts")


def _ok(k, desc):
    print(f"\nAC{k:02d} {desc}: PASS")


def _partitions(total, max_len):
    out = []

    def grow(rest, bound, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        if len(acc) == max_len:
            return
        for p in range(min(rest, bound), 0, -1):
            grow(rest - p, p, acc + [p])

    grow(total, total, [])
    return out


def test_ac01_trace_reproduces_worked_table():
    start = time.monotonic()
    runner = CliRunner()
    result = runner.invoke(cli_main, (
        "rc", "to", "--lr", os.path.join(FIXTURES, "ex_bij.json"),
        "--trace", "--format", "json"))
    assert result.exit_code == 0, result.output
    snaps = {step["x"]: step["levels"]
             for step in json.loads(result.output)["trace"]}

    def levels(*specs):
        return [[{"vac": v, "len": ln, "rig": r} for v, ln, r in level]
                for level in specs]

    assert snaps[6] == levels(((1, 1, 1),), ((0, 1, 0),))
    assert snaps[7] == levels(((1, 2, 1),), ((0, 1, 0),))
    assert snaps[9] == levels(((1, 2, 1),), ((0, 1, 0),))
    assert snaps[10] == levels(((2, 2, 1),), ((0, 1, 0), (0, 1, 0)),
                               ((0, 1, 0),))
    assert snaps[11] == levels(((3, 2, 1),), ((0, 2, 0), (0, 1, 0)),
                               ((0, 1, 0),))
    assert snaps[13] == levels(((1, 2, 1),), ((0, 2, 0), (0, 1, 0)),
                               ((0, 1, 0),))
    assert time.monotonic() - start < 1
    _ok(1, "worked-example trace rows x in {6,7,9,10,11,13}")


def test_ac02_single_column_local_isomorphism_golden():
    b2 = tuple((x,) for x in (2, 3, 5, 7))
    b1 = tuple((x,) for x in (1, 5, 6))
    b1p, b2p = rmatrix_single_column(b2, b1, 7)
    assert column_word(b1p) == (7, 5, 3)
    assert column_word(b2p) == (6, 5, 2, 1)
    assert rmatrix(b2, b1, 7) == (b1p, b2p)
    _ok(2, "single-column local isomorphism golden, n=7")


def test_ac03_promotion_golden_and_order():
    t = ((1, 1, 2, 3), (2, 2, 3, 4), (3, 4, 5, 5))
    expect = ((1, 1, 1, 2), (2, 2, 3, 4), (3, 4, 5, 5))
    assert promotion_inv(t, 5) == expect
    assert promotion(expect, 5) == t
    cur = t
    for _ in range(5):
        cur = promotion_inv(cur, 5)
    assert cur == t
    _ok(3, "promotion golden on the 3x4, n=5 tableau; order 5")


W_RECTS = ((1, 1), (1, 3), (1, 2), (1, 4), (1, 3), (1, 2), (1, 4))
W_TABLEAU = ((1, 2, 2, 3, 4, 5), (2, 4, 4, 5, 7, 7), (3, 5, 6, 7), (4, 7),
             (6,))


def _selection_matrix(picks):
    rows = [[sel[k] for k in sorted(sel)] for sel in picks]
    width = max(len(row) for row in rows)
    return [row + [math.inf] * (width - len(row)) for row in rows]


def test_ac04_selection_matrices_golden():
    inf = math.inf
    rc, steps = phi_bar_lr(W_TABLEAU, W_RECTS, trace=True)
    picks = [dict(sel) for x, _, sel, _ in steps if x >= 16]
    assert _selection_matrix(picks) == [[1, inf], [0, 1], [0, 1], [0, 1]]

    dual_t, dual_rects = wedge_lr(W_TABLEAU, W_RECTS, 6)
    dual_rc, dual_steps = phi_bar_lr(dual_t, dual_rects, trace=True)
    dual_picks = [dict(sel) for x, _, sel, _ in dual_steps if x >= 22]
    assert _selection_matrix(dual_picks) == [[1, 1, 1, inf], [0, 0, 0, 1]]
    # the duality square commutes on this instance
    assert dual_rc == wedge_rc(rc, 6)
    assert cocharge(dual_rc) == cocharge(rc)
    _ok(4, "selection matrices and duality square on the worked instance")


def test_ac05_split_column_golden():
    # n=9, one-column element 3 6 7 8 8bar 3bar; barred part K={8,3},
    # splitting set J={5,2}
    P = (3, 6, 7, 8, 11, 16)
    assert is_one_column(P, 9)
    assert tuple(2 * 9 + 1 - x for x in P if x > 9) == (8, 3)
    q_plus, q_minus = split_column(P, 9)
    assert q_minus == (5, 2)
    assert q_plus == (7, 6, 5, 2)
    # cross-check with the single-column local isomorphism
    left = tuple((x,) for x in (1, 2, 4, 5, 6, 7, 9))
    right = tuple((x,) for x in (3, 6, 7, 8))
    new_left, new_right = rmatrix(left, right, 9)
    assert tuple(x for (x,) in reversed(new_left)) == q_plus
    assert tuple(x for (x,) in reversed(new_right)) == \
        tuple(sorted(set(range(1, 10)) - set(q_minus), reverse=True))
    _ok(5, "column splitting golden, n=9, with local-isomorphism check")


def test_ac06_bijection_suite():
    start = time.monotonic()
    for n in (2, 3, 4):
        for length in (1, 2, 3):
            for heights in product(range(1, n + 1), repeat=length):
                rects = tuple((h, 1) for h in heights)
                display = tuple(reversed(rects))
                for lam in _partitions(sum(heights), n):
                    paths = highest_weight_paths(display, lam, n)
                    rcs = enumerate_rc(lam, rects)
                    images = {phi_bar_path(b) for b in paths}
                    assert len(images) == len(paths)
                    assert images == set(rcs)
                    for rc in rcs:
                        assert phi_bar_path(phi_bar_inverse(rc, rects)) == rc
                    for t in enumerate_lr(lam, rects):
                        assert charge(t, rects) == \
                            cocharge(phi_tilde_lr(t, rects))
    elapsed = time.monotonic() - start
    assert elapsed < 60
    _ok(6, f"bijection suite n<=4, <=3 columns ({elapsed:.1f}s)")


def test_ac07_yang_baxter_suite():
    start = time.monotonic()
    for n in (2, 3):
        for heights in product(range(1, n + 1), repeat=3):
            rects = tuple((h, 1) for h in heights)
            for b in enumerate_paths(rects, n):
                assert sigma_word((1, 2, 1), b, n) == \
                    sigma_word((2, 1, 2), b, n)
                lhs = local_energy_at(1, b, n) + \
                    local_energy_at(2, sigma_at(1, b, n), n)
                rhs = local_energy_at(1, sigma_at(2, b, n), n) + \
                    local_energy_at(2, sigma_at(1, sigma_at(2, b, n), n), n)
                assert lhs == rhs
    elapsed = time.monotonic() - start
    assert elapsed < 60
    _ok(7, f"Yang-Baxter and energy identity n<=3 ({elapsed:.1f}s)")


def test_ac08_duality_suite():
    start = time.monotonic()
    for n in (2, 3):
        for length in (1, 2):
            for heights in product(range(1, n + 1), repeat=length):
                rects = tuple((h, 1) for h in heights)
                for lam in _partitions(sum(heights), n):
                    for t in enumerate_lr(lam, rects):
                        dual_t, dual_rects = wedge_lr(t, rects, n)
                        rc = phi_bar_lr(t, rects)
                        dual_rc = phi_bar_lr(dual_t, dual_rects)
                        assert dual_rc == wedge_rc(rc, n)
                        assert cocharge(dual_rc) == cocharge(rc)
    elapsed = time.monotonic() - start
    assert elapsed < 60
    _ok(8, f"duality square and cocharge preservation n<=3 ({elapsed:.1f}s)")


def test_ac09_virtual_decomposition_and_membership():
    start = time.monotonic()
    cases = [("D2", 2, r, s) for r in (1, 2) for s in (1, 2)]
    cases += [(tag, n, r, 1) for tag in ("C1", "A2", "A2D")
              for n in (2, 3) for r in range(1, n + 1)]
    for tag, n, r, s in cases:
        assert decompose(tag, n, r, s) == expected_components(tag, n, r, s), \
            (tag, n, r, s)
        gen = {v.ambient for v in generate_V(tag, n, r, s)}
        rects = ambient_rects(tag, n, r, s)
        pred = {tuple(amb) for amb in enumerate_paths(rects, 2 * n)
                if member_V(VirtualElement(tag, n, r, s, tuple(amb)))}
        assert pred == gen, (tag, n, r, s)
    elapsed = time.monotonic() - start
    assert elapsed < 300
    _ok(9, f"virtual decompositions and membership ({elapsed:.1f}s)")


AC10_LISTS = (((1, 1),), ((2, 1),), ((1, 1), (1, 1)), ((2, 1), (1, 1)),
              ((2, 1), (2, 1)))


def test_ac10_x_equals_m_three_ways():
    start = time.monotonic()
    for tag in ("C1", "A2", "D2"):
        for rects in AC10_LISTS:
            report = verify_XM(tag, 2, rects)
            assert report["verdict"] == "pass", (tag, rects, report)
    # the D2 single height-2 factor exercises the half-width top weight
    report = verify_XM("D2", 2, ((2, 1),))
    assert [e["Lambda"] for e in report["reports"]] == [[0, 1]]
    elapsed = time.monotonic() - start
    assert elapsed < 600
    _ok(10, f"X=M three ways, C1/A2/D2, n=2, five lists ({elapsed:.1f}s)")


def test_ac11_twisted_dual_experimental_evidence():
    cases = [(n, rects)
             for n in (1, 2)
             for rects in [((h, 1),) for h in range(1, n + 1)] +
             [((h2, 1), (h1, 1)) for h2 in range(1, n + 1)
              for h1 in range(1, n + 1)]]
    failures = []
    for n, rects in cases:
        report = verify_XM("A2D", n, rects)
        assert report["experimental"] and report["scope"] == "conjecture"
        assert report["verdict"] in ("pass", "fail")
        if report["verdict"] != "pass":
            failures.append(report)
    if failures:
        # a genuine counterexample is archived as evidence, not a failure
        os.makedirs(ARTIFACTS, exist_ok=True)
        with open(os.path.join(ARTIFACTS, "a2d_counterexamples.json"),
                  "w") as fh:
            json.dump(failures, fh, sort_keys=True, indent=2)
        _ok(11, f"twisted-dual evidence: {len(failures)} counterexample(s) "
                "ARCHIVED")
    else:
        _ok(11, f"twisted-dual evidence, {len(cases)} cases, all agree")


def test_ac12_unaligned_tensor_rejected():
    b2 = ((1, 1), (2, 3))
    b1 = ((1, 1), (2, 2))
    v2 = VirtualElement("C1", 2, 2, 1, (b2,))
    v1 = VirtualElement("C1", 2, 2, 1, (b1,))
    assert not is_aligned(v2)
    with pytest.raises(ValueError):
        virtual_f_tensor(2, (v2, v1))
    _ok(12, "unaligned rank-2 symplectic tensor factor rejected")
