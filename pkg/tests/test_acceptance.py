"""Acceptance suite: every criterion is exact integer arithmetic with
tolerance zero, and prints one PASS/FAIL line."""

import random
import sys
from itertools import combinations

import logacm as L
from logacm.classify import f0_split_acm_oracle
from logacm.errors import NotVeryAmple
from logacm.exactseq import Evaluator, LineE, Seq, SeqE, cm_regularity_certify, default_evaluator
from logacm.intervals import pad_vec
from logacm.linebundles import binom, line_cohom
from logacm.logbundles import ledger_checks, log_pair
from logacm.varieties import vneg, vsub

from conftest import catalog_surfaces, random_class


def report(num: int, name: str, ok: bool) -> bool:
    print(f"ACCEPTANCE {num:2d} [{name}]: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return ok


def split_table_oracle(n: int, m: int, t: int) -> list[int]:
    """Dimension table of O^(m-1) + O(-1)^(n-m+1) from binomials alone."""
    def line(s):
        v = [0] * (n + 1)
        v[0] = binom(n + s, n)
        v[n] = binom(-s - 1, n)
        return v

    a, b = line(t), line(t - 1)
    return [(m - 1) * p + (n - m + 1) * q for p, q in zip(a, b)]


def test_criterion_01_split_tables():
    ok = True
    ev = default_evaluator()
    for n in (2, 3, 4):
        x = L.projective_space(n)
        for m in range(1, n + 2):
            arr = L.hyperplane_arrangement(x, m)
            if L.is_acm(x, (1,), arr).status != "Yes":
                ok = False
            pair = log_pair(x, arr)
            for t in range(-n - 2, n + 3):
                got = pad_vec(ev.cohom(pair.cotangent_log, (t,)), n + 1)
                want = split_table_oracle(n, m, t)
                if not all(g.exact and g.lo == w for g, w in zip(got, want)):
                    ok = False
    assert report(1, "split log tables, m <= n+1", ok)


def test_criterion_02_steiner_count():
    ok = True
    ev = default_evaluator()
    for n in (2, 3):
        x = L.projective_space(n)
        for m in range(n + 2, n + 5):
            arr = L.hyperplane_arrangement(x, m)
            pair = log_pair(x, arr)
            v = pad_vec(ev.cohom(pair.cotangent_log, (-n,)), n + 1)
            if not (v[n - 1].exact and v[n - 1].lo == m - n - 1):
                ok = False
            if L.is_acm(x, (1,), arr).status != "No":
                ok = False
    assert report(2, "generic count m-n-1 and rejection", ok)


def test_criterion_03_quadric_search():
    x = L.quadric_surface()
    res = L.search(x, (1, 1), class_bound=4, m_bound=8)
    yes = [c for c, v, _ in res if v.status == "Yes"]
    shape = sorted((c.count((1, 0)), c.count((0, 1))) for c in yes)
    want = sorted((a, b) for a in range(1, 4) for b in range(1, 4))
    ok = len(yes) == 9 and shape == want
    assert report(3, "quadric ruling search yes-set", ok)


def test_criterion_04_hirzebruch_tables():
    ev = default_evaluator()
    ok = True
    for e in range(0, 7):
        x = L.hirzebruch(e)
        _, tan = L.cotangent_tangent_pair(x)
        v = ev.cohom(tan, (0, 0))
        want = 0 if e <= 1 else e - 1
        if not (v[1].exact and v[1].lo == want):
            ok = False
    for e in range(1, 7):
        if L.cohom_line_hirzebruch(e, 2, e)[0] != e + 2:
            ok = False
        if L.cohom_line_hirzebruch(e, 0, 2)[0] != 3:
            ok = False
        if L.cohom_line_hirzebruch(e, 2, 2 * e)[0] != 3 * e + 3:
            ok = False
    ok = ok and L.cohom_line_hirzebruch(1, 2, 3)[0] == 9
    ok = ok and L.cohom_line_hirzebruch(1, 3, 3)[0] == 10
    assert report(4, "Hirzebruch tangent and section counts", ok)


def test_criterion_05_f1_trivial_criterion():
    ok = True
    for a in range(1, 7):
        for b in range(a + 1, a + 5):
            v = L.trivial_tacm_hirzebruch(1, a, b)
            want = "Yes" if (b >= a + 2 and a >= 3) else "No"
            if v.status != want:
                ok = False
    ok = ok and all(
        L.trivial_tacm_hirzebruch(1, a, b).status == "No"
        for a in (1, 2)
        for b in range(a + 1, a + 5)
    )
    assert report(5, "empty arrangement on F_1: b >= a+2 >= 5", ok)


def test_criterion_06_blowup_ledger():
    ev = default_evaluator()
    x = L.blowup_p2(2)
    cot, tan = L.cotangent_tangent_pair(x)
    ok = x.chi_tangent() == 4
    ok = ok and ev.cohom(cot, (0, 0, 0))[1].lo == 3
    ok = ok and x.h0_tangent == 4
    arr = L.arrangement(
        x, [L.component_from_class(x, c) for c in [(0, 1, 0), (0, 0, 1), (1, -1, -1)]]
    )
    ok = ok and L.is_acm(x, vneg(x.canonical_class), arr).status == "Yes"
    for k in (1, 2, 3, 4):
        xk = L.blowup_p2(k)
        mk = vneg(xk.canonical_class)
        classes = [tuple(1 if j == i + 1 else 0 for j in range(k + 1)) for i in range(k)]
        for size in range(1, k + 1):
            for sub in combinations(classes, size):
                sq = L.arrangement(xk, [L.component_from_class(xk, c) for c in sub])
                if L.deficiency_concentrated_at_zero(xk, mk, sq).status != "Yes":
                    ok = False
    assert report(6, "blow-up ledger and exceptional sub-arrangements", ok)


def test_criterion_07_contradiction_ledgers():
    cubic = ledger_checks("cubic_surface")
    dp4 = ledger_checks("dp4")
    ok = cubic.values == (36, 5, 9) and cubic.contradiction
    ok = ok and dp4.values == (60, 10, 12) and dp4.contradiction
    assert report(7, "del Pezzo contradiction chains", ok)


def test_criterion_08_pn_degree_reduction():
    ok = True
    for n in (2, 3):
        x = L.projective_space(n)
        for d in (2, 3):
            comps = [L.component_from_class(x, (1,)), L.component_from_class(x, (d,))]
            arr = L.arrangement(x, comps)
            if L.is_acm(x, (1,), arr).status != "No":
                ok = False
                continue
            viol, _ = L.necessary_conditions(x, (1,), arr)
            hits = [w for w in viol if w.rule == "pn-degree-reduction"]
            expected_value = binom(n + d - 2, n) - binom(n - 2, n)  # h^0(O_D(d-2))
            if len(hits) != 1:
                ok = False
                continue
            i, t, val = hits[0].witness
            if not (i == n - 1 and t == 1 - n and val.lo == expected_value > 0):
                ok = False
    assert report(8, "degree >= 2 components rejected with dual witness", ok)


def test_criterion_09_k3_quartic_lines():
    """Stated expectation: the rank-20 line arrangement classifies Yes with a
    2-regularity certificate on the tangent side, and span_rank < 20 is not
    Yes.  The engine's exact arithmetic gives chi(Omega^1(t)) = 4t^2 - 20 on
    the quartic, forcing h^1(Omega^1(log D)(-1)) = 16 via the residue
    sequence (the curve flank vanishes identically at that twist), so the
    first clause cannot hold; see the decisions ledger.  The criterion is
    asserted as stated and is expected to fail honestly."""
    x = L.surface_in_p3(4)
    comps = [L.component_from_degree(x, 1, 0) for _ in range(20)]
    arr20 = L.arrangement(x, comps, span_rank=20)
    arr19 = L.arrangement(x, comps, span_rank=19)
    not_yes_below = L.is_acm(x, (1,), arr19).status != "Yes"
    v = L.is_acm(x, (1,), arr20)
    pair = log_pair(x, arr20)
    try:
        two_regular = cm_regularity_certify(pair.tangent_log, 2, (1,))
    except NotVeryAmple:
        two_regular = False
    ok = not_yes_below and v.status == "Yes" and two_regular
    report(9, "quartic with 20-line lattice classifies Yes", ok)
    assert not_yes_below
    assert v.status == "Yes", (
        f"exact computation returns {v.status} with witness {v.witness}; "
        "the claimed vanishing fails at twist -1 (value 16)"
    )
    assert two_regular


def test_criterion_10_abelian_buchsbaum():
    x = L.abelian_surface(2)
    arr = L.arrangement(x, [])
    table = L.deficiency_table(x, (1,), arr, 1)
    ok = table.nonzero_twists() == [0]
    ok = ok and table.entries[0].exact and table.entries[0].lo == 4
    ok = ok and L.one_degree_buchsbaum(table)
    assert report(10, "abelian trivial arrangement concentrated at 0", ok)


def test_criterion_11_property_suites():
    rng = random.Random(11)
    violations = 0
    for x in catalog_surfaces():
        for _ in range(500):
            l = random_class(rng, x, 6)
            v = line_cohom(x, l)
            w = line_cohom(x, vsub(x.canonical_class, l))
            if v != tuple(reversed(w)):
                violations += 1
            if v[0] - v[1] + v[2] != x.riemann_roch_chi(l):
                violations += 1
    # interval soundness against the split tangent bundle on F_0
    f0 = L.hirzebruch(0)
    ev = Evaluator()
    mid = SeqE(Seq(f0, LineE(f0, (2, 0)), None, LineE(f0, (0, 2)), name="t"), 2)
    for t in range(-6, 7):
        got = ev.cohom(mid, (t, t))
        split = [
            p + q
            for p, q in zip(line_cohom(f0, (2 + t, t)), line_cohom(f0, (t, 2 + t)))
        ]
        for g, s in zip(got, split):
            if not (g.lo <= s and (g.hi is None or s <= g.hi)):
                violations += 1
    # regularity persistence on 50 certified instances
    certified = 0
    for x in catalog_surfaces():
        if x.kind == "quadric":
            h = (1, 1)
        elif x.kind == "hirzebruch":
            h = (1, x.param + 1)
        elif x.kind == "blowup_p2":
            h = vneg(x.canonical_class)
        else:
            h = (1,)
        try:
            x.very_ample_multiple(h)
        except NotVeryAmple:
            continue
        while certified < 50:
            l = random_class(rng, x, 3)
            e = LineE(x, l)
            found = None
            for r in range(-5, 6):
                if cm_regularity_certify(e, r, h):
                    found = r
                    break
            if found is None:
                continue
            if not cm_regularity_certify(e, found + 1, h):
                violations += 1
            certified += 1
            if certified % 5 == 0:
                break
    ok = violations == 0 and certified >= 50
    assert report(11, "randomized duality, chi, soundness, persistence", ok)


def test_criterion_12_f0_discrepancy_protocol():
    rep = f0_split_acm_oracle(k_bound=8, window=12)
    want = [(k1, k2) for k1 in range(1, 6) for k2 in range(1, 3)]
    ok = rep.yes_set == want
    ok = ok and not rep.agrees_with_stated
    ok = ok and any("DISAGREES" in ln for ln in rep.lines)
    ok = ok and set(rep.grid) == {(i, j) for i in range(9) for j in range(9)}
    assert report(12, "ruling split oracle with recorded discrepancy", ok)
