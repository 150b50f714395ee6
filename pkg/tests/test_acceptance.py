"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Set ``HSX_SKIP_BIG=1`` to leave out the E7/E8 rows of criterion 1.
"""
import itertools
import os
import shutil
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from hsx import adjoint as adj
from hsx import table as tbl
from hsx.cohomology import gram_matrix
from hsx.coset import get_space, is_admissible, space_from_descriptor
from hsx.errors import HsxError, InvalidWord
from hsx.localize import EvalPoint, Localizer, triple_gram
from hsx.rootsys import build_root_system

CAYLEY_PAIRS = [
    ([1, 3, 4, 2, 6, 5, 4, 3, 1], [1, 3, 4, 2, 5, 4, 3, 1]),
    ([5, 3, 4, 2, 6, 5, 4, 3, 1], [5, 4, 2, 6, 5, 4, 3, 1]),
]


def record(n, ok, text):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}")
    return ok


# -- 1 ------------------------------------------------------------------------------


def _table_check(rows, limit):
    t0 = time.perf_counter()
    results = tbl.run_table(rows)
    elapsed = time.perf_counter() - t0
    bad = [f"{r.row.label}: {r.computed} != {r.expected} {r.error or ''}".strip()
           for r in results if not r.passed]
    return results, elapsed, bad, elapsed <= limit


def test_criterion_1_eff_table():
    rows = tbl.default_rows(big=False)
    results, elapsed, bad, fast = _table_check(rows, 120)
    ok = record(1, not bad and fast, f"eff table, {len(results) - len(bad)}/{len(results)} rows "
                                     f"exact in {elapsed:.1f}s (limit 120s) {bad or ''}")
    assert ok


@pytest.mark.slow
@pytest.mark.skipif(os.environ.get("HSX_SKIP_BIG") == "1", reason="HSX_SKIP_BIG=1")
def test_criterion_1_eff_table_big():
    rows = [r for r in tbl.EFF_ROWS if r.big]
    results, elapsed, bad, fast = _table_check(rows, 1800)
    ok = record(1, not bad and fast, f"eff table --big (E7, E8), {len(results) - len(bad)}/"
                                     f"{len(results)} rows exact in {elapsed:.1f}s (limit 1800s) {bad or ''}")
    assert ok


# -- 2 ------------------------------------------------------------------------------

ORACLE_SPACES = ["A3/P2", "B3/P1", "B3/P2", "C3/P2", "C3/P3", "G2/P1", "G2/P2"]


def test_criterion_2_gram_equals_localization():
    checked, bad = 0, []
    for desc in ORACLE_SPACES:
        sp = space_from_descriptor(desc)
        for k in range(sp.dim % 2, sp.dim + 1, 2):
            rep = gram_matrix(sp, k)
            basis, mat = triple_gram(sp, k=k)
            checked += len(basis) ** 2
            if basis != rep.basis or mat != rep.matrix:
                bad.append(f"{desc} k={k}")
    ok = record(2, not bad, f"{checked} Gram entries equal localization triple products "
                            f"on {len(ORACLE_SPACES)} spaces {bad or ''}")
    assert ok


# -- 3 ------------------------------------------------------------------------------

TYPES = ([("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 7)]
         + [("C", n) for n in range(2, 7)] + [("D", n) for n in range(4, 8)]
         + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])


def _orbit_size(rs, nodes, cap):
    start = tuple(int(i + 1 in nodes) for i in range(rs.rank))
    seen, todo = {start}, [start]
    while todo and len(seen) <= cap:
        lam = todo.pop()
        for i in range(rs.rank):
            if lam[i] > 0:
                mu = rs.reflect_weight(i, lam)
                if mu not in seen:
                    seen.add(mu)
                    todo.append(mu)
    return len(seen)


def small_spaces(cap=100):
    for series, rank in TYPES:
        rs = build_root_system(series, rank)
        for size in range(1, rank + 1):
            for nodes in itertools.combinations(range(1, rank + 1), size):
                if _orbit_size(rs, nodes, cap) <= cap:
                    yield series, rank, nodes


def _duality_matrix_ok(sp):
    """Every pairing ``<s(u), s(dual v)>`` of complementary codimension, by localization."""
    at = EvalPoint.default(sp.rs.rank)
    dual = sp.dual
    values = []
    for point in (at.first, at.second):
        loc = Localizer(sp, point)
        acc: dict = {}
        for x in range(len(sp)):
            row, e = loc.table[x], loc.euler[x]
            # restriction of s(u) at x is row[dual u]; that of s(dual v) is row[v]
            for a, ra in row.items():
                for b, rb in row.items():
                    if sp.codim(dual[a]) == sp.codim(b):
                        acc[(dual[a], b)] = acc.get((dual[a], b), Fraction(0)) + ra * rb / e
        values.append(acc)
    pairs = {(u, v) for u in range(len(sp)) for v in range(len(sp)) if sp.codim(u) == sp.codim(v)}
    return all(values[0].get(p, 0) == values[1].get(p, 0) == int(p[0] == p[1]) for p in pairs)


def test_criterion_3_duality_orthonormal():
    spaces, bad = 0, []
    for series, rank, nodes in small_spaces():
        sp = get_space(series, rank, nodes)
        spaces += 1
        if not _duality_matrix_ok(sp):
            bad.append(sp.name)
    ok = record(3, not bad and spaces > 0,
                f"duality orthonormal by localization on all {spaces} spaces with |W^P| <= 100 {bad or ''}")
    assert ok


# -- 4 ------------------------------------------------------------------------------


def _perturbations(w, v):
    sp = space_from_descriptor("E6/P1")
    wi = sp.index_of_word(w)
    out = []
    for k in range(len(v)):
        v2 = v[:k] + v[k + 1:]
        try:
            vi = sp.index_of_word(v2)
        except InvalidWord:
            out.append((v2, "rejected"))
            continue
        out.append((v2, "admissible" if is_admissible(sp, vi, wi) else "inadmissible"))
    return out


def test_criterion_4_cayley_pairs_admissible():
    sp = space_from_descriptor("E6/P1")
    ok = all(is_admissible(sp, sp.index_of_word(v), sp.index_of_word(w)) for w, v in CAYLEY_PAIRS)
    record(4, ok, "both Cayley-plane pairs (v, w) are admissible")
    assert ok


def test_criterion_4_perturbations_against_definition():
    # the definition oracle lives in the coset tests
    from test_coset import brute_admissible

    sp = space_from_descriptor("E6/P1")
    checked, bad = 0, []
    for w, v in CAYLEY_PAIRS:
        wi = sp.index_of_word(w)
        for v2, verdict in _perturbations(w, v):
            if verdict == "rejected":
                continue
            checked += 1
            if (verdict == "admissible") != brute_admissible(sp, sp.index_of_word(v2), wi):
                bad.append(v2)
    ok = record(4, not bad, f"{checked} reduced one-letter perturbations agree with the "
                            f"definition oracle {bad or ''}")
    assert ok


@pytest.mark.xfail(strict=True, reason="two perturbations of v are admissible; see the decisions ledger")
def test_criterion_4_every_perturbation_rejected():
    found = [(v2, verdict) for w, v in CAYLEY_PAIRS for v2, verdict in _perturbations(w, v)
             if verdict == "admissible"]
    record(4, not found, f"literal claim 'every one-letter perturbation is rejected or "
                         f"inadmissible': admissible perturbations {found}")
    assert not found


# -- 5 ------------------------------------------------------------------------------


def _rank4_models():
    built, skipped = [], []
    for series, rank in TYPES:
        if rank > 4:
            continue
        for kind in (adj.ADJOINT, adj.COADJOINT):
            try:
                built.append(adj.model_from_type(f"{series}{rank}", kind))
            except HsxError as exc:
                skipped.append(f"{series}{rank} {kind}: {type(exc).__name__}")
    return built, skipped


def test_criterion_5_adjoint_cross_checks():
    models, skipped = _rank4_models()
    bad = []
    for m in models:
        rep = adj.cross_check_sigma(m)
        if rep["mismatches"]:
            bad.append(f"{m.name} sigma")
        table = adj.chevalley_table(m)
        cartan = m.rs.cartan
        if any(c != (2 if i == j else 1 if cartan[i - 1][j - 1] < 0 else 0) for (i, j), c in table.items()):
            bad.append(f"{m.name} table")
        for row in adj.trans_bis_pairs(m):
            if not (row["admissible"] and row["disjoint"] and row["reflection"] and row["dual"]):
                bad.append(f"{m.name} trans-bis alpha_{row['simple']}")
    names = sorted({m.name for m in models})
    ok = record(5, not bad and len(models) >= 8,
                f"sigma formula, Chevalley table and trans-bis on {len(models)} models {names} {bad or ''}")
    assert ok


# -- 6 ------------------------------------------------------------------------------

DEF_POS = [("G2", "adjoint"), ("F4", "adjoint"), ("B3", "adjoint"), ("B4", "adjoint"),
           ("C3", "coadjoint"), ("C4", "coadjoint"), ("D4", "adjoint")]


def test_criterion_6_def_pos():
    t0 = time.perf_counter()
    bad, tiers = [], {}
    for t, kind in DEF_POS:
        m = adj.model_from_type(t, kind)
        if not adj.verify_q_identity(m).holds:
            bad.append(f"{t} identity")
        rep = adj.check_posdef(m, samples=1000, seed=0, raise_on_failure=False)
        tiers[t] = rep.tier
        if rep.failures:
            bad.append(f"{t} posdef {rep.failures} failures")
        if m.pairs and rep.tier != "symbolic":
            bad.append(f"{t} no certificate")
    # D4: the form derived from the Chevalley data equals the closed form, and its minors are certified
    d4 = adj.model_from_type("D4")
    derived = adj.derive_q_tilde(d4)
    xs = adj.symbols(d4, "x")
    point = [Fraction(2), Fraction(3), Fraction(5), Fraction(7)][:len(d4.relevant_simples)]
    closed = adj.q_tilde(d4, point)
    subs = {xs[i]: v for i, v in zip(d4.relevant_simples, point)}
    if any(Fraction(str(e.subs(subs))) != closed[a][b] for a, row in enumerate(derived) for b, e in enumerate(row)):
        bad.append("D4 derived form")
    for n in (3, 4, 5):
        for series in "BC":
            if not adj.bn_cn_determinant(n, series)[0]:
                bad.append(f"{series}{n} determinant")
    elapsed = time.perf_counter() - t0
    ok = record(6, not bad and elapsed <= 300,
                f"q identity, 1000-sample positivity with tiers {tiers}, D4 direct check, "
                f"B/C determinants n=3,4,5 in {elapsed:.1f}s (limit 300s) {bad or ''}")
    assert ok


# -- 7 ------------------------------------------------------------------------------


def test_criterion_7_coadjoint_sigma():
    bad = []
    for t, kind in [("B3", "adjoint"), ("C3", "coadjoint"), ("D4", "adjoint")]:
        rep = adj.coadjoint_sigma_checks(adj.model_from_type(t, kind))
        if not rep["pass"]:
            bad.append(rep["space"])
    ok = record(7, not bad, f"coadjoint sigma facts on B3/P2, C3/P2, D4/P2 {bad or ''}")
    assert ok


# -- 8 ------------------------------------------------------------------------------


def test_criterion_8_headless():
    exe = shutil.which("hsx")
    cmd = [exe] if exe else [sys.executable, "-m", "hsx.cli"]
    proc = subprocess.run(cmd + ["table", "eff"], capture_output=True, text=True, timeout=300,
                          env={**os.environ, "HSX_THREADS": "1"})
    ok = proc.returncode == 0 and proc.stdout.strip().endswith("PASS")
    record(8, ok, f"`hsx table eff` exit {proc.returncode}; {proc.stdout.strip().splitlines()[-1]}")
    ACCEPTANCE_LINES.append(
        "[NOTE] criterion 8: the geometric theorems (connectedness, fundamental group, Picard "
        "group transplanting for subvarieties) are not reproducible at desk scale; they are "
        "covered only through criteria 1-7")
    assert ok
