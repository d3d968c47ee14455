"""Acceptance gate: one PASS/FAIL line per criterion, all checks exact."""

import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb

from conftest import record

from discrimlab.arrangement import common_point
from discrimlab.catalog import braid, random_arrangement
from discrimlab.cli import run
from discrimlab.discriminantal import (
    all_disc_normals,
    census_summary,
    discriminantal,
    in_DL,
    is_simple,
    rank2_census,
)
from discrimlab.exact_linalg import dot, in_span, rank, rref
from discrimlab.nvg import (
    SearchStats,
    admissible_choices,
    certify_rs_dependency,
    edge_space,
    enumerate_r_sets,
    find_certificates,
    find_simple_nvg,
    is_r_set,
    kt_configuration,
    ls_dependency_check,
    witness_translate,
)

CRAPO_T = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))
FALK_T = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6))


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_crapo_rank(tmp_path):
    path = str(tmp_path / "crapo.json")

    def go():
        assert run(["example", "crapo", "--out", path]).exit_code == 0
        return run(["rank", "--arr", path, "--T", "1,2,3;1,4,5;2,4,6;3,5,6"])

    rep, dt = _timed(go)
    r = rep.result
    ok = rep.exit_code == 0 and r["multiplicity"] == 4 and r["is_simple"] is True and r["rank"] == 3 and dt < 1
    record(1, "Crapo multiplicity 4, simple, rank 3", ok, f"{dt:.3f}s")
    assert ok


def test_criterion_2_crapo_certificate(crapo):
    (ok_cert, cert), dt = _timed(
        lambda: certify_rs_dependency(crapo[0], CRAPO_T, 5, ((1, 4, 5), (3, 5, 6)))
    )
    ok = (
        ok_cert
        and cert.rank_full == cert.rank_base + 1
        and cert.flat_rank <= 4 - 2 + 1
        and dt < 1
    )
    record(2, "Crapo (4,2)-dependency at l=5", ok, f"flat rank {cert.flat_rank if cert else None}, {dt:.3f}s")
    assert ok


def test_criterion_3_falk(tmp_path):
    path = str(tmp_path / "falk.json")

    def go():
        assert run(["example", "falk", "--out", path]).exit_code == 0
        rep = run(["rank", "--arr", path, "--T", "1,2,3,4;1,2,5,6;3,4,5,6"])
        from discrimlab.io import load_arrangement

        a, _ = load_arrangement(path)
        ls = ls_dependency_check(a, FALK_T)
        cert_ok, _ = certify_rs_dependency(a, FALK_T, 6, ((1, 2, 5, 6), (3, 4, 5, 6)))
        mults = {e["multiplicity"] for e in census_summary(rank2_census(a))}
        return rep, ls, cert_ok, mults

    (rep, ls, cert_ok, mults), dt = _timed(go)
    r = rep.result
    ok = (
        r["multiplicity"] == 3 and r["is_simple"] is True and r["rank"] == 2
        and ls and cert_ok and 3 in mults and dt < 5
    )
    record(3, "Falk rank 2, dependent, census has multiplicity 3", ok, f"{dt:.3f}s")
    assert ok


def test_criterion_4_very_generic_baseline():
    def go():
        empty, transversal, n_simple = True, True, 0
        for seed in range(1, 21):
            a = random_arrangement(6, 2, seed)
            stats = SearchStats()
            empty &= find_simple_nvg(a, 4, stats=stats) == []
            transversal &= all(rk == len(T) for T, rk in stats.simple_ranks.items())
            n_simple += len(stats.simple_ranks)
        return empty, transversal, n_simple

    (empty, transversal, n_simple), dt = _timed(go)
    ok = empty and transversal and dt < 30
    record(4, "20 random (6,2) arrangements: no simple defect up to r=4", ok,
           f"{n_simple} simple r-sets, {dt:.2f}s")
    assert ok


def test_criterion_4b_all_simple_families_transversal():
    # r-sets of triples in [6] with r <= 4 are never simple on a very generic
    # arrangement, so the rank check is also run over every family of r <= 4
    # distinct triples
    bad, n_simple = 0, 0
    start = time.perf_counter()
    for seed in range(1, 21):
        a = random_arrangement(6, 2, seed)
        d = discriminantal(a)
        for r in range(2, 5):
            fams = list(combinations(d.subsets, r))
            d.prefetch(fams)
            for T in fams:
                if is_simple(a, T):
                    n_simple += 1
                    bad += d.rank(T) != r
    dt = time.perf_counter() - start
    ok = bad == 0 and n_simple > 0
    record("4b", "every simple family of <= 4 triples is transversal (seeds 1-20)", ok,
           f"{n_simple} simple, {dt:.2f}s")
    assert ok


def test_criterion_5_in_dl_oracle(crapo, falk):
    rng = random.Random(5)
    named = {"crapo": crapo[0], "falk": falk[0], "braid4": braid(4)}
    agree, total, positives = 0, 0, 0
    for a in named.values():
        subsets = list(combinations(range(1, a.n + 1), a.k + 1))
        for _ in range(1000):
            L = rng.choice(subsets)
            t = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(a.n)]
            if rng.random() < 0.5:
                P = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(a.k)]
                for p in L:
                    t[p - 1] = dot(a.normals[p - 1], P)
            expect, _ = common_point(a, t, L)
            positives += expect
            agree += in_DL(a, t, L) == expect
            total += 1
    ok = agree == total and 0 < positives < total
    record(5, "in_DL agrees with common_point", ok, f"{agree}/{total}, {positives} incident")
    assert ok


def test_criterion_6_braid():
    ok = True
    for n in (3, 4, 5):
        a = braid(n)
        normals = all_disc_normals(a)
        expected = set()
        for i, j in combinations(range(n), 2):
            v = [0] * n
            v[i], v[j] = 1, -1
            expected.add(tuple(v))
        ok &= len(normals) == comb(n, 2) and {dn.coeffs for dn in normals} == expected
        ok &= rank([dn.coeffs for dn in normals]) == n - 1
        counts = {e["multiplicity"]: e["count"] for e in census_summary(rank2_census(a))}
        want = {3: comb(n, 3)}
        if n >= 4:
            want[2] = 3 * comb(n, 4)
        ok &= counts == want
    record(6, "braid(3..5) normals, rank n-1, census multiplicities 3 and 2", ok)
    assert ok


def _brute(n, k, r):
    subsets = list(combinations(range(1, n + 1), k + 1))
    return {T for T in combinations(subsets, r) if is_r_set(T)}


def test_criterion_7_enumerator():
    ok = True
    for n, k, r in ((6, 2, 3), (6, 2, 4), (6, 3, 3)):
        ok &= set(enumerate_r_sets(n, k, r)) == _brute(n, k, r)
    ok &= CRAPO_T in set(enumerate_r_sets(6, 2, 4))
    ok &= FALK_T in set(enumerate_r_sets(6, 3, 3))
    record(7, "r-set enumerator equals brute force", ok)
    assert ok


def test_criterion_8_three_set_equivalence(falk):
    arrs = [(falk[0], True)] + [(random_arrangement(6, 3, s), False) for s in range(1, 11)]
    ok = True
    for a, want in arrs:
        ls = ls_dependency_check(a, FALK_T)
        cert = bool(find_certificates(a, FALK_T))
        ok &= ls == cert == want
    record(8, "3-set test agrees with certificates (Falk + 10 random)", ok)
    assert ok


def test_criterion_9_properties(crapo, falk):
    rng = random.Random(9)
    fails = []

    # linear algebra: rank of rref basis, kernel orthogonality
    for _ in range(50):
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(5)] for _ in range(rng.randint(1, 5))]
        basis, _ = rref(rows, 5)
        if len(basis) != rank(rows) or rank(rows + list(basis)) != rank(rows):
            fails.append("rref")

    # disc normals: support exactly L, orthogonal to central translates
    arrs = [crapo[0], falk[0], braid(5)] + [random_arrangement(6, 2, s) for s in range(1, 6)]
    for a in arrs:
        for dn in all_disc_normals(a):
            if {i + 1 for i, c in enumerate(dn.coeffs) if c} != set(dn.L):
                fails.append("support")
            for x in ([rng.randint(-5, 5) for _ in range(a.k)] for _ in range(3)):
                if dn([dot(v, x) for v in a.normals]) != 0:
                    fails.append("orthogonality")

    # K_T edges lie in the edge spaces
    for a, T in (crapo, falk):
        kt = kt_configuration(a, witness_translate(a, T), T)
        for (i, j), v in kt.edge_dirs.items():
            if not in_span(v, edge_space(a, T[i - 1], T[j - 1])):
                fails.append("edge")

    # certification does not depend on the pivot
    for a, tsets in ((crapo[0], enumerate_r_sets(6, 2, 4)), (falk[0], enumerate_r_sets(6, 3, 3))):
        for T in tsets:
            for l, S_l in admissible_choices(T):
                if len({certify_rs_dependency(a, T, l, S_l, pivot=p)[0] for p in S_l}) != 1:
                    fails.append("pivot")
    ok = not fails
    record(9, "property suites", ok, f"{len(fails)} failures")
    assert ok
