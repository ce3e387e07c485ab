"""Acceptance criteria 1-8.

Each criterion is one test; it records a PASS/FAIL line that the conftest
prints in the terminal summary.  Instance counts, sizes and seeds are pinned
below; every comparison is exact (no tolerances are involved anywhere).
"""
import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES

from arbopack import conditions as C
from arbopack.augment import lemma_adjust, lemma_violations, min_gamma, solve_aug_mixed
from arbopack.conditions import Certificate, recheck
from arbopack.generate import GenConfig, random_instance, random_lemma_instance, random_problem
from arbopack.gpoly import (GPolyBounds, SetFunctionTable, integral_element, intersect,
                            intersect_box, intersect_cardinality, minkowski_sum)
from arbopack.hypercore import border_count, members, p_hat_table, sample_subpartitions, uncross
from arbopack.oracles import exists_aug_mixed_bf, min_augment_bf
from arbopack.problems import Problem, augment_mode, check, oracle, requirements
from arbopack.verify import verify_packing

SEED = 20240601
PACKING_KINDS = ("edmonds", "hyper-edmonds", "flexible", "mixed-flexible", "fg-bounded",
                 "mixed-fg", "hyper-fg", "regular-limited", "mixed-limited", "mixed-basis",
                 "edmonds-branchings", "rootset-family", "bordered-packing", "corollary-f",
                 "packing-mixed", "bordered-dir", "bordered-undir")
PACKING_PER_KIND = 500
AUG_KINDS = ("aug-edmonds", "aug-flexible", "bordered-dir", "bordered-undir")
AUG_PER_KIND = 200
AUG_MIXED_GAMMA_COUNT = 100
AUG_MIXED_COUNT = 1000
SUBPARTITION_PAIRS = 10_000
PHAT_INSTANCES = 50
GPOLY_TRIPLES = 1000
LEMMA_COUNT = 600
GAMMA_MAX = 3


def record(num: int, ok: bool, text: str) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {text}"
    ACCEPTANCE_LINES[num] = line
    print(line)


def cert_exact(prob, H, cert: Certificate) -> bool:
    lhs, rhs = recheck(prob, H, cert)
    return (lhs, rhs) == (cert.lhs, cert.rhs) and lhs < rhs


# ------------------------------------------------------------ shared suites

@pytest.fixture(scope="module")
def packing_suite():
    rows = []
    t0 = time.perf_counter()
    for j, kind in enumerate(PACKING_KINDS):
        rng = random.Random(SEED + j)
        for _ in range(PACKING_PER_KIND):
            H, prob = random_problem(rng, kind, n=4, edges=6)
            if kind in ("bordered-dir", "bordered-undir"):
                prob = prob.with_gamma(0)
            v = check(H, prob)
            W = oracle(H, prob)
            rows.append((kind, H, prob, v, W))
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def augment_suite():
    rows = []
    t0 = time.perf_counter()
    for j, kind in enumerate(AUG_KINDS):
        rng = random.Random(SEED + 100 + j)
        for _ in range(AUG_PER_KIND):
            H, prob = random_problem(rng, kind, n=4, edges=6)
            g = min_gamma(H, prob, GAMMA_MAX)
            res = min_augment_bf(H, requirements(H, prob), augment_mode(prob), GAMMA_MAX,
                                 lex_least=False)
            rows.append((kind, H, prob, g, None if res is None else res.gamma))
    rng = random.Random(SEED + 200)
    for _ in range(AUG_MIXED_GAMMA_COUNT):
        H, prob = random_problem(rng, "aug-mixed-gamma", n=3, edges=5)
        g = min_gamma(H, prob, GAMMA_MAX)
        bf = next((t for t in range(GAMMA_MAX + 1)
                   if oracle(H, prob.with_gamma(t)) is not None), None)
        rows.append(("aug-mixed-gamma", H, prob, g, bf))
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def aug_mixed_suite():
    rows = []
    t0 = time.perf_counter()
    rng = random.Random(SEED + 300)
    for i in range(AUG_MIXED_COUNT):
        n = 2 if i % 5 == 0 else 3
        H, prob = random_problem(rng, "aug-mixed", n=n, edges=5)
        v = check(H, prob)
        W = exists_aug_mixed_bf(H, requirements(H, prob))
        sol = solve_aug_mixed(H, prob.params)
        rows.append((H, prob, v, W, sol))
    return rows, time.perf_counter() - t0


# -------------------------------------------------------------- criterion 1

def test_criterion_1_packing_oracle_equivalence(packing_suite):
    rows, secs = packing_suite
    bad = [(k, H, p) for k, H, p, v, W in rows if v.feasible != (W is not None)]
    per_kind = {k: sum(1 for r in rows if r[0] == k) for k in PACKING_KINDS}
    feas = sum(v.feasible for *_, v, _ in rows)
    ok = not bad and min(per_kind.values()) >= 500 and secs <= 300
    record(1, ok, f"{len(rows) - len(bad)}/{len(rows)} agree over {len(PACKING_KINDS)} "
                  f"variants ({feas} feasible), {secs:.0f}s")
    assert not bad, bad[:3]
    assert min(per_kind.values()) >= 500
    assert secs <= 300


# -------------------------------------------------------------- criterion 2

def test_criterion_2_augmentation_oracle_equivalence(augment_suite):
    rows, secs = augment_suite
    bad = [(k, H, p, g, b) for k, H, p, g, b in rows if g != b]
    hist = sorted({(g if g is not None else -1) for *_, g, _ in rows})
    ok = not bad and len(rows) >= 200 and secs <= 300
    record(2, ok, f"{len(rows) - len(bad)}/{len(rows)} min_gamma equal to brute force "
                  f"(values seen {hist}, -1 = none), {secs:.0f}s")
    assert not bad, bad[:3]
    assert secs <= 300


# -------------------------------------------------------------- criterion 3

def test_criterion_3_aug_mixed_end_to_end(aug_mixed_suite):
    rows, secs = aug_mixed_suite
    agree = sum(v.feasible == (W is not None) for _, _, v, W, _ in rows)
    verified = 0
    solver_ok = 0
    for H, prob, v, _, sol in rows:
        solver_ok += sol.verdict.feasible == v.feasible
        if sol.witness is not None:
            verified += verify_packing(H, sol.witness, requirements(H, prob)).ok
    feas = sum(v.feasible for _, _, v, _, _ in rows)
    ok = agree == len(rows) == solver_ok and verified == feas and secs <= 600
    record(3, ok, f"{agree}/{len(rows)} verdicts agree, {verified}/{feas} solver witnesses "
                  f"verified, {secs:.0f}s")
    assert agree == len(rows)
    assert solver_ok == len(rows)
    assert verified == feas
    assert secs <= 600


# -------------------------------------------------------------- criterion 4

def test_criterion_4_sub_and_supermodularity():
    rng = random.Random(SEED + 400)
    violations = pairs = 0
    while pairs < SUBPARTITION_PAIRS:
        n = rng.randint(1, 6)
        H = random_instance(rng, GenConfig(n=n, edges=rng.randint(0, 8),
                                           shape=rng.choice(("mixed", "digraph", "hypergraph"))))
        full = (1 << n) - 1
        for P1, P2 in zip(sample_subpartitions(full, 20, rng), sample_subpartitions(full, 20, rng)):
            u = uncross(P1, P2)
            pairs += 1
            if (border_count(H, P1) + border_count(H, P2)
                    < border_count(H, u.meet) + border_count(H, u.join)):
                violations += 1
    super_bad = 0
    for i in range(PHAT_INSTANCES):
        n = 3 + i % 4
        H = random_instance(rng, GenConfig(n=n, edges=rng.randint(2, 9)))
        h = rng.randint(1, 3)
        t, _ = p_hat_table(H, h)
        size = 1 << n
        for X, Y in itertools.product(range(size), repeat=2):
            if t[X] + t[Y] > t[X & Y] + t[X | Y]:
                super_bad += 1
    ok = violations == 0 and super_bad == 0
    record(4, ok, f"{violations} border-count violations over {pairs} pairs; "
                  f"{super_bad} p-hat violations over {PHAT_INSTANCES} instances (n<=6)")
    assert violations == 0
    assert super_bad == 0


# -------------------------------------------------------------- criterion 5

def _base_poly(rng: random.Random, s: int) -> GPolyBounds:
    """Base polyhedron of a random submodular b, shifted by a small box."""
    w = [rng.randint(0, 2) for _ in range(s)]
    c = rng.randint(0, 4)
    d = [rng.randint(-1, 1) for _ in range(s)]
    use_rank = rng.random() < 0.3
    r = rng.randint(0, s)

    def b(X):
        base = min(r, len(members(X))) if use_rank else min(c, sum(w[e] for e in members(X)))
        return base + sum(d[e] for e in members(X))

    full = (1 << s) - 1
    bt = SetFunctionTable.from_function(s, b)
    pt = SetFunctionTable.from_function(s, lambda X: bt[full] - bt[full & ~X])
    lo = [rng.randint(-2, 1) for _ in range(s)]
    hi = [x + rng.randint(0, 2) for x in lo]
    return minkowski_sum(GPolyBounds(pt, bt), GPolyBounds.box(lo, hi))


def random_gpoly(rng: random.Random, s: int) -> GPolyBounds:
    while True:
        Q = _base_poly(rng, s)
        if all(-4 <= v <= 4 for v in Q.p.values + Q.b.values):
            return Q


def lattice(Q: GPolyBounds, lo: int = -12, hi: int = 12) -> set:
    box = [range(max(lo, int(Q.p[1 << e])), min(hi, int(Q.b[1 << e])) + 1) for e in range(Q.s)]
    return {x for x in itertools.product(*box) if Q.contains(x)}


def test_criterion_5_gpoly_lattice_equivalence():
    rng = random.Random(SEED + 500)
    bad = []
    for t in range(GPOLY_TRIPLES):
        s = rng.randint(1, 3)
        Q1, Q2 = random_gpoly(rng, s), random_gpoly(rng, s)
        pts1, pts2 = lattice(Q1), lattice(Q2)
        # box
        f = [rng.randint(-3, 2) for _ in range(s)]
        g = [x + rng.randint(0, 3) for x in f]
        R, ne = intersect_box(Q1, f, g)
        want = {x for x in pts1 if all(a <= y <= b for a, y, b in zip(f, x, g))}
        if ne != bool(want) or (ne and lattice(R) != want):
            bad.append(("box", t))
        # cardinality
        a = rng.randint(0, 4)
        b = max(0, a + rng.randint(-1, 4))
        R, ne = intersect_cardinality(Q1, a, b)
        want = {x for x in pts1 if a <= sum(x) <= b}
        if ne != bool(want) or (ne and lattice(R) != want):
            bad.append(("card", t))
        # sum
        want = {tuple(u + v for u, v in zip(x, y)) for x in pts1 for y in pts2}
        if lattice(minkowski_sum(Q1, Q2), -24, 24) != want:
            bad.append(("sum", t))
        # integral element versus lattice scan, on the intersection pair
        Qi = intersect(Q1, Q2)
        x = integral_element(Qi)
        scan = pts1 & pts2
        if (x is None) != (not scan) or (x is not None and x not in scan):
            bad.append(("element", t))
    ok = not bad
    record(5, ok, f"{GPOLY_TRIPLES - len({t for _, t in bad})}/{GPOLY_TRIPLES} triples exact "
                  f"for box, cardinality, sum and integral_element")
    assert not bad, bad[:5]


# -------------------------------------------------------------- criterion 6

def test_criterion_6_lemma_descent_vs_search():
    rng = random.Random(SEED + 600)
    disagree = violated = bad_rounds = feasible = 0
    for _ in range(LEMMA_COUNT):
        inst = random_lemma_instance(rng, k_max=3, n_max=5, gamma_max=3)
        d = lemma_adjust(inst, "descent")
        s = lemma_adjust(inst, "search")
        d_ok = not isinstance(d, Certificate)
        if d_ok != (not isinstance(s, Certificate)):
            disagree += 1
        if d_ok:
            feasible += 1
            violated += bool(lemma_violations(inst, d))
            bad_rounds += d.rounds != inst.gamma
    ok = disagree == violated == bad_rounds == 0 and LEMMA_COUNT >= 500
    record(6, ok, f"{LEMMA_COUNT - disagree}/{LEMMA_COUNT} agree ({feasible} feasible); "
                  f"{violated} outputs violate a condition; {bad_rounds} round-count mismatches")
    assert disagree == 0
    assert violated == 0
    assert bad_rounds == 0


# -------------------------------------------------------------- criterion 7

def specializations(H, prob: Problem):
    """(label, problem) pairs whose verdict must equal ``prob``'s verdict."""
    k, p = prob.kind, prob.params
    out = []
    digraph = H.is_digraph
    CP = C.ClassicParams
    if k == "packing-mixed":
        zero = C.MixedParams(p.h, p.alpha, p.beta, p.f, p.g, p.matroid)
        out.append(("f'=g'=q=q'=0", Problem("aug-mixed", zero)))
        out.append(("gamma=0", Problem("aug-mixed-gamma", p, 0)))
        if p.matroid.kind == "free" and p.matroid.roots.counts == (p.h,) * H.n:
            out.append(("free h x V", Problem("mixed-limited",
                                              CP(h=p.h, alpha=p.alpha, beta=p.beta, f=p.f,
                                                 g=p.g))))
        rank = p.matroid.full_rank
        if (p.alpha, p.beta) == (rank, rank):
            out.append(("alpha=beta=r(S)", Problem("mixed-basis",
                                                   CP(h=p.h, f=p.f, g=p.g, matroid=p.matroid))))
    if k == "mixed-limited":
        P = C.MixedParams.free(H.n, p.h, p.alpha, p.beta, p.f, p.g)
        out.append(("free h x V", Problem("packing-mixed", P)))
        if digraph:
            out.append(("digraph", Problem("regular-limited", p)))
    if k == "mixed-basis":
        M = p.matroid
        P = C.MixedParams(p.h, M.full_rank, M.full_rank, p.f, p.g, M)
        out.append(("alpha=beta=r(S)", Problem("packing-mixed", P)))
    if k == "regular-limited":
        out.append(("digraph", Problem("mixed-limited", p)))
    if k in ("edmonds", "hyper-edmonds"):
        if digraph:
            out.append(("gamma=0", Problem("aug-edmonds", p, 0)))
        singles = tuple((r,) for r in p.roots)
        out.append(("singleton root sets", Problem("rootset-family", CP(root_sets=singles))))
        if digraph:
            other = "hyper-edmonds" if k == "edmonds" else "edmonds"
            out.append(("digraph", Problem(other, p)))
            out.append(("singleton branchings", Problem("edmonds-branchings",
                                                        CP(root_sets=singles))))
    if k in ("flexible", "mixed-flexible"):
        if digraph:
            out.append(("gamma=0", Problem("aug-flexible", p, 0)))
        n = H.n
        if H.is_mixed_graph:
            out.append(("f=0,g=k", Problem("mixed-fg", CP(k=p.k, f=(0,) * n, g=(p.k,) * n))))
        if digraph:
            other = "mixed-flexible" if k == "flexible" else "flexible"
            out.append(("digraph", Problem(other, p)))
    if k in ("fg-bounded", "mixed-fg", "hyper-fg"):
        out.append(("general", Problem("hyper-fg", p)))
        if H.is_mixed_graph:
            out.append(("mixed graph", Problem("mixed-fg", p)))
        if digraph:
            out.append(("digraph", Problem("fg-bounded", p)))
    if k in ("edmonds-branchings", "rootset-family") and digraph:
        other = "rootset-family" if k == "edmonds-branchings" else "edmonds-branchings"
        out.append(("digraph", Problem(other, p)))
    if k == "bordered-packing":
        B = C.BorderedParams(p.k, p.k, p.alpha, p.beta, p.ell, p.ell_prime)
        out.append(("h=k digraph", Problem("bordered-dir", B, 0)))
    if k == "bordered-dir" and digraph and p.h == p.k:
        out.append(("h=k digraph", Problem("bordered-packing",
                                           CP(k=p.k, alpha=p.alpha, beta=p.beta, ell=p.ell,
                                              ell_prime=p.ell_prime))))
    return [(lab, q) for lab, q in out if q.kind != k or q != prob]


def test_criterion_7_reduction_lattice(packing_suite):
    rows, _ = packing_suite
    comparisons = 0
    bad = []
    labels = set()
    for kind, H, prob, v, _ in rows:
        for label, q in specializations(H, prob):
            comparisons += 1
            labels.add(label)
            if check(H, q).feasible != v.feasible:
                bad.append((kind, label, H, prob))
    ok = not bad and comparisons > 0
    record(7, ok, f"{comparisons - len(bad)}/{comparisons} specialization verdicts identical "
                  f"({len(labels)} reduction types)")
    assert not bad, bad[:3]
    assert {"f'=g'=q=q'=0", "free h x V", "alpha=beta=r(S)", "digraph", "gamma=0",
            "h=k digraph"} <= labels


# -------------------------------------------------------------- criterion 8

def test_criterion_8_certificates_recheck(packing_suite, augment_suite, aug_mixed_suite):
    checked = bad = 0
    for _, H, prob, v, _ in packing_suite[0]:
        if not v.feasible:
            checked += 1
            bad += not cert_exact(prob, H, v.certificate)
    for kind, H, prob, g, _ in augment_suite[0]:
        below = GAMMA_MAX if g is None else g - 1
        if below >= 0:
            q = prob.with_gamma(below)
            vv = check(H, q)
            checked += 1
            bad += not cert_exact(q, H, vv.certificate)
    for H, prob, v, _, _ in aug_mixed_suite[0]:
        if not v.feasible:
            checked += 1
            bad += not cert_exact(prob, H, v.certificate)
    ok = bad == 0 and checked > 0
    record(8, ok, f"{checked - bad}/{checked} certificates re-evaluate to the stored violated "
                  f"inequality")
    assert bad == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
