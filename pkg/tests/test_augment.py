import random

import pytest
from hypothesis import given, settings, strategies as st

from arbopack import InputError
from arbopack import conditions as C
from arbopack.augment import (LemmaInstance, LemmaSolution, build_q4, lemma_adjust,
                              lemma_violations, min_gamma, solve, solve_aug_mixed,
                              solve_bordered)
from arbopack.generate import random_lemma_instance, random_problem
from arbopack.hypercore import MixedHypergraph
from arbopack.oracles import min_augment_bf
from arbopack.problems import Problem, augment_mode, requirements
from arbopack.verify import verify_packing

E2 = MixedHypergraph(2)
TRIANGLE = MixedHypergraph.build(3, arcs=[(0, 1), (1, 2), (2, 0)])


def aug(**kw):
    base = dict(fp=(0, 0), gp=(1, 1), q=0, qp=1)
    base.update(kw)
    return C.MixedParams.free(2, 1, 1, 1, (0, 0), (1, 1), **base)


def test_build_q4_example():
    pipe = build_q4(E2, aug())
    assert (pipe.m, pipe.m1, pipe.m2) == ((1, 1), (0, 1), (1, 0))


def test_build_q4_zero_box_and_alpha_beta():
    P = C.MixedParams.free(3, 1, 1, 1, (0, 0, 0), (1, 1, 1))
    pipe = build_q4(TRIANGLE, P)
    assert pipe.m1 == (0, 0, 0) and pipe.m == pipe.m2
    bad = C.MixedParams.free(2, 1, 2, 1, (0, 0), (1, 1), gp=(1, 1), qp=1)
    v = build_q4(E2, bad)
    assert isinstance(v, C.Verdict) and v.certificate.condition == "alpha-beta"


def test_solve_aug_mixed_witness():
    res = solve_aug_mixed(E2, aug())
    assert res.verdict.feasible and res.added == ((0, 1),)
    assert verify_packing(E2, res.witness, requirements(E2, Problem("aug-mixed", aug()))).ok
    res = solve_aug_mixed(E2, aug(qp=0))
    assert res.witness is None
    assert res.verdict == C.check_aug_mixed(E2, aug(qp=0))


def test_lemma_examples():
    inst = LemmaInstance(1, 1, 1, 1, 1, 0, (1,), (1,), (0,))
    assert lemma_adjust(inst) == LemmaSolution(1, 1, (1,), (1,))
    inst = LemmaInstance(1, 1, 2, 1, 1, 1, (1,), (1,), (0, 0))
    for strategy in ("descent", "search"):
        assert lemma_adjust(inst, strategy) == LemmaSolution(2, 2, (2,), (2,))
    assert lemma_adjust(inst).rounds == 1
    inst = LemmaInstance(1, 1, 2, 1, 1, 0, (1,), (1,), (0, 0))
    cert = lemma_adjust(inst)
    assert isinstance(cert, C.Certificate) and cert.condition == "ell-gamma" and cert.p == 2
    with pytest.raises(InputError):
        lemma_adjust(inst, "greedy")


def test_solve_bordered_examples():
    P = C.BorderedParams(1, 1, 1, 1, (1,), (1,))
    res = solve_bordered(E2, P, 1, directed=True)
    assert res.lemma == LemmaSolution(2, 2, (2,), (2,))
    assert res.hat_witness.members[0].roots == (0, 1)
    assert res.witness.members[0].roots == (0,)
    assert res.added == ((0, 1),) and not res.fallback
    res = solve_bordered(E2, P, 1, directed=False)
    assert res.witness.added_edges == ((0, 1),)
    res = solve_bordered(MixedHypergraph(1), P, 0, directed=True)
    assert res.verdict.feasible and res.added == ()
    assert not solve_bordered(E2, P, 0, directed=True).verdict.feasible


def test_min_gamma_examples():
    flex = Problem("aug-flexible", C.ClassicParams(k=1))
    assert min_gamma(E2, flex, 3) == 1
    assert min_gamma(TRIANGLE, flex, 3) == 0
    assert min_gamma(E2, flex, 0) is None
    with pytest.raises(InputError):
        min_gamma(E2, Problem("edmonds", C.ClassicParams(roots=(0,))), 1)


def test_solve_dispatch():
    res = solve(TRIANGLE, Problem("edmonds", C.ClassicParams(roots=(0,))))
    assert res.verdict.feasible and res.witness is not None and res.added == ()
    res = solve(E2, Problem("edmonds", C.ClassicParams(roots=(0,))))
    assert not res.verdict.feasible and res.witness is None
    res = solve(E2, Problem("aug-mixed", aug()))
    assert res.note == "m=[1, 1] m1=[0, 1]"


@settings(max_examples=300)
@given(st.integers(0, 10**9))
def test_lemma_descent_matches_search(seed):
    inst = random_lemma_instance(random.Random(seed))
    d = lemma_adjust(inst, "descent")
    s = lemma_adjust(inst, "search")
    assert isinstance(d, C.Certificate) == isinstance(s, C.Certificate)
    if not isinstance(d, C.Certificate):
        assert lemma_violations(inst, d) == []
        assert d.rounds == inst.gamma
        gammas = [t.gamma_hat for t in d.trace]
        assert gammas == sorted(gammas, reverse=True) and len(set(gammas)) == len(gammas)


@settings(max_examples=40)
@given(st.sampled_from(["bordered-dir", "bordered-undir"]), st.integers(0, 10**6))
def test_solve_bordered_budget_and_witness(kind, seed):
    H, prob = random_problem(random.Random(seed), kind, n=3)
    res = solve_bordered(H, prob.params, prob.gamma, kind == "bordered-dir")
    if res.verdict.feasible:
        assert len(res.added) <= prob.gamma
        assert verify_packing(H, res.witness, requirements(H, prob)).ok
        if not res.fallback:
            assert len(res.added) == sum(res.lemma.ell) - sum(prob.params.ell)


@settings(max_examples=30)
@given(st.sampled_from(["aug-edmonds", "aug-flexible", "bordered-dir", "bordered-undir"]),
       st.integers(0, 10**6))
def test_min_gamma_matches_brute_force(kind, seed):
    H, prob = random_problem(random.Random(seed), kind, n=3)
    got = min_gamma(H, prob, 2)
    res = min_augment_bf(H, requirements(H, prob), augment_mode(prob), 2, lex_least=False)
    assert got == (None if res is None else res.gamma)
