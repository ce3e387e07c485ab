import random

import pytest
from hypothesis import given, settings, strategies as st

from arbopack import InputError
from arbopack import conditions as C
from arbopack.generate import random_problem
from arbopack.hypercore import MixedHypergraph, Subpartition, mask_of
from arbopack.matroids import MatroidOracle, RootMultiset
from arbopack.problems import check, oracle

TRIANGLE = MixedHypergraph.build(3, arcs=[(0, 1), (1, 2), (2, 0)])
STAR = MixedHypergraph.build(3, arcs=[(0, 1), (0, 2)])
E2 = MixedHypergraph(2)


def aug_params(**kw):
    base = dict(fp=(0, 0), gp=(1, 1), q=0, qp=1)
    base.update(kw)
    return C.MixedParams.free(2, 1, 1, 1, (0, 0), (1, 1), **base)


def test_aug_mixed_examples():
    assert C.check_aug_mixed(E2, aug_params()).feasible
    v = C.check_aug_mixed(E2, aug_params(qp=0))
    c = v.certificate
    assert not v.feasible and c.condition == "minside"
    assert (c.Z, c.P, c.lhs, c.rhs) == (0b11, Subpartition.of([[0], [1]]), 1, 2)
    single = C.MixedParams.free(1, 1, 0, 1, (0,), (1,), fp=(0,), gp=(1,), q=0, qp=1)
    assert C.check_aug_mixed(MixedHypergraph(1), single).feasible


def test_aug_mixed_scalar_conditions():
    assert C.check_aug_mixed(E2, aug_params(q=2, qp=1)).certificate.condition == "q-qprime"
    assert C.check_aug_mixed(E2, aug_params(fp=(2, 0))).certificate.condition == "fprime-gprime"
    P = C.MixedParams.free(2, 2, 0, 1, (0, 0), (2, 2), fp=(0, 0), gp=(1, 1), qp=1)
    assert C.check_aug_mixed(E2, P).certificate.condition == "h-beta"


def test_packing_mixed_examples():
    P = C.MixedParams.free(3, 1, 1, 1, (0, 0, 0), (1, 1, 1))
    assert C.check_packing_mixed(TRIANGLE, P).feasible
    P2 = C.MixedParams.free(2, 1, 1, 1, (0, 0), (1, 1))
    assert not C.check_packing_mixed(E2, P2).feasible
    P3 = C.MixedParams.free(2, 1, 2, 1, (0, 0), (1, 1))
    assert C.check_packing_mixed(E2, P3).certificate.condition == "alpha-beta"


def test_packing_mixed_is_aug_mixed_with_zero_additions():
    rng = random.Random(5)
    for _ in range(200):
        H, prob = random_problem(rng, "packing-mixed", n=3)
        p = prob.params
        zero = C.MixedParams(p.h, p.alpha, p.beta, p.f, p.g, p.matroid)
        a = C.check_aug_mixed(H, zero)
        b = C.check_packing_mixed(H, p)
        if p.beta >= p.h or not b.feasible:
            assert a.feasible == b.feasible
        else:
            assert not a.feasible and a.certificate.condition == "h-beta"


def bordered(h=1, k=1, alpha=1, beta=1, ell=(1,), ellp=(1,)):
    return C.BorderedParams(h, k, alpha, beta, ell, ellp)


@pytest.mark.parametrize("fn", [C.check_bordered_dir, C.check_bordered_undir])
def test_bordered_examples(fn):
    v = fn(E2, bordered(), 0)
    assert not v.feasible
    assert (v.certificate.lhs, v.certificate.rhs) == (1, 2)
    assert v.certificate.P == Subpartition.of([[0], [1]])
    assert fn(E2, bordered(), 1).feasible
    assert fn(MixedHypergraph(1), bordered(), 0).feasible


def test_bordered_alpha_too_large():
    v = C.check_bordered_dir(E2, C.BorderedParams(1, 2, 3, 3, (1, 1), (2, 2)), 0)
    assert v.certificate.condition == "hV-alpha"
    assert (v.certificate.lhs, v.certificate.rhs) == (2, 3)


def test_bordered_hypotheses_are_input_errors():
    with pytest.raises(InputError):
        C.check_bordered_dir(E2, bordered(alpha=2, beta=2), 0)
    with pytest.raises(InputError):
        C.check_bordered_dir(E2, bordered(ell=(3,), ellp=(3,), alpha=3, beta=3), 0)
    with pytest.raises(InputError):
        C.check_bordered_undir(STAR, bordered(), 0)
    with pytest.raises(InputError):
        C.check_bordered_dir(E2, bordered(), -1)


def test_rootset_examples():
    H = MixedHypergraph.build(3, hyperedges=[[0, 1, 2]])
    v = C.check_rootset_family(H, [[0]])
    assert not v.feasible
    assert v.certificate.P == Subpartition.of([[1], [2]])
    assert (v.certificate.lhs, v.certificate.rhs) == (1, 2)
    assert C.check_rootset_family(H, [[0, 1, 2]]).feasible
    assert C.check_rootset_family(TRIANGLE, [[0]]).feasible


def test_classic_examples():
    assert C.check_classic(TRIANGLE, "edmonds", C.ClassicParams(roots=(0,))).feasible
    v = C.check_classic(STAR, "edmonds", C.ClassicParams(roots=(0, 0)))
    assert v.certificate.X == mask_of([1]) and (v.certificate.lhs, v.certificate.rhs) == (1, 2)
    assert C.check_classic(STAR, "edmonds", C.ClassicParams(roots=())).feasible
    assert not C.check_classic(E2, "aug-flexible", C.ClassicParams(k=1, gamma=0)).feasible
    assert C.check_classic(E2, "aug-flexible", C.ClassicParams(k=1, gamma=1)).feasible
    with pytest.raises(InputError):
        C.check_classic(MixedHypergraph.build(2, hyperedges=[[0, 1]]), "edmonds",
                        C.ClassicParams(roots=(0,)))
    with pytest.raises(InputError):
        C.check_classic(TRIANGLE, "nope", C.ClassicParams())
    with pytest.raises(InputError):
        C.check_classic(TRIANGLE, "fg-bounded", C.ClassicParams(k=1))


def test_certificate_json_round_trip():
    v = C.check_aug_mixed(E2, aug_params(qp=0))
    assert C.Certificate.from_json(v.certificate.to_json()) == v.certificate
    inf = C.Certificate("x", C.INF, 1)
    assert C.Certificate.from_json(inf.to_json()) == inf


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_fast_and_naive_aug_mixed_agree(seed, n):
    H, prob = random_problem(random.Random(seed), "aug-mixed", n=n)
    fast = C.check_aug_mixed(H, prob.params)
    naive = C.check_aug_mixed_naive(H, prob.params)
    assert fast.feasible == naive.feasible
    if not fast.feasible:
        assert fast.certificate.condition == naive.certificate.condition


ALL = ("edmonds", "hyper-edmonds", "flexible", "mixed-fg", "mixed-limited",
       "mixed-basis", "edmonds-branchings", "rootset-family", "bordered-packing", "corollary-f",
       "aug-edmonds", "aug-flexible", "packing-mixed", "aug-mixed", "aug-mixed-gamma",
       "bordered-dir", "bordered-undir")


@settings(max_examples=80)
@given(st.sampled_from(ALL), st.integers(0, 10**6))
def test_certificates_recheck_and_match_oracle(kind, seed):
    n = 3 if kind.startswith("aug-mixed") else 4
    H, prob = random_problem(random.Random(seed), kind, n=n)
    try:
        v = check(H, prob)
    except InputError:
        return  # random borders may break the standing hypotheses
    if not v.feasible:
        lhs, rhs = C.recheck(prob, H, v.certificate)
        assert (lhs, rhs) == (v.certificate.lhs, v.certificate.rhs) and lhs < rhs
    assert v.feasible == (oracle(H, prob) is not None)


def test_aug_mixed_gamma_budget_monotone():
    rng = random.Random(11)
    for _ in range(100):
        H, prob = random_problem(rng, "aug-mixed-gamma", n=3)
        verdicts = [check(H, prob.with_gamma(g)).feasible for g in range(4)]
        assert verdicts == sorted(verdicts)
