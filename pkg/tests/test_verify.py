import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from arbopack import InputError
from arbopack.hypercore import MixedHypergraph, mask_of
from arbopack.matroids import MatroidOracle, RootMultiset
from arbopack.verify import (Member, PackingWitness, Requirements, UsedEdge, branching_prefilter,
                             is_branching, orient_to_hyperbranching, requirements_from_json,
                             requirements_to_json, trimmable_to_branching, verify_packing)


def m(*vs):
    return mask_of(vs)


def arc(i, u, v):
    return UsedEdge("dyperedge", i, u, v)


STAR = MixedHypergraph.build(3, arcs=[(0, 1), (0, 2)])


def test_orientation_examples():
    assert orient_to_hyperbranching([m(0, 1)], [], m(0), m(0, 1)) == [(0, 1)]
    assert orient_to_hyperbranching([m(1, 2)], [], m(0), m(0, 1, 2)) is None
    assert orient_to_hyperbranching([], [], m(0, 1), m(0, 1)) == []


def test_trim_picks_least_tail():
    B = [(m(0, 1), 2), (m(0), 1)]
    assert trimmable_to_branching(B, m(0), m(0, 1, 2)) == (0, 0)
    assert trimmable_to_branching([(m(1), 0)], m(0), m(0, 1)) is None


def test_is_branching_basics():
    assert is_branching([(0, 1), (1, 2)], m(0), m(0, 1, 2))
    assert not is_branching([(0, 1), (1, 0)], m(0), m(0, 1))
    assert not is_branching([(1, 2), (2, 1)], m(0), m(0, 1, 2))
    assert is_branching([], m(0, 1), m(0, 1))


def test_star_packing_valid():
    W = PackingWitness((Member(m(0, 1, 2), (0,), (arc(0, 0, 1), arc(1, 0, 2))),))
    rep = verify_packing(STAR, W, Requirements(k=1, h=1, spanning=True))
    assert rep.ok, rep.checks


def test_shared_arc_fails_disjointness():
    W = PackingWitness((Member(m(0, 1), (0,), (arc(0, 0, 1),)),
                        Member(m(0, 1), (0,), (arc(0, 0, 1),))))
    rep = verify_packing(STAR, W, Requirements())
    assert not rep.ok and rep.first_failure[0] == "disjoint"


def test_bordered_failure_reports_index():
    H = MixedHypergraph(2)
    W = PackingWitness((Member(m(0, 1), (0, 1)),))
    rep = verify_packing(H, W, Requirements(kind="branching", ell=(0,), ell_prime=(1,)))
    assert rep.checks["bordered"] == (False, "member 0 violates its root-set bounds")


def test_regularity_counts_roots():
    H = MixedHypergraph(2)
    W = PackingWitness((Member(m(0), (0,)), Member(m(1), (1,))))
    assert verify_packing(H, W, Requirements(h=1)).ok
    assert not verify_packing(H, W, Requirements(h=2)).ok


def test_limited_counts_total_roots():
    H = MixedHypergraph(2)
    W = PackingWitness((Member(m(0, 1), (0, 1)),))
    R = Requirements(kind="branching", alpha=3)
    assert verify_packing(H, W, R).checks["limited"][0] is False


def test_empty_member_only_with_zero_lower_bound():
    H = MixedHypergraph(1)
    W = PackingWitness((Member(m(0), (0,)), Member(0, ())))
    ok = verify_packing(H, W, Requirements(kind="branching", ell=(1, 0), ell_prime=(1, 1)))
    assert ok.ok and ok.notes == ["member 1 is empty"]
    bad = verify_packing(H, W, Requirements(kind="branching", ell=(1, 1), ell_prime=(1, 1)))
    assert not bad.ok


def test_dangling_references_are_input_errors():
    W = PackingWitness((Member(m(0, 1), (0,), (arc(5, 0, 1),)),))
    with pytest.raises(InputError):
        verify_packing(STAR, W, Requirements())
    W = PackingWitness((Member(m(0, 1), (0,), (arc(0, 1, 0),)),))
    with pytest.raises(InputError):
        verify_packing(STAR, W, Requirements())
    W = PackingWitness((Member(m(0, 1), (0,)),), added_arcs=((0, 0),))
    with pytest.raises(InputError):
        verify_packing(STAR, W, Requirements())


def test_hyperedge_orientation_must_stay_inside():
    H = MixedHypergraph.build(3, hyperedges=[[0, 1, 2]])
    W = PackingWitness((Member(m(0, 1), (0,), (UsedEdge("hyperedge", 0, 1, 1),)),))
    with pytest.raises(InputError):
        verify_packing(H, W, Requirements())
    W = PackingWitness((Member(m(0, 1, 2), (0,), (UsedEdge("hyperedge", 0, 0, 1),)),))
    assert not verify_packing(H, W, Requirements()).ok
    W = PackingWitness((Member(m(0, 1), (0,), (UsedEdge("hyperedge", 0, 0, 1),)),))
    assert verify_packing(H, W, Requirements()).ok
    W = PackingWitness((Member(m(0, 1), (0,), (UsedEdge("hyperedge", 0, 2, 1),)),))
    assert not verify_packing(H, W, Requirements()).ok  # tail outside the member


def test_added_arc_checks():
    H = MixedHypergraph(2)
    W = PackingWitness((Member(m(0, 1), (0,), (arc(0, 0, 1),)),), added_arcs=((0, 1),))
    R = Requirements(k=1, h=1, spanning=True, contains_added=True, added_f=(0, 1),
                     added_g=(0, 1), added_q=1, added_qp=1)
    assert verify_packing(H, W, R).ok
    R2 = Requirements(added_qp=0)
    assert not verify_packing(H, W, R2).ok
    W2 = PackingWitness((Member(m(0), (0,)), Member(m(1), (1,))), added_arcs=((0, 1),))
    assert verify_packing(H, W2, Requirements(contains_added=True)).checks["contains-added"][0] is False


def test_matroid_modes():
    H = MixedHypergraph(2)
    W = PackingWitness((Member(m(0), (0,)), Member(m(1), (1,))))
    U1 = MatroidOracle.uniform(RootMultiset((1, 1)), 1)
    U2 = MatroidOracle.uniform(RootMultiset((1, 1)), 2)
    assert not verify_packing(H, W, Requirements(matroid=U1, matroid_mode="independent")).ok
    assert verify_packing(H, W, Requirements(matroid=U2, matroid_mode="basis")).ok
    one = PackingWitness((Member(m(0, 1), (0, 1)),))
    U3 = MatroidOracle.uniform(RootMultiset((1, 1)), 2)
    assert verify_packing(H, one, Requirements(kind="branching", matroid=U3,
                                               matroid_mode="basis")).ok


def test_witness_and_requirements_json_round_trip():
    W = PackingWitness((Member(m(0, 1, 2), (0,), (arc(0, 0, 1), arc(1, 0, 2))),),
                       added_arcs=((2, 1),))
    assert PackingWitness.from_json(W.to_json()) == W
    R = Requirements(kind="branching", h=1, k=2, spanning=True, f=(0, 1), g=(1, 1), alpha=1,
                     beta=2, ell=(0, 1), ell_prime=(1, 1), root_sets=((0,), (0, 1)))
    assert requirements_from_json(requirements_to_json(R), 2) == R
    with pytest.raises(InputError):
        PackingWitness.from_json({"members": [{"edges": [{"kind": "arc"}]}]})
    with pytest.raises(InputError):
        PackingWitness.from_json({})


# ------------------------------------------------------------- properties

@st.composite
def dypergraph_members(draw):
    n = draw(st.integers(1, 5))
    U = draw(st.integers(1, (1 << n) - 1))
    S = draw(st.integers(1, (1 << n) - 1)) & U or (U & -U)
    verts = [v for v in range(n) if U >> v & 1]
    size = max(0, len(verts) - bin(S).count("1"))
    B = []
    for _ in range(size):
        head = draw(st.sampled_from(verts))
        tails = draw(st.integers(1, (1 << n) - 1)) & ~(1 << head)
        if not tails:
            tails = 1 << ((head + 1) % n) if n > 1 else 0
        if tails:
            B.append((tails, head))
    return B, S, U


@settings(max_examples=200)
@given(dypergraph_members())
def test_prefilter_equals_exhaustive_search(data):
    B, S, U = data
    total = 1
    for t, _ in B:
        total *= max(1, bin(t & U).count("1"))
    exhaustive = trimmable_to_branching(B, S, U, use_prefilter=False) is not None
    pre = branching_prefilter(B, S, U)
    if exhaustive:
        assert pre
    if total <= 64:
        assert pre == exhaustive


def test_prefilter_never_rejects_random():
    rng = random.Random(9)
    for _ in range(2000):
        n = rng.randint(1, 5)
        U = rng.randint(1, (1 << n) - 1)
        S = U & rng.randint(0, (1 << n) - 1)
        verts = [v for v in range(n) if U >> v & 1]
        B = []
        for _ in range(len(verts) - bin(S).count("1")):
            head = rng.choice(verts)
            tails = rng.randint(1, (1 << n) - 1) & ~(1 << head)
            if tails:
                B.append((tails, head))
        if trimmable_to_branching(B, S, U, use_prefilter=False) is not None:
            assert branching_prefilter(B, S, U)


@settings(max_examples=100)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(3, (1 << n) - 1), max_size=3),
    st.integers(1, (1 << n) - 1))))
def test_orientation_matches_enumeration(data):
    n, edges, U = data
    edges = [z for z in edges if bin(z).count("1") >= 2]
    S = U & -U
    found = orient_to_hyperbranching(edges, [], S, U)
    choices = [[(u, v) for u in range(n) for v in range(n) if u != v and z >> u & 1 and z >> v & 1]
               for z in edges]
    exists = any(is_branching(list(c), S, U) for c in itertools.product(*choices))
    assert (found is not None) == exists
    if found is not None:
        assert is_branching(found, S, U)
