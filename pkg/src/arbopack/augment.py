"""Constructive solvers for the augmentation theorems.

The mixed family goes through the g-polymatroid pipeline Q1..Q4 and then a
witness search constrained to the resulting in-degree vector.  The bordered
family adjusts root bounds (search or the descent of the sufficiency proof),
finds a packing for the adjusted bounds, and turns surplus roots into new arcs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import conditions as C
from .errors import InconsistencyError, InputError, ResourceError
from .gpoly import (GPolyBounds, SetFunctionTable, integral_element, integral_split,
                    intersect, intersect_box, intersect_cardinality, intersect_nonempty,
                    minkowski_sum)
from .hypercore import MixedHypergraph, p_hat_table, popcount
from .oracles import (DEFAULT_CAPS, OracleCaps, e_profile, exists_packing_bf,
                      exists_with_added_heads, min_augment_bf)
from .problems import BORDERED_KINDS, GAMMA_KINDS, Problem, check, oracle, requirements
from .verify import Member, PackingWitness, Requirements, UsedEdge, verify_packing

LEMMA_SEARCH_CAP = 2_000_000


# ------------------------------------------------------------------ Q1..Q4

@dataclass(frozen=True)
class Q4Pipeline:
    q1: GPolyBounds
    q_prime: GPolyBounds
    q2: GPolyBounds
    q_plus: GPolyBounds
    q3: GPolyBounds
    q4: GPolyBounds
    m: tuple[int, ...]
    m1: tuple[int, ...]
    m2: tuple[int, ...]


def _infeasible(H: MixedHypergraph, P: C.MixedParams, cap, stage: str) -> C.Verdict:
    v = C.check_aug_mixed(H, P, cap)
    if v.feasible:
        raise InconsistencyError(f"Q4 pipeline empty at {stage} but the checker finds no violation")
    return v


def build_q4(H: MixedHypergraph, P: C.MixedParams,
             cap: int | None = None) -> Q4Pipeline | C.Verdict:
    """The pipeline tables plus an integral m in Q4 and its split, or the checker's certificate."""
    n = H.n
    if P.n != n:
        raise InputError("parameter vectors must have one entry per vertex")
    full = (1 << n) - 1
    h = P.h
    q1, ok = intersect_cardinality(GPolyBounds.box(P.fp, P.gp), P.q, P.qp)
    if not ok or any(a > b for a, b in zip(P.fp, P.gp)):
        return _infeasible(H, P, cap, "Q1")
    b = P.matroid.b_table()
    base = GPolyBounds(SetFunctionTable.neg_inf0(n), SetFunctionTable(n, tuple(b)))
    q_prime, ok = intersect_cardinality(base, max(h, P.alpha), P.beta)
    if not ok:
        return _infeasible(H, P, cap, "Q'")
    gh = tuple(min(x, h) for x in P.g)
    q2, ok = intersect_box(q_prime, P.f, gh)
    if not ok:
        return _infeasible(H, P, cap, "Q2")
    q_plus = minkowski_sum(q1, q2)
    phat, _ = p_hat_table(H, h, cap)
    q3 = GPolyBounds(SetFunctionTable(n, tuple(phat)),
                     SetFunctionTable(n, tuple(h * popcount(X) for X in range(full + 1))))
    if not intersect_nonempty(q_plus, q3):
        return _infeasible(H, P, cap, "Q4")
    q4 = intersect(q_plus, q3)
    m = integral_element(q4)
    if m is None:
        raise InconsistencyError("Q4 passes the intersection test but has no integral point")
    split = integral_split(m, q1, q2)
    if split is None:
        raise InconsistencyError("m lies in Q1 + Q2 but admits no integral split")
    return Q4Pipeline(q1, q_prime, q2, q_plus, q3, q4, tuple(m), split[0], split[1])


@dataclass(frozen=True)
class AugMixedResult:
    verdict: C.Verdict
    pipeline: Q4Pipeline | None = None
    witness: PackingWitness | None = None

    @property
    def added(self) -> tuple[tuple[int, int], ...]:
        return () if self.witness is None else self.witness.added_arcs


def solve_aug_mixed(H: MixedHypergraph, P: C.MixedParams, caps: OracleCaps = DEFAULT_CAPS,
                    cap: int | None = None) -> AugMixedResult:
    """New arc set F and a conforming packing containing it, or the violated condition.

    The new arcs' heads follow m1 and the roots follow m2; tails and the
    packing itself come from a bounded search over that fixed profile.
    """
    pipe = build_q4(H, P, cap)
    if isinstance(pipe, C.Verdict):
        return AugMixedResult(pipe)
    R = Requirements(h=P.h, alpha=P.alpha, beta=P.beta, f=pipe.m2, g=pipe.m2,
                     matroid=P.matroid, matroid_mode="independent")
    W = exists_with_added_heads(H, R, pipe.m1, caps)
    if W is None:
        raise InconsistencyError(f"no packing realises m1={pipe.m1}, m2={pipe.m2}")
    rep = verify_packing(H, W, requirements(H, Problem("aug-mixed", P)))
    if not rep.ok:
        raise InconsistencyError(f"constructed witness fails verification: {rep.first_failure}")
    return AugMixedResult(C.FEASIBLE, pipe, W)


# ---------------------------------------------------------- root-bound lemma

@dataclass(frozen=True)
class LemmaInstance:
    h: int
    k: int
    n: int
    alpha: int
    beta: int
    gamma: int
    ell: tuple[int, ...]
    ell_prime: tuple[int, ...]
    e: tuple[int, ...]  # e(1), ..., e(n)

    def __post_init__(self):
        for name in ("h", "k", "n", "alpha", "beta", "gamma"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be nonnegative")
        if len(self.ell) != self.k or len(self.ell_prime) != self.k:
            raise InputError("ell and ell_prime need k entries")
        if len(self.e) != self.n:
            raise InputError("e needs one entry for each p = 1..n")
        if any(x < 0 for x in self.ell + self.ell_prime + self.e):
            raise InputError("ell, ell_prime and e must be nonnegative")


@dataclass(frozen=True)
class TraceStep:
    gamma_hat: int  # before the step
    case: str  # "I", "II" or "slack"
    p_tight: int | None
    index: int | None


@dataclass(frozen=True)
class LemmaSolution:
    alpha: int
    beta: int
    ell: tuple[int, ...]
    ell_prime: tuple[int, ...]
    trace: tuple[TraceStep, ...] = field(default=(), compare=False)

    @property
    def rounds(self) -> int:
        return len(self.trace)


def _sum_min(p: int, vals: Sequence[int]) -> int:
    return sum(min(p - x, 0) for x in vals)


def lemma_necessity(inst: LemmaInstance) -> C.Certificate | None:
    """First violated hypothesis of the lemma, as (lhs < rhs)."""
    n, h, k = inst.n, inst.h, inst.k
    for i, (a, b) in enumerate(zip(inst.ell, inst.ell_prime)):
        if not n >= b:
            return C.Certificate("ind-n", n, b, v=i)
        if not b >= a:
            return C.Certificate("ind-ell", b, a, v=i)
    if h * n < inst.alpha:
        return C.Certificate("hn-alpha", h * n, inst.alpha)
    L, Lp = sum(inst.ell), sum(inst.ell_prime)
    for name, lhs, rhs in (("tot-ellp", Lp, inst.beta), ("tot-beta", inst.beta, inst.alpha),
                           ("tot-alpha", inst.alpha, L)):
        if lhs < rhs:
            return C.Certificate(name, lhs, rhs)
    for p in range(1, n + 1):
        need = h * p - inst.e[p - 1]
        if k * p < need:
            return C.Certificate("kp", k * p, need, p=p)
        lhs = inst.gamma + inst.beta + _sum_min(p, inst.ell)
        if lhs < need:
            return C.Certificate("ell-gamma", lhs, need, p=p)
        lhs = inst.gamma + Lp + _sum_min(p, inst.ell_prime)
        if lhs < need:
            return C.Certificate("ellp-gamma", lhs, need, p=p)
    return None


def lemma_violations(inst: LemmaInstance, sol: LemmaSolution) -> list[str]:
    """Names of the seven target conditions the proposed hats break."""
    n, h = inst.n, inst.h
    bad = []
    pairs = list(zip(inst.ell, inst.ell_prime, sol.ell, sol.ell_prime))
    if len(sol.ell) != inst.k or len(sol.ell_prime) != inst.k:
        return ["shape"]
    if not all(n >= bp >= b for _, _, b, bp in pairs):
        bad.append("hat-ind")
    if not all(0 <= bp - ap <= b - a for a, ap, b, bp in pairs):
        bad.append("hat-increments")
    if not h * n >= sol.alpha:
        bad.append("hat-hn-alpha")
    L, Lh, Lph = sum(inst.ell), sum(sol.ell), sum(sol.ell_prime)
    if not Lph >= sol.beta >= sol.alpha >= Lh:
        bad.append("hat-tot")
    d = Lh - L
    if not (sol.alpha - inst.alpha == sol.beta - inst.beta == d and d <= inst.gamma):
        bad.append("hat-budget")
    for p in range(1, n + 1):
        need = h * p - inst.e[p - 1]
        if sol.beta + _sum_min(p, sol.ell) < need:
            bad.append(f"hat-ell@{p}")
        if Lph + _sum_min(p, sol.ell_prime) < need:
            bad.append(f"hat-ellp@{p}")
    return bad


def _lemma_search(inst: LemmaInstance) -> LemmaSolution | None:
    n, k = inst.n, inst.k
    if (n + 1) ** (2 * k) > LEMMA_SEARCH_CAP:
        raise ResourceError(f"lemma search space (n+1)^(2k) beyond {LEMMA_SEARCH_CAP}")
    for delta in itertools.product(*[range(0, n - a + 1) for a in inst.ell]):
        d = sum(delta)
        if d > inst.gamma:
            continue
        ell = tuple(a + x for a, x in zip(inst.ell, delta))
        ranges = [range(0, min(x, n - b) + 1) for x, b in zip(delta, inst.ell_prime)]
        for eps in itertools.product(*ranges):
            ellp = tuple(b + y for b, y in zip(inst.ell_prime, eps))
            sol = LemmaSolution(inst.alpha + d, inst.beta + d, ell, ellp)
            if not lemma_violations(inst, sol):
                return sol
    return None


def _lemma_descent(inst: LemmaInstance) -> LemmaSolution:
    n, h, k = inst.n, inst.h, inst.k
    alpha, beta = inst.alpha, inst.beta
    ell, ellp = list(inst.ell), list(inst.ell_prime)
    g = inst.gamma
    trace = []
    while g > 0:
        p_tight = None
        for p in range(1, n + 1):
            need = h * p - inst.e[p - 1]
            if (g + beta + _sum_min(p, ell) == need
                    or g + sum(ellp) + _sum_min(p, ellp) == need):
                p_tight = p
                break
        if p_tight is None:
            trace.append(TraceStep(g, "slack", None, None))
            g -= 1
            continue
        X = {i for i in range(k) if p_tight - ell[i] <= 0}
        Xp = {i for i in range(k) if p_tight - ellp[i] <= 0}
        if len(Xp) < k:
            m = min(set(range(k)) - Xp)
            ell[m] += 1
            ellp[m] += 1
            case = "I"
        else:
            rest = set(range(k)) - X
            if not rest:
                raise InconsistencyError("descent reached a tight bound with every index saturated")
            m = min(rest)
            ell[m] += 1
            case = "II"
        trace.append(TraceStep(g, case, p_tight, m))
        alpha += 1
        beta += 1
        g -= 1
    return LemmaSolution(alpha, beta, tuple(ell), tuple(ellp), tuple(trace))


def lemma_adjust(inst: LemmaInstance, strategy: str = "descent") -> LemmaSolution | C.Certificate:
    """Adjusted bounds satisfying the seven target conditions, or a violated hypothesis.

    ``search`` scans every increment vector; ``descent`` spends the budget one
    unit per round on the smallest tight index as the sufficiency proof does.
    """
    if strategy not in ("descent", "search"):
        raise InputError(f"strategy must be descent or search, got {strategy!r}")
    if strategy == "search":
        sol = _lemma_search(inst)
        if sol is not None:
            return sol
        cert = lemma_necessity(inst)
        if cert is None:
            raise InconsistencyError("lemma hypotheses hold but exhaustive search found no hats")
        return cert
    cert = lemma_necessity(inst)
    if cert is not None:
        return cert
    sol = _lemma_descent(inst)
    bad = lemma_violations(inst, sol)
    if bad:
        raise InconsistencyError(f"descent output violates {bad}")
    return sol


# ------------------------------------------------------------ bordered solver

@dataclass(frozen=True)
class BorderedResult:
    verdict: C.Verdict
    lemma: LemmaSolution | None = None
    hat_witness: PackingWitness | None = None
    witness: PackingWitness | None = None
    fallback: bool = False  # True when the root-shrinking step needed a search instead

    @property
    def added(self) -> tuple[tuple[int, int], ...]:
        if self.witness is None:
            return ()
        return self.witness.added_arcs + self.witness.added_edges


def _shrink_roots(H: MixedHypergraph, hat: PackingWitness, P: C.BorderedParams,
                  sol: LemmaSolution, directed: bool) -> PackingWitness | None:
    """Drop surplus roots of each member and attach them to a kept root by a new arc."""
    new: list[tuple[int, int]] = []
    base = len(H.dyperedges) if directed else len(H.hyperedges)
    kind = "dyperedge" if directed else "hyperedge"
    mems = []
    for i, mem in enumerate(hat.members):
        roots = sorted(mem.roots)
        keep = len(roots) - sol.ell[i] + P.ell[i]
        if keep == len(roots):
            mems.append(mem)
            continue
        if keep <= 0:
            return None
        s = roots[0]
        edges = list(mem.edges)
        for v in roots[keep:]:
            edges.append(UsedEdge(kind, base + len(new), s, v))
            new.append((s, v) if directed else (min(s, v), max(s, v)))
        mems.append(Member(mem.vertices, tuple(roots[:keep]), tuple(edges)))
    if directed:
        return PackingWitness(tuple(mems), tuple(new), ())
    return PackingWitness(tuple(mems), (), tuple(new))


def solve_bordered(H: MixedHypergraph, P: C.BorderedParams, gamma: int, directed: bool,
                   caps: OracleCaps = DEFAULT_CAPS, cap: int | None = None) -> BorderedResult:
    """At most gamma new arcs (edges when undirected) and the bordered packing they allow."""
    v = C.check_bordered(H, P, gamma, directed, cap)
    if not v.feasible:
        return BorderedResult(v)
    kind = "bordered-dir" if directed else "bordered-undir"
    prob = Problem(kind, P, gamma)
    R = requirements(H, prob)
    n = H.n
    prof = e_profile(H, partitions_only=not directed, cap=cap)
    inst = LemmaInstance(P.h, P.k, n, P.alpha, P.beta, gamma, tuple(P.ell),
                         tuple(P.ell_prime), tuple(prof.values))
    sol = lemma_adjust(inst, "descent")
    if isinstance(sol, C.Certificate):
        raise InconsistencyError(f"checker accepts but lemma hypothesis {sol.condition} fails")
    hat_R = Requirements(kind="branching", h=P.h, k=P.k, alpha=sol.alpha, beta=sol.beta,
                         ell=sol.ell, ell_prime=sol.ell_prime)
    hat = exists_packing_bf(H, hat_R, caps)
    W = None if hat is None else _shrink_roots(H, hat, P, sol, directed)
    fallback = W is None
    if fallback:
        mode = "arcs" if directed else "edges"
        res = min_augment_bf(H, R, mode, gamma, lex_least=False, caps=caps)
        if res is None:
            raise InconsistencyError("checker accepts but no augmentation within gamma exists")
        W = res.witness
    rep = verify_packing(H, W, R)
    if not rep.ok:
        raise InconsistencyError(f"bordered witness fails verification: {rep.first_failure}")
    if len(W.added_arcs) + len(W.added_edges) > gamma:
        raise InconsistencyError("bordered witness exceeds the budget")
    return BorderedResult(v, sol, hat, W, fallback)


# ------------------------------------------------------------------ plumbing

def min_gamma(H: MixedHypergraph, prob: Problem, gamma_max: int,
              cap: int | None = None) -> int | None:
    """Least gamma <= gamma_max the checker accepts (conditions are monotone in gamma)."""
    if prob.kind not in GAMMA_KINDS:
        raise InputError(f"{prob.kind} has no gamma parameter")
    for g in range(gamma_max + 1):
        if check(H, prob.with_gamma(g), cap).feasible:
            return g
    return None


@dataclass(frozen=True)
class SolveResult:
    verdict: C.Verdict
    witness: PackingWitness | None = None
    note: str = ""

    @property
    def added(self) -> tuple[tuple[int, int], ...]:
        if self.witness is None:
            return ()
        return self.witness.added_arcs + self.witness.added_edges


def solve(H: MixedHypergraph, prob: Problem, caps: OracleCaps = DEFAULT_CAPS,
          cap: int | None = None) -> SolveResult:
    """Verdict plus a witness for any problem kind; witnesses come from the constructive
    solvers where they exist and from bounded search otherwise."""
    if prob.kind == "aug-mixed":
        r = solve_aug_mixed(H, prob.params, caps, cap)
        note = "" if r.pipeline is None else f"m={list(r.pipeline.m)} m1={list(r.pipeline.m1)}"
        return SolveResult(r.verdict, r.witness, note)
    if prob.kind in BORDERED_KINDS:
        r = solve_bordered(H, prob.params, prob.gamma, prob.kind == "bordered-dir", caps, cap)
        return SolveResult(r.verdict, r.witness, "search fallback" if r.fallback else "")
    v = check(H, prob, cap)
    if not v.feasible:
        return SolveResult(v)
    W = oracle(H, prob, caps)
    if W is None:
        raise InconsistencyError("checker accepts but bounded search finds no witness")
    return SolveResult(v, W)
