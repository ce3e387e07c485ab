"""Seeded random instances for tests, benchmarks and the ``gen`` command."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .hypercore import MixedHypergraph, mask_of

SHAPES = ("digraph", "dypergraph", "hypergraph", "mixed-graph", "mixed")


@dataclass(frozen=True)
class GenConfig:
    n: int = 4
    edges: int = 5
    shape: str = "mixed"
    max_tail: int = 3
    hyper_share: float = 0.4  # expected share of hyperedges in mixed shapes


def _sample_set(rng: random.Random, pool: list[int], lo: int, hi: int) -> list[int]:
    size = rng.randint(lo, min(hi, len(pool)))
    return rng.sample(pool, size)


def random_instance(rng: random.Random, cfg: GenConfig = GenConfig()) -> MixedHypergraph:
    if cfg.shape not in SHAPES:
        raise InputError(f"unknown shape {cfg.shape!r}; choose from {', '.join(SHAPES)}")
    n = cfg.n
    if n < 2:
        return MixedHypergraph(n)
    verts = list(range(n))
    hyper, dyper = [], []
    for _ in range(cfg.edges):
        undirected = {"hypergraph": True, "digraph": False, "dypergraph": False}.get(
            cfg.shape, rng.random() < cfg.hyper_share)
        single = cfg.shape in ("digraph", "mixed-graph")
        if undirected:
            hi = 2 if single else min(n, cfg.max_tail + 1)
            hyper.append(mask_of(_sample_set(rng, verts, 2, hi)))
        else:
            head = rng.randrange(n)
            pool = [v for v in verts if v != head]
            tails = _sample_set(rng, pool, 1, 1 if single else cfg.max_tail)
            dyper.append((mask_of(tails), head))
    return MixedHypergraph(n, tuple(hyper), tuple(dyper))


def random_vector(rng: random.Random, n: int, lo: int, hi: int) -> tuple[int, ...]:
    return tuple(rng.randint(lo, hi) for _ in range(n))


def _matroid(rng: random.Random, counts: tuple[int, ...]):
    from .matroids import MatroidOracle, RootMultiset
    roots = RootMultiset(counts)
    if rng.random() < 0.5:
        return MatroidOracle.free(roots)
    return MatroidOracle.uniform(roots, rng.randint(0, roots.size))


def _borders(rng: random.Random, n: int, k: int):
    ell = [rng.randint(0, n) for _ in range(k)]
    ellp = [rng.randint(a, n) for a in ell]
    alpha = rng.randint(sum(ell), sum(ellp))
    beta = rng.randint(alpha, sum(ellp))
    return tuple(ell), tuple(ellp), alpha, beta


PROBLEM_SHAPES = {
    "edmonds": "digraph", "hyper-edmonds": "dypergraph", "flexible": "digraph",
    "mixed-flexible": "mixed-graph", "fg-bounded": "digraph", "mixed-fg": "mixed-graph",
    "hyper-fg": "mixed", "regular-limited": "digraph", "mixed-limited": "mixed",
    "mixed-basis": "mixed", "edmonds-branchings": "digraph", "rootset-family": "mixed",
    "bordered-packing": "digraph", "aug-edmonds": "digraph", "aug-flexible": "digraph",
    "corollary-f": "mixed", "packing-mixed": "mixed", "aug-mixed": "mixed",
    "aug-mixed-gamma": "mixed", "bordered-dir": "dypergraph", "bordered-undir": "hypergraph",
}


def random_problem(rng: random.Random, kind: str, n: int = 4, edges: int = 6,
                   gamma_max: int = 3):
    """A random (instance, problem) pair of the given kind within oracle caps."""
    from . import conditions as C
    from .problems import Problem

    if kind not in PROBLEM_SHAPES:
        raise InputError(f"unknown problem kind {kind!r}")
    shape = PROBLEM_SHAPES[kind]
    if kind == "corollary-f":
        return _random_corollary(rng, n, edges)
    H = random_instance(rng, GenConfig(n=n, edges=rng.randint(edges // 2, edges), shape=shape))
    vec = lambda lo, hi: random_vector(rng, n, lo, hi)  # noqa: E731
    k = rng.choice((1, 1, 2, 3))
    h = rng.randint(1, k)
    gamma = rng.randint(0, gamma_max)
    if kind in ("edmonds", "hyper-edmonds", "aug-edmonds"):
        roots = tuple(sorted(rng.randrange(n) for _ in range(k)))
        return H, Problem(kind, C.ClassicParams(roots=roots, gamma=gamma if kind == "aug-edmonds" else 0),
                          gamma if kind == "aug-edmonds" else 0)
    if kind in ("flexible", "mixed-flexible", "aug-flexible"):
        g = gamma if kind == "aug-flexible" else 0
        return H, Problem(kind, C.ClassicParams(k=k, gamma=g), g)
    if kind in ("fg-bounded", "mixed-fg", "hyper-fg"):
        f = vec(0, 1)
        g = tuple(rng.randint(max(0, x - 1), k) for x in f)
        return H, Problem(kind, C.ClassicParams(k=k, f=f, g=g))
    if kind in ("regular-limited", "mixed-limited"):
        f = vec(0, 1)
        g = vec(0, 3)
        alpha = rng.randint(0, 4)
        beta = rng.randint(max(0, alpha - 1), 6)
        return H, Problem(kind, C.ClassicParams(h=h, alpha=alpha, beta=beta, f=f, g=g))
    if kind == "mixed-basis":
        M = _matroid(rng, vec(0, 2))
        return H, Problem(kind, C.ClassicParams(h=h, f=vec(0, 1), g=vec(0, 3), matroid=M))
    if kind in ("edmonds-branchings", "rootset-family"):
        rs = tuple(tuple(sorted(rng.sample(range(n), rng.randint(1, n)))) for _ in range(k))
        return H, Problem(kind, C.ClassicParams(root_sets=rs))
    if kind == "bordered-packing":
        ell, ellp, alpha, beta = _borders(rng, n, k)
        return H, Problem(kind, C.ClassicParams(k=k, alpha=alpha, beta=beta, ell=ell,
                                                ell_prime=ellp))
    if kind in ("bordered-dir", "bordered-undir"):
        ell, ellp, alpha, beta = _borders(rng, n, k)
        return H, Problem(kind, C.BorderedParams(h, k, alpha, beta, ell, ellp), gamma)
    # mixed family; bounds are drawn consistent except with small probability
    bad = lambda: rng.random() < 0.1  # noqa: E731
    counts = vec(h, h) if rng.random() < 0.5 else vec(0, 2)
    M = _matroid(rng, counts)
    f = vec(0, 1)
    g = tuple(max(0, x - 1) if bad() else x + rng.randint(0, 2) for x in f)
    alpha = rng.randint(0, 3)
    beta = max(0, alpha - 1) if bad() else max(alpha, h) + rng.randint(0, 2)
    if kind == "packing-mixed":
        return H, Problem(kind, C.MixedParams(h, alpha, beta, f, g, M))
    if kind == "aug-mixed-gamma":
        return H, Problem(kind, C.MixedParams(h, alpha, beta, f, g, M), gamma)
    fp = tuple(int(rng.random() < 0.3) for _ in range(n))
    gp = tuple(C.INF if rng.random() < 0.3 else (max(0, x - 1) if bad() else x + rng.randint(0, 1))
               for x in fp)
    q = rng.randint(0, 2)
    qp = max(0, q - 1) if bad() else q + rng.randint(0, 2)
    return H, Problem(kind, C.MixedParams(h, alpha, beta, f, g, M, fp, gp, q, qp))


def random_lemma_instance(rng: random.Random, k_max: int = 3, n_max: int = 5,
                          gamma_max: int = 3):
    """Random input for the root-bound lemma; most draws satisfy the hypotheses."""
    from .augment import LemmaInstance

    k = rng.randint(1, k_max)
    n = rng.randint(1, n_max)
    h = rng.randint(1, k)
    ell = [rng.randint(0, n) for _ in range(k)]
    ellp = [min(n, a + rng.randint(0, 2)) for a in ell]
    if rng.random() < 0.1:
        i = rng.randrange(k)
        ellp[i] = max(0, ell[i] - 1)
    lo, hi = sum(ell), sum(ellp)
    top = min(hi, h * n)
    alpha = rng.randint(lo, max(lo, top)) if rng.random() < 0.9 else rng.randint(0, hi + 1)
    beta = rng.randint(alpha, max(alpha, hi)) if rng.random() < 0.9 else rng.randint(0, hi + 1)
    e = tuple(rng.randint(0, h * p) for p in range(1, n + 1))
    return LemmaInstance(h, k, n, alpha, beta, rng.randint(0, gamma_max), tuple(ell),
                         tuple(ellp), e)


def _random_corollary(rng: random.Random, n: int, edges: int):
    from . import conditions as C
    from .problems import Problem

    base = random_instance(rng, GenConfig(n=n - 1, edges=rng.randint(0, max(0, edges - 2)),
                                          shape="mixed"))
    s = n - 1
    arcs = [(s, rng.randrange(n - 1)) for _ in range(rng.randint(1, 3))]
    H = MixedHypergraph(n, base.hyperedges, base.dyperedges).add_arcs(arcs)
    first = len(base.dyperedges)
    F = tuple(sorted(rng.sample(range(first, first + len(arcs)), rng.randint(1, len(arcs)))))
    return H, Problem("corollary-f", C.ClassicParams(s=s, F=F))
