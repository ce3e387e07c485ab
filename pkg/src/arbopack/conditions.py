"""Min-max condition systems with certificates.

Every condition is normalised to ``lhs >= rhs``; a certificate stores the
quantified objects (X, Z, P, a vertex v or an index p) of the first violation
found together with lhs < rhs.  Checkers eliminate quantifiers (p-hat for the
subpartition, per-Z scans for X); ``recheck`` recomputes lhs and rhs from the
stored objects with the plain formula, independently of that elimination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import InputError
from .hypercore import (MixedHypergraph, Subpartition, border_count, enumerate_subpartitions,
                        in_degree, mask_of, members, p_hat_table, popcount, union_table)
from .matroids import MatroidOracle, RootMultiset
from .oracles import e_profile

INF = math.inf


@dataclass(frozen=True)
class Certificate:
    condition: str
    lhs: float
    rhs: float
    X: int | None = None
    Z: int | None = None
    P: Subpartition | None = None
    v: int | None = None
    p: int | None = None

    def to_json(self) -> dict:
        d: dict = {"condition": self.condition, "lhs": _num(self.lhs), "rhs": _num(self.rhs)}
        for key in ("X", "Z"):
            val = getattr(self, key)
            if val is not None:
                d[key] = members(val)
        if self.P is not None:
            d["P"] = self.P.as_lists()
        if self.v is not None:
            d["v"] = self.v
        if self.p is not None:
            d["p"] = self.p
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Certificate":
        def vs(key):
            return None if d.get(key) is None else mask_of(d[key])

        return cls(d["condition"], _unnum(d["lhs"]), _unnum(d["rhs"]), vs("X"), vs("Z"),
                   None if d.get("P") is None else Subpartition.of(d["P"]),
                   d.get("v"), d.get("p"))


def _num(x):
    if x == INF:
        return "+inf"
    if x == -INF:
        return "-inf"
    return int(x)


def _unnum(x):
    return {"+inf": INF, "-inf": -INF}.get(x, x) if isinstance(x, str) else x


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    certificate: Certificate | None = None

    def to_json(self) -> dict:
        d: dict = {"feasible": self.feasible}
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_json()
        return d


FEASIBLE = Verdict(True)


def _fail(cond: str, lhs, rhs, **kw) -> Verdict:
    return Verdict(False, Certificate(cond, lhs, rhs, **kw))


def _sums(vec: Sequence[float], n: int) -> list[float]:
    """Table of vec(X) over all X (float only when vec holds infinities)."""
    out = [0] * (1 << n)
    for X in range(1, 1 << n):
        low = X & -X
        out[X] = out[X ^ low] + vec[low.bit_length() - 1]
    return out


def _vec(vals, n: int, name: str, allow_inf: bool = False) -> tuple:
    if vals is None:
        raise InputError(f"parameter {name} is required")
    if isinstance(vals, (int, float)):
        vals = (vals,) * n
    vals = tuple(vals)
    if len(vals) != n:
        raise InputError(f"{name} needs {n} entries, got {len(vals)}")
    for x in vals:
        if x == INF and allow_inf:
            continue
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InputError(f"{name} entries must be nonnegative integers")
    return vals


def _nonneg(name: str, x) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise InputError(f"{name} must be a nonnegative integer")
    return x


def _g_h(g: Sequence[int], h: int) -> tuple[int, ...]:
    return tuple(min(x, h) for x in g)


# ---------------------------------------------------------------- mixed family

@dataclass(frozen=True)
class MixedParams:
    """Parameters of the regular, matroid-rooted, bounded, limited family.

    ``fp``/``gp`` bound the in-degrees of added arcs (``gp`` may hold inf) and
    ``q``/``qp`` their number; all default to zero.
    """

    h: int
    alpha: int
    beta: int
    f: tuple
    g: tuple
    matroid: MatroidOracle
    fp: tuple | None = None
    gp: tuple | None = None
    q: int = 0
    qp: int = 0

    def __post_init__(self):
        n = len(self.f)
        for name in ("h", "alpha", "beta", "q", "qp"):
            _nonneg(name, getattr(self, name))
        _vec(self.f, n, "f")
        _vec(self.g, n, "g")
        object.__setattr__(self, "fp", _vec(self.fp if self.fp is not None else 0, n, "fp"))
        object.__setattr__(self, "gp", _vec(self.gp if self.gp is not None else 0, n, "gp", True))
        if self.matroid.roots.n != n:
            raise InputError("matroid roots must cover the same vertex set as f")

    @property
    def n(self) -> int:
        return len(self.f)

    @classmethod
    def free(cls, n: int, h: int, alpha: int, beta: int, f, g, **kw) -> "MixedParams":
        """Free matroid on h x V."""
        M = MatroidOracle.free(RootMultiset.uniform(n, h))
        return cls(h, alpha, beta, _vec(f, n, "f"), _vec(g, n, "g"), M, **kw)


class _MixedCtx:
    def __init__(self, H: MixedHypergraph, P: MixedParams, cap: int | None):
        if P.n != H.n:
            raise InputError("parameter vectors must have one entry per vertex")
        self.H, self.P, self.cap = H, P, cap
        n = H.n
        self.full = (1 << n) - 1
        self.gh = _g_h(P.g, P.h)
        self.F = _sums(P.f, n)
        self.GH = _sums(self.gh, n)
        self.FP = _sums(P.fp, n)
        self.GP = _sums(P.gp, n)
        self.b = P.matroid.b_table()
        self.mh = max(P.h, P.alpha)

    def x_term_max(self, X: int, Z: int) -> int:
        return self.mh - self.b[self.full ^ X] + self.F[Z & ~X] - self.GH[X & ~Z]

    def x_term_min(self, X: int, Z: int) -> int:
        return self.b[X] - self.F[X & ~Z] + self.GH[Z & ~X]

    def added_max(self, Z: int):
        return max(self.FP[Z], self.P.q - self.GP[self.full ^ Z])

    def added_min(self, Z: int):
        return min(self.GP[Z], self.P.qp - self.FP[self.full ^ Z])

    def scalar(self, with_added: bool) -> Verdict | None:
        P = self.P
        for v in range(self.H.n):
            if self.gh[v] < P.f[v]:
                return _fail("fg-le", self.gh[v], P.f[v], v=v)
        if P.beta < P.alpha:
            return _fail("alpha-beta", P.beta, P.alpha)
        if with_added:
            if P.beta < P.h:
                return _fail("h-beta", P.beta, P.h)
            for v in range(self.H.n):
                if P.gp[v] < P.fp[v]:
                    return _fail("fprime-gprime", P.gp[v], P.fp[v], v=v)
            if P.qp < P.q:
                return _fail("q-qprime", P.qp, P.q)
        return None

    def maxside(self, name: str, with_added: bool) -> Verdict | None:
        h = self.P.h
        size = self.full + 1
        for Z in range(size):
            best, bx = None, 0
            for X in range(size):
                val = self.x_term_max(X, Z)
                if best is None or val > best:
                    best, bx = val, X
            if with_added:
                rhs = self.added_max(Z) + max(self.F[Z], best)
            else:
                rhs = best
            lhs = h * popcount(Z)
            if lhs < rhs:
                return _fail(name, lhs, rhs, X=bx, Z=Z)
        return None

    def minside(self, name: str, extra: Callable[[int], float]) -> Verdict | None:
        """p-hat(Z) <= extra(Z) + min{beta - f(Z-bar), min_X x_term_min} for all Z."""
        P = self.P
        size = self.full + 1
        phat, parg = p_hat_table(self.H, P.h, self.cap)
        for Z in range(size):
            best, bx = None, 0
            for X in range(size):
                val = self.x_term_min(X, Z)
                if best is None or val < best:
                    best, bx = val, X
            slack = extra(Z) + min(P.beta - self.F[self.full ^ Z], best)
            if phat[Z] > slack:
                Pz = parg[Z]
                e = border_count(self.H, Pz)
                return _fail(name, e + slack, P.h * len(Pz), X=bx, Z=Z, P=Pz)
        return None


def check_aug_mixed(H: MixedHypergraph, P: MixedParams, cap: int | None = None) -> Verdict:
    """Added arc set F within (fp, gp, q, qp) plus a conforming packing containing F."""
    ctx = _MixedCtx(H, P, cap)
    return (ctx.scalar(True) or ctx.maxside("maxside", True)
            or ctx.minside("minside", ctx.added_min) or FEASIBLE)


def check_aug_mixed_naive(H: MixedHypergraph, P: MixedParams, cap: int | None = None) -> Verdict:
    """The same system by plain enumeration of (X, Z, P); for cross-checking."""
    ctx = _MixedCtx(H, P, cap)
    early = ctx.scalar(True)
    if early:
        return early
    size = ctx.full + 1
    for Z in range(size):
        for X in range(size):
            lhs, rhs = _eval_mixed(ctx, "maxside", X, Z, None)
            if lhs < rhs:
                return _fail("maxside", lhs, rhs, X=X, Z=Z)
    for Z in range(size):
        for X in range(size):
            for Pz in enumerate_subpartitions(Z, cap):
                lhs, rhs = _eval_mixed(ctx, "minside", X, Z, Pz)
                if lhs < rhs:
                    return _fail("minside", lhs, rhs, X=X, Z=Z, P=Pz)
    return FEASIBLE


def check_packing_mixed(H: MixedHypergraph, P: MixedParams, cap: int | None = None) -> Verdict:
    """Regular matroid-independent-rooted bounded limited packing (no additions)."""
    ctx = _MixedCtx(H, P, cap)
    return (ctx.scalar(False) or ctx.maxside("maxside-packing", False)
            or ctx.minside("minside-packing", lambda Z: 0) or FEASIBLE)


def check_aug_mixed_gamma(H: MixedHypergraph, P: MixedParams, gamma: int,
                          cap: int | None = None) -> Verdict:
    """At most gamma added arcs, all used by the packing (free in- and out-degrees)."""
    _nonneg("gamma", gamma)
    ctx = _MixedCtx(H, P, cap)
    early = ctx.scalar(False)
    if early:
        return early
    if P.beta < P.h:
        return _fail("h-beta", P.beta, P.h)
    if P.beta < ctx.F[ctx.full]:
        return _fail("beta-f", P.beta, ctx.F[ctx.full])
    for X in range(ctx.full + 1):
        if ctx.b[X] < ctx.F[X]:
            return _fail("rank-f", ctx.b[X], ctx.F[X], X=X)
    return (ctx.maxside("maxside-packing", False)
            or ctx.minside("minside-gamma", lambda Z: gamma) or FEASIBLE)


def _eval_mixed(ctx: _MixedCtx, cond: str, X, Z, P, gamma: int = 0):
    prm, full = ctx.P, ctx.full
    if cond in ("maxside", "maxside-packing"):
        lhs = prm.h * popcount(Z)
        term = ctx.x_term_max(X, Z)
        if cond == "maxside":
            return lhs, ctx.added_max(Z) + max(ctx.F[Z], term)
        return lhs, term
    e = border_count(ctx.H, P)
    inner = min(prm.beta - ctx.F[full ^ Z], ctx.x_term_min(X, Z))
    extra = {"minside": ctx.added_min(Z) if Z is not None else 0,
             "minside-packing": 0, "minside-gamma": gamma}[cond]
    return e + extra + inner, prm.h * len(P)


# -------------------------------------------------------------- classic family

@dataclass(frozen=True)
class ClassicParams:
    """Parameter bag for the classic variants; each variant reads what it needs."""

    k: int | None = None
    h: int | None = None
    alpha: int | None = None
    beta: int | None = None
    f: tuple | None = None
    g: tuple | None = None
    roots: tuple[int, ...] | None = None
    root_sets: tuple[tuple[int, ...], ...] | None = None
    ell: tuple[int, ...] | None = None
    ell_prime: tuple[int, ...] | None = None
    matroid: MatroidOracle | None = field(default=None, compare=False)
    gamma: int = 0
    s: int | None = None
    F: tuple[int, ...] | None = None


def _need(prm: ClassicParams, *names: str) -> list:
    out = []
    for name in names:
        val = getattr(prm, name)
        if val is None:
            raise InputError(f"parameter {name} is required for this variant")
        if isinstance(val, int):
            _nonneg(name, val)
        out.append(val)
    return out


def _union_violation(H: MixedHypergraph, coef: int, slack: Callable[[int], float],
                     name: str, cap, restrict: int | None = None,
                     extra: Callable[[int], float] = lambda W: 0) -> Verdict | None:
    """First W (by mask) with coef|P| - e(P) > slack(W) for some P of union W."""
    best, arg = union_table(H, coef, cap)
    for W in range(len(best)):
        if best[W] is None or (restrict is not None and W & ~restrict):
            continue
        if best[W] > slack(W):
            Pw = Subpartition(arg[W])
            e = border_count(H, Pw)
            return _fail(name, e + slack(W), coef * len(Pw), P=Pw, Z=W)
    return None


def _shape(H: MixedHypergraph, shape: str) -> None:
    ok = {"digraph": H.is_digraph, "dypergraph": H.is_dypergraph,
          "mixed-graph": H.is_mixed_graph, "hypergraph": H.is_hypergraph,
          "mixed": True}[shape]
    if not ok:
        raise InputError(f"this variant needs a {shape}")


def _root_counts(roots: Sequence[int], n: int) -> list[int]:
    c = [0] * n
    for r in roots:
        if not 0 <= r < n:
            raise InputError(f"root {r} out of range")
        c[r] += 1
    return c


def _edmonds(H, prm, cap):
    (roots,) = _need(prm, "roots")
    n = H.n
    cnt = _root_counts(roots, n)
    SX = _sums(cnt, n)
    k = len(roots)
    for X in range(1, 1 << n):
        lhs = SX[X] + in_degree(H, X)
        if lhs < k:
            return _fail("edmonds", lhs, k, X=X)
    return FEASIBLE


def _flexible(H, prm, cap):
    (k,) = _need(prm, "k")
    return _union_violation(H, k, lambda W: k, "flexible", cap) or FEASIBLE


def _fg_bounded(H, prm, cap):
    k, f, g = _need(prm, "k", "f", "g")
    n = H.n
    f, g = _vec(f, n, "f"), _vec(g, n, "g")
    for v in range(n):
        if g[v] < f[v]:
            return _fail("fg", g[v], f[v], v=v)
    F, G = _sums(f, n), _sums(g, n)
    full = (1 << n) - 1
    return _union_violation(H, k, lambda W: min(k - F[full ^ W], G[W]), "fg-main", cap) or FEASIBLE


def _limited(H, prm, cap, use_gh_main: bool):
    h, alpha, beta, f, g = _need(prm, "h", "alpha", "beta", "f", "g")
    n = H.n
    f, g = _vec(f, n, "f"), _vec(g, n, "g")
    gh = _g_h(g, h)
    for v in range(n):
        if gh[v] < f[v]:
            return _fail("fghu", gh[v], f[v], v=v)
    lim = min(beta, sum(gh))
    if lim < alpha:
        return _fail("limits", lim, alpha)
    F, G = _sums(f, n), _sums(gh if use_gh_main else g, n)
    full = (1 << n) - 1
    return _union_violation(H, h, lambda W: min(beta - F[full ^ W], G[W]), "limited-main",
                            cap) or FEASIBLE


def _basis(H, prm, cap):
    h, f, g, M = _need(prm, "h", "f", "g", "matroid")
    n = H.n
    f, g = _vec(f, n, "f"), _vec(g, n, "g")
    gh = _g_h(g, h)
    for v in range(n):
        if gh[v] < f[v]:
            return _fail("fghu", gh[v], f[v], v=v)
    b = M.b_table()
    F, GH = _sums(f, n), _sums(gh, n)
    full = (1 << n) - 1
    for X in range(full + 1):
        lhs = b[X] + GH[full ^ X]
        if lhs < b[full]:
            return _fail("basis-cover", lhs, b[full], X=X)
    phat, parg = p_hat_table(H, h, cap)
    for W in range(full + 1):
        best, bu = None, 0
        for U in range(full + 1):
            val = b[U] - F[U & ~W] + GH[W & ~U]
            if best is None or val < best:
                best, bu = val, U
        if phat[W] > best:
            Pw = parg[W]
            return _fail("basis-main", border_count(H, Pw) + best, h * len(Pw), X=bu, Z=W, P=Pw)
    return FEASIBLE


def _rootset_count(root_sets: Sequence[int], X: int) -> int:
    return sum(1 for s in root_sets if s & X)


def _edmonds_branchings(H, prm, cap):
    (rs,) = _need(prm, "root_sets")
    masks = [mask_of(s) for s in rs]
    k = len(masks)
    for X in range(1, 1 << H.n):
        lhs = _rootset_count(masks, X) + in_degree(H, X)
        if lhs < k:
            return _fail("edmonds-branchings", lhs, k, X=X)
    return FEASIBLE


def check_rootset_family(H: MixedHypergraph, root_sets: Sequence[Sequence[int]],
                         cap: int | None = None) -> Verdict:
    """Spanning mixed hyperbranchings with the given root sets."""
    masks = [mask_of(s) for s in root_sets]
    for m in masks:
        if m >> H.n:
            raise InputError("root set vertex out of range")
    k = len(masks)
    for P in enumerate_subpartitions(H.full, cap):
        lhs = border_count(H, P) + sum(_rootset_count(masks, X) for X in P)
        if lhs < k * len(P):
            return _fail("rootset", lhs, k * len(P), P=P)
    return FEASIBLE


def _rootset(H, prm, cap):
    (rs,) = _need(prm, "root_sets")
    return check_rootset_family(H, rs, cap)


def _bordered_packing(H, prm, cap):
    k, alpha, beta, ell, ellp = _need(prm, "k", "alpha", "beta", "ell", "ell_prime")
    bp = BorderedParams(k, k, alpha, beta, tuple(ell), tuple(ellp))
    return check_bordered_dir(H, bp, 0, cap)


def _aug_edmonds(H, prm, cap):
    roots, gamma = _need(prm, "roots", "gamma")
    n = H.n
    k = len(roots)
    SX = _sums(_root_counts(roots, n), n)
    return _union_violation(H, k, lambda W: gamma + SX[W], "aug-edmonds", cap) or FEASIBLE


def _aug_flexible(H, prm, cap):
    k, gamma = _need(prm, "k", "gamma")
    return _union_violation(H, k, lambda W: gamma + k, "aug-flexible", cap) or FEASIBLE


def check_corollary_f(H: MixedHypergraph, s: int, F: Sequence[int],
                      cap: int | None = None) -> Verdict:
    """|F| spanning s-arborescences each containing an arc of F (arcs leaving s)."""
    from .oracles import _check_s_arcs
    _check_s_arcs(H, s, F)
    rest = H.full & ~(1 << s)
    c = len(F)
    return _union_violation(H, c, lambda W: 0, "corollary-f", cap, restrict=rest) or FEASIBLE


def _corollary(H, prm, cap):
    s, F = _need(prm, "s", "F")
    return check_corollary_f(H, s, F, cap)


# name -> (required shape, checker)
CLASSIC_VARIANTS: dict[str, tuple[str, Callable]] = {
    "edmonds": ("digraph", _edmonds),
    "hyper-edmonds": ("dypergraph", _edmonds),
    "flexible": ("digraph", _flexible),
    "mixed-flexible": ("mixed-graph", _flexible),
    "fg-bounded": ("digraph", _fg_bounded),
    "mixed-fg": ("mixed-graph", _fg_bounded),
    "hyper-fg": ("mixed", _fg_bounded),
    "regular-limited": ("digraph", lambda H, p, c: _limited(H, p, c, False)),
    "mixed-limited": ("mixed", lambda H, p, c: _limited(H, p, c, True)),
    "mixed-basis": ("mixed", _basis),
    "edmonds-branchings": ("digraph", _edmonds_branchings),
    "rootset-family": ("mixed", _rootset),
    "bordered-packing": ("digraph", _bordered_packing),
    "aug-edmonds": ("digraph", _aug_edmonds),
    "aug-flexible": ("digraph", _aug_flexible),
    "corollary-f": ("mixed", _corollary),
}


def check_classic(H: MixedHypergraph, variant: str, params: ClassicParams,
                  cap: int | None = None) -> Verdict:
    if variant not in CLASSIC_VARIANTS:
        raise InputError(f"unknown variant {variant!r}; known: {', '.join(CLASSIC_VARIANTS)}")
    shape, fn = CLASSIC_VARIANTS[variant]
    _shape(H, shape)
    return fn(H, params, cap)


# ------------------------------------------------------------- bordered family

@dataclass(frozen=True)
class BorderedParams:
    h: int
    k: int
    alpha: int
    beta: int
    ell: tuple[int, ...]
    ell_prime: tuple[int, ...]

    def __post_init__(self):
        for name in ("h", "k", "alpha", "beta"):
            _nonneg(name, getattr(self, name))
        _vec(self.ell, self.k, "ell")
        _vec(self.ell_prime, self.k, "ell_prime")


def bordered_hypotheses(n: int, P: BorderedParams) -> None:
    """Standing hypotheses of the bordered theorems; violations are input errors."""
    lo, hi = sum(P.ell), sum(P.ell_prime)
    if not hi >= P.beta >= P.alpha >= lo:
        raise InputError(f"need sum(ell') >= beta >= alpha >= sum(ell), got "
                         f"{hi} >= {P.beta} >= {P.alpha} >= {lo} (tot-hyp)")
    for i, (a, b) in enumerate(zip(P.ell, P.ell_prime)):
        if not n >= b >= a:
            raise InputError(f"need |V| >= ell'({i}) >= ell({i}), got {n} >= {b} >= {a} (ind-hyp)")


def _min_terms(p: int, vals: Sequence[int]) -> int:
    return sum(min(p, x) for x in vals)


def check_bordered(H: MixedHypergraph, P: BorderedParams, gamma: int, directed: bool,
                   cap: int | None = None) -> Verdict:
    _nonneg("gamma", gamma)
    if directed:
        _shape(H, "dypergraph")
    else:
        _shape(H, "hypergraph")
    n = H.n
    bordered_hypotheses(n, P)
    if P.h * n < P.alpha:
        return _fail("hV-alpha", P.h * n, P.alpha)
    if n >= 1 and P.k < P.h:
        return _fail("k-h", P.k, P.h)
    # p = 1 without gamma: every nonempty member keeps a root, and added arcs cannot supply one
    if n >= 1:
        lhs = P.beta - sum(P.ell) + _min_terms(1, P.ell)
        if lhs < P.h:
            return _fail("ell-root", lhs, P.h)
        lhs = _min_terms(1, P.ell_prime)
        if lhs < P.h:
            return _fail("ellp-root", lhs, P.h)
    prof = e_profile(H, partitions_only=not directed, cap=cap)
    base = gamma + P.beta - sum(P.ell)
    for p in range(1, n + 1):
        lhs = base + _min_terms(p, P.ell) + prof[p]
        if lhs < P.h * p:
            return _fail("ell-family", lhs, P.h * p, P=prof.args[p - 1], p=p)
    for p in range(1, n + 1):
        lhs = gamma + _min_terms(p, P.ell_prime) + prof[p]
        if lhs < P.h * p:
            return _fail("ellp-family", lhs, P.h * p, P=prof.args[p - 1], p=p)
    return FEASIBLE


def check_bordered_dir(H: MixedHypergraph, P: BorderedParams, gamma: int = 0,
                       cap: int | None = None) -> Verdict:
    return check_bordered(H, P, gamma, True, cap)


def check_bordered_undir(H: MixedHypergraph, P: BorderedParams, gamma: int = 0,
                         cap: int | None = None) -> Verdict:
    return check_bordered(H, P, gamma, False, cap)


# ------------------------------------------------------------------ recheck

def recheck(problem, H: MixedHypergraph, cert: Certificate) -> tuple[float, float]:
    """Recompute (lhs, rhs) of the certified inequality from its stored objects.

    ``problem`` is a :class:`problems.Problem`; the formula is evaluated
    directly, without the quantifier elimination used by the checkers.
    """
    kind, prm = problem.kind, problem.params
    if kind in ("aug-mixed", "packing-mixed", "aug-mixed-gamma"):
        return _recheck_mixed(kind, H, prm, problem.gamma, cert)
    if kind in ("bordered-dir", "bordered-undir"):
        return _recheck_bordered(H, prm, problem.gamma, cert)
    return _recheck_classic(H, kind, prm, cert)


def _recheck_mixed(kind, H, P: MixedParams, gamma, cert):
    ctx = _MixedCtx(H, P, None)
    c, v = cert.condition, cert.v
    scalar = {
        "fg-le": lambda: (ctx.gh[v], P.f[v]),
        "alpha-beta": lambda: (P.beta, P.alpha),
        "h-beta": lambda: (P.beta, P.h),
        "fprime-gprime": lambda: (P.gp[v], P.fp[v]),
        "q-qprime": lambda: (P.qp, P.q),
        "beta-f": lambda: (P.beta, sum(P.f)),
        "rank-f": lambda: (ctx.b[cert.X], ctx.F[cert.X]),
    }
    if c in scalar:
        return scalar[c]()
    return _eval_mixed(ctx, c, cert.X, cert.Z, cert.P, gamma or 0)


def _recheck_bordered(H, P: BorderedParams, gamma, cert):
    c = cert.condition
    n = H.n
    if c == "hV-alpha":
        return P.h * n, P.alpha
    if c == "k-h":
        return P.k, P.h
    if c == "ell-root":
        return P.beta - sum(P.ell) + _min_terms(1, P.ell), P.h
    if c == "ellp-root":
        return _min_terms(1, P.ell_prime), P.h
    p = len(cert.P)
    e = border_count(H, cert.P)
    if c == "ell-family":
        return gamma + P.beta - sum(P.ell) + _min_terms(p, P.ell) + e, P.h * p
    if c == "ellp-family":
        return gamma + _min_terms(p, P.ell_prime) + e, P.h * p
    raise InputError(f"unknown condition {c!r}")


def _recheck_classic(H, variant, prm: ClassicParams, cert):
    c, n = cert.condition, H.n
    full = (1 << n) - 1

    def vsum(vec, X):
        return sum(vec[v] for v in members(X))

    P = cert.P
    if c in ("edmonds", "edmonds-branchings"):
        X = cert.X
        if c == "edmonds":
            cnt = _root_counts(prm.roots, n)
            return vsum(cnt, X) + in_degree(H, X), len(prm.roots)
        masks = [mask_of(s) for s in prm.root_sets]
        return _rootset_count(masks, X) + in_degree(H, X), len(masks)
    if c in ("fg", "fghu"):
        gg = prm.g if c == "fg" else _g_h(prm.g, prm.h)
        return gg[cert.v], prm.f[cert.v]
    if c == "limits":
        return min(prm.beta, sum(_g_h(prm.g, prm.h))), prm.alpha
    if c == "basis-cover":
        b = prm.matroid.b_table()
        return b[cert.X] + vsum(_g_h(prm.g, prm.h), full ^ cert.X), b[full]
    if c == "rootset":
        masks = [mask_of(s) for s in prm.root_sets]
        return (border_count(H, P) + sum(_rootset_count(masks, X) for X in P),
                len(masks) * len(P))
    if c in ("ell-family", "ellp-family", "ell-root", "ellp-root", "hV-alpha", "k-h"):
        bp = BorderedParams(prm.k, prm.k, prm.alpha, prm.beta, tuple(prm.ell),
                            tuple(prm.ell_prime))
        return _recheck_bordered(H, bp, 0, cert)
    e = border_count(H, P)
    W = P.union
    if c == "flexible":
        return e + prm.k, prm.k * len(P)
    if c == "fg-main":
        return e + min(prm.k - vsum(prm.f, full ^ W), vsum(prm.g, W)), prm.k * len(P)
    if c == "limited-main":
        g = _g_h(prm.g, prm.h) if variant == "mixed-limited" else prm.g
        return e + min(prm.beta - vsum(prm.f, full ^ W), vsum(g, W)), prm.h * len(P)
    if c == "basis-main":
        b = prm.matroid.b_table()
        U, Wz = cert.X, cert.Z
        gh = _g_h(prm.g, prm.h)
        return e + b[U] - vsum(prm.f, U & ~Wz) + vsum(gh, Wz & ~U), prm.h * len(P)
    if c == "aug-edmonds":
        cnt = _root_counts(prm.roots, n)
        return prm.gamma + e + sum(vsum(cnt, X) for X in P), len(prm.roots) * len(P)
    if c == "aug-flexible":
        return prm.gamma + e + prm.k, prm.k * len(P)
    if c == "corollary-f":
        return e, len(prm.F) * len(P)
    raise InputError(f"unknown condition {c!r}")
