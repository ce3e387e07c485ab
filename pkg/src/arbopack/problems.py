"""Problem kinds: parsing, dispatch to checkers, and the matching oracle question."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from . import conditions as C
from .errors import InputError
from .hypercore import MixedHypergraph
from .matroids import MatroidOracle, RootMultiset
from .oracles import (DEFAULT_CAPS, OracleCaps, exists_aug_mixed_bf, exists_corollary_f_bf,
                      exists_packing_bf, min_augment_bf)
from .verify import PackingWitness, Requirements, requirements_from_json

MIXED_KINDS = ("packing-mixed", "aug-mixed", "aug-mixed-gamma")
BORDERED_KINDS = ("bordered-dir", "bordered-undir")
GAMMA_KINDS = ("aug-edmonds", "aug-flexible", "aug-mixed-gamma") + BORDERED_KINDS
KINDS = tuple(C.CLASSIC_VARIANTS) + MIXED_KINDS + BORDERED_KINDS


@dataclass(frozen=True)
class Problem:
    kind: str
    params: Any
    gamma: int = 0

    def with_gamma(self, gamma: int) -> "Problem":
        if self.kind in ("aug-edmonds", "aug-flexible"):
            p = self.params
            return Problem(self.kind, C.ClassicParams(**{**p.__dict__, "gamma": gamma}), gamma)
        return Problem(self.kind, self.params, gamma)


def check(H: MixedHypergraph, prob: Problem, cap: int | None = None) -> C.Verdict:
    k = prob.kind
    if k == "aug-mixed":
        return C.check_aug_mixed(H, prob.params, cap)
    if k == "packing-mixed":
        return C.check_packing_mixed(H, prob.params, cap)
    if k == "aug-mixed-gamma":
        return C.check_aug_mixed_gamma(H, prob.params, prob.gamma, cap)
    if k in BORDERED_KINDS:
        return C.check_bordered(H, prob.params, prob.gamma, k == "bordered-dir", cap)
    return C.check_classic(H, k, prob.params, cap)


def requirements(H: MixedHypergraph, prob: Problem) -> Requirements:
    """The packing attributes the problem asks for (before any augmentation)."""
    k, p, n = prob.kind, prob.params, H.n
    if k in MIXED_KINDS:
        extra: dict = {}
        if k == "aug-mixed":
            extra = dict(contains_added=True, added_f=p.fp,
                         added_g=tuple(None if x == C.INF else x for x in p.gp),
                         added_q=p.q, added_qp=p.qp)
        elif k == "aug-mixed-gamma":
            extra = dict(contains_added=True, added_q=0, added_qp=prob.gamma)
        return Requirements(h=p.h, alpha=p.alpha, beta=p.beta, f=p.f, g=p.g, matroid=p.matroid,
                            matroid_mode="independent", **extra)
    if k in BORDERED_KINDS:
        return Requirements(kind="branching", h=p.h, k=p.k, alpha=p.alpha, beta=p.beta,
                            ell=p.ell, ell_prime=p.ell_prime)
    if k in ("edmonds", "hyper-edmonds", "aug-edmonds"):
        m = len(p.roots)
        return Requirements(k=m, h=m, spanning=True, root_sets=tuple((r,) for r in p.roots))
    if k in ("flexible", "mixed-flexible", "aug-flexible"):
        return Requirements(k=p.k, h=p.k, spanning=True)
    if k in ("fg-bounded", "mixed-fg", "hyper-fg"):
        return Requirements(k=p.k, h=p.k, spanning=True, f=tuple(p.f), g=tuple(p.g))
    if k in ("regular-limited", "mixed-limited"):
        return Requirements(h=p.h, alpha=p.alpha, beta=p.beta, f=tuple(p.f), g=tuple(p.g))
    if k == "mixed-basis":
        return Requirements(h=p.h, f=tuple(p.f), g=tuple(p.g), matroid=p.matroid,
                            matroid_mode="basis")
    if k in ("edmonds-branchings", "rootset-family"):
        rs = tuple(tuple(sorted(s)) for s in p.root_sets)
        return Requirements(kind="branching", k=len(rs), spanning=True, root_sets=rs)
    if k == "bordered-packing":
        return Requirements(kind="branching", k=p.k, h=p.k, spanning=True, alpha=p.alpha,
                            beta=p.beta, ell=tuple(p.ell), ell_prime=tuple(p.ell_prime))
    if k == "corollary-f":
        return Requirements(k=len(p.F), spanning=True, root_sets=tuple((p.s,) for _ in p.F))
    raise InputError(f"unknown problem kind {k!r}")


def augment_mode(prob: Problem) -> str:
    return "edges" if prob.kind == "bordered-undir" else "arcs"


def oracle(H: MixedHypergraph, prob: Problem,
           caps: OracleCaps = DEFAULT_CAPS) -> PackingWitness | None:
    """Brute-force answer to the question the checker decides."""
    k = prob.kind
    if k == "corollary-f":
        return exists_corollary_f_bf(H, prob.params.s, prob.params.F, caps)
    R = requirements(H, prob)
    if k in ("aug-mixed", "aug-mixed-gamma"):
        return exists_aug_mixed_bf(H, R, caps)
    if k in GAMMA_KINDS:
        res = min_augment_bf(H, R, augment_mode(prob), prob.gamma, lex_least=False, caps=caps)
        return None if res is None else res.witness
    return exists_packing_bf(H, R, caps)


# ------------------------------------------------------------------ JSON

def _vec(d: Mapping, key: str, n: int, default=None, allow_inf: bool = False):
    v = d.get(key, default)
    if v is None:
        return None
    if isinstance(v, (int, str)):
        v = [v] * n
    out = []
    for x in v:
        if allow_inf and x in ("inf", "+inf", None):
            out.append(C.INF)
        elif isinstance(x, int) and not isinstance(x, bool):
            out.append(x)
        else:
            raise InputError(f"{key} entries must be integers")
    if len(out) != n:
        raise InputError(f"{key} needs {n} entries")
    return tuple(out)


def _roots_multiset(d: Mapping, n: int, h: int) -> RootMultiset:
    raw = d.get("roots")
    if raw is None:
        return RootMultiset.uniform(n, h)
    if isinstance(raw, Mapping):
        counts = [0] * n
        for v, c in raw.items():
            v = int(v)
            if not 0 <= v < n:
                raise InputError(f"root vertex {v} out of range")
            counts[v] = int(c)
        return RootMultiset(tuple(counts))
    if isinstance(raw, list) and len(raw) == n:
        return RootMultiset(tuple(int(c) for c in raw))
    raise InputError("roots must map vertex -> multiplicity")


def parse_problem(d: Mapping, n: int) -> Problem:
    try:
        return _parse(d, n)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed problem: {exc}")


def _parse(d: Mapping, n: int) -> Problem:
    kind = d.get("kind")
    if kind not in KINDS:
        raise InputError(f"unknown problem kind {kind!r}; known: {', '.join(KINDS)}")
    gamma = int(d.get("gamma", 0))
    if kind in MIXED_KINDS:
        h = int(d["h"])
        roots = _roots_multiset(d, n, h)
        M = MatroidOracle.from_json(roots, d.get("matroid"))
        params = C.MixedParams(h, int(d["alpha"]), int(d["beta"]), _vec(d, "f", n, 0),
                               _vec(d, "g", n, h), M, _vec(d, "fp", n, 0),
                               _vec(d, "gp", n, 0, allow_inf=True),
                               int(d.get("q", 0)), int(d.get("qp", 0)))
        return Problem(kind, params, gamma)
    if kind in BORDERED_KINDS:
        params = C.BorderedParams(int(d["h"]), int(d["k"]), int(d["alpha"]), int(d["beta"]),
                                  tuple(d["ell"]), tuple(d["ell_prime"]))
        return Problem(kind, params, gamma)
    matroid = None
    if kind == "mixed-basis":
        h = int(d["h"])
        matroid = MatroidOracle.from_json(_roots_multiset(d, n, h), d.get("matroid"))
    roots = d.get("roots") if kind not in ("mixed-basis",) else None
    params = C.ClassicParams(
        k=d.get("k"), h=d.get("h"), alpha=d.get("alpha"), beta=d.get("beta"),
        f=_vec(d, "f", n), g=_vec(d, "g", n),
        roots=None if roots is None else tuple(int(r) for r in roots),
        root_sets=None if d.get("root_sets") is None else tuple(tuple(s) for s in d["root_sets"]),
        ell=None if d.get("ell") is None else tuple(d["ell"]),
        ell_prime=None if d.get("ell_prime") is None else tuple(d["ell_prime"]),
        matroid=matroid, gamma=gamma, s=d.get("s"),
        F=None if d.get("F") is None else tuple(d["F"]))
    return Problem(kind, params, gamma)


def problem_to_json(prob: Problem) -> dict:
    out: dict = {"kind": prob.kind}
    p = prob.params
    if prob.kind in GAMMA_KINDS:
        out["gamma"] = prob.gamma
    if prob.kind in MIXED_KINDS:
        out.update(h=p.h, alpha=p.alpha, beta=p.beta, f=list(p.f), g=list(p.g),
                   roots={str(v): c for v, c in enumerate(p.matroid.roots.counts) if c},
                   matroid=p.matroid.to_json())
        if prob.kind == "aug-mixed":
            out.update(fp=list(p.fp), gp=["inf" if x == C.INF else x for x in p.gp],
                       q=p.q, qp=p.qp)
        return out
    if prob.kind in BORDERED_KINDS:
        out.update(h=p.h, k=p.k, alpha=p.alpha, beta=p.beta, ell=list(p.ell),
                   ell_prime=list(p.ell_prime))
        return out
    for key in ("k", "h", "alpha", "beta", "s"):
        val = getattr(p, key)
        if val is not None:
            out[key] = val
    for key in ("f", "g", "roots", "ell", "ell_prime", "F"):
        val = getattr(p, key)
        if val is not None:
            out[key] = list(val)
    if p.root_sets is not None:
        out["root_sets"] = [list(s) for s in p.root_sets]
    if p.matroid is not None:
        out["roots"] = {str(v): c for v, c in enumerate(p.matroid.roots.counts) if c}
        out["matroid"] = p.matroid.to_json()
    return out


def parse_requirements(d: Mapping, n: int) -> Requirements:
    """Requirements JSON, or a problem JSON whose requirements are derived."""
    if d.get("kind") in KINDS:
        H = MixedHypergraph(n)
        return requirements(H, parse_problem(d, n))
    matroid = None
    if d.get("matroid_mode") is not None:
        h = int(d.get("h") or 1)
        matroid = MatroidOracle.from_json(_roots_multiset(d, n, h), d.get("matroid"))
    try:
        return requirements_from_json(d, n, matroid)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed requirements: {exc}")
