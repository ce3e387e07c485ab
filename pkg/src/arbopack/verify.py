"""Hyperbranching recognition and packing-witness validation.

A member of a packing uses each selected hyperedge or dyperedge as a single
arc ``tail -> head`` (an orientation followed by a trim).  Only the chosen arc
has to lie inside the member's vertex set; other vertices of the edge are
irrelevant, matching "orient and trim the whole hypergraph, then pack".
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ResourceError
from .hypercore import MixedHypergraph, mask_of, members, popcount, submasks
from .matroids import MatroidOracle, independent_with_profile

SEARCH_CAP = 100_000

Arc = tuple[int, int]


@dataclass(frozen=True)
class UsedEdge:
    kind: str  # "hyperedge" or "dyperedge"
    index: int
    tail: int
    head: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "tail": self.tail, "head": self.head}

    @classmethod
    def from_json(cls, d: Mapping) -> "UsedEdge":
        kind = d.get("kind")
        if kind not in ("hyperedge", "dyperedge"):
            raise InputError(f"edge kind must be hyperedge or dyperedge, got {kind!r}")
        return cls(kind, int(d["index"]), int(d["tail"]), int(d["head"]))


@dataclass(frozen=True)
class Member:
    vertices: int
    roots: tuple[int, ...]
    edges: tuple[UsedEdge, ...] = ()
    root_elements: tuple[int, ...] | None = None

    @property
    def root_mask(self) -> int:
        return mask_of(self.roots)

    def to_json(self) -> dict:
        d = {"vertices": members(self.vertices), "roots": list(self.roots),
             "edges": [e.to_json() for e in self.edges]}
        if self.root_elements is not None:
            d["root_elements"] = list(self.root_elements)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Member":
        re = d.get("root_elements")
        return cls(mask_of(int(v) for v in d.get("vertices", [])),
                   tuple(sorted(int(r) for r in d.get("roots", []))),
                   tuple(UsedEdge.from_json(e) for e in d.get("edges", [])),
                   None if re is None else tuple(int(x) for x in re))


@dataclass(frozen=True)
class PackingWitness:
    members: tuple[Member, ...]
    added_arcs: tuple[Arc, ...] = ()
    added_edges: tuple[Arc, ...] = ()

    def augmented(self, H: MixedHypergraph) -> MixedHypergraph:
        """H with the witness' added arcs and edges appended."""
        return H.add_arcs(self.added_arcs).add_edges(self.added_edges)

    @property
    def root_multiset(self) -> Counter:
        c: Counter = Counter()
        for m in self.members:
            c.update(m.roots)
        return c

    def to_json(self) -> dict:
        return {"members": [m.to_json() for m in self.members],
                "added_arcs": [list(a) for a in self.added_arcs],
                "added_edges": [list(e) for e in self.added_edges]}

    @classmethod
    def from_json(cls, d: Mapping) -> "PackingWitness":
        try:
            return cls(tuple(Member.from_json(m) for m in d["members"]),
                       tuple((int(u), int(v)) for u, v in d.get("added_arcs", [])),
                       tuple((int(u), int(v)) for u, v in d.get("added_edges", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed witness: {exc}")


@dataclass(frozen=True)
class Requirements:
    """Packing attributes to enforce; ``None`` means not enforced.

    ``kind`` is ``"arborescence"`` (one root per member) or ``"branching"``.
    ``alpha``/``beta`` bound the total root count, which for arborescences is
    the number of members.  ``root_sets`` fixes the multiset of member root
    sets.  ``added_*`` constrain the arcs added by an augmentation.
    """

    kind: str = "arborescence"
    h: int | None = None
    k: int | None = None
    spanning: bool = False
    f: tuple[int, ...] | None = None
    g: tuple[int, ...] | None = None
    alpha: int | None = None
    beta: int | None = None
    ell: tuple[int, ...] | None = None
    ell_prime: tuple[int, ...] | None = None
    matroid: MatroidOracle | None = field(default=None, compare=False)
    matroid_mode: str | None = None
    root_sets: tuple[tuple[int, ...], ...] | None = None
    contains_added: bool = False
    added_f: tuple[int, ...] | None = None
    added_g: tuple[int | None, ...] | None = None
    added_q: int | None = None
    added_qp: int | None = None

    def __post_init__(self):
        if self.kind not in ("arborescence", "branching"):
            raise InputError(f"unknown packing kind {self.kind!r}")
        if self.matroid_mode not in (None, "independent", "basis"):
            raise InputError(f"unknown matroid mode {self.matroid_mode!r}")
        if self.matroid_mode and self.matroid is None:
            raise InputError("matroid mode given without a matroid")
        if (self.ell is None) != (self.ell_prime is None):
            raise InputError("ell and ell_prime must be given together")
        if self.ell is not None and self.k is not None and len(self.ell) != self.k:
            raise InputError("ell must have k entries")


@dataclass
class VerificationReport:
    ok: bool = True
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        if name in self.checks and not self.checks[name][0]:
            return  # keep the first counterexample
        self.checks[name] = (passed, detail)
        if not passed:
            self.ok = False

    @property
    def first_failure(self) -> tuple[str, str] | None:
        for name, (passed, detail) in self.checks.items():
            if not passed:
                return name, detail
        return None

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": {k: {"ok": v[0], "detail": v[1]} for k, v in self.checks.items()},
                "notes": list(self.notes)}


def is_branching(arcs: Sequence[Arc], S: int, U: int) -> bool:
    """Whether the arcs form an S-branching on U (unique path from S to each vertex)."""
    if S & ~U:
        return False
    parent: dict[int, int] = {}
    for y, z in arcs:
        if not (U >> y & 1 and U >> z & 1) or S >> z & 1 or z in parent:
            return False
        parent[z] = y
    if len(parent) != popcount(U & ~S):
        return False
    for v in members(U & ~S):
        seen = 0
        x = v
        while not S >> x & 1:
            if seen >> x & 1:
                return False
            seen |= 1 << x
            x = parent[x]
    return True


def branching_prefilter(B: Sequence[tuple[int, int]], S: int, U: int) -> bool:
    """Necessary condition: size |U - S| and every nonempty X in U - S is entered."""
    rest = U & ~S
    if len(B) != popcount(rest):
        return False
    if any(not rest >> z & 1 for _, z in B):
        return False
    for X in submasks(rest):
        if X and not any(X >> z & 1 and t & U & ~X for t, z in B):
            return False
    return True


def trimmable_to_branching(B: Sequence[tuple[int, int]], S: int, U: int,
                           use_prefilter: bool = True) -> tuple[int, ...] | None:
    """A tail per dyperedge turning B into an S-branching on U, or None.

    Tails are tried in increasing order, so the first (least) assignment wins.
    """
    if S & ~U:
        return None
    if use_prefilter and not branching_prefilter(B, S, U):
        return None
    choices = [members(t & U) for t, _ in B]
    total = 1
    for c in choices:
        total *= max(len(c), 1)
    if total > SEARCH_CAP:
        raise ResourceError(f"trim search space {total} exceeds cap {SEARCH_CAP}")
    heads = [z for _, z in B]
    for tails in product(*choices):
        if is_branching(list(zip(tails, heads)), S, U):
            return tuple(tails)
    return None


def orient_to_hyperbranching(hyperedges: Sequence[int], dyperedges: Sequence[tuple[int, int]],
                             S: int, U: int, spanning_n: int | None = None
                             ) -> list[Arc] | None:
    """Arcs (one per hyperedge, then one per dyperedge) forming an S-branching on U.

    With ``spanning_n`` set, U must be the whole vertex set and the size rule
    |S| + |edges| = |V| applies.
    """
    if spanning_n is not None:
        if U != (1 << spanning_n) - 1 or popcount(S) + len(hyperedges) + len(dyperedges) != spanning_n:
            return None
    if popcount(S) + len(hyperedges) + len(dyperedges) != popcount(U):
        return None
    head_choices = [members(z & U) for z in hyperedges]
    total = 1
    for c in head_choices:
        total *= max(len(c), 1)
    if total > SEARCH_CAP:
        raise ResourceError(f"orientation search space {total} exceeds cap {SEARCH_CAP}")
    for heads in product(*head_choices):
        oriented = [(z & ~(1 << hd), hd) for z, hd in zip(hyperedges, heads)]
        tails = trimmable_to_branching(oriented + list(dyperedges), S, U)
        if tails is not None:
            allheads = list(heads) + [z for _, z in dyperedges]
            return list(zip(tails, allheads))
    return None


def _check_edge(H: MixedHypergraph, e: UsedEdge) -> None:
    if e.kind == "hyperedge":
        if not 0 <= e.index < len(H.hyperedges):
            raise InputError(f"hyperedge index {e.index} does not exist")
        z = H.hyperedges[e.index]
        if e.tail == e.head or not (z >> e.tail & 1 and z >> e.head & 1):
            raise InputError(f"arc {e.tail}->{e.head} is not an orientation of hyperedge {e.index}")
    else:
        if not 0 <= e.index < len(H.dyperedges):
            raise InputError(f"dyperedge index {e.index} does not exist")
        t, z = H.dyperedges[e.index]
        if z != e.head or not t >> e.tail & 1:
            raise InputError(f"arc {e.tail}->{e.head} is not a trim of dyperedge {e.index}")


def verify_packing(H: MixedHypergraph, W: PackingWitness, R: Requirements) -> VerificationReport:
    """Check every requested attribute; the report keeps the first counterexample.

    Dangling edge references raise InputError rather than failing a check.
    """
    for u, v in W.added_arcs + W.added_edges:
        if u == v or not (0 <= u < H.n and 0 <= v < H.n):
            raise InputError(f"added pair {u},{v} is not two distinct vertices")
    G = W.augmented(H)
    rep = VerificationReport()
    n, full = G.n, G.full
    for m in W.members:
        if m.vertices & ~full or any(not 0 <= r < n for r in m.roots):
            raise InputError("member references a vertex out of range")
        if len(set(m.roots)) != len(m.roots):
            raise InputError("member root set has repeated vertices")
        for e in m.edges:
            _check_edge(G, e)

    use = Counter((e.kind, e.index) for m in W.members for e in m.edges)
    clash = [k for k, c in use.items() if c > 1]
    rep.record("disjoint", not clash,
               f"{clash[0][0]} {clash[0][1]} used {use[clash[0]]} times" if clash else "")

    for i, m in enumerate(W.members):
        arcs = [(e.tail, e.head) for e in m.edges]
        if R.kind == "arborescence" and len(m.roots) != 1:
            rep.record("branching", False, f"member {i} has {len(m.roots)} roots, expected 1")
            continue
        if not m.vertices and not m.roots and not arcs:
            ell_i = R.ell[i] if R.ell is not None and i < len(R.ell) else 0
            rep.record("branching", ell_i == 0, f"member {i} is empty" if ell_i else "")
            rep.notes.append(f"member {i} is empty")
            continue
        ok = bool(m.roots) and is_branching(arcs, m.root_mask, m.vertices)
        rep.record("branching", ok, "" if ok else f"member {i} is not a branching from its roots")
    if "branching" not in rep.checks:
        rep.record("branching", True)

    if R.spanning:
        bad = [i for i, m in enumerate(W.members) if m.vertices != full]
        rep.record("spanning", not bad, f"member {bad[0]} misses vertices" if bad else "")
    if R.k is not None:
        rep.record("member-count", len(W.members) == R.k, f"{len(W.members)} members, expected {R.k}")
    if R.h is not None:
        bad_v = None
        for v in range(n):
            cnt = sum(1 for m in W.members if m.vertices >> v & 1)
            if cnt != R.h:
                bad_v = (v, cnt)
                break
        rep.record("regular", bad_v is None,
                   f"vertex {bad_v[0]} in {bad_v[1]} members, expected {R.h}" if bad_v else "")
    roots = W.root_multiset
    if R.f is not None or R.g is not None:
        bad_v = None
        for v in range(n):
            lo = R.f[v] if R.f is not None else 0
            hi = R.g[v] if R.g is not None else None
            if roots[v] < lo or (hi is not None and roots[v] > hi):
                bad_v = v
                break
        rep.record("bounded", bad_v is None,
                   f"vertex {bad_v} is root {roots[bad_v]} times" if bad_v is not None else "")
    total = sum(len(m.roots) for m in W.members)
    if R.alpha is not None or R.beta is not None:
        lo = R.alpha if R.alpha is not None else 0
        ok = total >= lo and (R.beta is None or total <= R.beta)
        rep.record("limited", ok, f"total root count {total}")
    if R.ell is not None:
        bad_i = None
        if len(W.members) != len(R.ell):
            bad_i = len(W.members)
        else:
            for i, m in enumerate(W.members):
                if not R.ell[i] <= len(m.roots) <= R.ell_prime[i]:
                    bad_i = i
                    break
        rep.record("bordered", bad_i is None,
                   f"member {bad_i} violates its root-set bounds" if bad_i is not None else "")
    if R.root_sets is not None:
        want = sorted(tuple(sorted(s)) for s in R.root_sets)
        got = sorted(m.roots for m in W.members)
        rep.record("root-sets", want == got, f"root sets {got}, expected {want}")
    if R.matroid_mode:
        rep.record("matroid", *_check_matroid(R.matroid, R.matroid_mode, W, n))
    if R.contains_added or any(x is not None for x in (R.added_f, R.added_g, R.added_q,
                                                        R.added_qp)):
        _check_added(H, G, W, R, rep)
    return rep


def _check_matroid(M: MatroidOracle, mode: str, W: PackingWitness, n: int) -> tuple[bool, str]:
    roots = W.root_multiset
    profile = [roots[v] for v in range(n)]
    explicit = [m.root_elements for m in W.members]
    if all(e is not None for e in explicit) and W.members:
        elems = [x for e in explicit for x in e]
        ground = M.roots.elements()
        if len(set(elems)) != len(elems) or any(not 0 <= x < len(ground) for x in elems):
            return False, "root elements repeat or fall outside the ground set"
        for m in W.members:
            if sorted(ground[x][0] for x in m.root_elements) != list(m.roots):
                return False, "root elements do not sit at the member roots"
        mask = mask_of(elems)
        if not M.is_independent(mask):
            return False, "root elements are dependent"
    elif independent_with_profile(M, profile) is None:
        return False, f"no independent set with root profile {profile}"
    if mode == "basis" and sum(profile) != M.full_rank:
        return False, f"{sum(profile)} roots but the matroid rank is {M.full_rank}"
    return True, ""


def _check_added(H: MixedHypergraph, G: MixedHypergraph, W: PackingWitness,
                 R: Requirements, rep: VerificationReport) -> None:
    first_arc, first_edge = len(H.dyperedges), len(H.hyperedges)
    if R.contains_added:
        used = {(e.kind, e.index) for m in W.members for e in m.edges}
        missing = [("dyperedge", first_arc + j) for j in range(len(W.added_arcs))
                   if ("dyperedge", first_arc + j) not in used]
        missing += [("hyperedge", first_edge + j) for j in range(len(W.added_edges))
                    if ("hyperedge", first_edge + j) not in used]
        rep.record("contains-added", not missing,
                   f"added {missing[0][0]} {missing[0][1]} unused" if missing else "")
    if R.added_f is not None or R.added_g is not None:
        indeg = Counter(v for _, v in W.added_arcs)
        bad_v = None
        for v in range(H.n):
            lo = R.added_f[v] if R.added_f is not None else 0
            hi = R.added_g[v] if R.added_g is not None else None
            if indeg[v] < lo or (hi is not None and indeg[v] > hi):
                bad_v = v
                break
        rep.record("added-indegree", bad_v is None,
                   f"vertex {bad_v} receives {indeg[bad_v]} added arcs" if bad_v is not None else "")
    if R.added_q is not None or R.added_qp is not None:
        size = len(W.added_arcs) + len(W.added_edges)
        lo = R.added_q or 0
        ok = size >= lo and (R.added_qp is None or size <= R.added_qp)
        rep.record("added-size", ok, f"{size} added")


def requirements_from_json(data: Mapping, n: int, matroid: MatroidOracle | None = None
                           ) -> Requirements:
    def num(key):
        v = data.get(key)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InputError(f"{key} must be a nonnegative integer, got {v!r}")
        return v

    def vec(key, size=n):
        v = data.get(key)
        if v is None:
            return None
        if isinstance(v, int):
            return (v,) * size
        if len(v) != size:
            raise InputError(f"{key} needs {size} entries")
        return tuple(None if x is None else int(x) for x in v)

    kind = data.get("kind", "arborescence")
    if kind not in ("arborescence", "branching"):
        raise InputError(f"requirements kind must be arborescence or branching, got {kind!r}")
    mode = data.get("matroid_mode")
    if mode not in (None, "independent", "basis"):
        raise InputError(f"matroid_mode must be independent or basis, got {mode!r}")
    if mode is not None and matroid is None:
        raise InputError("matroid_mode needs a matroid")
    rs = data.get("root_sets")
    if rs is not None and any(not 0 <= int(v) < n for s in rs for v in s):
        raise InputError("root set vertex out of range")
    ell = vec("ell", len(data["ell"])) if data.get("ell") is not None else None
    ellp = vec("ell_prime", len(ell)) if ell is not None else None
    if ell is not None and ellp is None:
        raise InputError("ell needs ell_prime")
    return Requirements(
        kind=kind, h=num("h"), k=num("k"),
        spanning=bool(data.get("spanning", False)), f=vec("f"), g=vec("g"),
        alpha=num("alpha"), beta=num("beta"), ell=ell, ell_prime=ellp,
        matroid=matroid, matroid_mode=mode,
        root_sets=None if rs is None else tuple(tuple(sorted(int(v) for v in s)) for s in rs),
        contains_added=bool(data.get("contains_added", False)),
        added_f=vec("added_f"), added_g=vec("added_g"),
        added_q=num("added_q"), added_qp=num("added_qp"))


def requirements_to_json(R: Requirements) -> dict:
    out: dict = {"kind": R.kind}
    for key in ("h", "k", "alpha", "beta", "matroid_mode", "added_q", "added_qp"):
        val = getattr(R, key)
        if val is not None:
            out[key] = val
    for key in ("f", "g", "ell", "ell_prime", "added_f", "added_g"):
        val = getattr(R, key)
        if val is not None:
            out[key] = list(val)
    if R.spanning:
        out["spanning"] = True
    if R.contains_added:
        out["contains_added"] = True
    if R.root_sets is not None:
        out["root_sets"] = [list(s) for s in R.root_sets]
    return out


def arcs_of(members_: Iterable[Member]) -> list[Arc]:
    return [(e.tail, e.head) for m in members_ for e in m.edges]
