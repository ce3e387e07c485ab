"""Exhaustive ground truth for packing existence and minimum augmentation.

Parallel edges are grouped into types with multiplicities.  A member is a
candidate ``(S, U, usage, arcs)``: every vertex of U - S picks one parent arc
from some edge type.  Packings are found by a memoised depth-first search
over member slots.  Added arcs or edges are modelled as "wildcard" types
whose copies may be trimmed to any ordered pair, so the search decides each
augmentation level without enumerating the added sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InconsistencyError, InputError, ResourceError
from .hypercore import (MixedHypergraph, Subpartition, _elements_enter_any,
                        _raw_subpartitions, enum_cap, members, popcount)
from .matroids import independent_with_profile
from .verify import Member, PackingWitness, Requirements, UsedEdge

CANDIDATE_CAP = 200_000


@dataclass(frozen=True)
class OracleCaps:
    n: int = 4
    edges: int = 6
    k: int = 3
    h: int = 3


DEFAULT_CAPS = OracleCaps()


@dataclass(frozen=True)
class EProfile:
    """e(p) for p = 1..n: least border count of a subpartition with p blocks.

    ``args[p - 1]`` is the first minimising subpartition in enumeration order.
    """

    values: tuple[int, ...]
    args: tuple[Subpartition, ...] = field(default=(), compare=False)

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= len(self.values):
            raise IndexError(p)
        return self.values[p - 1]

    @property
    def n(self) -> int:
        return len(self.values)


def e_profile(H: MixedHypergraph, partitions_only: bool = False,
              cap: int | None = None) -> EProfile:
    """Exact e(p) by enumeration; with ``partitions_only`` P must cover V."""
    n = H.n
    cap = enum_cap() if cap is None else cap
    if n > cap:
        raise ResourceError(f"e-profile over {n} vertices exceeds cap {cap}")
    els = H.elements()
    best: list[int | None] = [None] * (n + 1)
    arg: list[tuple[int, ...]] = [()] * (n + 1)
    for blocks in _raw_subpartitions(list(range(n)), partitions_only):
        p = len(blocks)
        if p == 0:
            continue
        e = _elements_enter_any(els, blocks)
        if best[p] is None or e < best[p]:
            best[p] = e
            arg[p] = tuple(sorted(blocks))
    return EProfile(tuple(best[1:]), tuple(Subpartition(a) for a in arg[1:]))


@dataclass(frozen=True)
class _Type:
    kind: str  # hyperedge, dyperedge, wild-arc, wild-edge
    arcs: tuple[tuple[int, int], ...]
    indices: tuple[int, ...] = ()
    tag: int = 0


@dataclass(frozen=True)
class _Cand:
    S: int
    U: int
    usage: tuple[int, ...]
    arcs: tuple[tuple[int, int, int], ...]  # (type, tail, head)


def _group(H: MixedHypergraph, tag: Callable[[int], int] | None = None) -> list[_Type]:
    """Edge types of H in first-occurrence order."""
    types: list[_Type] = []
    where: dict = {}
    for i, z in enumerate(H.hyperedges):
        key = ("h", z)
        if key in where:
            t = types[where[key]]
            types[where[key]] = _Type(t.kind, t.arcs, t.indices + (i,))
        else:
            vs = members(z)
            where[key] = len(types)
            types.append(_Type("hyperedge", tuple((y, v) for v in vs for y in vs if y != v), (i,)))
    for i, (tails, head) in enumerate(H.dyperedges):
        tg = tag(i) if tag else 0
        key = ("d", tails, head, tg)
        if key in where:
            t = types[where[key]]
            types[where[key]] = _Type(t.kind, t.arcs, t.indices + (i,), t.tag)
        else:
            where[key] = len(types)
            types.append(_Type("dyperedge", tuple((y, head) for y in members(tails)), (i,), tg))
    return types


def _wild(n: int, kind: str, head: int | None = None) -> _Type:
    heads = range(n) if head is None else [head]
    return _Type(kind, tuple((y, z) for z in heads for y in range(n) if y != z))


class _Engine:
    """Candidate members over a fixed list of edge types and usage caps."""

    def __init__(self, n: int, types: Sequence[_Type], mult: Sequence[int],
                 max_roots: int | None = None, spanning_only: bool = False,
                 root_masks: Iterable[int] | None = None):
        self.n, self.types, self.mult = n, list(types), tuple(mult)
        self.full = (1 << n) - 1
        self.cands: list[_Cand] = []
        self._build(max_roots, spanning_only, None if root_masks is None else set(root_masks))
        self.cov = [tuple(1 if c.U >> v & 1 else 0 for v in range(n)) for c in self.cands]
        self.nroots = [popcount(c.S) for c in self.cands]

    def _build(self, max_roots, spanning_only, root_masks) -> None:
        n, T = self.n, len(self.types)
        into: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for t, typ in enumerate(self.types):
            for y, z in typ.arcs:
                into[z].append((t, y))
        seen = set()
        Us = [self.full] if spanning_only else range(1, self.full + 1)
        for U in Us:
            for S in range(1, U + 1):
                if S & ~U:
                    continue
                if max_roots is not None and popcount(S) > max_roots:
                    continue
                if root_masks is not None and S not in root_masks:
                    continue
                rest = members(U & ~S)
                opts = [[(t, y) for t, y in into[v] if U >> y & 1] for v in rest]
                if any(not o for o in opts):
                    continue
                usage = [0] * T
                parent = [0] * n
                chosen: list[tuple[int, int, int]] = []

                def rec(j: int) -> None:
                    if j == len(rest):
                        key = (S, U, tuple(usage))
                        if key in seen or not self._acyclic(S, rest, parent):
                            return
                        seen.add(key)
                        self.cands.append(_Cand(S, U, tuple(usage), tuple(chosen)))
                        if len(self.cands) > CANDIDATE_CAP:
                            raise ResourceError(f"more than {CANDIDATE_CAP} candidate members")
                        return
                    v = rest[j]
                    for t, y in opts[j]:
                        if usage[t] >= self.mult[t]:
                            continue
                        usage[t] += 1
                        parent[v] = y
                        chosen.append((t, y, v))
                        rec(j + 1)
                        chosen.pop()
                        usage[t] -= 1

                rec(0)
        self.cands.sort(key=lambda c: (c.S, c.U, c.usage))

    @staticmethod
    def _acyclic(S: int, rest: list[int], parent: list[int]) -> bool:
        for v in rest:
            seen, x = 0, v
            while not S >> x & 1:
                if seen >> x & 1:
                    return False
                seen |= 1 << x
                x = parent[x]
        return True

    def search(self, slots: Sequence[Sequence[int]], keys: Sequence, mult: Sequence[int],
               h: int | None, lo: int, hi: float, exhaust: Sequence[bool],
               memo: set) -> list[int] | None:
        """Assign a candidate to each slot; None if impossible.

        ``keys`` describe the slots: equal consecutive keys are interchangeable
        and receive nondecreasing candidate indices.  Types flagged in
        ``exhaust`` must be used to their full multiplicity.
        """
        nslots = len(slots)
        cands, covs, nroots = self.cands, self.cov, self.nroots
        keys = tuple(keys)
        sym = [i > 0 and keys[i] == keys[i - 1] for i in range(nslots)]
        exh = [t for t, e in enumerate(exhaust) if e]
        n = self.n

        def rec(i: int, minidx: int, rem: tuple, cov: tuple, rs: int) -> list[int] | None:
            if i == nslots:
                if h is not None and any(c != h for c in cov):
                    return None
                if rs < lo or rs > hi or any(rem[t] for t in exh):
                    return None
                return []
            key = (keys[i:], minidx if sym[i] else -1, rem, cov, rs)
            if key in memo:
                return None
            left = nslots - i
            if h is not None and any(h - c > left for c in cov):
                memo.add(key)
                return None
            for ci in slots[i]:
                if sym[i] and ci < minidx:
                    continue
                c = cands[ci]
                if rs + nroots[ci] > hi:
                    continue
                if any(u > r for u, r in zip(c.usage, rem)):
                    continue
                cv = covs[ci]
                ncov = tuple(a + b for a, b in zip(cov, cv))
                if h is not None and any(x > h for x in ncov):
                    continue
                nrem = tuple(r - u for r, u in zip(rem, c.usage))
                res = rec(i + 1, ci, nrem, ncov, rs + nroots[ci])
                if res is not None:
                    return [ci] + res
            memo.add(key)
            return None

        return rec(0, -1, tuple(mult), (0,) * n, 0)


def _check_caps(H: MixedHypergraph, R: Requirements, caps: OracleCaps) -> None:
    nel = len(H.hyperedges) + len(H.dyperedges)
    if H.n > caps.n:
        raise ResourceError(f"oracle limited to n <= {caps.n}, got {H.n}")
    if nel > caps.edges:
        raise ResourceError(f"oracle limited to {caps.edges} edges, got {nel}")
    if R.k is not None and R.k > caps.k:
        raise ResourceError(f"oracle limited to k <= {caps.k}, got {R.k}")
    if R.h is not None and R.h > caps.h:
        raise ResourceError(f"oracle limited to h <= {caps.h}, got {R.h}")


def _root_profiles(R: Requirements, n: int) -> Iterator:
    """Candidate per-vertex root counts for an arborescence packing, in lex order."""
    if R.root_sets is not None:
        prof = [0] * n
        for s in R.root_sets:
            if len(s) != 1:
                raise InputError("arborescence root sets must be singletons")
            prof[s[0]] += 1
        yield tuple(prof)
        return
    lo = list(R.f) if R.f is not None else [0] * n
    hi = []
    for v in range(n):
        bounds = [b for b in ((R.g[v] if R.g is not None else None), R.h, R.k, R.beta)
                  if b is not None]
        if not bounds:
            raise InputError("arborescence packing needs g, h, k or beta to bound roots")
        hi.append(min(bounds))
    if any(a > b for a, b in zip(lo, hi)):
        return
    yield from itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)])


def _profile_ok(R: Requirements, prof: Sequence[int]):
    total = sum(prof)
    if R.k is not None and total != R.k:
        return None
    if R.alpha is not None and total < R.alpha:
        return None
    if R.beta is not None and total > R.beta:
        return None
    if R.h is not None and R.h > 0 and total < R.h:
        return None
    if R.matroid_mode:
        elems = independent_with_profile(R.matroid, prof)
        if elems is None:
            return None
        if R.matroid_mode == "basis" and total != R.matroid.full_rank:
            return None
        return elems
    return ()


def _materialize(H: MixedHypergraph, types: Sequence[_Type], eng: _Engine,
                 chosen: Sequence[int], elems=None) -> PackingWitness:
    taken = [0] * len(types)
    added_arcs: list[tuple[int, int]] = []
    added_edges: list[tuple[int, int]] = []
    mems = []
    elem_iter = iter(elems or ())
    for ci in chosen:
        c = eng.cands[ci]
        used = []
        for t, y, z in c.arcs:
            typ = types[t]
            if typ.kind == "wild-arc":
                used.append(UsedEdge("dyperedge", len(H.dyperedges) + len(added_arcs), y, z))
                added_arcs.append((y, z))
            elif typ.kind == "wild-edge":
                used.append(UsedEdge("hyperedge", len(H.hyperedges) + len(added_edges), y, z))
                added_edges.append((min(y, z), max(y, z)))
            else:
                idx = typ.indices[taken[t]]
                taken[t] += 1
                used.append(UsedEdge(typ.kind, idx, y, z))
        roots = tuple(members(c.S))
        re = None
        if elems:
            re = tuple(next(elem_iter) for _ in roots)
        mems.append(Member(c.U, roots, tuple(sorted(used, key=lambda e: (e.head, e.kind, e.index))), re))
    return PackingWitness(tuple(mems), tuple(added_arcs), tuple(added_edges))


class _Packer:
    """Packing search for one hypergraph, requirement set and extra wildcard types."""

    def __init__(self, H: MixedHypergraph, R: Requirements, extra: Sequence[_Type] = (),
                 extra_mult: Sequence[int] = (), tag=None):
        self.H, self.R = H, R
        self.types = _group(H, tag) + list(extra)
        base = [len(t.indices) for t in self.types[:len(self.types) - len(extra)]]
        self.mult = base + list(extra_mult)
        self.nextra = len(extra)
        if R.kind == "branching" and (R.f is not None or R.g is not None or R.matroid_mode):
            raise InputError("root bounds and matroids apply to arborescence packings only")
        root_masks = None
        if R.root_sets is not None:
            root_masks = {sum(1 << v for v in s) for s in R.root_sets}
        max_roots = 1 if R.kind == "arborescence" else None
        self.eng = _Engine(H.n, self.types, self.mult, max_roots, R.spanning, root_masks)
        self.memo: set = set()

    def run(self, rem: Sequence[int] | None = None, exhaust_extra: bool = False
            ) -> PackingWitness | None:
        R, eng, n = self.R, self.eng, self.H.n
        rem = self.mult if rem is None else list(rem)
        exhaust = [False] * (len(self.types) - self.nextra) + [exhaust_extra] * self.nextra
        if R.kind == "arborescence":
            by_root = [[i for i, c in enumerate(eng.cands) if c.S == 1 << r] for r in range(n)]
            for prof in _root_profiles(R, n):
                elems = _profile_ok(R, prof)
                if elems is None:
                    continue
                roots = [v for v in range(n) for _ in range(prof[v])]
                got = eng.search([by_root[r] for r in roots], roots, rem, R.h, 0,
                                 float("inf"), exhaust, self.memo)
                if got is not None:
                    return _materialize(self.H, self.types, eng, got, elems)
            return None
        k = R.k if R.k is not None else (len(R.root_sets) if R.root_sets is not None else None)
        if k is None:
            raise InputError("branching packing needs k or root_sets")
        slots, keys = [], []
        order = list(range(k))
        rs = [sum(1 << v for v in s) for s in R.root_sets] if R.root_sets is not None else None
        for i in order:
            lo_i = R.ell[i] if R.ell is not None else 1
            hi_i = R.ell_prime[i] if R.ell is not None else n
            want = rs[i] if rs is not None else None
            idx = [j for j, c in enumerate(eng.cands)
                   if lo_i <= popcount(c.S) <= hi_i and (want is None or c.S == want)]
            slots.append(idx)
            keys.append((lo_i, hi_i, want))
        empties = [i for i in order if R.ell is not None and R.ell[i] == 0 and not R.spanning]
        # an empty member is represented by leaving its slot out of the search
        best = None
        for drop in _drop_sets(empties):
            keep = [i for i in order if i not in drop]
            got = eng.search([slots[i] for i in keep], [keys[i] for i in keep], rem, R.h,
                             R.alpha or 0, float("inf") if R.beta is None else R.beta,
                             exhaust, self.memo)
            if got is not None:
                best = (keep, got)
                break
        if best is None:
            return None
        keep, got = best
        W = _materialize(self.H, self.types, eng, got)
        mems = list(W.members)
        out = []
        for i in order:
            out.append(mems.pop(0) if i in keep else Member(0, ()))
        return PackingWitness(tuple(out), W.added_arcs, W.added_edges)


def _drop_sets(empties: Sequence[int]) -> Iterator:
    for r in range(len(empties) + 1):
        yield from (set(c) for c in itertools.combinations(empties, r))


def exists_packing_bf(H: MixedHypergraph, R: Requirements,
                      caps: OracleCaps = DEFAULT_CAPS) -> PackingWitness | None:
    """A packing of H meeting R, or None if exhaustive search finds none."""
    _check_caps(H, R, caps)
    return _Packer(H, R).run()


@dataclass(frozen=True)
class AugmentResult:
    gamma: int
    added: tuple[tuple[int, int], ...]
    witness: PackingWitness


def _pairs(n: int, mode: str) -> list[tuple[int, int]]:
    if mode == "arcs":
        return [(u, v) for u in range(n) for v in range(n) if u != v]
    if mode == "edges":
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    raise InputError(f"augmentation mode must be arcs or edges, got {mode!r}")


def min_augment_bf(H: MixedHypergraph, R: Requirements, mode: str = "arcs",
                   gamma_max: int = 3, lex_least: bool = True,
                   caps: OracleCaps = DEFAULT_CAPS) -> AugmentResult | None:
    """Least number of added arcs (or edges) making a packing meeting R exist.

    With ``lex_least`` the added multiset is the lexicographically least one
    among those of minimum size; otherwise the first found by the search.
    """
    _check_caps(H, R, caps)
    pairs = _pairs(H.n, mode)
    kind = "wild-arc" if mode == "arcs" else "wild-edge"
    if H.n < 2:
        W = exists_packing_bf(H, R, caps)
        return None if W is None else AugmentResult(0, (), W)
    packer = _Packer(H, R, [_wild(H.n, kind)], [gamma_max])
    base = packer.mult[:-1]
    found = None
    for gamma in range(gamma_max + 1):
        W = packer.run(base + [gamma])
        if W is not None:
            found = (gamma, W)
            break
    if found is None:
        return None
    gamma, W = found
    if gamma < gamma_max and packer.run(base + [gamma + 1]) is None:
        raise InconsistencyError(f"packing exists with {gamma} additions but not {gamma + 1}")
    if not lex_least or gamma == 0:
        added = W.added_arcs if mode == "arcs" else W.added_edges
        return AugmentResult(gamma, tuple(added), W)
    per_head = R.h if mode == "arcs" else None
    for F in itertools.combinations_with_replacement(pairs, gamma):
        if per_head is not None and any(c > per_head for c in _head_counts(F).values()):
            continue
        G = H.add_arcs(F) if mode == "arcs" else H.add_edges(F)
        Wf = _Packer(G, R).run()
        if Wf is not None:
            return AugmentResult(gamma, tuple(F), _as_added(H, Wf, F, mode))
    raise InconsistencyError("wildcard search found an augmentation the explicit search missed")


def _head_counts(F) -> dict:
    out: dict = {}
    for _, v in F:
        out[v] = out.get(v, 0) + 1
    return out


def _as_added(H: MixedHypergraph, W: PackingWitness, F, mode: str) -> PackingWitness:
    """Reinterpret a witness on H+F (F appended) as one on H with F added."""
    if mode == "arcs":
        return PackingWitness(W.members, tuple(F), ())
    return PackingWitness(W.members, (), tuple(F))


def exists_aug_mixed_bf(H: MixedHypergraph, R: Requirements,
                        caps: OracleCaps = DEFAULT_CAPS) -> PackingWitness | None:
    """An added arc set F within the added_* bounds plus a packing containing F.

    Only the head profile of F matters to feasibility, since each added arc's
    tail can be chosen freely; profiles are tried by size, then lexicographically.
    """
    _check_caps(H, R, caps)
    n = H.n
    if R.kind != "arborescence" or R.h is None:
        raise InputError("the augmentation oracle expects an h-regular arborescence packing")
    fp = R.added_f if R.added_f is not None else (0,) * n
    gp = R.added_g if R.added_g is not None else (None,) * n
    his = [R.h if g is None else min(g, R.h) for g in gp]
    q = R.added_q or 0
    qp = R.added_qp if R.added_qp is not None else sum(his)
    if any(a > b for a, b in zip(fp, his)) or n < 2 and sum(fp) > 0:
        return None
    if n < 2:
        return _Packer(H, R).run() if q == 0 else None
    extra = [_wild(n, "wild-arc", v) for v in range(n)]
    packer = _Packer(H, R, extra, his)
    base = packer.mult[:-n]
    profiles = sorted(itertools.product(*[range(a, b + 1) for a, b in zip(fp, his)]),
                      key=lambda c: (sum(c), c))
    for c in profiles:
        if not q <= sum(c) <= qp:
            continue
        W = packer.run(base + list(c), exhaust_extra=True)
        if W is not None:
            return W
    return None


def exists_corollary_f_bf(H: MixedHypergraph, s: int, F: Sequence[int],
                          caps: OracleCaps = DEFAULT_CAPS) -> PackingWitness | None:
    """|F| spanning s-arborescences, each using an arc of F (dyperedge indices)."""
    _check_s_arcs(H, s, F)
    R = Requirements(kind="arborescence", k=len(F), spanning=True,
                     root_sets=tuple((s,) for _ in F))
    _check_caps(H, R, OracleCaps(caps.n + 1, caps.edges + len(F), caps.k, caps.h))
    fset = set(F)
    packer = _Packer(H, R, tag=lambda i: 1 if i in fset else 0)
    tagged = [t for t, typ in enumerate(packer.types) if typ.tag]
    keep = [i for i, c in enumerate(packer.eng.cands)
            if c.S == 1 << s and any(c.usage[t] for t in tagged)]
    got = packer.eng.search([keep] * len(F), [0] * len(F), packer.mult, None, 0,
                            float("inf"), [False] * len(packer.types), set())
    if got is None:
        return None
    return _materialize(H, packer.types, packer.eng, got)


def _check_s_arcs(H: MixedHypergraph, s: int, F: Sequence[int]) -> None:
    if not 0 <= s < H.n:
        raise InputError("s must be a vertex")
    if any(z >> s & 1 for z in H.hyperedges):
        raise InputError("only arcs may leave s")
    for tails, head in H.dyperedges:
        if tails >> s & 1 and tails != 1 << s:
            raise InputError("only arcs may leave s")
    for i in F:
        if not 0 <= i < len(H.dyperedges) or H.dyperedges[i][0] != 1 << s:
            raise InputError(f"F entry {i} is not an arc leaving s")
    if len(set(F)) != len(F):
        raise InputError("F lists an arc twice")


def exists_with_added_heads(H: MixedHypergraph, R: Requirements, heads: Sequence[int],
                            caps: OracleCaps = DEFAULT_CAPS) -> PackingWitness | None:
    """A packing meeting R that uses exactly heads[v] new arcs into each v (tails free)."""
    _check_caps(H, R, caps)
    n = H.n
    if len(heads) != n or any(c < 0 for c in heads):
        raise InputError("heads needs one nonnegative count per vertex")
    if sum(heads) == 0:
        return _Packer(H, R).run()
    if n < 2:
        return None
    packer = _Packer(H, R, [_wild(n, "wild-arc", v) for v in range(n)], list(heads))
    return packer.run(exhaust_extra=True)
