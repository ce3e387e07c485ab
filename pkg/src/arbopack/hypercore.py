"""Mixed hypergraphs, entering counts, subpartitions and the set function p-hat.

Vertex sets are int bitmasks throughout (bit ``v`` set means vertex ``v`` is
in the set).  Hyperedges are masks with at least two bits; dyperedges are
``(tails_mask, head)`` pairs.  Arcs are dyperedges with a single tail.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InputError, ResourceError

DEFAULT_ENUM_CAP = 10

Dyperedge = tuple[int, int]
Element = Union[int, Dyperedge]


def enum_cap() -> int:
    """Enumeration cap on |Z| for subpartition loops (env ARBOPACK_CAP)."""
    raw = os.environ.get("ARBOPACK_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"ARBOPACK_CAP must be an integer, got {raw!r}")
    return DEFAULT_ENUM_CAP


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    bits = members(mask)
    for i in range(1 << len(bits)):
        m = 0
        for j, b in enumerate(bits):
            if i >> j & 1:
                m |= 1 << b
        yield m


@dataclass(frozen=True)
class MixedHypergraph:
    n: int
    hyperedges: tuple[int, ...] = ()
    dyperedges: tuple[Dyperedge, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n <= 64:
            raise InputError(f"vertex count must be in [0, 64], got {self.n}")
        full = self.full
        for z in self.hyperedges:
            if z & ~full:
                raise InputError(f"hyperedge {members(z)} has a vertex out of range")
            if popcount(z) < 2:
                raise InputError(f"hyperedge {members(z)} needs two distinct vertices")
        for tails, head in self.dyperedges:
            if not 0 <= head < self.n or tails & ~full:
                raise InputError("dyperedge vertex out of range")
            if not tails:
                raise InputError("dyperedge needs a nonempty tail set")
            if tails >> head & 1:
                raise InputError(f"dyperedge head {head} lies in its tail set")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def build(cls, n: int, hyperedges: Iterable[Iterable[int]] = (),
              dyperedges: Iterable[tuple[Iterable[int], int]] = (),
              arcs: Iterable[tuple[int, int]] = ()) -> "MixedHypergraph":
        """Construct from plain vertex lists; ``arcs`` are single-tail dyperedges."""
        hs = tuple(mask_of(z) for z in hyperedges)
        ds = [(mask_of(t), int(z)) for t, z in dyperedges]
        ds.extend((1 << int(u), int(v)) for u, v in arcs)
        return cls(n, hs, tuple(ds))

    @property
    def is_digraph(self) -> bool:
        return not self.hyperedges and all(popcount(t) == 1 for t, _ in self.dyperedges)

    @property
    def is_dypergraph(self) -> bool:
        return not self.hyperedges

    @property
    def is_hypergraph(self) -> bool:
        return not self.dyperedges

    @property
    def is_mixed_graph(self) -> bool:
        return (all(popcount(z) == 2 for z in self.hyperedges)
                and all(popcount(t) == 1 for t, _ in self.dyperedges))

    def elements(self) -> list[Element]:
        """Hyperedges followed by dyperedges, with multiplicity."""
        return list(self.hyperedges) + list(self.dyperedges)

    def add_arcs(self, arcs: Iterable[tuple[int, int]]) -> "MixedHypergraph":
        extra = tuple((1 << u, v) for u, v in arcs)
        return MixedHypergraph(self.n, self.hyperedges, self.dyperedges + extra)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "MixedHypergraph":
        extra = tuple((1 << u) | (1 << v) for u, v in edges)
        return MixedHypergraph(self.n, self.hyperedges + extra, self.dyperedges)

    def to_json(self) -> dict:
        return {"n": self.n, "hyperedges": [members(z) for z in self.hyperedges],
                "dyperedges": [{"tails": members(t), "head": z} for t, z in self.dyperedges]}

    @classmethod
    def from_json(cls, d: Mapping) -> "MixedHypergraph":
        """Parse instance JSON; ``arcs`` entries are appended after ``dyperedges``."""
        try:
            n = d["n"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise InputError("n must be an integer")
            for v in _json_vertices(d):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise InputError(f"vertex {v!r} out of range for n={n}")
            return cls.build(n, d.get("hyperedges", ()),
                             [(e["tails"], e["head"]) for e in d.get("dyperedges", ())],
                             [tuple(a) for a in d.get("arcs", ())])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed instance: {exc!r}")


def _json_vertices(d: Mapping) -> Iterator:
    for z in d.get("hyperedges", ()):
        yield from z
    for e in d.get("dyperedges", ()):
        yield from e["tails"]
        yield e["head"]
    for a in d.get("arcs", ()):
        if len(a) != 2:
            raise InputError("arcs are [tail, head] pairs")
        yield from a


def _check_range(mask: int, n: int | None) -> None:
    if n is not None and mask >> n:
        raise InputError(f"vertex set {members(mask)} out of range for n={n}")


def enters(element: Element, X: int, n: int | None = None) -> bool:
    """Whether a hyperedge (mask) or dyperedge ``(tails, head)`` enters X."""
    _check_range(X, n)
    if isinstance(element, tuple):
        tails, head = element
        if n is not None:
            _check_range(tails | (1 << head), n)
        return bool(X >> head & 1) and bool(tails & ~X)
    _check_range(element, n)
    return bool(element & X) and bool(element & ~X)


def in_degree(H: MixedHypergraph, X: int) -> int:
    """Number of dyperedges (with multiplicity) entering X."""
    _check_range(X, H.n)
    return sum(1 for t, z in H.dyperedges if X >> z & 1 and t & ~X)


def hyper_degree(H: MixedHypergraph, X: int) -> int:
    """Number of hyperedges entering X."""
    _check_range(X, H.n)
    return sum(1 for z in H.hyperedges if z & X and z & ~X)


@dataclass(frozen=True)
class Subpartition:
    blocks: tuple[int, ...] = ()

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if not b:
                raise InputError("subpartition blocks must be nonempty")
            if b & seen:
                raise InputError("subpartition blocks must be pairwise disjoint")
            seen |= b

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Subpartition":
        return cls(tuple(sorted(mask_of(b) for b in blocks)))

    @property
    def union(self) -> int:
        u = 0
        for b in self.blocks:
            u |= b
        return u

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def canonical(self) -> "Subpartition":
        return Subpartition(tuple(sorted(self.blocks)))

    def as_lists(self) -> list[list[int]]:
        return [members(b) for b in sorted(self.blocks)]


def _elements_enter_any(elements: Sequence[Element], blocks: Sequence[int]) -> int:
    count = 0
    for el in elements:
        if isinstance(el, tuple):
            tails, head = el
            for b in blocks:
                if b >> head & 1 and tails & ~b:
                    count += 1
                    break
        else:
            for b in blocks:
                if el & b and el & ~b:
                    count += 1
                    break
    return count


def border_count(H: MixedHypergraph, P: Subpartition | Sequence[int]) -> int:
    """e(P): hyperedges plus dyperedges entering at least one block, each once."""
    blocks = P.blocks if isinstance(P, Subpartition) else tuple(P)
    return _elements_enter_any(H.elements(), blocks)


@dataclass(frozen=True)
class UncrossResult:
    meet: Subpartition
    join: Subpartition


def _properly_intersect(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


def uncross(P1: Subpartition, P2: Subpartition) -> UncrossResult:
    """Meet and join of two subpartitions by uncrossing their union family.

    The lowest-indexed properly intersecting pair is replaced first; the
    intersection stays in the lower slot.
    """
    family = list(P1.blocks) + list(P2.blocks)
    changed = True
    while changed:
        changed = False
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                a, b = family[i], family[j]
                if _properly_intersect(a, b):
                    family[i], family[j] = a & b, a | b
                    changed = True
                    break
            if changed:
                break
    # laminar now, each vertex covered at most twice; one copy of each maximal
    # set forms the join, the rest form the meet
    order = sorted(range(len(family)), key=lambda i: (-popcount(family[i]), family[i]))
    join: list[int] = []
    meet: list[int] = []
    covered = 0
    for i in order:
        s = family[i]
        if s & covered:
            meet.append(s)
        else:
            join.append(s)
            covered |= s
    return UncrossResult(Subpartition(tuple(sorted(meet))), Subpartition(tuple(sorted(join))))


def _check_cap(size: int, cap: int | None) -> None:
    cap = enum_cap() if cap is None else cap
    if size > cap:
        raise ResourceError(
            f"enumeration over {size} vertices exceeds cap {cap}; "
            "raise ARBOPACK_CAP or use sample_subpartitions")


def _raw_subpartitions(verts: list[int], partitions_only: bool) -> Iterator[tuple[int, ...]]:
    blocks: list[int] = []

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(verts):
            yield tuple(blocks)
            return
        bit = 1 << verts[i]
        if not partitions_only:
            yield from rec(i + 1)
        for j in range(len(blocks)):
            blocks[j] |= bit
            yield from rec(i + 1)
            blocks[j] &= ~bit
        blocks.append(bit)
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def enumerate_subpartitions(Z: int, cap: int | None = None) -> Iterator[Subpartition]:
    """Every subpartition of Z exactly once, the empty family included."""
    verts = members(Z)
    _check_cap(len(verts), cap)
    for blocks in _raw_subpartitions(verts, False):
        yield Subpartition(blocks)


def enumerate_partitions(Z: int, cap: int | None = None) -> Iterator[Subpartition]:
    """Every partition of Z exactly once (the empty family only when Z is empty)."""
    verts = members(Z)
    _check_cap(len(verts), cap)
    for blocks in _raw_subpartitions(verts, True):
        yield Subpartition(blocks)


def sample_subpartitions(Z: int, count: int, rng: random.Random) -> Iterator[Subpartition]:
    """Random subpartitions of Z, for sets too large to enumerate.

    Each vertex is left out, or joins an existing block or a new one, with
    equal chance; the result is not uniform over subpartitions.
    """
    verts = members(Z)
    for _ in range(count):
        blocks: list[int] = []
        for v in verts:
            j = rng.randint(-1, len(blocks))
            if j == len(blocks):
                blocks.append(1 << v)
            elif j >= 0:
                blocks[j] |= 1 << v
        yield Subpartition(tuple(sorted(blocks)))


def union_table(H: MixedHypergraph, h: int,
                cap: int | None = None) -> tuple[list[int | None], list[tuple[int, ...]]]:
    """For every W, max of h|P| - e(P) over subpartitions P with union exactly W.

    Entries are None where no such P exists.  Ties keep the first P met in
    enumeration order.
    """
    if h < 0:
        raise InputError("h must be nonnegative")
    n = H.n
    _check_cap(n, cap)
    elements = H.elements()
    size = 1 << n
    best_val: list[int | None] = [None] * size
    best_p: list[tuple[int, ...]] = [()] * size
    for blocks in _raw_subpartitions(list(range(n)), False):
        u = 0
        for b in blocks:
            u |= b
        val = h * len(blocks) - _elements_enter_any(elements, blocks)
        if best_val[u] is None or val > best_val[u]:
            best_val[u] = val
            best_p[u] = tuple(sorted(blocks))
    return best_val, best_p


def p_hat_table(H: MixedHypergraph, h: int,
                cap: int | None = None) -> tuple[list[int], list[Subpartition]]:
    """p-hat for every Z together with one maximising subpartition of each Z."""
    best_val, best_p = union_table(H, h, cap)
    size = 1 << H.n
    table = [0] * size
    arg: list[Subpartition] = [Subpartition()] * size
    for Z in range(size):
        bv, bp = 0, ()
        for U in submasks(Z):
            if best_val[U] is not None and best_val[U] > bv:
                bv, bp = best_val[U], best_p[U]
        table[Z] = bv
        arg[Z] = Subpartition(bp)
    return table, arg


def p_hat(H: MixedHypergraph, h: int, Z: int, cap: int | None = None) -> int:
    """max of h|P| - e(P) over subpartitions P of Z (at least 0 via P empty)."""
    if h < 0:
        raise InputError("h must be nonnegative")
    _check_range(Z, H.n)
    _check_cap(popcount(Z), cap)
    elements = H.elements()
    best = 0
    for blocks in _raw_subpartitions(members(Z), False):
        best = max(best, h * len(blocks) - _elements_enter_any(elements, blocks))
    return best
