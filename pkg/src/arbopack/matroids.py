"""Root multisets and matroid rank oracles on them.

Ground elements are ``(vertex, copy)`` pairs ordered by vertex then copy; a
subset of the ground is an int bitmask over those element indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, Sequence

from .errors import InputError, ResourceError
from .hypercore import popcount

TABLE_CAP = 16


@dataclass(frozen=True)
class RootMultiset:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InputError("root multiplicities must be nonnegative")

    @classmethod
    def uniform(cls, n: int, k: int) -> "RootMultiset":
        """k x V."""
        return cls((k,) * n)

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return sum(self.counts)

    def elements(self) -> list[tuple[int, int]]:
        return [(v, c) for v, cnt in enumerate(self.counts) for c in range(cnt)]

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for c in self.counts:
            out.append(acc)
            acc += c
        return out

    def restrict(self, X: int) -> int:
        """Bitmask of the ground elements whose vertex lies in X (S_X)."""
        m, idx = 0, 0
        for v, cnt in enumerate(self.counts):
            if X >> v & 1:
                m |= ((1 << cnt) - 1) << idx
            idx += cnt
        return m


@dataclass(frozen=True)
class MatroidOracle:
    """A matroid on a root multiset: ``free``, ``uniform`` or an explicit ``table``."""

    roots: RootMultiset
    kind: str = "free"
    rank_k: int = 0
    table: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.kind not in ("free", "uniform", "table"):
            raise InputError(f"unknown matroid kind {self.kind!r}")
        if self.kind == "uniform" and self.rank_k < 0:
            raise InputError("uniform rank must be nonnegative")
        if self.kind == "table":
            s = self.roots.size
            if s > TABLE_CAP:
                raise ResourceError(f"explicit rank tables limited to {TABLE_CAP} elements")
            if len(self.table) != 1 << s:
                raise InputError(f"rank table needs {1 << s} entries, got {len(self.table)}")
            _validate_rank_table(self.table, s)

    @classmethod
    def free(cls, roots: RootMultiset) -> "MatroidOracle":
        return cls(roots, "free")

    @classmethod
    def uniform(cls, roots: RootMultiset, k: int) -> "MatroidOracle":
        return cls(roots, "uniform", rank_k=k)

    @classmethod
    def from_table(cls, roots: RootMultiset, rank_of: Mapping[int, int]) -> "MatroidOracle":
        s = roots.size
        missing = [m for m in range(1 << s) if m not in rank_of]
        if missing:
            raise InputError(f"rank table missing {len(missing)} subsets, e.g. {missing[0]}")
        return cls(roots, "table", table=tuple(rank_of[m] for m in range(1 << s)))

    @property
    def ground_size(self) -> int:
        return self.roots.size

    def rank(self, X: int) -> int:
        if X >> self.ground_size:
            raise InputError("element set not contained in the ground")
        if self.kind == "free":
            return popcount(X)
        if self.kind == "uniform":
            return min(popcount(X), self.rank_k)
        return self.table[X]

    def rank_of_vertices(self, X: int) -> int:
        """b_M(X) = r(S_X) for a vertex set X."""
        return self.rank(self.roots.restrict(X))

    def b_table(self) -> list[int]:
        n = self.roots.n
        return [self.rank_of_vertices(X) for X in range(1 << n)]

    @property
    def full_rank(self) -> int:
        return self.rank((1 << self.ground_size) - 1)

    def is_independent(self, X: int) -> bool:
        return self.rank(X) == popcount(X)

    def to_json(self) -> dict:
        if self.kind == "free":
            return {"kind": "free"}
        if self.kind == "uniform":
            return {"kind": "uniform", "rank": self.rank_k}
        return {"kind": "table", "rank_of": {str(m): r for m, r in enumerate(self.table)}}

    @classmethod
    def from_json(cls, roots: RootMultiset, data: Mapping | None) -> "MatroidOracle":
        if data is None:
            return cls.free(roots)
        kind = data.get("kind", "free")
        if kind == "free":
            return cls.free(roots)
        if kind == "uniform":
            return cls.uniform(roots, int(data["rank"]))
        if kind == "table":
            return cls.from_table(roots, {int(k): int(v) for k, v in data["rank_of"].items()})
        raise InputError(f"unknown matroid kind {kind!r}")


def _validate_rank_table(table: Sequence[int], s: int) -> None:
    if table[0] != 0:
        raise InputError("rank of the empty set must be 0")
    for X in range(1 << s):
        r = table[X]
        if r < 0 or r > popcount(X):
            raise InputError(f"rank table not subcardinal at {X}")
        for a in range(s):
            if X >> a & 1:
                continue
            Xa = X | 1 << a
            if table[Xa] < r or table[Xa] > r + 1:
                raise InputError(f"rank table not unit-increasing at {X}+{a}")
            for b in range(a + 1, s):
                if X >> b & 1:
                    continue
                if table[Xa] + table[X | 1 << b] < table[Xa | 1 << b] + r:
                    raise InputError(f"rank table not submodular at {X} with {a},{b}")


def independent_with_profile(M: MatroidOracle, m: Sequence[int]) -> tuple[int, ...] | None:
    """An independent set with exactly m[v] elements at each vertex v, or None.

    Returns ground element indices.  Free and uniform matroids use the first
    copies directly; tables are searched exhaustively in lexicographic order.
    """
    counts = M.roots.counts
    if len(m) != len(counts):
        raise InputError("profile length must equal the vertex count")
    if any(x < 0 for x in m):
        return None
    if any(x > c for x, c in zip(m, counts)):
        return None
    offsets = M.roots.offsets()
    if M.kind in ("free", "uniform"):
        if M.kind == "uniform" and sum(m) > M.rank_k:
            return None
        return tuple(offsets[v] + c for v, x in enumerate(m) for c in range(x))
    if M.ground_size > TABLE_CAP:
        raise ResourceError("profile search beyond the ground cap")
    choices = [list(combinations(range(offsets[v], offsets[v] + counts[v]), x))
               for v, x in enumerate(m)]
    for pick in product(*choices):
        mask = 0
        for grp in pick:
            for e in grp:
                mask |= 1 << e
        if M.is_independent(mask):
            return tuple(e for grp in pick for e in grp)
    return None
