"""Generalized-polymatroid calculus on explicit set-function tables.

A table assigns an integer, ``+inf`` or ``-inf`` to every subset (bitmask) of
a ground set ``{0, ..., s-1}``.  ``Q(p, b)`` is the set of vectors ``x`` with
``p(Z) <= x(Z) <= b(Z)`` for all ``Z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .errors import InputError, ResourceError
from .hypercore import members

INF = math.inf
GROUND_CAP = 16

Value = Union[int, float]


def add(a: Value, b: Value) -> Value:
    """Saturating addition; (+inf) + (-inf) is refused."""
    if (a == INF and b == -INF) or (a == -INF and b == INF):
        raise ValueError("(+inf) + (-inf) is undefined")
    return a + b


@dataclass(frozen=True)
class SetFunctionTable:
    s: int
    values: tuple[Value, ...]

    def __post_init__(self):
        if not 0 <= self.s <= GROUND_CAP:
            raise ResourceError(f"ground size {self.s} beyond cap {GROUND_CAP}")
        if len(self.values) != 1 << self.s:
            raise InputError(f"table needs {1 << self.s} values, got {len(self.values)}")
        for v in self.values:
            if isinstance(v, float) and not math.isinf(v):
                raise InputError("table values must be integers or +-inf")

    def __getitem__(self, Z: int) -> Value:
        return self.values[Z]

    @classmethod
    def from_function(cls, s: int, fn: Callable[[int], Value]) -> "SetFunctionTable":
        return cls(s, tuple(fn(Z) for Z in range(1 << s)))

    @classmethod
    def modular(cls, weights: Sequence[Value]) -> "SetFunctionTable":
        s = len(weights)

        def val(Z: int) -> Value:
            tot: Value = 0
            for e in members(Z):
                tot = add(tot, weights[e])
            return tot
        return cls.from_function(s, val)

    @classmethod
    def constant(cls, s: int, value: Value, empty: Value = 0) -> "SetFunctionTable":
        return cls(s, (empty,) + (value,) * ((1 << s) - 1))

    @classmethod
    def inf0(cls, s: int) -> "SetFunctionTable":
        """+inf everywhere except 0 on the empty set."""
        return cls.constant(s, INF)

    @classmethod
    def neg_inf0(cls, s: int) -> "SetFunctionTable":
        return cls.constant(s, -INF)

    @property
    def full(self) -> int:
        return (1 << self.s) - 1

    def complement(self, Z: int) -> int:
        return self.full & ~Z

    def is_submodular(self) -> bool:
        return _check_modularity(self, sub=True)

    def is_supermodular(self) -> bool:
        return _check_modularity(self, sub=False)

    def to_json(self) -> dict[str, object]:
        return {str(Z): _value_to_json(v) for Z, v in enumerate(self.values)}

    @classmethod
    def from_json(cls, s: int, data: Mapping[str, object]) -> "SetFunctionTable":
        vals = []
        for Z in range(1 << s):
            if str(Z) not in data:
                raise InputError(f"table is missing subset {Z}")
            vals.append(_value_from_json(data[str(Z)]))
        return cls(s, tuple(vals))


def _value_to_json(v: Value) -> object:
    if v == INF:
        return "+inf"
    if v == -INF:
        return "-inf"
    return int(v)


def _value_from_json(v: object) -> Value:
    if isinstance(v, str):
        key = v.strip().lower()
        if key in ("+inf", "inf"):
            return INF
        if key == "-inf":
            return -INF
        try:
            return int(key)
        except ValueError:
            raise InputError(f"bad table value {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"bad table value {v!r}")
    if isinstance(v, float):
        if math.isinf(v):
            return v
        if v != int(v):
            raise InputError(f"table values must be integral, got {v}")
        return int(v)
    return v


def _check_modularity(t: SetFunctionTable, sub: bool) -> bool:
    # all pairs; a pair whose sums would meet (+inf) + (-inf) counts as a violation
    n = 1 << t.s
    vals = t.values
    for X in range(n):
        for Y in range(X + 1, n):
            lhs = (vals[X], vals[Y])
            rhs = (vals[X & Y], vals[X | Y])
            try:
                a = add(*lhs)
                b = add(*rhs)
            except ValueError:
                return False
            if sub and a < b:
                return False
            if not sub and a > b:
                return False
    return True


@dataclass(frozen=True)
class GPolyBounds:
    p: SetFunctionTable
    b: SetFunctionTable

    def __post_init__(self):
        if self.p.s != self.b.s:
            raise InputError("p and b must share a ground set")

    @property
    def s(self) -> int:
        return self.p.s

    @classmethod
    def box(cls, f: Sequence[Value], g: Sequence[Value]) -> "GPolyBounds":
        """T(f, g) written as Q(f, g) with modular tables."""
        return cls(SetFunctionTable.modular(f), SetFunctionTable.modular(g))

    def contains(self, x: Sequence[int]) -> bool:
        for Z in range(1 << self.s):
            xz = sum(x[e] for e in members(Z))
            if not self.p[Z] <= xz <= self.b[Z]:
                return False
        return True

    def is_gpolymatroid(self) -> bool:
        """Cross inequality b(X) - p(Y) >= b(X - Y) - p(Y - X) for all X, Y."""
        n = 1 << self.s
        p, b = self.p.values, self.b.values
        for X in range(n):
            for Y in range(n):
                rhs_b, rhs_p = b[X & ~Y], p[Y & ~X]
                if rhs_b == -INF or rhs_p == INF:
                    continue
                if b[X] == INF or p[Y] == -INF:
                    continue
                if b[X] == -INF or p[Y] == INF:
                    return False
                if rhs_b == INF or rhs_p == -INF:
                    return False
                if b[X] - p[Y] < rhs_b - rhs_p:
                    return False
        return True

    def to_json(self) -> dict:
        return {"s": self.s, "p": self.p.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "GPolyBounds":
        s = int(data["s"])
        return cls(SetFunctionTable.from_json(s, data["p"]),
                   SetFunctionTable.from_json(s, data["b"]))


def _modular_value(w: Sequence[Value], Z: int) -> Value:
    tot: Value = 0
    for e in members(Z):
        tot = add(tot, w[e])
    return tot


def intersect_box(Q: GPolyBounds, f: Sequence[Value],
                  g: Sequence[Value]) -> tuple[GPolyBounds, bool]:
    """Q(p, b) intersected with the box T(f, g).

    ``f`` and ``g`` may hold infinite entries only where the formulas never
    pair them against an opposite infinity.
    """
    s = Q.s
    if len(f) != s or len(g) != s:
        raise InputError("box bounds must match the ground size")
    p, b = Q.p.values, Q.b.values
    n = 1 << s
    fZ = [_modular_value(f, Z) for Z in range(n)]
    gZ = [_modular_value(g, Z) for Z in range(n)]
    nonempty = True
    for Z in range(n):
        lo = max(p[Z], fZ[Z])
        hi = min(b[Z], gZ[Z])
        if lo > hi:
            nonempty = False
            break
    pv, bv = [], []
    for Z in range(n):
        best_p: Value = -INF
        best_b: Value = INF
        for X in range(n):
            cand = add(add(p[X], -gZ[X & ~Z]), fZ[Z & ~X])
            if cand > best_p:
                best_p = cand
            cand = add(add(b[X], -fZ[X & ~Z]), gZ[Z & ~X])
            if cand < best_b:
                best_b = cand
        pv.append(best_p)
        bv.append(best_b)
    out = GPolyBounds(SetFunctionTable(s, tuple(pv)), SetFunctionTable(s, tuple(bv)))
    return out, nonempty


def intersect_cardinality(Q: GPolyBounds, alpha: int, beta: int) -> tuple[GPolyBounds, bool]:
    """Q(p, b) intersected with K(alpha, beta) = {x : alpha <= x(S) <= beta}."""
    s = Q.s
    p, b = Q.p.values, Q.b.values
    full = (1 << s) - 1
    nonempty = (all(p[Z] <= b[Z] for Z in range(1 << s))
                and alpha <= beta and beta >= p[full] and alpha <= b[full])
    pv = tuple(max(p[Z], add(alpha, -b[full & ~Z])) for Z in range(1 << s))
    bv = tuple(min(b[Z], add(beta, -p[full & ~Z])) for Z in range(1 << s))
    return GPolyBounds(SetFunctionTable(s, pv), SetFunctionTable(s, bv)), nonempty


def minkowski_sum(Q1: GPolyBounds, Q2: GPolyBounds) -> GPolyBounds:
    """Q(p1 + p2, b1 + b2)."""
    if Q1.s != Q2.s:
        raise InputError("summands must share a ground set")
    s = Q1.s
    pv = tuple(add(x, y) for x, y in zip(Q1.p.values, Q2.p.values))
    bv = tuple(add(x, y) for x, y in zip(Q1.b.values, Q2.b.values))
    return GPolyBounds(SetFunctionTable(s, pv), SetFunctionTable(s, bv))


def intersect_nonempty(Q1: GPolyBounds, Q2: GPolyBounds) -> bool:
    """p1 <= b2 and p2 <= b1 everywhere (valid for g-polymatroids)."""
    if Q1.s != Q2.s:
        raise InputError("operands must share a ground set")
    return all(a <= d and c <= bb for a, bb, c, d in
               zip(Q1.p.values, Q1.b.values, Q2.p.values, Q2.b.values))


def intersect(Q1: GPolyBounds, Q2: GPolyBounds) -> GPolyBounds:
    """The pair (max{p1,p2}, min{b1,b2}); its solution set is Q1 cap Q2."""
    s = Q1.s
    pv = tuple(max(a, c) for a, c in zip(Q1.p.values, Q2.p.values))
    bv = tuple(min(a, c) for a, c in zip(Q1.b.values, Q2.b.values))
    return GPolyBounds(SetFunctionTable(s, pv), SetFunctionTable(s, bv))


def _window(Q: GPolyBounds) -> int:
    finite = [abs(v) for v in Q.p.values + Q.b.values if not math.isinf(v)]
    return 1 + sum(finite)


def _others(total: Value, n_inf: int, own: Value) -> Value:
    """Sum of all entries but ``own``, given the finite total and infinity count."""
    if math.isinf(own):
        return total if n_inf == 1 else own
    return total - own if n_inf == 0 else INF


def _propagate(Q: GPolyBounds, lo: list[Value], hi: list[Value],
               supports: list[list[int]]) -> bool:
    """Tighten per-coordinate intervals to a fixpoint; False if one empties."""
    p, b = Q.p.values, Q.b.values
    for _ in range(64):
        changed = False
        for Z in range(1, 1 << Q.s):
            els = supports[Z]
            fin_hi = sum(hi[e] for e in els if not math.isinf(hi[e]))
            inf_hi = sum(1 for e in els if math.isinf(hi[e]))
            fin_lo = sum(lo[e] for e in els if not math.isinf(lo[e]))
            inf_lo = sum(1 for e in els if math.isinf(lo[e]))
            if (inf_hi == 0 and p[Z] > fin_hi) or (inf_lo == 0 and b[Z] < fin_lo):
                return False
            for e in els:
                if p[Z] != -INF:
                    rest = _others(fin_hi, inf_hi, hi[e])
                    if rest != INF:
                        new_lo = p[Z] - rest
                        if new_lo > lo[e]:
                            lo[e] = new_lo
                            changed = True
                if b[Z] != INF:
                    rest = _others(-fin_lo, inf_lo, -lo[e])
                    if rest != INF:
                        new_hi = b[Z] + rest
                        if new_hi < hi[e]:
                            hi[e] = new_hi
                            changed = True
                if lo[e] > hi[e]:
                    return False
            if changed:
                break
        if not changed:
            return True
    return True


def integral_element(Q: GPolyBounds, window: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least integer x with p(Z) <= x(Z) <= b(Z), or None.

    Coordinates are fixed in ascending element order to the smallest value
    that leaves the rest satisfiable, using interval propagation as a filter
    and a full check of all 2^s constraints at the leaf.  Coordinates left
    unbounded by the tables are searched within ``[-window, window]``
    (default: one plus the sum of the finite table magnitudes).
    """
    s = Q.s
    if s > GROUND_CAP:
        raise ResourceError(f"ground size {s} beyond cap {GROUND_CAP}")
    if Q.p[0] > 0 or Q.b[0] < 0:
        return None
    W = _window(Q) if window is None else window
    supports = [members(Z) for Z in range(1 << s)]
    lo: list[Value] = [-INF] * s
    hi: list[Value] = [INF] * s
    if not _propagate(Q, lo, hi, supports):
        return None
    lo = [max(v, -W) for v in lo]
    hi = [min(v, W) for v in hi]

    def rec(i: int, lo: list[Value], hi: list[Value]) -> tuple[int, ...] | None:
        if i == s:
            x = tuple(int(v) for v in lo)
            return x if Q.contains(x) else None
        for val in range(int(lo[i]), int(hi[i]) + 1):
            lo2, hi2 = list(lo), list(hi)
            lo2[i] = hi2[i] = val
            if not _propagate(Q, lo2, hi2, supports):
                continue
            found = rec(i + 1, lo2, hi2)
            if found is not None:
                return found
        return None

    return rec(0, lo, hi)


def integral_split(m: Sequence[int], Q1: GPolyBounds,
                   Q2: GPolyBounds) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Integral m1 in Q1, m2 in Q2 with m1 + m2 = m; lexicographically least m1."""
    s = Q1.s
    if len(m) != s or Q2.s != s:
        raise InputError("split operands must share a ground set")
    mZ = [sum(m[e] for e in members(Z)) for Z in range(1 << s)]
    pv = tuple(max(Q1.p[Z], add(mZ[Z], -Q2.b[Z])) for Z in range(1 << s))
    bv = tuple(min(Q1.b[Z], add(mZ[Z], -Q2.p[Z])) for Z in range(1 << s))
    pair = GPolyBounds(SetFunctionTable(s, pv), SetFunctionTable(s, bv))
    m1 = integral_element(pair, _window(pair) + sum(abs(v) for v in m))
    if m1 is None:
        return None
    return m1, tuple(a - c for a, c in zip(m, m1))
