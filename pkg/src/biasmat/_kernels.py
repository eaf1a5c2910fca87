"""Bitmask kernels over the power set of a small matroid ground set.

Each kernel has a numba implementation and a pure-numpy one with identical
results.  The active backend is chosen at import time from the
``BIASMAT_BACKEND`` environment variable (``numba`` or ``numpy``); the
default is numba when it imports, numpy otherwise.  Both backends stay
reachable through :data:`BACKENDS` so they can be compared directly.

Masks are int64; ground sets are limited to :data:`MAX_TABLE_BITS` elements
for anything that allocates a ``2**m`` table.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

MAX_TABLE_BITS = 24

# -- numpy backend ----------------------------------------------------------


def _np_dependent_table(circuits: np.ndarray, m: int) -> np.ndarray:
    dep = np.zeros(1 << m, dtype=np.bool_)
    dep[circuits] = True
    # superset closure, one bit at a time
    for b in range(m):
        view = dep.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return dep


def _np_rank_table(dep: np.ndarray, m: int) -> np.ndarray:
    sizes = np.zeros(1 << m, dtype=np.int8)
    for b in range(m):
        sizes.reshape(-1, 2, 1 << b)[:, 1, :] += 1
    rank = np.where(dep, np.int8(0), sizes)
    # rank(X) = max |Y| over independent Y within X
    for b in range(m):
        view = rank.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return rank


def _np_antichain_violation(circuits: np.ndarray) -> tuple[int, int]:
    for i in range(len(circuits)):
        c = circuits[i]
        hit = np.nonzero(((circuits & c) == c) & (circuits != c))[0]
        if len(hit):
            return i, int(hit[0])
    return -1, -1


def _np_elimination_violation(circuits: np.ndarray, dep: np.ndarray, m: int) -> tuple[int, int, int]:
    k = len(circuits)
    for i in range(k):
        ci = circuits[i]
        rest = circuits[i + 1:]
        inter = rest & ci
        union = rest | ci
        for e in range(m):
            bit = np.int64(1) << e
            has = (inter & bit) != 0
            if not has.any():
                continue
            bad = has & ~dep[union & ~bit]
            if bad.any():
                return i, i + 1 + int(np.nonzero(bad)[0][0]), e
    return -1, -1, -1


def _u24_quads(m: int) -> np.ndarray:
    quads = []
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                for d in range(c + 1, m):
                    quads.append((a, b, c, d))
    return np.array(quads, dtype=np.int64).reshape(-1, 4)


def _np_find_u24(rank: np.ndarray, m: int) -> tuple[int, int]:
    if m < 4:
        return -1, -1
    universe = np.arange(1 << m, dtype=np.int64)
    sizes = np.zeros(1 << m, dtype=np.int8)
    for b in range(m):
        sizes.reshape(-1, 2, 1 << b)[:, 1, :] += 1
    independent = universe[rank == sizes]
    for q in _u24_quads(m):
        t = int((1 << q[0]) | (1 << q[1]) | (1 << q[2]) | (1 << q[3]))
        cs = independent[(independent & t) == 0]
        r0 = rank[cs].astype(np.int16) + 2
        ok = rank[cs | t] == r0
        for x in range(4):
            for y in range(x + 1, 4):
                if not ok.any():
                    break
                pair = (1 << int(q[x])) | (1 << int(q[y]))
                ok &= rank[cs | pair] == r0
        hit = np.nonzero(ok)[0]
        if len(hit):
            return t, int(cs[hit[0]])
    return -1, -1


numpy_backend = SimpleNamespace(
    name="numpy",
    dependent_table=_np_dependent_table,
    rank_table=_np_rank_table,
    antichain_violation=_np_antichain_violation,
    elimination_violation=_np_elimination_violation,
    find_u24=_np_find_u24,
)

# -- numba backend ----------------------------------------------------------


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def dependent_table(circuits, m):
        n = 1 << m
        dep = np.zeros(n, dtype=np.bool_)
        for c in circuits:
            dep[c] = True
        for x in range(n):
            if dep[x]:
                continue
            y = x
            while y:
                low = y & -y
                if dep[x ^ low]:
                    dep[x] = True
                    break
                y ^= low
        return dep

    @njit(cache=True)
    def rank_table(dep, m):
        n = 1 << m
        rank = np.zeros(n, dtype=np.int8)
        for x in range(1, n):
            best = 0
            y = x
            while y:
                low = y & -y
                r = rank[x ^ low]
                if r > best:
                    best = r
                y ^= low
            rank[x] = best if dep[x] else best + 1
        return rank

    @njit(cache=True)
    def antichain_violation(circuits):
        k = circuits.shape[0]
        for i in range(k):
            ci = circuits[i]
            for j in range(k):
                cj = circuits[j]
                if i != j and (cj & ci) == ci and cj != ci:
                    return i, j
        return -1, -1

    @njit(cache=True)
    def elimination_violation(circuits, dep, m):
        k = circuits.shape[0]
        for i in range(k):
            ci = circuits[i]
            for j in range(i + 1, k):
                cj = circuits[j]
                inter = ci & cj
                union = ci | cj
                while inter:
                    low = inter & -inter
                    if not dep[union & ~low]:
                        e = 0
                        while (low >> e) != 1:
                            e += 1
                        return i, j, e
                    inter ^= low
        return -1, -1, -1

    @njit(cache=True)
    def find_u24(rank, m):
        if m < 4:
            return -1, -1
        n = 1 << m
        full = n - 1
        for a in range(m):
            for b in range(a + 1, m):
                for c in range(b + 1, m):
                    for d in range(c + 1, m):
                        t = (1 << a) | (1 << b) | (1 << c) | (1 << d)
                        p0 = (1 << a) | (1 << b)
                        p1 = (1 << a) | (1 << c)
                        p2 = (1 << a) | (1 << d)
                        p3 = (1 << b) | (1 << c)
                        p4 = (1 << b) | (1 << d)
                        p5 = (1 << c) | (1 << d)
                        rest = full & ~t
                        # ascending enumeration of submasks of rest
                        s = 0
                        while True:
                            r = rank[s]
                            size = 0
                            y = s
                            while y:
                                y &= y - 1
                                size += 1
                            if r == size:
                                r2 = r + 2
                                if (rank[s | t] == r2 and rank[s | p0] == r2 and rank[s | p1] == r2
                                        and rank[s | p2] == r2 and rank[s | p3] == r2
                                        and rank[s | p4] == r2 and rank[s | p5] == r2):
                                    return t, s
                            if s == rest:
                                break
                            s = (s - rest) & rest
        return -1, -1

    return SimpleNamespace(
        name="numba",
        dependent_table=dependent_table,
        rank_table=rank_table,
        antichain_violation=antichain_violation,
        elimination_violation=elimination_violation,
        find_u24=find_u24,
    )


BACKENDS = {"numpy": numpy_backend}
try:
    BACKENDS["numba"] = _build_numba()
except ImportError:  # pragma: no cover - numba is a declared dependency
    pass

_requested = os.environ.get("BIASMAT_BACKEND", "numba").strip().lower()
backend = BACKENDS.get(_requested, BACKENDS.get("numba", numpy_backend))


def as_masks(values) -> np.ndarray:
    return np.asarray(list(values), dtype=np.int64)
