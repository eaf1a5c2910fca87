"""Matroids given extensionally by their circuits, and the three circuit
oracles used throughout: cycle matroids of graphs, frame matroids of biased
graphs and lift matroids of signed graphs.

Circuits are kept both as frozensets of element ids and as int bitmasks over
the sorted ground set.  Anything that needs the full power set (rank table,
U(2,4)-minor search, circuit elimination) goes through :mod:`biasmat._kernels`.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from functools import cached_property

import numpy as np

from . import _kernels
from .biased import (
    BiasedGraph,
    SignedGraph,
    _handcuff_masks,
    from_signed,
    require_theta_property,
)
from .budget import Budget, resolve
from .errors import BudgetError, InputError
from .graph_core import MultiGraph, bits, popcount, sort_ids

ELIMINATION_CHECK_LIMIT = 12


class Matroid:
    """A matroid on ``ground`` with the given circuit family.

    Construction checks that circuits are nonempty subsets of the ground set
    forming an antichain, and for ground sets of at most
    ``ELIMINATION_CHECK_LIMIT`` elements also the circuit elimination axiom.
    """

    def __init__(self, ground: Iterable, circuits: Iterable[Iterable], validate: bool = True):
        self.elements = sort_ids(set(ground))
        self.ground = frozenset(self.elements)
        self._pos = {e: i for i, e in enumerate(self.elements)}
        masks = set()
        for c in circuits:
            m = 0
            for e in c:
                if e not in self._pos:
                    raise InputError(f"circuit element {e!r} not in ground set")
                m |= 1 << self._pos[e]
            if not m:
                raise InputError("the empty set is not a circuit")
            masks.add(m)
        self._masks = frozenset(masks)
        if validate:
            self.validate()

    @classmethod
    def _from_masks(cls, elements: list, masks: Iterable[int], validate: bool = True) -> Matroid:
        obj = cls.__new__(cls)
        obj.elements = list(elements)
        obj.ground = frozenset(obj.elements)
        obj._pos = {e: i for i, e in enumerate(obj.elements)}
        obj._masks = frozenset(masks)
        if validate:
            obj.validate()
        return obj

    @property
    def masks(self) -> frozenset:
        return self._masks

    @cached_property
    def circuits(self) -> frozenset:
        return frozenset(self.set_of(m) for m in self._masks)

    def set_of(self, mask: int) -> frozenset:
        el = self.elements
        return frozenset(el[i] for i in bits(mask))

    def mask_of(self, items: Iterable) -> int:
        m = 0
        for e in items:
            if e not in self._pos:
                raise InputError(f"{e!r} is not in the ground set")
            m |= 1 << self._pos[e]
        return m

    def sorted_circuits(self) -> list[list]:
        """Circuits as sorted element lists, ordered by size then elements."""
        order = sorted(self._masks, key=lambda m: (popcount(m), list(bits(m))))
        return [[self.elements[i] for i in bits(m)] for m in order]

    @property
    def size(self) -> int:
        return len(self.elements)

    def _mask_array(self) -> np.ndarray:
        if self.size > 62:
            raise BudgetError("kernel routines need at most 62 elements")
        return _kernels.as_masks(sorted(self._masks))

    @cached_property
    def dependent_table(self) -> np.ndarray:
        if self.size > _kernels.MAX_TABLE_BITS:
            raise BudgetError(f"power-set table needs at most {_kernels.MAX_TABLE_BITS} elements")
        return _kernels.backend.dependent_table(self._mask_array(), self.size)

    @cached_property
    def rank_table(self) -> np.ndarray:
        return _kernels.backend.rank_table(self.dependent_table, self.size)

    def rank(self, items: Iterable) -> int:
        return int(self.rank_table[self.mask_of(items)])

    def is_independent(self, items: Iterable) -> bool:
        m = self.mask_of(items)
        return not any(c & m == c for c in self._masks)

    def validate(self) -> None:
        masks = sorted(self._masks)
        if self.size <= 62:
            i, j = _kernels.backend.antichain_violation(_kernels.as_masks(masks))
            if i >= 0:
                raise InputError(
                    f"circuit {sort_ids(self.set_of(masks[i]))!r} is contained in "
                    f"{sort_ids(self.set_of(masks[j]))!r}"
                )
        else:
            for a in masks:
                for b in masks:
                    if a != b and a & b == a:
                        raise InputError("circuits do not form an antichain")
        if self.size <= ELIMINATION_CHECK_LIMIT and len(masks) > 1:
            arr = _kernels.as_masks(masks)
            i, j, e = _kernels.backend.elimination_violation(arr, self.dependent_table, self.size)
            if i >= 0:
                raise InputError(
                    "circuit elimination fails for "
                    f"{sort_ids(self.set_of(masks[i]))!r}, {sort_ids(self.set_of(masks[j]))!r} "
                    f"at {self.elements[e]!r}"
                )

    def relabel(self, mapping: Mapping) -> Matroid:
        """The same matroid with element ``e`` renamed ``mapping[e]``."""
        if set(mapping) != set(self.ground) or len(set(mapping.values())) != len(mapping):
            raise InputError("relabelling must be a bijection on the ground set")
        return Matroid(mapping.values(), ([mapping[e] for e in c] for c in self.circuits), validate=False)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground == other.ground and self.circuits == other.circuits

    def __hash__(self):
        return hash((self.ground, self.circuits))

    def __repr__(self):
        return f"Matroid({self.size} elements, {len(self._masks)} circuits)"


def uniform_matroid(rank: int, n: int, elements: Iterable | None = None) -> Matroid:
    from itertools import combinations

    el = list(elements) if elements is not None else list(range(n))
    if len(el) != n or not 0 <= rank <= n:
        raise InputError("bad uniform matroid parameters")
    return Matroid(el, combinations(el, rank + 1))


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    if m1.ground & m2.ground:
        raise InputError("direct sum needs disjoint ground sets")
    return Matroid(m1.ground | m2.ground, list(m1.circuits) + list(m2.circuits))


# -- circuit oracles ------------------------------------------------------


def cycle_matroid(g: MultiGraph) -> Matroid:
    """M(G): the circuits are the cycles of ``g``."""
    idx = g.index
    return Matroid._from_masks(idx.elist, (em for em, _ in idx.cycles))


def frame_circuit_masks(b: BiasedGraph) -> set[int]:
    idx = b.graph.index
    cyc = idx.cycles
    flags = b.flags
    out = {em for (em, _), ok in zip(cyc, flags) if ok}
    for i, k, pm, _ in _handcuff_masks(b, contra_only=True):
        out.add(cyc[i][0] | cyc[k][0] | pm)
    for em, (i, j, k) in idx.thetas:
        if not (flags[i] or flags[j] or flags[k]):
            out.add(em)
    return out


def frame_matroid(b: BiasedGraph) -> Matroid:
    """F(Omega): balanced cycles, contra-balanced handcuffs and contra-balanced thetas."""
    require_theta_property(b)
    return Matroid._from_masks(b.graph.index.elist, frame_circuit_masks(b))


def lift_matroid(s: SignedGraph) -> Matroid:
    """L(Omega): balanced cycles and unions of two unbalanced cycles sharing at most one vertex."""
    b = from_signed(s)
    cyc = s.graph.index.cycles
    out = {em for (em, _), ok in zip(cyc, b.flags) if ok}
    unb = [c for c, ok in zip(cyc, b.flags) if not ok]
    for i in range(len(unb)):
        e1, v1 = unb[i]
        for k in range(i + 1, len(unb)):
            e2, v2 = unb[k]
            if popcount(v1 & v2) <= 1:
                out.add(e1 | e2)
    return Matroid._from_masks(s.graph.index.elist, out)


# -- minors, binarity, isomorphism, connectivity ----------------------------------------


def _minimal(masks: Iterable[int]) -> set[int]:
    ordered = sorted(set(masks), key=popcount)
    keep: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in keep):
            keep.append(m)
    return set(keep)


def minor(m: Matroid, delete: Iterable = (), contract: Iterable = ()) -> Matroid:
    """``m / contract \\ delete`` computed on circuits."""
    delete, contract = frozenset(delete), frozenset(contract)
    if delete & contract:
        raise InputError(f"delete and contract overlap on {sort_ids(delete & contract)!r}")
    if not (delete | contract) <= m.ground:
        raise InputError("minor sets must lie in the ground set")
    dm, cm = m.mask_of(delete), m.mask_of(contract)
    kept = [c for c in m.masks if not c & dm]
    reduced = _minimal(c & ~cm for c in kept if c & ~cm)
    rest = [e for e in m.elements if e not in delete and e not in contract]
    # re-index onto the remaining elements
    old = [m._pos[e] for e in rest]
    remap = []
    for c in reduced:
        remap.append(sum(1 << i for i, o in enumerate(old) if (c >> o) & 1))
    return Matroid._from_masks(rest, remap, validate=m.size <= ELIMINATION_CHECK_LIMIT)


def find_u24_minor(m: Matroid, budget: Budget | None = None) -> tuple[frozenset, frozenset] | None:
    """``(delete, contract)`` with ``minor(m, delete, contract)`` isomorphic to U(2,4), or None."""
    budget = resolve(budget)
    if m.size > budget.elements:
        raise BudgetError(f"binarity test limited to {budget.elements} elements, got {m.size}")
    if m.size < 4:
        return None
    t, c = _kernels.backend.find_u24(m.rank_table, m.size)
    if t < 0:
        return None
    t, c = int(t), int(c)
    full = (1 << m.size) - 1
    return m.set_of(full & ~t & ~c), m.set_of(c)


def is_binary(m: Matroid, budget: Budget | None = None) -> bool:
    """No minor isomorphic to U(2,4)."""
    return find_u24_minor(m, budget) is None


def is_connected(m: Matroid) -> bool:
    """Every two elements lie in a common circuit."""
    n = m.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.masks:
        it = bits(c)
        r = find(next(it))
        for i in it:
            parent[find(i)] = r
    return len({find(i) for i in range(n)}) <= 1


def _signatures(m: Matroid) -> tuple[list[tuple], list[list[int]]]:
    by_elem: list[list[int]] = [[] for _ in range(m.size)]
    for c in m.masks:
        for i in bits(c):
            by_elem[i].append(c)
    sig = [(len(cs), tuple(sorted(popcount(c) for c in cs))) for cs in by_elem]
    return sig, by_elem


def _search_order(m: Matroid, sig: list[tuple], by_elem: list[list[int]]) -> list[int]:
    rarity = Counter(sig)
    n = m.size
    placed = 0
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        best, best_key = None, None
        for e in sorted(remaining):
            mask = placed | (1 << e)
            done = sum(1 for c in by_elem[e] if c & mask == c)
            touch = sum(1 for c in by_elem[e] if c & placed)
            key = (-done, -touch, rarity[sig[e]], e)
            if best_key is None or key < best_key:
                best, best_key = e, key
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)
    return order


def is_isomorphic(m1: Matroid, m2: Matroid, budget: Budget | None = None) -> dict | None:
    """A ground-set bijection carrying circuits of ``m1`` onto those of ``m2``, or None.

    The identity is tried first.  Otherwise a backtracking search assigns
    elements in an order that closes circuits early, restricted to images
    with equal circuit-membership signature; both directions of every closed
    circuit are checked at each step.
    """
    budget = resolve(budget)
    if m1.size != m2.size or len(m1.masks) != len(m2.masks):
        return None
    if m1 == m2:
        return {e: e for e in m1.elements}
    if Counter(map(popcount, m1.masks)) != Counter(map(popcount, m2.masks)):
        return None
    if m1.size > budget.elements:
        raise BudgetError(f"isomorphism search limited to {budget.elements} elements, got {m1.size}")
    sig1, by1 = _signatures(m1)
    sig2, by2 = _signatures(m2)
    if Counter(sig1) != Counter(sig2):
        return None
    n = m1.size
    order = _search_order(m1, sig1, by1)
    position = {e: p for p, e in enumerate(order)}
    closing: list[list[list[int]]] = [[] for _ in range(n)]
    for c in m1.masks:
        last = max(bits(c), key=position.__getitem__)
        closing[position[last]].append(list(bits(c)))
    set1, set2 = m1.masks, m2.masks
    candidates = [[t for t in range(n) if sig2[t] == sig1[e]] for e in order]
    image = [-1] * n
    inverse = [-1] * n
    nodes = 0

    def extend(p: int, used: int) -> bool:
        nonlocal nodes
        if p == n:
            return True
        e = order[p]
        for t in candidates[p]:
            if (used >> t) & 1:
                continue
            nodes += 1
            if nodes > budget.nodes:
                raise BudgetError(f"isomorphism search exceeded {budget.nodes} nodes")
            image[e], inverse[t] = t, e
            ok = True
            for c in closing[p]:
                im = 0
                for x in c:
                    im |= 1 << image[x]
                if im not in set2:
                    ok = False
                    break
            if ok:
                now = used | (1 << t)
                for c2 in by2[t]:
                    if c2 & now == c2:
                        pre = 0
                        for y in bits(c2):
                            pre |= 1 << inverse[y]
                        if pre not in set1:
                            ok = False
                            break
            if ok and extend(p + 1, used | (1 << t)):
                return True
            image[e], inverse[t] = -1, -1
        return False

    if not extend(0, 0):
        return None
    return {m1.elements[i]: m2.elements[image[i]] for i in range(n)}


def circuits_under(m: Matroid, mapping: Mapping) -> frozenset:
    """Circuit family of ``m`` after renaming elements through ``mapping``."""
    return frozenset(frozenset(mapping[e] for e in c) for c in m.circuits)
