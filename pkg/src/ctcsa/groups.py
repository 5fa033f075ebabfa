"""Finite groups as indexed Cayley tables, plus the subgroup machinery.

Elements of a group of order n are the indices 0..n-1 with the identity
always at index 0.  The full multiplication table is materialized as an
n x n int32 array, which caps practical order at a few thousand (the
default cap of 4096 keeps a table at 64 MB).  Everything downstream
(centralizers, normal subgroups, series, property deciders) is table
arithmetic, mostly vectorized.
"""

from __future__ import annotations

import functools
import os
from collections import deque
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    DivisibilityViolated,
    NonClosedArithmetic,
    NonPrime,
    OrderCapExceeded,
)
from .fields import _is_prime

__all__ = [
    "FiniteGroup",
    "SubgroupSet",
    "default_order_cap",
    "close_generators",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "alternating_group",
    "frobenius_pq",
    "direct_product",
    "semidirect_product",
    "centralizer",
    "center",
    "subgroup_generated",
    "normal_closure",
    "conjugacy_classes",
    "normal_subgroups",
    "minimal_normal_subgroups",
    "monolith",
    "is_simple",
    "derived_series",
    "is_solvable",
    "lower_central_series",
    "is_nilpotent",
    "fitting_subgroup",
    "maximal_abelian_subgroups",
    "is_malnormal",
    "element_orders",
    "find_isomorphism",
    "is_isomorphic",
    "DEFAULT_ORDER_CAP",
    "NORMAL_ENUM_CAP",
    "ISO_CAP",
]

DEFAULT_ORDER_CAP = 4096
NORMAL_ENUM_CAP = 2000
ISO_CAP = 600

_ASSOC_EXHAUSTIVE_MAX = 128
_ASSOC_SAMPLES = 100_000


def default_order_cap() -> int:
    """Configured order cap; the CTCSA_ORDER_CAP env var overrides the default."""
    raw = os.environ.get("CTCSA_ORDER_CAP")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise OrderCapExceeded(f"CTCSA_ORDER_CAP is not an integer: {raw!r}")
        if cap < 1:
            raise OrderCapExceeded(f"CTCSA_ORDER_CAP must be positive: {cap}")
        return cap
    return DEFAULT_ORDER_CAP


class FiniteGroup:
    """A finite group given by its full multiplication table.

    table[i, j] is the index of element i times element j; index 0 is the
    identity.  Instances are immutable once constructed and validated.
    """

    def __init__(
        self,
        table: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        provenance: str = "table",
        *,
        built_by_closure: bool = False,
    ):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise NonClosedArithmetic(f"table must be square, got {table.shape}")
        n = table.shape[0]
        if n == 0:
            raise NonClosedArithmetic("a group has at least the identity")
        self.n = n
        self.table = table
        self.provenance = provenance
        if labels is None:
            labels = tuple(f"g{i}" for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise NonClosedArithmetic(
                    f"{len(labels)} labels for {n} elements"
                )
        self.labels = labels
        self._validate(built_by_closure)
        self.inv = np.ascontiguousarray(
            (table == 0).argmax(axis=1).astype(np.int32)
        )
        if not (table[self.inv, np.arange(n)] == 0).all():
            raise NonClosedArithmetic("left and right inverses disagree")
        self.table.setflags(write=False)
        self.inv.setflags(write=False)

    def _validate(self, built_by_closure: bool) -> None:
        t, n = self.table, self.n
        if t.min() < 0 or t.max() >= n:
            raise NonClosedArithmetic("table entries outside 0..n-1")
        idx = np.arange(n, dtype=np.int32)
        if not (t[0] == idx).all() or not (t[:, 0] == idx).all():
            raise NonClosedArithmetic("index 0 is not a two-sided identity")
        if not (np.sort(t, axis=1) == idx).all():
            raise NonClosedArithmetic("a row is not a permutation")
        if not (np.sort(t, axis=0) == idx[:, None]).all():
            raise NonClosedArithmetic("a column is not a permutation")
        if built_by_closure:
            return  # associative by construction from associative arithmetic
        if n <= _ASSOC_EXHAUSTIVE_MAX:
            if not (t[t] == t[:, t]).all():
                raise NonClosedArithmetic("table is not associative")
        else:
            rng = np.random.default_rng(12345)
            a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
            if not (t[t[a, b], c] == t[a, t[b, c]]).all():
                raise NonClosedArithmetic("table failed sampled associativity")

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inv[g]])

    def commutator(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y."""
        t = self.table
        return int(t[t[t[self.inv[x], self.inv[y]], x], y])

    def order_of(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = int(self.table[cur, i])
            k += 1
        return k

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @functools.cached_property
    def orders(self) -> np.ndarray:
        """Element orders, as an int32 array over indices."""
        n = self.n
        out = np.zeros(n, dtype=np.int32)
        out[0] = 1
        power = np.arange(n, dtype=np.int32)
        k = 1
        while (out == 0).any():
            k += 1
            power = self.table[power, np.arange(n)]
            newly = (power == 0) & (out == 0)
            out[newly] = k
        out.setflags(write=False)
        return out

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.n}, provenance={self.provenance!r})"


class SubgroupSet:
    """A subgroup of a parent group, stored as the set of member indices."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        self.members = frozenset(int(m) for m in members)
        if 0 not in self.members:
            raise NonClosedArithmetic("subgroup must contain the identity")
        idx = np.fromiter(sorted(self.members), dtype=np.int32)
        self.indices = idx
        sub = parent.table[np.ix_(idx, idx)]
        if not np.isin(sub, idx).all():
            raise NonClosedArithmetic("set is not closed under multiplication")
        if not np.isin(parent.inv[idx], idx).all():
            raise NonClosedArithmetic("set is not closed under inversion")
        if parent.n % len(self.members) != 0:
            raise NonClosedArithmetic("subgroup order does not divide group order")
        self.indices.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def contains(self, i: int) -> bool:
        return int(i) in self.members

    @functools.cached_property
    def is_abelian(self) -> bool:
        sub = self.parent.table[np.ix_(self.indices, self.indices)]
        return bool((sub == sub.T).all())

    def is_normal(self) -> bool:
        """Normal in the full parent group."""
        p, idx = self.parent, self.indices
        for g in range(p.n):
            conj = p.table[p.table[g, idx], p.inv[g]]
            if not np.isin(conj, idx).all():
                return False
        return True

    def is_normal_in(self, bigger: "SubgroupSet") -> bool:
        p, idx = self.parent, self.indices
        if not self.members <= bigger.members:
            return False
        for g in bigger.indices:
            conj = p.table[p.table[g, idx], p.inv[g]]
            if not np.isin(conj, idx).all():
                return False
        return True

    def as_group(self) -> FiniteGroup:
        """Reindexed copy of this subgroup as a standalone group."""
        p, idx = self.parent, self.indices
        back = np.full(p.n, -1, dtype=np.int32)
        back[idx] = np.arange(len(idx), dtype=np.int32)
        table = back[p.table[np.ix_(idx, idx)]]
        labels = [p.labels[i] for i in idx]
        return FiniteGroup(
            table,
            labels,
            provenance=f"{p.provenance}::sub{len(idx)}",
            built_by_closure=True,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupSet)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SubgroupSet(size={self.size} of {self.parent.provenance})"


# ---------------------------------------------------------------------------
# generic closure engine


def close_generators(
    generators: Sequence[Hashable],
    mul: Callable,
    inverse: Callable,
    *,
    label: Callable = str,
    order_cap: Optional[int] = None,
    provenance: str = "closure",
) -> FiniteGroup:
    """BFS the group generated by abstract values under mul/inverse.

    Values must be hashable and canonical (equal values hash equal).  The
    Cayley table is assembled from one row per generator plus index
    composition, so only O(n * len(generators)) abstract products happen.
    """
    cap = order_cap if order_cap is not None else default_order_cap()
    if not generators:
        raise NonClosedArithmetic("need at least one generator")
    g0 = generators[0]
    e = mul(g0, inverse(g0))
    for g in generators:
        if mul(e, g) != g or mul(g, inverse(g)) != e:
            raise NonClosedArithmetic("generator arithmetic has no identity")

    gens = []
    for g in generators:  # dedupe, keep order, drop identity
        if g != e and g not in gens:
            gens.append(g)

    elements = [e]
    index = {e: 0}
    parent = [0]
    slot = [0]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s, g in enumerate(gens):
            y = mul(elements[i], g)
            if y not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(
                        f"closure for {provenance!r} exceeded cap {cap}", cap
                    )
                index[y] = len(elements)
                elements.append(y)
                parent.append(i)
                slot.append(s)
                queue.append(len(elements) - 1)

    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    table[0] = np.arange(n, dtype=np.int32)
    gen_rows = {}
    for s, g in enumerate(gens):
        ig = index[g]
        row = np.fromiter(
            (index[mul(g, x)] for x in elements), dtype=np.int32, count=n
        )
        table[ig] = row
        gen_rows[s] = ig
    for i in range(1, n):
        ig = gen_rows[slot[i]]
        if i == ig:
            continue  # generator rows were computed directly
        table[i] = table[parent[i]][table[ig]]

    group = FiniteGroup(
        table,
        [label(x) for x in elements],
        provenance=provenance,
        built_by_closure=True,
    )
    group.closure_elements = tuple(elements)  # index-aligned abstract values
    return group


# ---------------------------------------------------------------------------
# permutation helpers and the standard families


def _perm_mul(a: tuple, b: tuple) -> tuple:
    """(a * b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def _perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def _perm_label(a: tuple) -> str:
    seen = [False] * len(a)
    parts = []
    for start in range(len(a)):
        if seen[start] or a[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = a[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        parts.append("(" + " ".join(str(k) for k in cyc) + ")")
    return "".join(parts) if parts else "e"


def cyclic_group(n: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    if n < 1:
        raise NonClosedArithmetic(f"cyclic order must be >= 1, got {n}")
    cap = order_cap if order_cap is not None else default_order_cap()
    if n > cap:
        raise OrderCapExceeded(f"cyclic:{n} exceeds cap {cap}", cap)
    rot = tuple((i + 1) % n for i in range(n)) if n > 1 else (0,)
    return close_generators(
        [rot], _perm_mul, _perm_inv, label=_perm_label,
        order_cap=cap, provenance=f"cyclic:{n}",
    )


def dihedral_group(n: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (n >= 3)."""
    if n < 3:
        raise NonClosedArithmetic(f"dihedral index must be >= 3, got {n}")
    cap = order_cap if order_cap is not None else default_order_cap()
    if 2 * n > cap:
        raise OrderCapExceeded(f"dihedral:{n} exceeds cap {cap}", cap)
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((n - i) % n for i in range(n))
    return close_generators(
        [rot, flip], _perm_mul, _perm_inv, label=_perm_label,
        order_cap=cap, provenance=f"dihedral:{n}",
    )


def symmetric_group(n: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise OrderCapExceeded(f"symmetric index must be in 1..7, got {n}")
    cap = order_cap if order_cap is not None else default_order_cap()
    if n == 1:
        return close_generators(
            [(0,)], _perm_mul, _perm_inv, label=_perm_label,
            order_cap=cap, provenance="symmetric:1",
        )
    swap = tuple([1, 0] + list(range(2, n)))
    cyc = tuple((i + 1) % n for i in range(n))
    return close_generators(
        [swap, cyc], _perm_mul, _perm_inv, label=_perm_label,
        order_cap=cap, provenance=f"symmetric:{n}",
    )


def alternating_group(n: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    if not 3 <= n <= 7:
        raise OrderCapExceeded(f"alternating index must be in 3..7, got {n}")
    cap = order_cap if order_cap is not None else default_order_cap()
    gens = []
    for i in range(n - 2):  # consecutive 3-cycles generate A_n
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(tuple(p))
    return close_generators(
        gens, _perm_mul, _perm_inv, label=_perm_label,
        order_cap=cap, provenance=f"alternating:{n}",
    )


def frobenius_pq(p: int, q: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    """The nonabelian group of order p*q with p | q-1 (normal C_q, acting C_p)."""
    if not _is_prime(p):
        raise NonPrime(f"p = {p} is not prime")
    if not _is_prime(q):
        raise NonPrime(f"q = {q} is not prime")
    if (q - 1) % p != 0:
        raise DivisibilityViolated(f"p = {p} does not divide q - 1 = {q - 1}")
    cap = order_cap if order_cap is not None else default_order_cap()
    if p * q > cap:
        raise OrderCapExceeded(f"frobenius:{p},{q} exceeds cap {cap}", cap)
    r = next(r for r in range(2, q) if pow(r, p, q) == 1)

    # elements are pairs (a, b) standing for x^a t^b with t x t^-1 = x^r
    def mul(u, v):
        a1, b1 = u
        a2, b2 = v
        return ((a1 + a2 * pow(r, b1, q)) % q, (b1 + b2) % p)

    def inverse(u):
        a, b = u
        return ((-a * pow(r, (p - b) % p, q)) % q, (p - b) % p)

    def label(u):
        a, b = u
        xs = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
        ts = "" if b == 0 else ("t" if b == 1 else f"t^{b}")
        return (xs + ts) or "e"

    return close_generators(
        [(1, 0), (0, 1)], mul, inverse, label=label,
        order_cap=cap, provenance=f"frobenius:{p},{q}",
    )


def direct_product(
    g: FiniteGroup, h: FiniteGroup, *, order_cap: Optional[int] = None
) -> FiniteGroup:
    """Direct product; element (a, b) is index a * |H| + b."""
    cap = order_cap if order_cap is not None else default_order_cap()
    n = g.n * h.n
    if n > cap:
        raise OrderCapExceeded(f"direct product of {g.n} x {h.n} exceeds cap {cap}", cap)
    ga = np.repeat(np.arange(g.n, dtype=np.int32), h.n)
    hb = np.tile(np.arange(h.n, dtype=np.int32), g.n)
    table = g.table[np.ix_(ga, ga)] * h.n + h.table[np.ix_(hb, hb)]
    labels = [f"({g.labels[a]},{h.labels[b]})" for a in range(g.n) for b in range(h.n)]
    return FiniteGroup(
        table,
        labels,
        provenance=f"direct({g.provenance},{h.provenance})",
        built_by_closure=True,
    )


def semidirect_product(
    a: FiniteGroup,
    h: FiniteGroup,
    action: Sequence[np.ndarray],
    *,
    action_name: str = "action",
    order_cap: Optional[int] = None,
) -> FiniteGroup:
    """Split extension A x| H for an explicit action H -> Aut(A).

    action[k] must be the permutation of A-indices giving the automorphism
    for the H-element of index k; the whole map is verified eagerly.
    """
    cap = order_cap if order_cap is not None else default_order_cap()
    n = a.n * h.n
    if n > cap:
        raise OrderCapExceeded(f"semidirect product order {n} exceeds cap {cap}", cap)
    if len(action) != h.n:
        raise ActionNotHomomorphism(f"need {h.n} automorphisms, got {len(action)}")
    phis = [np.asarray(ph, dtype=np.int32) for ph in action]
    ar = np.arange(a.n, dtype=np.int32)
    for k, phi in enumerate(phis):
        if phi.shape != (a.n,) or not (np.sort(phi) == ar).all():
            raise ActionNotAutomorphism(f"action[{k}] is not a permutation of A")
        if phi[0] != 0 or not (phi[a.table] == a.table[np.ix_(phi, phi)]).all():
            raise ActionNotAutomorphism(f"action[{k}] does not preserve the table")
    for k1 in range(h.n):
        for k2 in range(h.n):
            if not (phis[h.table[k1, k2]] == phis[k1][phis[k2]]).all():
                raise ActionNotHomomorphism(
                    f"action is not a homomorphism at ({k1},{k2})"
                )
    table = np.empty((n, n), dtype=np.int32)
    hb = np.tile(np.arange(h.n, dtype=np.int32), a.n)
    ga = np.repeat(ar, h.n)
    for h1 in range(h.n):
        rows = np.flatnonzero(hb == h1)  # all (a1, h1)
        twisted = phis[h1][ga]  # phi_h1(a2) for every column element
        prod_a = a.table[ga[rows][:, None], twisted[None, :]]
        prod_h = h.table[h1, hb][None, :]
        table[rows] = prod_a * h.n + prod_h
    labels = [f"({a.labels[x]},{h.labels[y]})" for x in range(a.n) for y in range(h.n)]
    return FiniteGroup(
        table,
        labels,
        provenance=f"semidirect({a.provenance},{h.provenance},{action_name})",
        built_by_closure=True,
    )


# ---------------------------------------------------------------------------
# subgroup machinery


def centralizer(g: FiniteGroup, x: int) -> SubgroupSet:
    members = np.flatnonzero(g.table[:, x] == g.table[x, :])
    return SubgroupSet(g, members)


def center(g: FiniteGroup) -> SubgroupSet:
    members = np.flatnonzero((g.table == g.table.T).all(axis=1))
    return SubgroupSet(g, members)


def _saturate(g: FiniteGroup, seed: np.ndarray) -> np.ndarray:
    """Smallest multiplicatively closed superset of seed (plus identity)."""
    cur = np.unique(np.concatenate([seed.astype(np.int32), [0]]))
    while True:
        prods = np.unique(g.table[np.ix_(cur, cur)])
        if prods.size == cur.size and (prods == cur).all():
            return cur
        cur = np.unique(np.concatenate([cur, prods]))


def subgroup_generated(g: FiniteGroup, seeds: Iterable[int]) -> SubgroupSet:
    seed = np.fromiter((int(s) for s in seeds), dtype=np.int32)
    return SubgroupSet(g, _saturate(g, seed))


def normal_closure(g: FiniteGroup, seeds: Iterable[int]) -> SubgroupSet:
    """Smallest normal subgroup of g containing the seeds."""
    seed = np.fromiter((int(s) for s in seeds), dtype=np.int32)
    conjs = [g.table[g.table[:, s], g.inv] for s in seed]
    all_conjs = np.unique(np.concatenate(conjs)) if conjs else np.array([0])
    return SubgroupSet(g, _saturate(g, all_conjs))


def conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    """Classes ordered by their smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        orbit = np.unique(g.table[g.table[:, r], g.inv])
        seen[orbit] = True
        out.append(orbit.astype(np.int32))
    return out


def normal_subgroups(g: FiniteGroup, *, cap: int = NORMAL_ENUM_CAP) -> list[SubgroupSet]:
    """All normal subgroups: normal closures of conjugacy classes, closed
    under pairwise join.  Deterministic order (size, then member tuple)."""
    if g.n > cap:
        raise OrderCapExceeded(
            f"normal subgroup enumeration capped at order {cap}, group has {g.n}", cap
        )
    basis = set()
    for cls in conjugacy_classes(g):
        basis.add(frozenset(int(i) for i in _saturate(g, cls)))
    known = {frozenset([0])} | basis
    work = list(known)
    while work:
        cur = work.pop()
        for other in list(known):
            if cur <= other or other <= cur:
                continue
            seed = np.fromiter(cur | other, dtype=np.int32)
            joined = frozenset(int(i) for i in _saturate(g, seed))
            if joined not in known:
                known.add(joined)
                work.append(joined)
    ordered = sorted(known, key=lambda s: (len(s), tuple(sorted(s))))
    return [SubgroupSet(g, s) for s in ordered]


def minimal_normal_subgroups(g: FiniteGroup, *, cap: int = NORMAL_ENUM_CAP) -> list[SubgroupSet]:
    normals = [s for s in normal_subgroups(g, cap=cap) if s.size > 1]
    out = []
    for s in normals:
        if not any(o.members < s.members for o in normals):
            out.append(s)
    return out


def monolith(g: FiniteGroup, *, cap: int = NORMAL_ENUM_CAP) -> Optional[SubgroupSet]:
    """The unique minimal normal subgroup, when there is exactly one."""
    mins = minimal_normal_subgroups(g, cap=cap)
    return mins[0] if len(mins) == 1 else None


def is_simple(g: FiniteGroup, *, cap: int = NORMAL_ENUM_CAP) -> bool:
    return g.n > 1 and len(normal_subgroups(g, cap=cap)) == 2


def _commutators(g: FiniteGroup, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Unique values of [x, y] = x^-1 y^-1 x y for x in left, y in right."""
    t = g.table
    a = t[np.ix_(g.inv[left], g.inv[right])]
    b = t[a, left[:, None]]
    c = t[b, right[None, :]]
    return np.unique(c)


def derived_series(g: FiniteGroup) -> list[SubgroupSet]:
    """G >= G' >= G'' >= ... down to the first repetition."""
    whole = SubgroupSet(g, range(g.n))
    series = [whole]
    cur = whole
    while True:
        comms = _commutators(g, cur.indices, cur.indices)
        nxt = SubgroupSet(g, _saturate(g, comms))
        if nxt.members == cur.members:
            return series
        series.append(nxt)
        cur = nxt


def is_solvable(g: FiniteGroup) -> bool:
    return derived_series(g)[-1].size == 1


def lower_central_series(g: FiniteGroup) -> list[SubgroupSet]:
    """G >= [G,G] >= [G,[G,G]] >= ... down to the first repetition."""
    whole = SubgroupSet(g, range(g.n))
    everything = np.arange(g.n, dtype=np.int32)
    series = [whole]
    cur = whole
    while True:
        comms = _commutators(g, everything, cur.indices)
        nxt = SubgroupSet(g, _saturate(g, comms))
        if nxt.members == cur.members:
            return series
        series.append(nxt)
        cur = nxt


def is_nilpotent(g: FiniteGroup) -> bool:
    return lower_central_series(g)[-1].size == 1


def fitting_subgroup(g: FiniteGroup, *, cap: int = NORMAL_ENUM_CAP) -> SubgroupSet:
    """Join of all nilpotent normal subgroups."""
    nilpotents = [
        s for s in normal_subgroups(g, cap=cap) if is_nilpotent(s.as_group())
    ]
    seed = np.unique(np.concatenate([s.indices for s in nilpotents]))
    return SubgroupSet(g, _saturate(g, seed))


def maximal_abelian_subgroups(g: FiniteGroup) -> list[SubgroupSet]:
    """Every maximal abelian subgroup.

    Recursive centralizer descent: a maximal abelian subgroup containing a
    noncentral x lives inside the (strictly smaller) centralizer of x, and
    an abelian centralizer is itself the unique maximal abelian subgroup
    through x.  Results are memoized per subgroup and deduplicated.
    """
    t = g.table
    memo: dict[tuple, frozenset] = {}

    def descend(idx: np.ndarray) -> set[frozenset]:
        key = tuple(idx.tolist())
        if key in memo:
            return memo[key]
        sub = t[np.ix_(idx, idx)]
        if (sub == sub.T).all():
            result = {frozenset(int(i) for i in idx)}
            memo[key] = result
            return result
        cands: set[frozenset] = set()
        for pos, x in enumerate(idx):
            if x == 0:
                continue
            inside = idx[sub[pos] == sub[:, pos]]
            if inside.size == idx.size:
                continue  # x is central here; carried by every candidate
            cands |= descend(inside)
        result = {
            c for c in cands if not any(c < other for other in cands)
        }
        memo[key] = result
        return result

    found = descend(np.arange(g.n, dtype=np.int32))
    ordered = sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
    return [SubgroupSet(g, s) for s in ordered]


def is_malnormal(g: FiniteGroup, sub: SubgroupSet) -> tuple[bool, Optional[int]]:
    """Whether x H x^-1 meets H trivially for every x outside H.

    Returns (verdict, first violating x in index order or None).
    """
    idx = sub.indices
    nontrivial = idx[idx != 0]
    if nontrivial.size == 0:
        return True, None
    for x in range(g.n):
        if sub.contains(x):
            continue
        conj = g.table[g.table[x, nontrivial], g.inv[x]]
        if np.isin(conj, idx).any():
            return False, x
    return True, None


def element_orders(g: FiniteGroup) -> np.ndarray:
    return g.orders


# ---------------------------------------------------------------------------
# isomorphism testing


def _greedy_generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    have = frozenset([0])
    while len(have) < g.n:
        nxt = next(i for i in range(g.n) if i not in have)
        gens.append(nxt)
        have = subgroup_generated(g, gens).members
    return gens


def _bfs_decomposition(g: FiniteGroup, gens: list[int]):
    """Levels of a BFS over right multiplication, for rebuilding images."""
    n = g.n
    parent = np.full(n, -1, dtype=np.int32)
    slot = np.full(n, -1, dtype=np.int32)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    levels = []
    frontier = np.array([0], dtype=np.int32)
    while frontier.size:
        nxt_members = []
        for s, gen in enumerate(gens):
            prods = g.table[frontier, gen]
            fresh = prods[~seen[prods]]
            fresh = np.unique(fresh)
            parent_rows = []
            for f in fresh:
                src = frontier[g.table[frontier, gen] == f][0]
                parent[f] = src
                slot[f] = s
                seen[f] = True
                nxt_members.append(f)
        if not nxt_members:
            break
        frontier = np.unique(np.array(nxt_members, dtype=np.int32))
        levels.append(frontier)
    return parent, slot, levels


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Optional[np.ndarray]:
    """An index map img with img[g.table] == h.table[img, img], or None.

    Backtracking over generator images, pruned by element orders and by
    orders of generator pair products.  Capped at order 600.
    """
    if g.n != h.n:
        return None
    if g.n > ISO_CAP:
        raise OrderCapExceeded(f"isomorphism search capped at {ISO_CAP}", ISO_CAP)
    og, oh = g.orders, h.orders
    if sorted(og.tolist()) != sorted(oh.tolist()):
        return None
    if g.is_abelian != h.is_abelian:
        return None
    if sorted(len(c) for c in conjugacy_classes(g)) != sorted(
        len(c) for c in conjugacy_classes(h)
    ):
        return None

    gens = _greedy_generators(g)
    k = len(gens)
    parent, slot, levels = _bfs_decomposition(g, gens)
    pair_order = {
        (i, j): int(og[g.table[gens[i], gens[j]]])
        for i in range(k)
        for j in range(k)
    }
    candidates = [np.flatnonzero(oh == og[gen]) for gen in gens]

    assign = np.zeros(k, dtype=np.int32)
    arange = np.arange(g.n)

    def full_check() -> Optional[np.ndarray]:
        img = np.zeros(g.n, dtype=np.int32)
        img[gens] = assign
        for level in levels:
            img[level] = h.table[img[parent[level]], assign[slot[level]]]
        if np.bincount(img, minlength=g.n).max() != 1:
            return None
        if not (img[g.table] == h.table[img[:, None], img[None, :]]).all():
            return None
        return img

    def backtrack(depth: int) -> Optional[np.ndarray]:
        if depth == k:
            return full_check()
        for cand in candidates[depth]:
            assign[depth] = cand
            ok = True
            for j in range(depth + 1):
                if (
                    int(oh[h.table[assign[j], cand]]) != pair_order[(j, depth)]
                    or int(oh[h.table[cand, assign[j]]]) != pair_order[(depth, j)]
                ):
                    ok = False
                    break
            if ok:
                result = backtrack(depth + 1)
                if result is not None:
                    return result
        return None

    return backtrack(0)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None
