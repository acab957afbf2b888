"""Brute-force oracle for small finite groups given by Cayley tables.

Elements are the indices ``0..n-1`` with the identity pinned at 0 and
``table[a][b]`` the product ``ab``.  Retracts are realized as images of
idempotent endomorphisms: if ``g: G -> H`` and ``f: H -> G`` satisfy
``g f = id_H`` then ``f g`` is idempotent with image ``f(H) ~ H``, and
conversely an idempotent ``h`` retracts ``G`` onto ``h(G)``.

Two independent routes produce idempotents:

* :func:`endomorphisms` backtracks over generator images and is filtered
  by ``h(h(x)) = h(x)``; exhaustive but exponential in the generator count.
* :func:`idempotents` enumerates pairs ``(H, K)`` with ``K`` normal,
  ``H n K = 1`` and ``|H||K| = |G|`` and builds the projection onto ``H``
  along ``K``.  An idempotent is determined by its image and kernel, so
  this yields each idempotent exactly once.

Capacity and depth are computed from the second route; the first is kept
as a cross-check.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from . import poset
from .abelian import AbelianGroup, canonicalize, factorize
from .errors import (
    InputError,
    NoIdentityAtZero,
    NotAssociative,
    NotClosed,
    NotLatinSquare,
    OrderCapExceeded,
)

DEFAULT_MAX_ORDER = 64


def max_order_cap() -> int:
    """Order cap, overridable through ``DOMLAB_MAX_ORDER``."""
    raw = os.environ.get("DOMLAB_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"DOMLAB_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("DOMLAB_MAX_ORDER must be positive")
    return value


class CayleyTable:
    """A validated finite group.  Build through :func:`validate`."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rows)
        self.order = len(self.rows)
        self.array = np.array(self.rows, dtype=np.int64).reshape(self.order, self.order)
        self.array.flags.writeable = False

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CayleyTable(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(r.index(0) for r in self.rows)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            x, k = a, 1
            while x != 0:
                x = self.rows[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    @cached_property
    def profile(self) -> "IsoProfile":
        arr = self.array
        # centralizer size of a = number of b with ab = ba
        cent = (arr == arr.T).sum(axis=1)
        orders = self.element_orders
        return IsoProfile(
            order=self.order,
            abelian=self.is_abelian,
            element_orders=tuple(sorted(orders)),
            order_centralizer=tuple(sorted(zip(orders, (int(c) for c in cent)))),
        )

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        return frozenset(_closure(self.rows, gens))

    def induced(self, elements: Sequence[int]) -> "CayleyTable":
        """Table of a subgroup, re-indexed by sorted original indices."""
        elems = sorted(elements)
        pos = {e: i for i, e in enumerate(elems)}
        try:
            rows = [[pos[self.rows[a][b]] for b in elems] for a in elems]
        except KeyError:
            raise ValueError("elements do not form a subgroup") from None
        return CayleyTable(rows)


@dataclass(frozen=True)
class IsoProfile:
    """Isomorphism invariants; equal profiles never prove isomorphism."""

    order: int
    abelian: bool
    element_orders: tuple[int, ...]
    order_centralizer: tuple[tuple[int, int], ...]

    def sort_key(self):
        return (self.order, not self.abelian, self.element_orders, self.order_centralizer)


@dataclass(frozen=True)
class Endomorphism:
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """``self`` after ``other``."""
        return Endomorphism(tuple(self.map[y] for y in other.map))

    @property
    def is_idempotent(self) -> bool:
        return all(self.map[y] == y for y in self.map)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.map) if y == 0)


@dataclass(frozen=True)
class RetractClass:
    representative: CayleyTable
    witness: Endomorphism
    subgroup: frozenset[int] = field(compare=False)

    @property
    def order(self) -> int:
        return self.representative.order


def _closure(rows, gens) -> set[int]:
    seen = {0}
    frontier = [0]
    gens = [g for g in gens if g != 0]
    while frontier:
        nxt = []
        for x in frontier:
            r = rows[x]
            for g in gens:
                y = r[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def check_order_cap(G: CayleyTable, max_order: Optional[int]):
    cap = max_order_cap() if max_order is None else max_order
    if G.order > cap:
        raise OrderCapExceeded(f"group order {G.order} exceeds the cap {cap}")


# -- validation and I/O -----------------------------------------------------


def validate(raw: Sequence[Sequence[int]]) -> CayleyTable:
    n = len(raw)
    if n == 0:
        raise NotClosed("empty table")
    for i, row in enumerate(raw):
        if len(row) != n:
            raise NotClosed(f"row {i} has {len(row)} entries, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                raise NotClosed(f"entry ({i}, {j}) = {x!r} is outside [0, {n})")
    for j in range(n):
        if raw[0][j] != j:
            raise NoIdentityAtZero(f"row 0 differs from the identity at column {j}")
        if raw[j][0] != j:
            raise NoIdentityAtZero(f"column 0 differs from the identity at row {j}")
    full = set(range(n))
    for i, row in enumerate(raw):
        if set(row) != full:
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {raw[i][j] for i in range(n)} != full:
            raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}")
    G = CayleyTable(raw)
    T = G.array
    # (ij)k == i(jk) for every triple, as an n x n x n comparison
    left = T[T[:, :, None], np.arange(n)[None, None, :]]
    right = T[np.arange(n)[:, None, None], T[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise NotAssociative(f"(a{i} a{j}) a{k} != a{i} (a{j} a{k})")
    return G


def parse_table(text: str) -> CayleyTable:
    """Read the text format: order on the first line, then ``n`` rows."""
    lines = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            lines.append(s)
    if not lines:
        raise InputError("empty Cayley table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise InputError(f"malformed Cayley table: {exc}") from None
    if n < 1:
        raise InputError(f"group order must be positive, got {n}")
    if len(rows) != n:
        raise InputError(f"expected {n} rows, found {len(rows)}")
    return validate(rows)


def load_table(path) -> CayleyTable:
    return parse_table(Path(path).read_text())


def format_table(G: CayleyTable, comment: str = "") -> str:
    out = [f"# {line}" for line in comment.splitlines()]
    out.append(str(G.order))
    out.extend(" ".join(str(x) for x in row) for row in G.rows)
    return "\n".join(out) + "\n"


# -- constructors -------------------------------------------------------------


def cyclic(n: int) -> CayleyTable:
    return CayleyTable([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(G: CayleyTable, H: CayleyTable) -> CayleyTable:
    m = H.order
    rows = []
    for a in range(G.order * m):
        ga, ha = divmod(a, m)
        rows.append([G.rows[ga][b // m] * m + H.rows[ha][b % m] for b in range(G.order * m)])
    return CayleyTable(rows)


def abelian_table(group: AbelianGroup) -> CayleyTable:
    if not group.is_finite:
        raise InputError(f"{group} is infinite")
    T = cyclic(1)
    for m in group.moduli():
        T = direct_product(T, cyclic(m))
    return T


def from_permutations(perms: Sequence[Sequence[int]]) -> CayleyTable:
    """Table of the permutation group generated by ``perms``.

    Elements are ordered with the identity first, then lexicographically.
    """
    degree = len(perms[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in perms:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    ordered = sorted(elems)
    pos = {p: i for i, p in enumerate(ordered)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(degree))  # noqa: E731
    return CayleyTable([[pos[compose(p, q)] for q in ordered] for p in ordered])


def symmetric(k: int) -> CayleyTable:
    perms = list(itertools.permutations(range(k)))
    return from_permutations(perms[1:] or perms)


def dihedral(k: int) -> CayleyTable:
    """Symmetries of the regular ``k``-gon (order ``2k``)."""
    rot = [(i + 1) % k for i in range(k)]
    ref = [(-i) % k for i in range(k)]
    return from_permutations([rot, ref])


def quaternion() -> CayleyTable:
    # basis 1, i, j, k; unit products as (sign, index)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    pos = {e: i for i, e in enumerate(elems)}
    rows = []
    for sa, a in elems:
        row = []
        for sb, b in elems:
            s, c = unit[(a, b)]
            row.append(pos[(sa * sb * s, c)])
        rows.append(row)
    return CayleyTable(rows)


# -- generators and homomorphisms -------------------------------------------


def minimal_generators(G: CayleyTable) -> list[int]:
    """Greedy generating set: add the element enlarging the span the most."""
    gens: list[int] = []
    span = frozenset({0})
    while len(span) < G.order:
        best, best_span = None, span
        for x in range(G.order):
            if x in span:
                continue
            s = G.generated(gens + [x])
            if len(s) > len(best_span):
                best, best_span = x, s
        gens.append(best)
        span = best_span
    return gens


def _extend(G: CayleyTable, H: CayleyTable, gens, imgs, injective=False) -> Optional[dict]:
    """Extend ``gens -> imgs`` along the Cayley graph of ``<gens>``.

    Returns the partial map on ``<gens>`` or None if two words for the
    same element disagree (or, with ``injective``, collide in ``H``).
    """
    g_rows, h_rows = G.rows, H.rows
    mapping = {0: 0}
    used = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = mapping[x]
            for g, y in zip(gens, imgs):
                z = g_rows[x][g]
                fz = h_rows[fx][y]
                prev = mapping.get(z)
                if prev is None:
                    if injective and fz in used:
                        return None
                    mapping[z] = fz
                    used.add(fz)
                    nxt.append(z)
                elif prev != fz:
                    return None
        frontier = nxt
    return mapping


def is_homomorphism(G: CayleyTable, H: CayleyTable, m: Sequence[int]) -> bool:
    m = np.asarray(m, dtype=np.int64)
    return bool(m[0] == 0 and (m[G.array] == H.array[m[:, None], m[None, :]]).all())


def homomorphisms(G: CayleyTable, H: CayleyTable, injective=False) -> Iterator[tuple[int, ...]]:
    """All homomorphisms ``G -> H`` as image tuples, lexicographic in generator images."""
    gens = minimal_generators(G)
    g_ord = G.element_orders
    h_ord = H.element_orders
    choices = []
    for g in gens:
        if injective:
            choices.append([y for y in range(H.order) if h_ord[y] == g_ord[g]])
        else:
            choices.append([y for y in range(H.order) if g_ord[g] % h_ord[y] == 0])

    def rec(i, imgs):
        if i == len(gens):
            mapping = _extend(G, H, gens, imgs, injective)
            m = tuple(mapping[x] for x in range(G.order))
            if not is_homomorphism(G, H, m):
                raise AssertionError(f"extension produced a non-homomorphism {m}")
            yield m
            return
        for y in choices[i]:
            if _extend(G, H, gens[: i + 1], imgs + [y], injective) is not None:
                yield from rec(i + 1, imgs + [y])

    yield from rec(0, [])


def endomorphism_search_size(G: CayleyTable) -> int:
    """Leaves of the generator-image search tree before consistency pruning."""
    orders = G.element_orders
    size = 1
    for g in minimal_generators(G):
        size *= sum(1 for o in orders if orders[g] % o == 0)
    return size


def endomorphisms(G: CayleyTable, max_order: Optional[int] = None) -> Iterator[Endomorphism]:
    check_order_cap(G, max_order)
    for m in homomorphisms(G, G):
        yield Endomorphism(m)


def is_isomorphic(G: CayleyTable, H: CayleyTable) -> bool:
    return find_isomorphism(G, H) is not None


def find_isomorphism(G: CayleyTable, H: CayleyTable) -> Optional[tuple[int, ...]]:
    if G.order != H.order or G.profile != H.profile:
        return None
    for m in homomorphisms(G, H, injective=True):
        if len(set(m)) == H.order:
            return m
    return None


# -- subgroups and idempotents ------------------------------------------------


def subgroups(G: CayleyTable) -> list[frozenset[int]]:
    """Every subgroup, sorted by (order, sorted elements).

    Built as the join-closure of cyclic subgroups: every subgroup is
    reached by adjoining its elements one at a time.
    """
    found = {frozenset({0}): []}
    layer = [frozenset({0})]
    while layer:
        nxt = []
        for S in layer:
            gens = found[S]
            done = set(S)
            for x in range(G.order):
                if x in done:
                    continue
                # <S, x> = <S, xs> for every s in S: one element per coset
                done.update(G.rows[x][s] for s in S)
                J = G.generated(gens + [x])
                if J not in found:
                    found[J] = gens + [x]
                    nxt.append(J)
        layer = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_normal(G: CayleyTable, K: frozenset[int]) -> bool:
    rows, inv = G.rows, G.inverses
    for g in range(G.order):
        for k in K:
            if rows[rows[g][k]][inv[g]] not in K:
                return False
    return True


def projection(G: CayleyTable, H: frozenset[int], K: frozenset[int]) -> Endomorphism:
    """Idempotent with image ``H`` and kernel ``K`` (``G = K H``, ``K`` normal)."""
    m = [-1] * G.order
    for k in K:
        row = G.rows[k]
        for h in H:
            m[row[h]] = h
    return Endomorphism(tuple(m))


def _mask(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def _complement_index(G: CayleyTable):
    subs = subgroups(G)
    by_size: dict[int, list] = {}
    for K in subs:
        if is_normal(G, K):
            by_size.setdefault(len(K), []).append((K, _mask(K)))
    return subs, by_size


def _complements(G: CayleyTable, H, by_size) -> Iterator[frozenset[int]]:
    if G.order % len(H):
        return
    hm = _mask(H)
    for K, km in by_size.get(G.order // len(H), ()):
        if hm & km == 1:
            yield K


def complement_pairs(G: CayleyTable) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """Pairs ``(H, K)``: ``K`` normal, ``H n K = 1``, ``|H||K| = |G|``.

    Ordered by ``H`` then ``K`` in :func:`subgroups` order.
    """
    subs, by_size = _complement_index(G)
    for H in subs:
        for K in _complements(G, H, by_size):
            yield H, K


def idempotents(G: CayleyTable, max_order: Optional[int] = None) -> Iterator[Endomorphism]:
    """Each idempotent once, as the projection for one complement pair."""
    check_order_cap(G, max_order)
    for H, K in complement_pairs(G):
        yield projection(G, H, K)


def idempotent_count(G: CayleyTable, max_order: Optional[int] = None) -> int:
    check_order_cap(G, max_order)
    return sum(1 for _ in complement_pairs(G))


# -- retracts, capacity, depth ------------------------------------------------


def retract_classes(G: CayleyTable, max_order: Optional[int] = None) -> list[RetractClass]:
    """One representative per isomorphism class of retracts of ``G``."""
    check_order_cap(G, max_order)
    subs, by_size = _complement_index(G)
    classes: list[RetractClass] = []
    by_profile: dict[IsoProfile, list[RetractClass]] = {}
    for H in subs:
        K = next(_complements(G, H, by_size), None)
        if K is None:
            continue
        T = G.induced(H)
        same = by_profile.setdefault(T.profile, [])
        if not any(is_isomorphic(T, c.representative) for c in same):
            c = RetractClass(T, projection(G, H, K), H)
            same.append(c)
            classes.append(c)
    # stable sort keeps first-found order among equal profiles
    classes.sort(key=lambda c: c.representative.profile.sort_key())
    return classes


def _class_index(T: CayleyTable, classes: Sequence[RetractClass]) -> int:
    for i, c in enumerate(classes):
        if is_isomorphic(T, c.representative):
            return i
    return -1


def capacity_bruteforce(G: CayleyTable, max_order: Optional[int] = None) -> int:
    return len(retract_classes(G, max_order))


def retract_dag(G: CayleyTable, max_order: Optional[int] = None) -> poset.DominationDAG:
    """Proper-domination DAG on the retract classes of ``G``.

    Node ids are positions in :func:`retract_classes`; the root is ``G``.
    """
    classes = retract_classes(G, max_order)
    dominated: dict[int, set[int]] = {}
    for i, c in enumerate(classes):
        sub = retract_classes(c.representative, max_order)
        dominated[i] = {_class_index(s.representative, classes) for s in sub}
        if -1 in dominated[i]:
            raise AssertionError("retract of a retract is not a retract of G")
    nodes = [
        poset.ClassNode(i, describe(c.representative), c) for i, c in enumerate(classes)
    ]
    root = next(i for i, c in enumerate(classes) if c.order == G.order)
    return poset.build(
        nodes,
        dominates=lambda u, v: v.id in dominated[u.id],
        proper=lambda u, v: u.id != v.id,
        root=root,
    )


def depth_bruteforce(G: CayleyTable, max_order: Optional[int] = None) -> int:
    length, _ = poset.longest_chain(retract_dag(G, max_order))
    return length


def hol_bound_report(G: CayleyTable, max_order: Optional[int] = None) -> tuple[int, int, bool]:
    """``(capacity, e(G), capacity <= e(G))``."""
    c = capacity_bruteforce(G, max_order)
    e = idempotent_count(G, max_order)
    return c, e, c <= e


# -- naming -------------------------------------------------------------------


def abelian_invariants(G: CayleyTable) -> Optional[AbelianGroup]:
    """Primary decomposition of an abelian table, read off its element orders.

    ``|{x : x^(p^j) = 1}| = p^(sum_i min(j, a_i))`` over the ``p``-parts
    ``Z_(p^a_i)``; successive differences of the exponents count the
    cyclic factors with ``a_i >= j``.
    """
    if not G.is_abelian:
        return None
    orders = G.element_orders
    raw = []
    for p in factorize(G.order):
        logs = [0]
        while True:
            pj = p ** len(logs)
            c = sum(1 for o in orders if pj % o == 0)
            e = 0
            while c > 1:
                c //= p
                e += 1
            if e == logs[-1]:
                break
            logs.append(e)
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(1, len(logs)):
            raw.append((p**j, at_least[j - 1] - at_least[j]))
    return canonicalize(raw)


_NAMED: dict[int, list[tuple[str, CayleyTable]]] = {}


def _named(order: int) -> list[tuple[str, CayleyTable]]:
    if not _NAMED:
        _NAMED[6] = [("S_3", symmetric(3))]
        _NAMED[8] = [("D_4", dihedral(4)), ("Q_8", quaternion())]
        for k in range(5, 33):
            _NAMED.setdefault(2 * k, []).append((f"D_{k}", dihedral(k)))
    return _NAMED.get(order, [])


def describe(G: CayleyTable) -> str:
    """Short human name: the primary decomposition for abelian groups,
    a dihedral or quaternion name where one matches, else order and
    element orders."""
    A = abelian_invariants(G)
    if A is not None:
        return A.render()
    for name, T in _named(G.order):
        if is_isomorphic(G, T):
            return name
    return f"G{G.order}({','.join(str(o) for o in G.profile.element_orders)})"
