"""Finite groups as multiplication tables.

Elements are the integers ``0 .. n-1``.  ``table[a][b]`` is the product ``ab``.
The optional ``labels`` tuple records where each element came from (for an
isotropy group, the morphism index in the ambient groupoid).
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .coset import CosetTable, parse_relators, regular_multiplication


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    labels: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], labels=None) -> "FiniteGroup":
        table = tuple(tuple(row) for row in table)
        n = len(table)
        identity = next(e for e in range(n) if all(table[e][a] == a for a in range(n)))
        inverse = tuple(next(b for b in range(n) if table[a][b] == identity) for a in range(n))
        return cls(table, identity, inverse, None if labels is None else tuple(labels))

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable) -> "FiniteGroup":
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[mul(a, b)] for b in elements] for a in elements]
        return cls.from_table(table)

    def violations(self) -> list[tuple]:
        """Group axioms checked table-wise; empty iff the table is a group."""
        n = self.order
        out: list[tuple] = []
        if len(self.inverse) != n:
            return [("inverse-length", len(self.inverse))]
        for a in range(n):
            if len(self.table[a]) != n:
                return [("row-length", a)]
            for b in range(n):
                if not 0 <= self.table[a][b] < n:
                    return [("range", a, b)]
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                out.append(("identity", a))
            if self.table[a][self.inverse[a]] != e or self.table[self.inverse[a]][a] != e:
                out.append(("inverse", a))
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                for c in range(n):
                    if t[ab][c] != ta[tb[c]]:
                        out.append(("associativity", a, b, c))
                        return out
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def signatures(self) -> tuple[tuple[int, int], ...]:
        """Isomorphism-invariant per-element data: (order, centralizer size)."""
        t = self.table
        n = self.order
        return tuple(
            (self.element_orders[a], sum(1 for b in range(n) if t[a][b] == t[b][a]))
            for a in range(n)
        )

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def closure(self, generators: Iterable[int]) -> frozenset[int]:
        gens = list(generators)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for g in gens:
                b = self.table[a][g]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def generating_set(self) -> list[int]:
        """Greedy generators: repeatedly add an element of largest order outside the span."""
        by_order = sorted(range(self.order), key=lambda a: (-self.element_orders[a], a))
        gens: list[int] = []
        span = frozenset({self.identity})
        while len(span) < self.order:
            g = next(a for a in by_order if a not in span)
            gens.append(g)
            span = self.closure(gens)
        return gens

    def conjugate(self, g: int, r: int) -> int:
        return self.table[self.table[g][r]][self.inverse[g]]

    def is_normal(self, subset: frozenset[int]) -> bool:
        return all(self.conjugate(g, r) in subset for r in subset for g in range(self.order))

    def subgroup(self, elements: Iterable[int]) -> "FiniteGroup":
        """The subgroup on ``elements`` (ascending), re-indexed, labels = ambient indices."""
        elems = sorted(elements)
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[self.table[a][b]] for b in elems] for a in elems]
        return FiniteGroup(tuple(map(tuple, table)), index[self.identity],
                           tuple(index[self.inverse[a]] for a in elems), tuple(elems))

    def quotient(self, normal: frozenset[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """Quotient by a normal subgroup; cosets labelled by least member.

        Returns the quotient group and the projection as a tuple.
        """
        cosets: dict[int, int] = {}
        reps = []
        proj = [0] * self.order
        for a in range(self.order):
            least = min(self.table[a][h] for h in normal)
            if least not in cosets:
                cosets[least] = len(reps)
                reps.append(least)
            proj[a] = cosets[least]
        table = [[proj[self.table[a][b]] for b in reps] for a in reps]
        return FiniteGroup(tuple(map(tuple, table)), proj[self.identity],
                           tuple(proj[self.inverse[a]] for a in reps), tuple(reps)), tuple(proj)


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism search


def is_homomorphism(a: FiniteGroup, b: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[a.table[x][y]] == b.table[f[x]][f[y]]
               for x in range(a.order) for y in range(a.order))


def is_isomorphism(a: FiniteGroup, b: FiniteGroup, f: Sequence[int]) -> bool:
    return a.order == b.order and len(set(f)) == b.order and is_homomorphism(a, b, f)


def _extend(a: FiniteGroup, b: FiniteGroup, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Extend ``gens -> images`` to the subgroup they span; None on conflict."""
    phi = {a.identity: b.identity}
    queue = deque([a.identity])
    while queue:
        x = queue.popleft()
        fx = phi[x]
        for g, h in zip(gens, images):
            y = a.table[x][g]
            fy = b.table[fx][h]
            if y in phi:
                if phi[y] != fy:
                    return None
            else:
                phi[y] = fy
                queue.append(y)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> tuple[int, ...] | None:
    """Exhaustive search for an isomorphism ``a -> b``.

    Every isomorphism is determined by the images of a generating set, so the
    search runs over generator images, pruned by element order and centralizer
    size and by checking the partial map on each intermediate span.
    """
    if a.order != b.order:
        return None
    if Counter(a.signatures) != Counter(b.signatures):
        return None
    gens = a.generating_set()
    candidates = [[y for y in range(b.order) if b.signatures[y] == a.signatures[g]] for g in gens]

    def search(k: int, images: list[int]):
        if k == len(gens):
            phi = _extend(a, b, gens, images)
            if phi is not None and len(phi) == a.order:
                return tuple(phi[x] for x in range(a.order))
            return None
        for y in candidates[k]:
            trial = images + [y]
            phi = _extend(a, b, gens[: k + 1], trial)
            if phi is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    return search(0, [])


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return find_isomorphism(a, b) is not None


# ---------------------------------------------------------------------------
# subgroup lattice


def subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups, found by closing under adjunction of single elements."""
    trivial = frozenset({g.identity})
    seen = {trivial}
    queue = deque([trivial])
    while queue:
        s = queue.popleft()
        for x in range(g.order):
            if x in s:
                continue
            t = g.closure(list(s) + [x]) if len(s) < 8 else g.closure(_small_gens(g, s) + [x])
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def _small_gens(g: FiniteGroup, s: frozenset[int]) -> list[int]:
    gens: list[int] = []
    span = frozenset({g.identity})
    for x in sorted(s):
        if x not in span:
            gens.append(x)
            span = g.closure(gens)
            if span == s:
                break
    return gens


def normal_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    return [s for s in subgroups(g) if g.is_normal(s)]


# ---------------------------------------------------------------------------
# constructions and a small-group library


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)])


def trivial() -> FiniteGroup:
    return cyclic(1)


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    if not factors:
        return trivial()
    elems = list(itertools.product(*(range(f.order) for f in factors)))
    return FiniteGroup.from_elements(
        elems, lambda x, y: tuple(f.table[a][b] for f, a, b in zip(factors, x, y)))


def from_presentation(generators: str, relators: str) -> FiniteGroup:
    """Finite group from a presentation, e.g. ``from_presentation("ab", "a^4, b^2, (ab)^2")``
    is not supported (no parentheses); write powers of products out as words."""
    table = CosetTable(len(generators), parse_relators(relators, generators))
    return FiniteGroup.from_table(regular_multiplication(table.enumerate()))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    elems = [(r, s) for s in range(2) for r in range(n)]

    def mul(x, y):
        r1, s1 = x
        r2, s2 = y
        return ((r1 + (-r2 if s1 else r2)) % n, (s1 + s2) % 2)

    return FiniteGroup.from_elements(elems, mul)


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order ``4n``: ``<a, x | a^2n, x^2 = a^n, x^-1 a x = a^-1>``."""
    return from_presentation("ax", f"a^{2 * n}, x^2 a^-{n}, x^-1 a x a")


def semidirect_cyclic(n: int, m: int, k: int) -> FiniteGroup:
    """``Z/n x| Z/m`` where the generator of ``Z/m`` acts by multiplication by ``k``."""
    elems = [(a, b) for b in range(m) for a in range(n)]

    def mul(x, y):
        a1, b1 = x
        a2, b2 = y
        return ((a1 + pow(k, b1, n) * a2) % n, (b1 + b2) % m)

    return FiniteGroup.from_elements(elems, mul)


def permutation_group(degree: int, generators: Sequence[Sequence[int]]) -> FiniteGroup:
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[p[i]] for i in range(degree))
            if q not in seen:
                seen.add(q)
                queue.append(q)
    elems = sorted(seen)
    return FiniteGroup.from_elements(elems, lambda p, q: tuple(q[p[i]] for i in range(degree)))


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial()
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return permutation_group(n, gens)


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return trivial()
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(tuple(p))
    return permutation_group(n, gens)


def quaternion() -> FiniteGroup:
    return dicyclic(2)


def _library() -> dict[int, list[tuple[str, Callable[[], FiniteGroup]]]]:
    C, D, P = cyclic, dihedral, direct_product
    lib: dict[int, list[tuple[str, Callable[[], FiniteGroup]]]] = {}

    def add(name, build):
        g = build()
        _CACHE[name] = g
        lib.setdefault(g.order, []).append((name, build))

    for n in range(1, 25):
        add(f"C{n}", lambda n=n: C(n))
    add("C2xC2", lambda: P(C(2), C(2)))
    add("S3", lambda: D(3))
    add("C4xC2", lambda: P(C(4), C(2)))
    add("C2^3", lambda: P(C(2), C(2), C(2)))
    add("D4", lambda: D(4))
    add("Q8", quaternion)
    add("C3xC3", lambda: P(C(3), C(3)))
    add("D5", lambda: D(5))
    add("C6xC2", lambda: P(C(6), C(2)))
    add("A4", lambda: alternating(4))
    add("D6", lambda: D(6))
    add("Dic3", lambda: dicyclic(3))
    add("D7", lambda: D(7))
    # order 16
    add("C4xC4", lambda: P(C(4), C(4)))
    add("C4:C4", lambda: semidirect_cyclic(4, 4, 3))
    add("M16", lambda: semidirect_cyclic(8, 2, 5))
    add("C8xC2", lambda: P(C(8), C(2)))
    add("C4xC2^2", lambda: P(C(4), C(2), C(2)))
    add("C2^4", lambda: P(C(2), C(2), C(2), C(2)))
    add("D8", lambda: D(8))
    add("SD16", lambda: semidirect_cyclic(8, 2, 3))
    add("Q16", lambda: dicyclic(4))
    add("D4xC2", lambda: P(D(4), C(2)))
    add("Q8xC2", lambda: P(quaternion(), C(2)))
    add("C4oD4", lambda: from_presentation("xyz", "x^4, y^2, z^4, y x y x, [x,z], [y,z], z^2 x^-2"))
    add("(C4xC2):C2", lambda: from_presentation("abc", "a^4, b^2, c^2, [a,b], [b,c], c a c b^-1 a^-1"))
    # order 18
    add("C6xC3", lambda: P(C(6), C(3)))
    add("D9", lambda: D(9))
    add("S3xC3", lambda: P(D(3), C(3)))
    add("(C3xC3):C2", lambda: from_presentation("abc", "a^3, b^3, [a,b], c^2, c a c a, c b c b"))
    # order 20
    add("C10xC2", lambda: P(C(10), C(2)))
    add("D10", lambda: D(10))
    add("Dic5", lambda: dicyclic(5))
    add("F20", lambda: semidirect_cyclic(5, 4, 2))
    # order 21, 22
    add("C7:C3", lambda: semidirect_cyclic(7, 3, 2))
    add("D11", lambda: D(11))
    # order 24
    add("C12xC2", lambda: P(C(12), C(2)))
    add("C6xC2^2", lambda: P(C(6), C(2), C(2)))
    add("S4", lambda: symmetric(4))
    add("SL(2,3)", lambda: from_presentation("st", "s^3 t^-3, s^3 t^-1 s^-1 t^-1 s^-1"))
    add("C3:C8", lambda: semidirect_cyclic(3, 8, 2))
    add("Dic6", lambda: dicyclic(6))
    add("C4xS3", lambda: P(C(4), D(3)))
    add("D12", lambda: D(12))
    add("C2xDic3", lambda: P(C(2), dicyclic(3)))
    add("C3:D4", lambda: from_presentation("rsc", "r^4, s^2, s r s r, c^3, r^-1 c r c, [s,c]"))
    add("C3xD4", lambda: P(C(3), D(4)))
    add("C3xQ8", lambda: P(C(3), quaternion()))
    add("C2xA4", lambda: P(C(2), alternating(4)))
    add("C2^2xS3", lambda: P(C(2), C(2), D(3)))
    return lib


SMALL_GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
                      13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
                      23: 1, 24: 15}

_LIBRARY = None
_CACHE: dict[str, FiniteGroup] = {}


def small_groups(max_order: int = 24) -> list[tuple[str, FiniteGroup]]:
    """One representative of each isomorphism class of groups of order ``<= max_order``
    (complete up to 24)."""
    global _LIBRARY
    if _LIBRARY is None:
        _LIBRARY = _library()
    out = []
    for n in sorted(_LIBRARY):
        if n > max_order:
            continue
        for name, build in _LIBRARY[n]:
            if name not in _CACHE:
                _CACHE[name] = build()
            out.append((name, _CACHE[name]))
    return out


def group_by_name(name: str) -> FiniteGroup:
    for n, g in small_groups():
        if n == name:
            return g
    raise KeyError(name)
