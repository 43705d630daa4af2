"""Finite groupoids, functors between them, and their 1-type invariants.

Composition follows the diagrammatic convention ``comp(g, y) = gy``, defined
when ``tgt(g) == src(y)``; then ``src(gy) == src(g)`` and ``tgt(gy) == tgt(y)``.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import OracleBoundExceeded, StructuralError
from .groups import FiniteGroup, find_isomorphism, is_isomorphism

DEFAULT_ORACLE_BOUND = 64
ORACLE_BOUND_ENV = "STONE_GROUPOID_ORACLE_BOUND"


@dataclass(frozen=True)
class FiniteGroupoid:
    """Explicit tables for a finite groupoid.

    ``comp`` is stored as a sorted tuple of ``(g, y, gy)`` triples; lookups go
    through :meth:`compose`.
    """

    num_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    unit: tuple[int, ...]
    inv: tuple[int, ...]
    comp: tuple[tuple[int, int, int], ...]
    object_names: tuple[str, ...] | None = field(default=None, compare=False)
    morphism_names: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_tables(cls, num_objects: int, src: Sequence[int], tgt: Sequence[int],
                    unit: Sequence[int], inv: Sequence[int],
                    comp: Mapping[tuple[int, int], int] | Iterable[Sequence[int]],
                    object_names=None, morphism_names=None) -> "FiniteGroupoid":
        if isinstance(comp, Mapping):
            triples = [(g, y, gy) for (g, y), gy in comp.items()]
        else:
            triples = [tuple(t) for t in comp]
        return cls(num_objects, tuple(src), tuple(tgt), tuple(unit), tuple(inv),
                   tuple(sorted(triples)),
                   None if object_names is None else tuple(object_names),
                   None if morphism_names is None else tuple(morphism_names))

    @property
    def num_morphisms(self) -> int:
        return len(self.src)

    @cached_property
    def skeletal(self) -> bool:
        return all(s == t for s, t in zip(self.src, self.tgt))

    @cached_property
    def comp_table(self) -> dict[tuple[int, int], int]:
        return {(g, y): gy for g, y, gy in self.comp}

    def compose(self, g: int, y: int) -> int:
        return self.comp_table[(g, y)]

    @cached_property
    def hom_sets(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for g in range(self.num_morphisms):
            out.setdefault((self.src[g], self.tgt[g]), []).append(g)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self.hom_sets.get((x, y), ())

    @cached_property
    def outgoing(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_objects)]
        for g in range(self.num_morphisms):
            out[self.src[g]].append(g)
        return tuple(tuple(v) for v in out)

    def loops(self, x: int) -> tuple[int, ...]:
        return self.hom(x, x)

    def is_unit(self, g: int) -> bool:
        return self.unit[self.src[g]] == g

    def subgroupoid(self, objects: Iterable[int], morphisms: Iterable[int]
                    ) -> tuple["FiniteGroupoid", "GroupoidFunctor"]:
        """Sub-groupoid on the given (closed) object and morphism sets, re-indexed
        in ascending order, together with its inclusion functor."""
        objs = sorted(set(objects))
        mors = sorted(set(morphisms))
        oi = {x: i for i, x in enumerate(objs)}
        mi = {g: i for i, g in enumerate(mors)}
        comp = {}
        for g in mors:
            for y in self.outgoing[self.tgt[g]]:
                if y in mi:
                    comp[(mi[g], mi[y])] = mi[self.compose(g, y)]
        sub = FiniteGroupoid.from_tables(
            len(objs), [oi[self.src[g]] for g in mors], [oi[self.tgt[g]] for g in mors],
            [mi[self.unit[x]] for x in objs], [mi[self.inv[g]] for g in mors], comp,
            None if self.object_names is None else [self.object_names[x] for x in objs],
            None if self.morphism_names is None else [self.morphism_names[g] for g in mors])
        return sub, GroupoidFunctor(sub, self, tuple(objs), tuple(mors))

    def full_subgroupoid(self, objects: Iterable[int]) -> tuple["FiniteGroupoid", "GroupoidFunctor"]:
        objs = set(objects)
        mors = [g for g in range(self.num_morphisms) if self.src[g] in objs and self.tgt[g] in objs]
        return self.subgroupoid(objs, mors)


@dataclass(frozen=True)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(self.obj_map))
        object.__setattr__(self, "mor_map", tuple(self.mor_map))

    @classmethod
    def identity(cls, g: FiniteGroupoid) -> "GroupoidFunctor":
        return cls(g, g, tuple(range(g.num_objects)), tuple(range(g.num_morphisms)))

    def then(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """Composite ``other o self``."""
        return GroupoidFunctor(self.source, other.target,
                               tuple(other.obj_map[x] for x in self.obj_map),
                               tuple(other.mor_map[g] for g in self.mor_map))

    def violations(self) -> list[tuple]:
        a, b = self.source, self.target
        if len(self.obj_map) != a.num_objects:
            raise StructuralError("obj_map", len(self.obj_map), "obj_map length differs from source object count")
        if len(self.mor_map) != a.num_morphisms:
            raise StructuralError("mor_map", len(self.mor_map), "mor_map length differs from source morphism count")
        for x, fx in enumerate(self.obj_map):
            if not 0 <= fx < b.num_objects:
                raise StructuralError("obj_map", x)
        for g, fg in enumerate(self.mor_map):
            if not 0 <= fg < b.num_morphisms:
                raise StructuralError("mor_map", g)
        out = []
        F, f = self.mor_map, self.obj_map
        for g in range(a.num_morphisms):
            if b.src[F[g]] != f[a.src[g]]:
                out.append(("functor-src", g))
            if b.tgt[F[g]] != f[a.tgt[g]]:
                out.append(("functor-tgt", g))
            if F[a.inv[g]] != b.inv[F[g]]:
                out.append(("functor-inv", g))
        for x in range(a.num_objects):
            if F[a.unit[x]] != b.unit[f[x]]:
                out.append(("functor-unit", x))
        for g, y, gy in a.comp:
            if b.comp_table.get((F[g], F[y])) != F[gy]:
                out.append(("functor-comp", g, y))
        return out


@dataclass(frozen=True)
class ComponentPartition:
    component: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, c: int) -> tuple[int, ...]:
        return tuple(x for x, k in enumerate(self.component) if k == c)


@dataclass
class ValidationReport:
    violations: list[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, *witness) -> None:
        self.violations.append((axiom, *witness))


# ---------------------------------------------------------------------------
# validation


def _check_structure(G: FiniteGroupoid) -> None:
    O, M = G.num_objects, G.num_morphisms
    if O < 0:
        raise StructuralError("objects", O)
    for name, table, bound in (("src", G.src, O), ("tgt", G.tgt, O), ("inv", G.inv, M)):
        if len(table) != M:
            raise StructuralError(name, len(table), f"table {name!r} has length {len(table)}, expected {M}")
        for i, v in enumerate(table):
            if not (isinstance(v, int) and 0 <= v < bound):
                raise StructuralError(name, i)
    if len(G.unit) != O:
        raise StructuralError("unit", len(G.unit), f"table 'unit' has length {len(G.unit)}, expected {O}")
    for i, v in enumerate(G.unit):
        if not (isinstance(v, int) and 0 <= v < M):
            raise StructuralError("unit", i)
    for k, triple in enumerate(G.comp):
        if len(triple) != 3:
            raise StructuralError("comp", k, f"comp entry {k} is not a triple")
        for v in triple:
            if not (isinstance(v, int) and 0 <= v < M):
                raise StructuralError("comp", k)


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom; each violation carries a witness tuple."""
    _check_structure(G)
    rep = ValidationReport()
    src, tgt, unit, inv = G.src, G.tgt, G.unit, G.inv
    seen: set[tuple[int, int]] = set()
    for g, y, gy in G.comp:
        if (g, y) in seen:
            rep.add("comp-duplicate", g, y)
        seen.add((g, y))
        if tgt[g] != src[y]:
            rep.add("composability", g, y)
            continue
        if src[gy] != src[g] or tgt[gy] != tgt[y]:
            rep.add("comp-endpoints", g, y)
    by_src: dict[int, list[int]] = {}
    for y in range(G.num_morphisms):
        by_src.setdefault(src[y], []).append(y)
    for g in range(G.num_morphisms):
        for y in by_src.get(tgt[g], ()):
            if (g, y) not in seen:
                rep.add("comp-missing", g, y)
    if rep.violations:
        return rep
    comp = G.comp_table
    for x in range(G.num_objects):
        u = unit[x]
        if src[u] != x or tgt[u] != x:
            rep.add("unit-endpoints", x)
    if rep.violations:
        return rep
    for g in range(G.num_morphisms):
        if comp[(unit[src[g]], g)] != g or comp[(g, unit[tgt[g]])] != g:
            rep.add("unit-law", g)
        h = inv[g]
        if src[h] != tgt[g] or tgt[h] != src[g]:
            rep.add("inverse-endpoints", g)
        elif comp[(g, h)] != unit[src[g]] or comp[(h, g)] != unit[tgt[g]]:
            rep.add("inverse-law", g)
    for g, h, gh in G.comp:
        for k in by_src.get(tgt[h], ()):
            if comp[(gh, k)] != comp[(g, comp[(h, k)])]:
                rep.add("associativity", g, h, k)
    return rep


# ---------------------------------------------------------------------------
# invariants


def pi0(G: FiniteGroupoid) -> ComponentPartition:
    parent = list(range(G.num_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in range(G.num_morphisms):
        a, b = find(G.src[g]), find(G.tgt[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = [find(x) for x in range(G.num_objects)]
    reps = sorted(set(roots))
    index = {r: i for i, r in enumerate(reps)}
    # the root of each class is its least element since merges keep the minimum
    return ComponentPartition(tuple(index[r] for r in roots), tuple(reps))


def isotropy(G: FiniteGroupoid, x: int) -> FiniteGroup:
    """Loops at ``x`` under composition; ``labels`` are the morphism indices."""
    if not 0 <= x < G.num_objects:
        raise StructuralError("objects", x, f"object {x} out of range")
    loops = G.loops(x)
    index = {g: i for i, g in enumerate(loops)}
    table = tuple(tuple(index[G.compose(g, h)] for h in loops) for g in loops)
    return FiniteGroup(table, index[G.unit[x]], tuple(index[G.inv[g]] for g in loops), loops)


def is_skeletal(G: FiniteGroupoid) -> bool:
    return G.skeletal


# ---------------------------------------------------------------------------
# equivalence criteria


def internal_fully_faithful(F: GroupoidFunctor) -> bool:
    """Hom-set bijectivity for every pair of source objects.

    This is the finite reading of ``X1 = (X0 x X0) x_{Y0 x Y0} Y1``.
    """
    X, Y = F.source, F.target
    for x in range(X.num_objects):
        for x2 in range(X.num_objects):
            dom = X.hom(x, x2)
            cod = Y.hom(F.obj_map[x], F.obj_map[x2])
            if len(dom) != len(cod):
                return False
            if len({F.mor_map[g] for g in dom}) != len(dom):
                return False
    return True


def internal_essentially_surjective(F: GroupoidFunctor) -> bool:
    """``X0 x_{Y0} Y1 -> Y0`` (via target) is onto."""
    Y = F.target
    image = set(F.obj_map)
    reached = {Y.tgt[h] for h in range(Y.num_morphisms) if Y.src[h] in image}
    return len(reached) == Y.num_objects


def induced_pi0_map(F: GroupoidFunctor) -> tuple[int, ...]:
    px, py = pi0(F.source), pi0(F.target)
    return tuple(py.component[F.obj_map[r]] for r in px.representatives)


def induced_isotropy_map(F: GroupoidFunctor, x: int) -> tuple[FiniteGroup, FiniteGroup, tuple[int, ...]]:
    a = isotropy(F.source, x)
    b = isotropy(F.target, F.obj_map[x])
    pos = {g: i for i, g in enumerate(b.labels)}
    return a, b, tuple(pos[F.mor_map[g]] for g in a.labels)


def whitehead_equivalence(F: GroupoidFunctor) -> bool:
    """Bijective on components and an isomorphism on every isotropy group."""
    m = induced_pi0_map(F)
    if len(set(m)) != len(m) or len(m) != pi0(F.target).count:
        return False
    for x in range(F.source.num_objects):
        a, b, f = induced_isotropy_map(F, x)
        if not is_isomorphism(a, b, f):
            return False
    return True


def oracle_bound() -> int:
    value = os.environ.get(ORACLE_BOUND_ENV)
    return int(value) if value else DEFAULT_ORACLE_BOUND


def one_type(G: FiniteGroupoid) -> list[FiniteGroup]:
    """Isotropy group at each component representative."""
    return [isotropy(G, r) for r in pi0(G).representatives]


def equivalence_oracle(G: FiniteGroupoid, H: FiniteGroupoid, bound: int | None = None) -> bool:
    """Decide ``G ~ H`` by matching components with isomorphic isotropy groups.

    Refuses (raises) rather than guessing when either groupoid is larger than
    the bound.
    """
    bound = oracle_bound() if bound is None else bound
    for name, X in (("first", G), ("second", H)):
        if X.num_morphisms > bound:
            raise OracleBoundExceeded(
                f"{name} groupoid has {X.num_morphisms} morphisms, oracle bound is {bound}",
                witness={"morphisms": X.num_morphisms, "bound": bound})
    ga, gb = one_type(G), one_type(H)
    if len(ga) != len(gb):
        return False
    if Counter(g.order for g in ga) != Counter(g.order for g in gb):
        return False
    unused = list(range(len(gb)))
    for a in ga:
        for k in unused:
            if find_isomorphism(a, gb[k]) is not None:
                unused.remove(k)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# standard groupoids


def group_groupoid(G: FiniteGroup) -> FiniteGroupoid:
    """One-object groupoid ``BG``; morphism ``i`` is group element ``i``."""
    n = G.order
    comp = {(a, b): G.table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid.from_tables(1, [0] * n, [0] * n, [G.identity], G.inverse, comp)


def action_groupoid(G: FiniteGroup, num_points: int, act) -> FiniteGroupoid:
    """Action groupoid of a left action ``act(g, s)``.

    Morphism ``s * |G| + g`` is ``s -> g.s``; composing ``s -g-> gs -h-> hgs``
    gives the morphism labelled ``hg`` out of ``s``.
    """
    n = G.order
    src, tgt, inv = [], [], []
    for s in range(num_points):
        for g in range(n):
            src.append(s)
            tgt.append(act(g, s))
            inv.append(act(g, s) * n + G.inverse[g])
    comp = {}
    for s in range(num_points):
        for g in range(n):
            t = act(g, s)
            for h in range(n):
                comp[(s * n + g, t * n + h)] = s * n + G.table[h][g]
    unit = [s * n + G.identity for s in range(num_points)]
    return FiniteGroupoid.from_tables(num_points, src, tgt, unit, inv, comp)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Indiscrete groupoid on ``n`` objects; morphism ``i*n + j`` is ``i -> j``."""
    src = [i for i in range(n) for _ in range(n)]
    tgt = [j for _ in range(n) for j in range(n)]
    comp = {(i * n + j, j * n + k): i * n + k for i in range(n) for j in range(n) for k in range(n)}
    return FiniteGroupoid.from_tables(n, src, tgt, [i * n + i for i in range(n)],
                                      [j * n + i for i in range(n) for j in range(n)], comp)


def pair_times_group(n: int, G: FiniteGroup) -> FiniteGroupoid:
    """Connected groupoid with ``n`` objects and vertex group ``G``."""
    k = G.order
    idx = lambda i, j, a: (i * n + j) * k + a
    src, tgt, inv = [], [], []
    for i in range(n):
        for j in range(n):
            for a in range(k):
                src.append(i)
                tgt.append(j)
                inv.append(idx(j, i, G.inverse[a]))
    comp = {(idx(i, j, a), idx(j, l, b)): idx(i, l, G.table[a][b])
            for i in range(n) for j in range(n) for l in range(n)
            for a in range(k) for b in range(k)}
    return FiniteGroupoid.from_tables(n, src, tgt, [idx(i, i, G.identity) for i in range(n)], inv, comp)


def discrete_groupoid(n: int) -> FiniteGroupoid:
    return FiniteGroupoid.from_tables(n, range(n), range(n), range(n), range(n),
                                      {(i, i): i for i in range(n)})


def trivial_groupoid() -> FiniteGroupoid:
    return discrete_groupoid(1)


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    src, tgt, unit, inv, comp = [], [], [], [], []
    ob, mb = 0, 0
    for P in parts:
        src += [ob + s for s in P.src]
        tgt += [ob + t for t in P.tgt]
        unit += [mb + u for u in P.unit]
        inv += [mb + i for i in P.inv]
        comp += [(mb + g, mb + y, mb + gy) for g, y, gy in P.comp]
        ob += P.num_objects
        mb += P.num_morphisms
    return FiniteGroupoid.from_tables(ob, src, tgt, unit, inv, comp)


def relabel(G: FiniteGroupoid, obj_perm: Sequence[int], mor_perm: Sequence[int]
            ) -> tuple[FiniteGroupoid, GroupoidFunctor]:
    """Isomorphic copy with object ``x`` renamed ``obj_perm[x]`` and morphism ``g``
    renamed ``mor_perm[g]``; returns the copy and the isomorphism ``G -> copy``."""
    O, M = G.num_objects, G.num_morphisms
    src, tgt, inv, unit = [0] * M, [0] * M, [0] * M, [0] * O
    for g in range(M):
        src[mor_perm[g]] = obj_perm[G.src[g]]
        tgt[mor_perm[g]] = obj_perm[G.tgt[g]]
        inv[mor_perm[g]] = mor_perm[G.inv[g]]
    for x in range(O):
        unit[obj_perm[x]] = mor_perm[G.unit[x]]
    comp = [(mor_perm[g], mor_perm[y], mor_perm[gy]) for g, y, gy in G.comp]
    H = FiniteGroupoid.from_tables(O, src, tgt, unit, inv, comp)
    return H, GroupoidFunctor(G, H, tuple(obj_perm), tuple(mor_perm))
