"""Subgroupoid extraction, skeleta, normal cores, quotients, collapse maps,
separating families and inverse-limit reconstruction for finite groupoids.

At finite level every subset is compact and open, so the topological side
conditions of the underlying constructions hold automatically; what remains
is exact set bookkeeping, which is what this module does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import groups
from .errors import DomainError, NotNormalError, NotSkeletalError, SectionError
from .finite_groupoid import (FiniteGroupoid, GroupoidFunctor, discrete_groupoid, group_groupoid,
                              is_skeletal, isotropy, pi0)
from .tower import GroupoidTower, pi0_tower, tower_section

LATTICE_LIMIT = 24


@dataclass(frozen=True)
class WideSubgroupoid:
    parent: FiniteGroupoid
    morphisms: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "morphisms", frozenset(self.morphisms))

    def __contains__(self, g: int) -> bool:
        return g in self.morphisms

    def __len__(self) -> int:
        return len(self.morphisms)

    @property
    def clopen(self) -> bool:
        # every subset of a finite discrete space is clopen
        return True

    def violations(self) -> list[tuple]:
        G, H = self.parent, self.morphisms
        out = []
        for x in range(G.num_objects):
            if G.unit[x] not in H:
                out.append(("missing-unit", x))
        for g in sorted(H):
            if G.inv[g] not in H:
                out.append(("inverse-closure", g))
            for y in G.outgoing[G.tgt[g]]:
                if y in H and G.compose(g, y) not in H:
                    out.append(("composition-closure", g, y))
        return out

    def normality_witness(self) -> tuple[int, int] | None:
        """``(r, g)`` with ``g r g^-1`` escaping the subgroupoid, or None."""
        G, H = self.parent, self.morphisms
        for r in sorted(H):
            x = G.src[r]
            if G.tgt[r] != x:
                continue
            for g in range(G.num_morphisms):
                if G.tgt[g] == x and G.compose(G.compose(g, r), G.inv[g]) not in H:
                    return r, g
        return None

    def is_normal(self) -> bool:
        return self.normality_witness() is None

    def as_groupoid(self) -> tuple[FiniteGroupoid, GroupoidFunctor]:
        return self.parent.subgroupoid(range(self.parent.num_objects), self.morphisms)


def units(G: FiniteGroupoid) -> WideSubgroupoid:
    return WideSubgroupoid(G, frozenset(G.unit))


def everything(G: FiniteGroupoid) -> WideSubgroupoid:
    return WideSubgroupoid(G, frozenset(range(G.num_morphisms)))


def _require_skeletal(X: FiniteGroupoid, op: str) -> None:
    if not is_skeletal(X):
        g = next(g for g in range(X.num_morphisms) if X.src[g] != X.tgt[g])
        raise NotSkeletalError(f"{op} needs a skeletal groupoid; skeletonize first",
                               witness={"morphism": g, "src": X.src[g], "tgt": X.tgt[g]})


def _require_wide(H: WideSubgroupoid, X: FiniteGroupoid, op: str) -> None:
    if H.parent != X:
        raise DomainError(f"{op}: subgroupoid belongs to a different groupoid")
    v = H.violations()
    if v:
        raise DomainError(f"{op}: not a wide subgroupoid", witness=v[0], stage=op)


# ---------------------------------------------------------------------------
# compact open wide subgroupoid inside a neighbourhood of the units


@dataclass(frozen=True)
class VanDantzigTrace:
    U: frozenset[int]
    K: frozenset[int]
    W: frozenset[tuple[int, int]]
    F: frozenset[int]
    B: frozenset[tuple[int, int]]
    M: frozenset[int]
    V: frozenset[int]
    H1: frozenset[int]


def _composable_pairs(G: FiniteGroupoid, S: frozenset[int]) -> set[tuple[int, int]]:
    return {(g, y) for g in S for y in G.outgoing[G.tgt[g]] if y in S}


def van_dantzig(G: FiniteGroupoid, U: Iterable[int]) -> tuple[WideSubgroupoid, VanDantzigTrace]:
    """Wide subgroupoid ``H`` with ``units <= H1 <= U``.

    K is U itself.  F is grown greedily from the units through ``K & K^-1`` in
    index order, keeping every composable product inside K, then symmetrized.
    B holds the composable pairs of F whose product leaves F, M their first
    factors, and ``H1 = F - (M | M^-1)``.
    """
    U = frozenset(U)
    for g in U:
        if not 0 <= g < G.num_morphisms:
            raise DomainError(f"neighbourhood contains unknown morphism {g}", witness=g,
                              stage="van-dantzig")
    for x in range(G.num_objects):
        if G.unit[x] not in U:
            raise DomainError(f"neighbourhood misses the unit of object {x}",
                              witness={"object": x, "unit": G.unit[x]}, stage="van-dantzig")
    K = U
    comp = G.comp_table
    W = frozenset((g, y) for g, y in _composable_pairs(G, K) if comp[(g, y)] in K)

    F = set(G.unit)
    for g in sorted(k for k in K if G.inv[k] in K):
        if g in F:
            continue
        ok = True
        trial = F | {g}
        for y in G.outgoing[G.tgt[g]]:
            if y in trial and comp[(g, y)] not in K:
                ok = False
                break
        if ok:
            for a in trial:
                if G.tgt[a] == G.src[g] and comp[(a, g)] not in K:
                    ok = False
                    break
        if ok:
            F.add(g)
    F = frozenset(g for g in F if G.inv[g] in F)

    F2 = _composable_pairs(G, F)
    B = frozenset((g, y) for g, y in F2 if comp[(g, y)] not in F)
    M = frozenset(g for g, _ in B)
    V = M | frozenset(G.inv[g] for g in M)
    H1 = F - V
    return WideSubgroupoid(G, H1), VanDantzigTrace(U, K, W, F, B, M, V, H1)


def van_dantzig_trace_violations(G: FiniteGroupoid, trace: VanDantzigTrace) -> list[str]:
    """Recompute every relation between the trace sets; names of failed laws."""
    t = trace
    comp = G.comp_table
    units_ = frozenset(G.unit)
    bad = []
    if not t.K <= t.U:
        bad.append("K <= U")
    if not t.F <= t.K:
        bad.append("F <= K")
    if not units_ <= t.F:
        bad.append("units <= F")
    if frozenset(G.inv[g] for g in t.F) != t.F:
        bad.append("F symmetric")
    W = frozenset((g, y) for g, y in _composable_pairs(G, t.K) if comp[(g, y)] in t.K)
    if W != t.W:
        bad.append("W = m^-1(K) & (K x_G0 K)")
    F2 = _composable_pairs(G, t.F)
    if not F2 <= t.W:
        bad.append("F x_G0 F <= W")
    if t.B != frozenset(p for p in F2 if comp[p] not in t.F):
        bad.append("B = {(g,y) in F2 : gy not in F}")
    if t.M != frozenset(g for g, _ in t.B):
        bad.append("M = p1(B)")
    if t.V != t.M | frozenset(G.inv[g] for g in t.M):
        bad.append("V = M | M^-1")
    if t.H1 != t.F - t.V:
        bad.append("H1 = F - V")
    if not units_ <= t.H1 <= t.U:
        bad.append("units <= H1 <= U")
    if WideSubgroupoid(G, t.H1).violations():
        bad.append("H1 wide subgroupoid")
    return bad


# ---------------------------------------------------------------------------
# skeleta


@dataclass(frozen=True)
class SkeletonResult:
    skeleton: FiniteGroupoid
    inclusion: GroupoidFunctor
    section: tuple[int, ...]


@dataclass(frozen=True)
class TowerSkeleton:
    tower: GroupoidTower
    levels: tuple[SkeletonResult, ...]


def _skeleton_on(G: FiniteGroupoid, section: Sequence[int]) -> SkeletonResult:
    chosen = set(section)
    X, inc = G.full_subgroupoid(chosen)
    return SkeletonResult(X, inc, tuple(section))


def skeletal_replacement(G: FiniteGroupoid | GroupoidTower):
    """Full subgroupoid on one object per component (the least index, or for
    towers the least index lying over the level below's choice)."""
    if isinstance(G, GroupoidTower):
        return _tower_skeleton(G)
    return _skeleton_on(G, pi0(G).representatives)


def _tower_skeleton(T: GroupoidTower) -> TowerSkeleton:
    tower_section(pi0_tower(T))  # raises SectionError on a non-surjective level
    parts = [pi0(G) for G in T.levels]
    sections = [parts[0].representatives]
    for n, F in enumerate(T.transitions):
        up, down = parts[n + 1], parts[n]
        sigma = []
        for c, rep in enumerate(up.representatives):
            want = sections[n][down.component[F.obj_map[rep]]]
            over = [x for x in up.members(c) if F.obj_map[x] == want]
            if not over:
                raise SectionError(
                    f"no object of component {c} at level {n + 1} lies over the chosen object {want}",
                    witness={"level": n + 1, "component": c, "below": want})
            sigma.append(min(over))
        sections.append(tuple(sigma))
    results = [_skeleton_on(G, s) for G, s in zip(T.levels, sections)]
    trans = []
    for n, F in enumerate(T.transitions):
        hi, lo = results[n + 1], results[n]
        obj_pos = {x: i for i, x in enumerate(lo.inclusion.obj_map)}
        mor_pos = {g: i for i, g in enumerate(lo.inclusion.mor_map)}
        trans.append(GroupoidFunctor(
            hi.skeleton, lo.skeleton,
            tuple(obj_pos[F.obj_map[x]] for x in hi.inclusion.obj_map),
            tuple(mor_pos[F.mor_map[g]] for g in hi.inclusion.mor_map)))
    return TowerSkeleton(GroupoidTower(tuple(r.skeleton for r in results), tuple(trans)), tuple(results))


# ---------------------------------------------------------------------------
# normal cores and quotients


def bad_loops(X: FiniteGroupoid, H: WideSubgroupoid) -> frozenset[int]:
    """Loops ``r`` of H with some conjugate ``g r g^-1`` outside H
    (conjugation defined when ``src r == tgt r == tgt g``)."""
    comp = X.comp_table
    out = set()
    for r in H.morphisms:
        x = X.src[r]
        if X.tgt[r] != x:
            continue
        for g in X.hom_sets.get((x, x), ()) if is_skeletal(X) else range(X.num_morphisms):
            if X.tgt[g] == x and comp[(comp[(g, r)], X.inv[g])] not in H.morphisms:
                out.add(r)
                break
    return frozenset(out)


def normal_core(X: FiniteGroupoid, H: WideSubgroupoid) -> WideSubgroupoid:
    """Largest normal wide subgroupoid inside H: ``H1 - H_bad``."""
    _require_skeletal(X, "normal_core")
    _require_wide(H, X, "normal_core")
    return WideSubgroupoid(X, H.morphisms - bad_loops(X, H))


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteGroupoid
    projection: GroupoidFunctor
    cosets: tuple[frozenset[int], ...]


def quotient(X: FiniteGroupoid, N: WideSubgroupoid) -> QuotientResult:
    """``X/N`` for a normal wide N in skeletal X; cosets labelled by least member."""
    _require_skeletal(X, "quotient")
    _require_wide(N, X, "quotient")
    w = N.normality_witness()
    if w is not None:
        r, g = w
        raise NotNormalError("subgroupoid is not normal",
                             witness={"loop": r, "conjugator": g,
                                      "conjugate": X.compose(X.compose(g, r), X.inv[g])})
    return _quotient(X, N)


def _quotient(X: FiniteGroupoid, N: WideSubgroupoid) -> QuotientResult:
    # no checks: callers guarantee X skeletal and N wide and normal
    comp = X.comp_table
    coset_of: dict[int, frozenset[int]] = {}
    for a in range(X.num_morphisms):
        if a in coset_of:
            continue
        x = X.src[a]
        c = frozenset(comp[(a, n)] for n in X.loops(x) if n in N.morphisms)
        for b in c:
            coset_of[b] = c
    cosets = sorted(set(coset_of.values()), key=min)
    idx = {c: i for i, c in enumerate(cosets)}
    proj = tuple(idx[coset_of[a]] for a in range(X.num_morphisms))
    reps = [min(c) for c in cosets]
    qcomp = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            if X.tgt[a] == X.src[b]:
                qcomp[(i, j)] = proj[comp[(a, b)]]
    E = FiniteGroupoid.from_tables(
        X.num_objects, [X.src[a] for a in reps], [X.tgt[a] for a in reps],
        [proj[X.unit[x]] for x in range(X.num_objects)], [proj[X.inv[a]] for a in reps], qcomp)
    return QuotientResult(E, GroupoidFunctor(X, E, tuple(range(X.num_objects)), proj), tuple(cosets))


def _vertex_subgroups(X: FiniteGroupoid, x: int, normal_only: bool) -> list[frozenset[int]]:
    G = isotropy(X, x)
    subs = groups.subgroups(G)
    labelled = [frozenset(G.labels[a] for a in s) for s in subs]
    if not normal_only:
        return labelled
    return [s for s, raw in zip(labelled, subs) if G.is_normal(raw)]


def wide_subgroupoids(X: FiniteGroupoid) -> list[WideSubgroupoid]:
    """Every wide subgroupoid of a skeletal X (product of vertex subgroup lattices)."""
    _require_skeletal(X, "wide_subgroupoids")
    per = [_vertex_subgroups(X, x, False) for x in range(X.num_objects)]
    return [WideSubgroupoid(X, frozenset().union(*choice)) for choice in itertools.product(*per)]


def _sort_basis(basis: Iterable[WideSubgroupoid]) -> list[WideSubgroupoid]:
    return sorted(basis, key=lambda h: (len(h), sorted(h.morphisms)))


def normal_basis(X: FiniteGroupoid | GroupoidTower) -> list[WideSubgroupoid]:
    """All normal wide subgroupoids of a skeletal groupoid, or the kernel
    subgroupoids of the top level of a skeletal tower (one per level, coarsest first)."""
    if isinstance(X, GroupoidTower):
        return kernel_basis_of_tower(X)
    _require_skeletal(X, "normal_basis")
    if X.num_morphisms > LATTICE_LIMIT:
        raise DomainError(f"lattice enumeration is limited to {LATTICE_LIMIT} morphisms; "
                          "use kernel_basis with explicit quotient functors",
                          witness=X.num_morphisms, stage="normal-basis")
    per_object = []
    for x in range(X.num_objects):
        G = isotropy(X, x)
        loops = frozenset(X.loops(x))
        cores = set()
        for s in groups.subgroups(G):
            H = WideSubgroupoid(X, frozenset(G.labels[a] for a in s) | frozenset(X.unit))
            cores.add(frozenset(normal_core(X, H).morphisms & loops))
        per_object.append(sorted(cores, key=lambda s: (len(s), sorted(s))))
    basis = {frozenset().union(*choice) for choice in itertools.product(*per_object)}
    return _sort_basis(WideSubgroupoid(X, b) for b in basis)


def kernel_basis(X: FiniteGroupoid, functors: Sequence[GroupoidFunctor]) -> list[WideSubgroupoid]:
    """Kernels ``{g : F(g) is a unit}`` of functors out of X, in the given order."""
    out = []
    for F in functors:
        if F.source != X:
            raise DomainError("kernel_basis: functor does not start at X")
        out.append(WideSubgroupoid(X, frozenset(
            g for g in range(X.num_morphisms) if F.target.is_unit(F.mor_map[g]))))
    return out


def kernel_basis_of_tower(T: GroupoidTower) -> list[WideSubgroupoid]:
    for n, G in enumerate(T.levels):
        if not is_skeletal(G):
            raise NotSkeletalError(f"level {n} of the tower is not skeletal", witness=n)
    top = T.top
    basis = kernel_basis(top, [T.composite(T.depth, n) for n in range(T.depth + 1)])
    for n, K in enumerate(basis):
        v = K.violations()
        if v:
            raise DomainError(f"kernel at level {n} is not wide", witness=v[0], stage="normal-basis")
        w = K.normality_witness()
        if w is not None:
            raise NotNormalError(f"kernel at level {n} is not normal", witness=w)
        if n > 0 and not K.morphisms <= basis[n - 1].morphisms:
            raise DomainError(f"kernels at levels {n - 1}, {n} are not nested", stage="normal-basis")
    return basis


# ---------------------------------------------------------------------------
# collapse maps and separating families


def collapse(E: FiniteGroupoid, x: int) -> GroupoidFunctor:
    """Retraction of skeletal E onto the one-object groupoid of its loops at x.

    Loops at x go to themselves; every other morphism goes to the identity.
    """
    _require_skeletal(E, "collapse")
    if not 0 <= x < E.num_objects:
        raise DomainError(f"object {x} out of range", witness=x, stage="collapse")
    G = isotropy(E, x)
    pos = {g: i for i, g in enumerate(G.labels)}
    target = group_groupoid(G)
    mor = tuple(pos[g] if E.src[g] == x else G.identity for g in range(E.num_morphisms))
    return GroupoidFunctor(E, target, (0,) * E.num_objects, mor)


def vertex_inclusion(E: FiniteGroupoid, x: int) -> GroupoidFunctor:
    G = isotropy(E, x)
    return GroupoidFunctor(group_groupoid(G), E, (x,), tuple(G.labels))


def two_block_functor(E: FiniteGroupoid, block: frozenset[int]) -> GroupoidFunctor:
    """Objects in ``block`` go to object 0 of the two-object discrete groupoid, the rest to 1."""
    target = discrete_groupoid(2)
    obj = tuple(0 if x in block else 1 for x in range(E.num_objects))
    return GroupoidFunctor(E, target, obj, tuple(obj[E.src[g]] for g in range(E.num_morphisms)))


def separating_family(E: FiniteGroupoid) -> list[GroupoidFunctor]:
    """Two-block partition functors (block containing object 0 listed first)
    followed by the collapse map at every object."""
    _require_skeletal(E, "separating_family")
    fam = []
    rest = list(range(1, E.num_objects))
    for k in range(0, len(rest)):
        for extra in itertools.combinations(rest, k):
            fam.append(two_block_functor(E, frozenset((0,) + extra)))
    fam += [collapse(E, x) for x in range(E.num_objects)]
    return fam


@dataclass(frozen=True)
class SeparationReport:
    objects_injective: bool
    morphisms_injective: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.objects_injective and self.morphisms_injective


def separation_report(E: FiniteGroupoid, family: Sequence[GroupoidFunctor]) -> SeparationReport:
    """Injectivity of the product map into the product of the family's targets."""
    seen: dict[tuple, int] = {}
    obj_ok, witness = True, None
    for x in range(E.num_objects):
        key = tuple(F.obj_map[x] for F in family)
        if key in seen:
            obj_ok, witness = False, ("objects", seen[key], x)
            break
        seen[key] = x
    seen = {}
    mor_ok = True
    for g in range(E.num_morphisms):
        key = tuple(F.mor_map[g] for F in family)
        if key in seen:
            mor_ok = False
            witness = witness or ("morphisms", seen[key], g)
            break
        seen[key] = g
    return SeparationReport(obj_ok, mor_ok, witness)


# ---------------------------------------------------------------------------
# inverse limit of quotients


@dataclass(frozen=True)
class ReconstructionResult:
    objects_injective: bool
    objects_surjective: bool
    morphisms_injective: bool
    morphisms_surjective: bool
    witness: dict | None = None
    families: int = 0

    @property
    def bijective(self) -> bool:
        return (self.objects_injective and self.objects_surjective
                and self.morphisms_injective and self.morphisms_surjective)


def _limit_points(sizes: Sequence[int], edges: dict[tuple[int, int], Sequence[int]]) -> list[tuple[int, ...]]:
    """Points of the limit of a finite diagram of finite sets.

    ``edges[(i, j)]`` is the map from set i to set j; a point picks one element
    per set with ``edges[(i,j)][p_i] == p_j`` for every edge.  Sets are visited
    in index order, so callers should list sources before targets.
    """
    out_edges: dict[int, list[int]] = {}
    in_edges: dict[int, list[int]] = {}
    for i, j in edges:
        out_edges.setdefault(i, []).append(j)
        in_edges.setdefault(j, []).append(i)
    n = len(sizes)
    points: list[tuple[int, ...]] = []
    choice = [0] * n

    def consistent(k: int, v: int) -> bool:
        for j in out_edges.get(k, ()):
            if j < k and edges[(k, j)][v] != choice[j]:
                return False
        for i in in_edges.get(k, ()):
            if i < k and edges[(i, k)][choice[i]] != v:
                return False
        return True

    def go(k: int):
        if k == n:
            points.append(tuple(choice))
            return
        forced = [edges[(i, k)][choice[i]] for i in in_edges.get(k, ()) if i < k]
        cands = [forced[0]] if forced else range(sizes[k])
        for v in cands:
            if consistent(k, v):
                choice[k] = v
                go(k + 1)

    go(0)
    return points


def reconstruct(X: FiniteGroupoid | GroupoidTower,
                basis: Sequence[WideSubgroupoid] | None = None) -> ReconstructionResult:
    """Check that ``X -> lim_{H in basis} X/H`` is bijective on objects and morphisms.

    The basis is ordered by reverse inclusion; there is a transition ``X/H ->
    X/H'`` exactly when ``H <= H'``.  With no basis given, a groupoid uses its
    full normal basis and a tower uses the kernels at its top level.
    """
    trusted = basis is None
    if isinstance(X, GroupoidTower):
        basis = normal_basis(X) if basis is None else basis
        X = X.top
    elif basis is None:
        basis = normal_basis(X)
    _require_skeletal(X, "reconstruct")
    order = sorted(range(len(basis)), key=lambda i: (len(basis[i]), sorted(basis[i].morphisms)))
    members = [basis[i] for i in order]
    quots = [(_quotient if trusted else quotient)(X, H) for H in members]
    k = len(members)
    mor_edges: dict[tuple[int, int], Sequence[int]] = {}
    obj_edges: dict[tuple[int, int], Sequence[int]] = {}
    below = [[j for j in range(k) if i != j and members[i].morphisms <= members[j].morphisms
              and not (members[i].morphisms == members[j].morphisms and j < i)] for i in range(k)]
    for i in range(k):
        # covering relations suffice: the quotient maps compose, so a family
        # compatible along covers is compatible along every inclusion
        covers = [j for j in below[i] if not any(j in below[m] for m in below[i])]
        for j in covers:
                pj = quots[j].projection.mor_map
                mor_edges[(i, j)] = tuple(pj[min(c)] for c in quots[i].cosets)
                obj_edges[(i, j)] = tuple(range(X.num_objects))
    obj_points = _limit_points([X.num_objects] * k, obj_edges)
    mor_points = _limit_points([q.quotient.num_morphisms for q in quots], mor_edges)

    obj_image = [tuple(x for _ in range(k)) for x in range(X.num_objects)]
    mor_image = [tuple(q.projection.mor_map[g] for q in quots) for g in range(X.num_morphisms)]
    witness = None

    def collisions(images):
        seen: dict[tuple, int] = {}
        out = []
        for a, key in enumerate(images):
            if key in seen:
                out.append([seen[key], a])
            else:
                seen[key] = a
        return out

    oc = collisions(obj_image)
    mc = collisions(mor_image)
    o_missing = sorted(set(obj_points) - set(obj_image))
    m_missing = sorted(set(mor_points) - set(mor_image))
    if mc:
        witness = {"kind": "morphisms-not-injective", "pair": mc[0], "collisions": mc}
    elif oc:
        witness = {"kind": "objects-not-injective", "pair": oc[0], "collisions": oc}
    elif m_missing:
        witness = {"kind": "morphisms-not-surjective", "thread": list(m_missing[0])}
    elif o_missing:
        witness = {"kind": "objects-not-surjective", "thread": list(o_missing[0])}
    return ReconstructionResult(not oc, not o_missing, not mc, not m_missing,
                                witness, len(mor_points))
