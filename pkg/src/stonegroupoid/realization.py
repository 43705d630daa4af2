"""Realization of skeletal groupoids and towers as (towers of) pi-finite 1-types.

A skeletal finite groupoid is recorded as its component set plus one group per
component, the basepoint of each component being the skeleton object itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import (WideSubgroupoid, normal_basis, quotient,
                            skeletal_replacement, van_dantzig)
from .errors import DepthError, DomainError, NotSkeletalError
from .finite_groupoid import (FiniteGroupoid, GroupoidFunctor, is_skeletal, isotropy,
                              whitehead_equivalence)
from .groups import FiniteGroup, find_isomorphism, is_homomorphism
from .tower import GroupoidTower, SetTower, pi0_tower, threads_at_depth, truncate, validate_tower

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PiFiniteOneType:
    pi0: tuple[int, ...]
    groups: tuple[FiniteGroup, ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.groups)


@dataclass(frozen=True)
class LevelMap:
    """Map from level ``n+1`` to level ``n``: components, then one group
    homomorphism per source component (as an element-index tuple)."""

    pi0: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AnimaPresentation:
    levels: tuple[PiFiniteOneType, ...]
    transitions: tuple[LevelMap, ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def violations(self) -> list[tuple]:
        out = []
        for n, lv in enumerate(self.levels):
            if len(lv.pi0) != len(lv.groups):
                out.append(("group-count", n))
            for c, g in enumerate(lv.groups):
                if g.violations():
                    out.append(("group-axioms", n, c))
        for n, t in enumerate(self.transitions):
            hi, lo = self.levels[n + 1], self.levels[n]
            if len(t.pi0) != len(hi.pi0) or any(not 0 <= c < len(lo.pi0) for c in t.pi0):
                out.append(("pi0-map", n))
                continue
            for c, f in enumerate(t.groups):
                a, b = hi.groups[c], lo.groups[t.pi0[c]]
                if len(f) != a.order or any(not 0 <= v < b.order for v in f) or not is_homomorphism(a, b, f):
                    out.append(("group-homomorphism", n, c))
        return out


def one_types_isomorphic(a: PiFiniteOneType, b: PiFiniteOneType) -> bool:
    """Component bijection matching groups up to isomorphism."""
    if len(a.groups) != len(b.groups):
        return False
    unused = list(range(len(b.groups)))
    for g in a.groups:
        for k in unused:
            if find_isomorphism(g, b.groups[k]) is not None:
                unused.remove(k)
                break
        else:
            return False
    return True


def realize_finite(X: FiniteGroupoid) -> PiFiniteOneType:
    if not is_skeletal(X):
        raise NotSkeletalError("realize needs a skeletal groupoid; run skeletonize first")
    return PiFiniteOneType(tuple(range(X.num_objects)),
                           tuple(isotropy(X, x) for x in range(X.num_objects)))


def _group_map(F: GroupoidFunctor, a: FiniteGroup, b: FiniteGroup) -> tuple[int, ...]:
    pos = {g: i for i, g in enumerate(b.labels)}
    return tuple(pos[F.mor_map[g]] for g in a.labels)


def realize_tower(T: GroupoidTower) -> AnimaPresentation:
    for n, G in enumerate(T.levels):
        if not is_skeletal(G):
            raise NotSkeletalError(f"level {n} is not skeletal; skeletonize the tower first",
                                   witness=n)
    levels = tuple(realize_finite(G) for G in T.levels)
    trans = []
    for n, F in enumerate(T.transitions):
        hi, lo = levels[n + 1], levels[n]
        trans.append(LevelMap(
            tuple(F.obj_map),
            tuple(_group_map(F, hi.groups[c], lo.groups[F.obj_map[c]]) for c in hi.pi0)))
    return AnimaPresentation(levels, tuple(trans))


# ---------------------------------------------------------------------------
# limit commutation at finite depth


@dataclass
class LimitCheck:
    ok: bool
    witnesses: list[dict] = field(default_factory=list)
    pi0_threads: int = 0
    isotropy_orders: dict[int, int] = field(default_factory=dict)


def limit_commutation_check(T: GroupoidTower, d: int) -> LimitCheck:
    """pi_0 and pi_1 of the depth-``d`` limit against the level-``d`` groupoid.

    (a) threads of the component tower, at every level ``n <= d``, biject with
    the components of level ``n``; (b) along each component thread, threads of
    isotropy elements biject with every level's isotropy and form a group
    isomorphic to the level-``d`` isotropy under componentwise multiplication.
    Failures carry the unreachable element as witness.
    """
    if not 0 <= d <= T.depth:
        raise DepthError(f"depth {d} out of range 0..{T.depth}", witness=d)
    Td = truncate(T, d)
    for n, G in enumerate(Td.levels):
        if not is_skeletal(G):
            raise NotSkeletalError(f"level {n} is not skeletal", witness=n)
    res = LimitCheck(True)
    P = pi0_tower(Td)
    top_threads = threads_at_depth(P, d)
    res.pi0_threads = len(top_threads)
    if len({t[d] for t in top_threads}) != P.sizes[d] or len(top_threads) != P.sizes[d]:
        res.ok = False
        res.witnesses.append({"kind": "pi0-top", "level": d})
    for n in range(d + 1):
        reached = {t[n] for t in threads_at_depth(P, n)}
        for e in range(P.sizes[n]):
            if e not in reached:
                res.ok = False
                res.witnesses.append({"kind": "pi0-unreachable", "level": n, "component": e})

    for thread in top_threads:
        groups_ = [isotropy(Td.levels[n], thread[n]) for n in range(d + 1)]
        maps = [_group_map(F, groups_[n + 1], groups_[n]) for n, F in enumerate(Td.transitions)]
        S = SetTower(tuple(g.order for g in groups_), tuple(maps))
        top = groups_[d]
        for n in range(d + 1):
            reached = {t[n] for t in threads_at_depth(S, n)}
            for e in range(groups_[n].order):
                if e not in reached:
                    res.ok = False
                    res.witnesses.append({"kind": "pi1-unreachable", "component_thread": list(thread),
                                          "level": n, "morphism": groups_[n].labels[e]})
        threads = threads_at_depth(S, d)
        by_top = {t[d]: t for t in threads}
        if len(by_top) != top.order:
            res.ok = False
            res.witnesses.append({"kind": "pi1-top", "component_thread": list(thread)})
            continue
        # componentwise product of threads must again be a thread, over the product at the top
        for a in range(top.order):
            for b in range(top.order):
                prod = tuple(groups_[n].table[by_top[a][n]][by_top[b][n]] for n in range(d + 1))
                if prod != by_top[top.table[a][b]]:
                    res.ok = False
                    res.witnesses.append({"kind": "pi1-not-homomorphic", "component_thread": list(thread),
                                          "pair": [top.labels[a], top.labels[b]]})
                    break
            else:
                continue
            break
        res.isotropy_orders[thread[d]] = len(threads)
    return res


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class PipelineResult:
    presentation: AnimaPresentation
    trace: dict


def _restrict_tower(T: GroupoidTower, subsets: Sequence[frozenset[int]]) -> GroupoidTower:
    subs = [WideSubgroupoid(G, s).as_groupoid() for G, s in zip(T.levels, subsets)]
    trans = []
    for n, F in enumerate(T.transitions):
        (hi, hi_inc), (lo, lo_inc) = subs[n + 1], subs[n]
        pos = {g: i for i, g in enumerate(lo_inc.mor_map)}
        trans.append(GroupoidFunctor(hi, lo, F.obj_map, tuple(pos[F.mor_map[g]] for g in hi_inc.mor_map)))
    return GroupoidTower(tuple(s for s, _ in subs), tuple(trans))


def _van_dantzig_tower(T: GroupoidTower, U: Iterable[int]) -> tuple[GroupoidTower, list[dict]]:
    U = frozenset(U)
    records = []
    raw = []
    for n in range(T.depth + 1):
        F = T.composite(T.depth, n)
        Un = frozenset(F.mor_map[g] for g in U)
        H, tr = van_dantzig(T.levels[n], Un)
        raw.append(H.morphisms)
        records.append({"level": n, "U": sorted(tr.U), "K": sorted(tr.K),
                        "W": sorted(map(list, tr.W)), "F": sorted(tr.F), "B": sorted(map(list, tr.B)),
                        "M": sorted(tr.M), "V": sorted(tr.V), "H1": sorted(tr.H1)})
    compatible = [raw[0]]
    for n, F in enumerate(T.transitions):
        compatible.append(frozenset(g for g in raw[n + 1] if F.mor_map[g] in compatible[n]))
    for rec, h in zip(records, compatible):
        rec["compatible_H1"] = sorted(h)
    return _restrict_tower(T, compatible), records


@dataclass(frozen=True)
class LevelQuotient:
    """A quotient level: ``quotient`` keeps one object per class (``representatives``,
    as objects of ``X``); ``cosets[i]`` is the set of morphisms of ``X`` at that
    representative that morphism ``i`` stands for."""

    quotient: FiniteGroupoid
    projection: GroupoidFunctor
    cosets: tuple[frozenset[int], ...]
    representatives: tuple[int, ...]


def presentation_tower(X: FiniteGroupoid, basis: Sequence[WideSubgroupoid],
                       down: Sequence[GroupoidFunctor] | None = None) -> tuple[GroupoidTower, list]:
    """Tower of quotients of ``X``, coarsest first.

    Level ``n`` is ``X`` modulo ``basis[n]``; when ``down[n]`` (a functor out of
    ``X``, surjective and star-surjective, whose kernel is ``basis[n]``) is
    given, objects with the same image are identified as well, so the level is
    the coimage of ``down[n]``.  The basis is put in reverse-inclusion order
    first, so the result does not depend on the order it was given in; it must
    be a chain.
    """
    pairs = list(zip(basis, down)) if down is not None else [(H, None) for H in basis]
    pairs.sort(key=lambda hf: (-len(hf[0]), sorted(hf[0].morphisms),
                               () if hf[1] is None else hf[1].obj_map))
    chain = [H for H, _ in pairs]
    for a, b in zip(chain, chain[1:]):
        if not b.morphisms <= a.morphisms:
            raise DomainError("basis is not a chain under inclusion",
                              witness=[sorted(a.morphisms), sorted(b.morphisms)], stage="quotient")
    quots = [_coimage(X, H, F) for H, F in pairs]
    trans = []
    for n in range(len(quots) - 1):
        hi, lo = quots[n + 1], quots[n]
        trans.append(GroupoidFunctor(hi.quotient, lo.quotient,
                                     tuple(lo.projection.obj_map[x] for x in hi.representatives),
                                     tuple(lo.projection.mor_map[min(c)] for c in hi.cosets)))
    return GroupoidTower(tuple(q.quotient for q in quots), tuple(trans)), quots


def _coimage(X: FiniteGroupoid, H: WideSubgroupoid, F: GroupoidFunctor | None) -> LevelQuotient:
    q = quotient(X, H)
    if F is None or len(set(F.obj_map)) == X.num_objects:
        return LevelQuotient(q.quotient, q.projection, q.cosets, tuple(range(X.num_objects)))
    first: dict[int, int] = {}
    for x, o in enumerate(F.obj_map):
        first.setdefault(o, x)
    reps = sorted(first.values())
    E, inc = q.quotient.full_subgroupoid(reps)
    cosets = tuple(q.cosets[m] for m in inc.mor_map)
    # a morphism of E is determined by its image under F (the kernel is killed
    # and objects over one target were merged), so project through F
    by_image = {F.mor_map[min(c)]: i for i, c in enumerate(cosets)}
    obj_index = {x: i for i, x in enumerate(reps)}
    proj = GroupoidFunctor(X, E, tuple(obj_index[first[o]] for o in F.obj_map),
                           tuple(by_image[F.mor_map[g]] for g in range(X.num_morphisms)))
    return LevelQuotient(E, proj, cosets, tuple(reps))


def pipeline(T: GroupoidTower | FiniteGroupoid, U: Iterable[int] | None = None) -> PipelineResult:
    """Validate, optionally shrink to a van Dantzig subgroupoid, skeletonize,
    take the kernel basis, quotient, and realize."""
    if isinstance(T, FiniteGroupoid):
        T = GroupoidTower((T,), ())
    trace: dict = {}

    def stage(name):
        log.debug("pipeline stage %s", name)
        return name

    name = stage("validate")
    try:
        rep = validate_tower(T)
    except DomainError as e:
        e.stage = name
        raise
    trace["validate"] = {"violations": [list(v) for v in rep.violations]}
    if not rep.ok:
        raise DomainError("input tower is not valid", witness=rep.violations[:10], stage=name)

    if U is not None:
        name = stage("van-dantzig")
        try:
            T, records = _van_dantzig_tower(T, U)
        except DomainError as e:
            e.stage = name
            raise
        trace["van_dantzig"] = records

    name = stage("skeleton")
    try:
        sk = skeletal_replacement(T)
    except DomainError as e:
        e.stage = name
        raise
    trace["skeleton"] = [{"level": n, "section": list(r.section),
                          "objects": list(r.inclusion.obj_map), "morphisms": list(r.inclusion.mor_map)}
                         for n, r in enumerate(sk.levels)]
    X = sk.tower

    name = stage("normal-basis")
    try:
        basis = normal_basis(X)
    except DomainError as e:
        e.stage = name
        raise
    trace["normal_basis"] = [sorted(H.morphisms) for H in basis]

    name = stage("quotient")
    try:
        down = [X.composite(X.depth, n) for n in range(X.depth + 1)]
        Q, quots = presentation_tower(X.top, basis, down)
    except DomainError as e:
        e.stage = name
        raise
    trace["quotients"] = [{"level": n, "objects": list(q.representatives),
                           "cosets": [sorted(c) for c in q.cosets]} for n, q in enumerate(quots)]
    comparison = []
    for n, q in enumerate(quots):
        induced = GroupoidFunctor(q.quotient, X.levels[n], tuple(down[n].obj_map[x] for x in q.representatives),
                                  tuple(down[n].mor_map[min(c)] for c in q.cosets))
        comparison.append({"level": n, "whitehead": whitehead_equivalence(induced)})
    trace["comparison"] = comparison

    name = stage("realize")
    pres = realize_tower(Q)
    trace["realize"] = {"orders": [list(lv.orders) for lv in pres.levels]}
    return PipelineResult(pres, trace)
