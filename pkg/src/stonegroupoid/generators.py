"""Deterministic input generators: p-power towers, pair and action groupoids,
and seeded random groupoids, towers and functors for property testing."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .constructions import (WideSubgroupoid, collapse, normal_basis, quotient,
                            skeletal_replacement)
from .errors import GeneratorSpecError
from .finite_groupoid import (FiniteGroupoid, GroupoidFunctor, action_groupoid,
                              disjoint_union, group_groupoid, pair_groupoid, relabel)
from .groups import FiniteGroup, cyclic, find_isomorphism, normal_subgroups, small_groups, subgroups
from .tower import GroupoidTower

KINDS = ("cyclic-tower", "pair", "action", "translation-tower", "action-tower", "random", "random-tower")
TOWER_KINDS = ("cyclic-tower", "translation-tower", "action-tower", "random-tower")
PRIMES = (2, 3, 5, 7)
MAX_DEPTH = 8
# keeps p**depth-sized levels at desk scale
MAX_LEVEL_MORPHISMS = 1 << 16


@dataclass(frozen=True)
class GeneratorSpec:
    """``depth`` counts tower levels: level k (1-based) of the p-power towers
    is built from ``Z/p^k``.  ``n`` sizes the pair groupoid; ``components``
    and ``max_morphisms`` bound the random kinds."""

    kind: str
    p: int = 2
    depth: int = 3
    n: int = 3
    seed: int = 0
    components: int = 4
    max_morphisms: int = 24

    def problems(self) -> list[tuple[str, str]]:
        out = []
        if self.kind not in KINDS:
            out.append(("kind", f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}"))
        if self.p not in PRIMES:
            out.append(("p", f"p must be one of {PRIMES}"))
        if not 1 <= self.depth <= MAX_DEPTH:
            out.append(("depth", f"depth must lie in 1..{MAX_DEPTH}"))
        if self.n < 1 or self.n > 64:
            out.append(("n", "n must lie in 1..64"))
        if self.components < 1:
            out.append(("components", "components must be positive"))
        if self.max_morphisms < 1:
            out.append(("max_morphisms", "max_morphisms must be positive"))
        if not out and self.kind in ("cyclic-tower", "action-tower", "action") \
                and self.p ** self.depth * (self.p if self.kind != "cyclic-tower" else 1) > MAX_LEVEL_MORPHISMS:
            out.append(("depth", f"p^depth too large (levels capped at {MAX_LEVEL_MORPHISMS} morphisms)"))
        if not out and self.kind == "translation-tower" and self.p ** (2 * self.depth) > MAX_LEVEL_MORPHISMS:
            out.append(("depth", f"p^(2 depth) too large (levels capped at {MAX_LEVEL_MORPHISMS} morphisms)"))
        return out


def generate(spec: GeneratorSpec) -> FiniteGroupoid | GroupoidTower:
    bad = spec.problems()
    if bad:
        field_, msg = bad[0]
        raise GeneratorSpecError(msg, witness={"field": field_})
    k, p = spec.kind, spec.p
    if k == "cyclic-tower":
        return cyclic_tower(p, spec.depth)
    if k == "pair":
        return pair_groupoid(spec.n)
    if k == "action":
        return reduction_action(p, spec.depth)
    if k == "translation-tower":
        return translation_tower(p, spec.depth)
    if k == "action-tower":
        return action_tower(p, spec.depth)
    if k == "random":
        return random_groupoid(random.Random(spec.seed), spec.max_morphisms, spec.components)
    return random_tower(random.Random(spec.seed), spec.depth, min(spec.max_morphisms, 16), spec.components)


# ---------------------------------------------------------------------------
# p-power towers


def _cyclic_level(p: int, n: int) -> tuple[FiniteGroupoid, GroupoidFunctor | None]:
    G = group_groupoid(cyclic(p ** (n + 1)))
    if n == 0:
        return G, None
    below = p ** n
    return G, GroupoidFunctor(G, group_groupoid(cyclic(below)), (0,), tuple(i % below for i in range(p * below)))


def cyclic_tower(p: int, depth: int) -> GroupoidTower:
    """``BZ/p <- BZ/p^2 <- ... <- BZ/p^depth`` under reduction."""
    levels = [_cyclic_level(p, n) for n in range(depth)]
    return GroupoidTower(tuple(g for g, _ in levels), tuple(t for _, t in levels[1:]),
                         extend=lambda n: _cyclic_level(p, n))


def _reduction_action(p: int, order: int, points: int) -> FiniteGroupoid:
    return action_groupoid(cyclic(order), points, lambda g, s: (s + g) % points)


def reduction_action(p: int, k: int) -> FiniteGroupoid:
    """``Z/p^k`` acting on ``Z/p`` through reduction mod ``p``."""
    return _reduction_action(p, p ** k, p)


def _action_transition(hi: FiniteGroupoid, lo: FiniteGroupoid, order_hi: int, order_lo: int,
                       pts_hi: int, pts_lo: int) -> GroupoidFunctor:
    # morphism s*|G| + g of the action groupoid is s -> g.s
    mor = tuple((s % pts_lo) * order_lo + g % order_lo for s in range(pts_hi) for g in range(order_hi))
    return GroupoidFunctor(hi, lo, tuple(s % pts_lo for s in range(pts_hi)), mor)


def _tower_from_actions(p: int, depth: int, points) -> GroupoidTower:
    levels = [_reduction_action(p, p ** k, points(k)) for k in range(1, depth + 1)]
    trans = [_action_transition(levels[n + 1], levels[n], p ** (n + 2), p ** (n + 1), points(n + 2), points(n + 1))
             for n in range(depth - 1)]
    return GroupoidTower(tuple(levels), tuple(trans))


def translation_tower(p: int, depth: int) -> GroupoidTower:
    """``Z/p^k`` acting on itself by translation, reduced mod ``p^k`` level to level."""
    return _tower_from_actions(p, depth, lambda k: p ** k)


def action_tower(p: int, depth: int) -> GroupoidTower:
    """``Z/p^k`` acting on ``Z/p`` via reduction; isotropy at level k is ``Z/p^(k-1)``."""
    return _tower_from_actions(p, depth, lambda k: p)


# ---------------------------------------------------------------------------
# random groupoids


def _library(max_order: int) -> list[tuple[str, FiniteGroup]]:
    return small_groups(min(max_order, 24))


@lru_cache(maxsize=None)
def _coset_actions(max_morphisms: int) -> tuple[tuple[str, int, tuple[tuple[int, ...], ...]], ...]:
    """Transitive actions ``G -> G/S`` whose action groupoid fits the budget.

    Each entry is ``(group name, number of cosets, action table)`` where the
    table sends ``(g, coset)`` to the coset index.
    """
    out = []
    for name, g in _library(max_morphisms):
        for s in subgroups(g):
            idx = g.order // len(s)
            if idx * g.order > max_morphisms:
                continue
            cosets: list[frozenset[int]] = []
            where = {}
            for a in range(g.order):
                if a not in where:
                    c = frozenset(g.table[a][h] for h in s)
                    for b in c:
                        where[b] = len(cosets)
                    cosets.append(c)
            act = tuple(tuple(where[g.table[h][min(c)]] for c in cosets) for h in range(g.order))
            out.append((name, idx, act))
    return tuple(out)


@lru_cache(maxsize=None)
def _group_of(name: str) -> FiniteGroup:
    return dict(small_groups())[name]


def shuffled(G: FiniteGroupoid, rng: random.Random) -> FiniteGroupoid:
    obj = list(range(G.num_objects))
    mor = list(range(G.num_morphisms))
    rng.shuffle(obj)
    rng.shuffle(mor)
    return relabel(G, obj, mor)[0]


def random_groupoid(rng: random.Random, max_morphisms: int = 24, components: int = 4,
                    shuffle: bool = True) -> FiniteGroupoid:
    """Disjoint union of transitive coset actions, then a random relabelling."""
    parts = []
    budget = max_morphisms
    for _ in range(rng.randint(1, components)):
        choices = [c for c in _coset_actions(max_morphisms) if c[1] * _group_of(c[0]).order <= budget]
        if not choices:
            break
        name, idx, act = rng.choice(choices)
        g = _group_of(name)
        parts.append(action_groupoid(g, idx, lambda h, s, act=act: act[h][s]))
        budget -= idx * g.order
    G = disjoint_union(*parts)
    return shuffled(G, rng) if shuffle else G


def random_skeletal(rng: random.Random, max_morphisms: int = 16, components: int = 4) -> FiniteGroupoid:
    groups = []
    budget = max_morphisms
    for _ in range(rng.randint(1, components)):
        choices = [g for _, g in _library(budget) if g.order <= budget]
        if not choices:
            break
        g = rng.choice(choices)
        groups.append(g)
        budget -= g.order
    return disjoint_union(*(group_groupoid(g) for g in groups))


def random_unit_neighborhood(G: FiniteGroupoid, rng: random.Random) -> frozenset[int]:
    density = rng.random()
    return frozenset(G.unit) | frozenset(g for g in range(G.num_morphisms) if rng.random() < density)


# ---------------------------------------------------------------------------
# random skeletal towers


@lru_cache(maxsize=None)
def _surjections(max_order: int) -> dict[str, tuple[tuple[str, tuple[int, ...]], ...]]:
    """For each library group, every ``(H, surjection H -> G)`` arising as
    ``H/N`` with ``|H| <= max_order`` (one iso per pair ``(H, N)``)."""
    lib = _library(max_order)
    out: dict[str, list] = {name: [] for name, _ in lib}
    for hname, h in lib:
        for N in normal_subgroups(h):
            q, proj = h.quotient(N)
            for gname, g in lib:
                if g.order != q.order:
                    continue
                iso = find_isomorphism(q, g)
                if iso is not None:
                    out[gname].append((hname, tuple(iso[proj[a]] for a in range(h.order))))
                    break
    return {k: tuple(v) for k, v in out.items()}


def _skeletal_level(names: list[str]) -> tuple[FiniteGroupoid, list[int]]:
    offsets, total = [], 0
    for n in names:
        offsets.append(total)
        total += _group_of(n).order
    return disjoint_union(*(group_groupoid(_group_of(n)) for n in names)), offsets


def random_tower(rng: random.Random, depth: int = 3, max_morphisms: int = 16, components: int = 3,
                 shuffle: bool = True) -> GroupoidTower:
    """Valid skeletal tower with ``depth`` levels, each of at most ``max_morphisms``.

    Each component of level ``n+1`` carries a group surjecting onto the group
    of the component below it; every lower component gets at least one lift.
    """
    surj = _surjections(max_morphisms)
    base: list[str] = []
    budget = max_morphisms
    for _ in range(rng.randint(1, components)):
        choices = [n for n, g in _library(budget) if g.order <= budget]
        name = rng.choice(choices)
        base.append(name)
        budget -= _group_of(name).order
        if budget <= 0:
            break
    names = [base]
    maps: list[list[tuple[int, tuple[int, ...]]]] = []
    for _ in range(depth - 1):
        below = names[-1]
        budget = max_morphisms - sum(_group_of(n).order for n in below)
        up, up_maps = [], []
        for c, gname in enumerate(below):
            g = _group_of(gname)
            fits = [(h, f) for h, f in surj[gname] if _group_of(h).order - g.order <= budget]
            h, f = rng.choice(fits)
            budget -= _group_of(h).order - g.order
            up.append(h)
            up_maps.append((c, f))
        # occasionally split a component into an extra copy
        for c, gname in enumerate(below):
            fits = [(h, f) for h, f in surj[gname] if _group_of(h).order <= budget]
            if fits and rng.random() < 0.25:
                h, f = rng.choice(fits)
                budget -= _group_of(h).order
                up.append(h)
                up_maps.append((c, f))
        names.append(up)
        maps.append(up_maps)

    levels, offsets = zip(*(_skeletal_level(ns) for ns in names))
    trans = []
    for n, up_maps in enumerate(maps):
        hi, lo = levels[n + 1], levels[n]
        mor = []
        for (c, f) in up_maps:
            mor += [offsets[n][c] + v for v in f]
        trans.append(GroupoidFunctor(hi, lo, tuple(c for c, _ in up_maps), tuple(mor)))
    T = GroupoidTower(tuple(levels), tuple(trans))
    return shuffled_tower(T, rng) if shuffle else T


def shuffled_tower(T: GroupoidTower, rng: random.Random) -> GroupoidTower:
    """Relabel objects and morphisms of every level independently."""
    isos = []
    for G in T.levels:
        obj = list(range(G.num_objects))
        mor = list(range(G.num_morphisms))
        rng.shuffle(obj)
        rng.shuffle(mor)
        isos.append(relabel(G, obj, mor))
    trans = []
    for n, F in enumerate(T.transitions):
        (hi, up), (lo, dn) = isos[n + 1], isos[n]
        obj = [0] * hi.num_objects
        mor = [0] * hi.num_morphisms
        for x in range(F.source.num_objects):
            obj[up.obj_map[x]] = dn.obj_map[F.obj_map[x]]
        for g in range(F.source.num_morphisms):
            mor[up.mor_map[g]] = dn.mor_map[F.mor_map[g]]
        trans.append(GroupoidFunctor(hi, lo, tuple(obj), tuple(mor)))
    return GroupoidTower(tuple(G for G, _ in isos), tuple(trans))


def broken_tower() -> GroupoidTower:
    """``BZ/2 <- BZ/2`` with the trivial map: objects surject, the group map does not."""
    G = group_groupoid(cyclic(2))
    return GroupoidTower((G, G), (GroupoidFunctor(G, G, (0,), (0, 0)),))


# ---------------------------------------------------------------------------
# random functors


def pullback(G: FiniteGroupoid, phi: list[int]) -> tuple[FiniteGroupoid, GroupoidFunctor]:
    """Groupoid on objects ``s`` with ``hom(s, t) = hom(phi s, phi t)``, and its
    projection to ``G``.  An equivalence exactly when ``phi`` meets every component."""
    S = len(phi)
    triples = [(s, t, g) for s in range(S) for t in range(S) for g in G.hom(phi[s], phi[t])]
    index = {m: i for i, m in enumerate(triples)}
    comp = {}
    for (s, t, g) in triples:
        for u in range(S):
            for h in G.hom(phi[t], phi[u]):
                comp[(index[(s, t, g)], index[(t, u, h)])] = index[(s, u, G.compose(g, h))]
    P = FiniteGroupoid.from_tables(
        S, [s for s, _, _ in triples], [t for _, t, _ in triples],
        [index[(s, s, G.unit[phi[s]])] for s in range(S)],
        [index[(t, s, G.inv[g])] for s, t, g in triples], comp)
    return P, GroupoidFunctor(P, G, tuple(phi), tuple(g for _, _, g in triples))


def _random_functor_once(rng: random.Random, max_morphisms: int) -> GroupoidFunctor:
    kind = rng.choice(("pullback", "skeleton", "quotient", "wide", "full", "relabel", "collapse", "group"))
    G = random_groupoid(rng, max(1, max_morphisms // 2), 3)
    if kind == "pullback":
        for _ in range(8):
            phi = [rng.randrange(G.num_objects) for _ in range(rng.randint(1, G.num_objects + 2))]
            P, F = pullback(G, phi)
            if P.num_morphisms <= max_morphisms:
                return F
        return GroupoidFunctor.identity(G)
    if kind == "skeleton":
        return skeletal_replacement(G).inclusion
    if kind == "full":
        objs = [x for x in range(G.num_objects) if rng.random() < 0.6] or [0]
        return G.full_subgroupoid(objs)[1]
    if kind == "wide":
        keep = set(G.unit) | {g for g in range(G.num_morphisms) if rng.random() < 0.5}
        while True:
            grown = keep | {G.inv[g] for g in keep} | {gy for g, y, gy in G.comp if g in keep and y in keep}
            if grown == keep:
                break
            keep = grown
        return G.subgroupoid(range(G.num_objects), keep)[1]
    if kind == "relabel":
        obj = list(range(G.num_objects))
        mor = list(range(G.num_morphisms))
        rng.shuffle(obj)
        rng.shuffle(mor)
        return relabel(G, obj, mor)[1]
    X = skeletal_replacement(G).skeleton
    if kind == "collapse":
        return collapse(X, rng.randrange(X.num_objects))
    if kind == "quotient":
        basis = normal_basis(X) if X.num_morphisms <= 24 else [WideSubgroupoid(X, frozenset(X.unit))]
        return quotient(X, rng.choice(basis)).projection
    # group homomorphisms: quotient maps composed with subgroup inclusions
    names = [n for n, g in _library(max_morphisms) if g.order <= max_morphisms]
    g = _group_of(rng.choice(names))
    N = rng.choice(normal_subgroups(g))
    q, proj = g.quotient(N)
    src, tgt = group_groupoid(g), group_groupoid(q)
    return GroupoidFunctor(src, tgt, (0,), tuple(proj))


def random_functor(rng: random.Random, max_morphisms: int = 64) -> GroupoidFunctor:
    """A random functor, sometimes a composite of two compatible ones."""
    F = _random_functor_once(rng, max_morphisms)
    if rng.random() < 0.3:
        P, back = pullback(F.source, [rng.randrange(F.source.num_objects)
                                      for _ in range(rng.randint(1, F.source.num_objects + 1))])
        if P.num_morphisms <= max_morphisms:
            return back.then(F)
    return F
