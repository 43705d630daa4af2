"""Finite-depth towers of finite sets and finite groupoids.

Level ``0`` is the coarsest; transition ``n`` maps level ``n+1`` onto level
``n``.  The depth of a tower is the index of its top level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import DepthError, DomainError, SectionError
from .finite_groupoid import (FiniteGroupoid, GroupoidFunctor, ValidationReport, pi0,
                              validate_groupoid)

Thread = tuple[int, ...]


@dataclass(frozen=True)
class SetTower:
    sizes: tuple[int, ...]
    transitions: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        if len(self.transitions) != len(self.sizes) - 1:
            raise DomainError("a tower with k levels needs k-1 transitions")

    @property
    def depth(self) -> int:
        return len(self.sizes) - 1

    def surjectivity_failures(self) -> list[tuple[int, int]]:
        """``(n, e)`` for each level-``n`` element missed by transition ``n``."""
        out = []
        for n, tau in enumerate(self.transitions):
            hit = set(tau)
            out += [(n, e) for e in range(self.sizes[n]) if e not in hit]
        return out


@dataclass(frozen=True)
class GroupoidTower:
    levels: tuple[FiniteGroupoid, ...]
    transitions: tuple[GroupoidFunctor, ...]
    # extend(n) -> (level n, transition n -> n-1); must be a pure function of n
    extend: Callable[[int], tuple[FiniteGroupoid, GroupoidFunctor]] | None = field(
        default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if len(self.transitions) != len(self.levels) - 1:
            raise DomainError("a tower with k levels needs k-1 transitions")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> FiniteGroupoid:
        return self.levels[-1]

    def extended(self, depth: int) -> "GroupoidTower":
        if depth <= self.depth:
            return truncate(self, depth)
        if self.extend is None:
            raise DepthError(f"tower has depth {self.depth} and no generator hook", witness=depth)
        levels, trans = list(self.levels), list(self.transitions)
        for n in range(self.depth + 1, depth + 1):
            g, t = self.extend(n)
            levels.append(g)
            trans.append(t)
        return GroupoidTower(tuple(levels), tuple(trans), self.extend)

    def composite(self, m: int, n: int) -> GroupoidFunctor:
        """Transition from level ``m`` down to level ``n <= m``."""
        F = GroupoidFunctor.identity(self.levels[m])
        for k in range(m - 1, n - 1, -1):
            F = F.then(self.transitions[k])
        return F


def object_tower(T: GroupoidTower) -> SetTower:
    return SetTower(tuple(G.num_objects for G in T.levels), tuple(F.obj_map for F in T.transitions))


def morphism_tower(T: GroupoidTower) -> SetTower:
    return SetTower(tuple(G.num_morphisms for G in T.levels), tuple(F.mor_map for F in T.transitions))


def pi0_tower(T: GroupoidTower) -> SetTower:
    parts = [pi0(G) for G in T.levels]
    trans = []
    for n, F in enumerate(T.transitions):
        up, down = parts[n + 1], parts[n]
        trans.append(tuple(down.component[F.obj_map[r]] for r in up.representatives))
    return SetTower(tuple(p.count for p in parts), tuple(trans))


def validate_tower(T: GroupoidTower) -> ValidationReport:
    """Report transitions that are not surjective or not star-surjective.

    A level that fails groupoid validation raises a :class:`DomainError`
    naming the level.
    """
    rep = ValidationReport()
    for n, G in enumerate(T.levels):
        lv = validate_groupoid(G)
        if not lv.ok:
            raise DomainError(f"level {n} is not a valid groupoid", witness=lv.violations[:5],
                              stage=f"level-{n}")
    for n, F in enumerate(T.transitions):
        if F.source != T.levels[n + 1] or F.target != T.levels[n]:
            rep.add("transition-endpoints", n)
            continue
        for v in F.violations():
            rep.add("transition-functor", n, *v)
        low = T.levels[n]
        hit_o, hit_m = set(F.obj_map), set(F.mor_map)
        for x in range(low.num_objects):
            if x not in hit_o:
                rep.add("object-surjectivity", n, x)
        for h in range(low.num_morphisms):
            if h not in hit_m:
                rep.add("morphism-surjectivity", n, h)
        high = T.levels[n + 1]
        for x in range(high.num_objects):
            lifted = {F.mor_map[g] for g in high.outgoing[x]}
            for h in low.outgoing[F.obj_map[x]]:
                if h not in lifted:
                    rep.add("star-surjectivity", n, x, h)
    return rep


def _as_set_tower(T, kind: str) -> SetTower:
    if isinstance(T, SetTower):
        return T
    if kind == "objects":
        return object_tower(T)
    if kind == "morphisms":
        return morphism_tower(T)
    raise ValueError(f"unknown thread kind {kind!r}")


def threads_at_depth(T: SetTower | GroupoidTower, d: int, kind: str = "objects") -> list[Thread]:
    """Compatible tuples ``(e_0, ..., e_d)`` that extend to the top of ``T``.

    For a tower with surjective transitions these are in bijection with level
    ``d``; otherwise elements of level ``d`` missed from above have no thread.
    For groupoid towers ``kind`` picks object or morphism threads.
    """
    S = _as_set_tower(T, kind)
    if not 0 <= d <= S.depth:
        raise DepthError(f"depth {d} out of range 0..{S.depth}", witness=d)
    out = set()
    for top in range(S.sizes[-1]):
        chain = [top]
        for n in range(S.depth - 1, -1, -1):
            chain.append(S.transitions[n][chain[-1]])
        chain.reverse()
        out.add(tuple(chain[: d + 1]))
    return sorted(out)


def tower_section(T: SetTower) -> list[tuple[int, ...]]:
    """Least-index sections ``sigma_n: L_n -> L_{n+1}`` of every transition."""
    out = []
    for n, tau in enumerate(T.transitions):
        sigma: list[int | None] = [None] * T.sizes[n]
        for e in range(len(tau) - 1, -1, -1):
            sigma[tau[e]] = e
        missing = [e for e, s in enumerate(sigma) if s is None]
        if missing:
            raise SectionError(f"transition {n} is not surjective; no section exists",
                               witness={"level": n, "unreached": missing})
        out.append(tuple(sigma))  # type: ignore[arg-type]
    return out


def truncate(T, d: int):
    """Prefix of levels ``0..d`` (works for set and groupoid towers)."""
    if not 0 <= d <= T.depth:
        raise DepthError(f"depth {d} out of range 0..{T.depth}", witness=d)
    if isinstance(T, SetTower):
        return SetTower(T.sizes[: d + 1], T.transitions[:d])
    return GroupoidTower(T.levels[: d + 1], T.transitions[:d], T.extend)


def restrict_threads(threads: Sequence[Thread], d: int) -> list[Thread]:
    return sorted({t[: d + 1] for t in threads})


def single_level(G: FiniteGroupoid) -> GroupoidTower:
    return GroupoidTower((G,), ())
