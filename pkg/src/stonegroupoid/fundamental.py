"""Fundamental group of a finite groupoid from its edge-path presentation.

Generators are all morphisms; relators say ``g * y = gy`` for every composable
pair and ``u = 1`` for every unit.  On a connected groupoid with more than one
object those relators alone present the isotropy group freely extended by one
generator per non-base object, so the morphisms of a spanning tree (one arrow
from the base object to each other object) are set to 1 as well.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset import CosetTable, regular_multiplication
from .errors import DomainError
from .finite_groupoid import FiniteGroupoid, isotropy, pi0
from .groups import FiniteGroup, find_isomorphism, is_homomorphism


def spanning_tree(G: FiniteGroupoid, base: int) -> list[int]:
    """Least morphism from ``base`` to each other object of its component."""
    part = pi0(G)
    out = []
    for y in part.members(part.component[base]):
        if y != base:
            out.append(min(G.hom(base, y)))
    return out


def edge_path_relators(G: FiniteGroupoid, base: int | None = None) -> list[list[int]]:
    rels = [[2 * g, 2 * y, 2 * gy + 1] for g, y, gy in G.comp]
    rels += [[2 * u] for u in sorted(set(G.unit))]
    if base is not None:
        rels += [[2 * t] for t in spanning_tree(G, base)]
    return rels


@dataclass(frozen=True)
class FundamentalGroupCheck:
    group: FiniteGroup
    loop_images: tuple[int, ...]
    homomorphism: bool
    bijective: bool
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.bijective and self.isomorphic


def fundamental_group(G: FiniteGroupoid, base: int = 0) -> tuple[FiniteGroup, CosetTable]:
    """Group presented by the edge paths at ``base``; requires ``G`` connected."""
    if pi0(G).count != 1:
        raise DomainError("fundamental group needs a connected groupoid", witness=pi0(G).count)
    table = CosetTable(G.num_morphisms, edge_path_relators(G, base)).enumerate()
    return FiniteGroup.from_table(regular_multiplication(table)), table


def fundamental_group_check(G: FiniteGroupoid, base: int = 0) -> FundamentalGroupCheck:
    """Compare the coset-enumerated group with the isotropy group at ``base``.

    The loop ``r`` goes to the coset of the one-letter word ``r``; that map
    must be a bijective homomorphism, and an independent isomorphism search
    must also succeed.
    """
    group, table = fundamental_group(G, base)
    iso = isotropy(G, base)
    images = tuple(table.act(0, [2 * r]) for r in iso.labels)
    hom = is_homomorphism(iso, group, images)
    bij = len(set(images)) == group.order == iso.order
    return FundamentalGroupCheck(group, images, hom, bij, find_isomorphism(iso, group) is not None)
