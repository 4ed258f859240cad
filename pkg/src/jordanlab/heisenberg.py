"""Heisenberg-type central extensions of K x K^ by roots of unity.

G1 = mu_N x K x K^ carries the twisted product

    (a, x, l) (a', x', l') = (a a' l'(x), x + x', l l'),

a central extension of H = K x K^ by mu_N whose commutator map is exactly
the alternating pairing on H.  A subgroup is commutative precisely when its
image in H is isotropic, which forces every abelian subgroup of G1 to have
index at least N.  min_abelian_index certifies that bound and, for small N,
finds the exact minimum by brute-force subgroup enumeration; the subgroup
mu_N x K x {1} realizes index exactly N.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import GroupMismatch
from .finab import Character, FinAbGroup, HPoint, KElement
from .gtable import GroupTable
from .scalars import RootOfUnity

EXHAUSTIVE_CAP = 6  # largest N for which the subgroup scan runs by default
DEFAULT_MAX_GENS = 3  # generator bound; validated against the full lattice for N <= 4


@dataclass(frozen=True)
class HeisElement:
    """Element (a, x, ell) of G1 = mu_N x K x K^."""

    a: RootOfUnity
    x: KElement
    ell: Character

    def __post_init__(self):
        if self.x.group != self.ell.group:
            raise GroupMismatch("group part and character part disagree")
        if self.a.modulus != self.x.group.order:
            raise GroupMismatch(
                f"scalar lives in mu_{self.a.modulus}, expected mu_{self.x.group.order}"
            )

    @property
    def group(self) -> FinAbGroup:
        return self.x.group

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        if self.group != other.group:
            raise GroupMismatch("cannot multiply over different groups")
        scalar = self.a * other.a * other.ell(self.x)
        return HeisElement(scalar, self.x + other.x, self.ell * other.ell)

    def inverse(self) -> "HeisElement":
        return HeisElement(self.a.inverse() * self.ell(self.x), -self.x, self.ell.inverse())

    @property
    def is_identity(self) -> bool:
        return self.a.is_one and self.x.is_zero and self.ell.is_trivial

    def project(self) -> HPoint:
        """The quotient map to H, forgetting the central scalar."""
        return HPoint(self.x, self.ell)

    def sort_key(self):
        return (self.x.coords, self.ell.coords, self.a.exponent)

    def __repr__(self):
        return f"({self.a!r},{self.x!r},{self.ell!r})"


def identity(group: FinAbGroup) -> HeisElement:
    return HeisElement(RootOfUnity.one(group.order), group.zero(), group.trivial_character())


def commutator(g: HeisElement, h: HeisElement) -> RootOfUnity:
    """Scalar part of g h g^-1 h^-1; the group and character parts vanish."""
    c = g * h * g.inverse() * h.inverse()
    assert c.x.is_zero and c.ell.is_trivial, "commutator escaped the center"
    return c.a


def elements(group: FinAbGroup) -> list[HeisElement]:
    """All N^3 elements of G1 in canonical (x, ell, a) order."""
    n = group.order
    return [
        HeisElement(RootOfUnity(n, k), x, ell)
        for x in group.elements()
        for ell in group.characters()
        for k in range(n)
    ]


@lru_cache(maxsize=None)
def group_table(group: FinAbGroup) -> tuple[GroupTable, tuple[HeisElement, ...]]:
    elems = tuple(sorted(elements(group), key=HeisElement.sort_key))
    return GroupTable.from_elements(elems, lambda a, b: a * b), elems


def lagrangian_lift(group: FinAbGroup) -> list[HeisElement]:
    """The abelian subgroup mu_N x K x {1}; its index in G1 is exactly N."""
    n = group.order
    triv = group.trivial_character()
    return [
        HeisElement(RootOfUnity(n, k), x, triv)
        for x in group.elements()
        for k in range(n)
    ]


@dataclass(frozen=True)
class IndexReport:
    """Result of the minimal-abelian-index computation on G1."""

    delta: tuple[int, ...]
    group_order: int
    certified_lower_bound: int
    min_abelian_index: int | None
    witness_generators: tuple[HeisElement, ...]
    witness_order: int
    witness_index: int
    exhaustive: bool
    subgroups_scanned: int

    def to_dict(self) -> dict:
        return {
            "delta": list(self.delta),
            "N": self.certified_lower_bound,
            "group_order": self.group_order,
            "min_abelian_index": self.min_abelian_index,
            "certified_lower_bound": self.certified_lower_bound,
            "witness_generators": [
                {"a": g.a.exponent, "x": list(g.x.coords), "ell": list(g.ell.coords)}
                for g in self.witness_generators
            ],
            "witness_order": self.witness_order,
            "witness_index": self.witness_index,
            "exhaustive": self.exhaustive,
        }


def _witness_generators(table: GroupTable, members: frozenset[int]) -> tuple[int, ...]:
    gens: list[int] = []
    current: frozenset[int] = frozenset({table.identity})
    for g in sorted(members):
        if g not in current:
            gens.append(g)
            current = table.closure(gens)
            if current == members:
                break
    return tuple(gens)


def min_abelian_index(
    delta: Sequence[int] | FinAbGroup,
    max_gens: int = DEFAULT_MAX_GENS,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
) -> IndexReport:
    """Minimum index of an abelian subgroup of G1, with the certified bound N.

    The exact minimum is found by enumerating abelian subgroups generated by
    at most max_gens elements (sufficient here: a maximal abelian subgroup is
    generated by the central mu_N plus at most two lifts of an isotropic
    image).  Beyond the exhaustive cap only the certified bound N and the
    index-N witness mu_N x K x {1} are reported.
    """
    group = delta if isinstance(delta, FinAbGroup) else FinAbGroup(tuple(delta))
    n = group.order
    order = n ** 3

    if n > exhaustive_cap:
        # closed-form generators of mu_N x K x {1}: the central root plus one
        # generator per cyclic factor of K
        triv = group.trivial_character()
        gens = [HeisElement(RootOfUnity(n, 1), group.zero(), triv)] if n > 1 else []
        for slot in range(group.rank):
            coords = [0] * group.rank
            coords[slot] = 1
            gens.append(HeisElement(RootOfUnity.one(n), group.element(coords), triv))
        return IndexReport(
            delta=group.delta,
            group_order=order,
            certified_lower_bound=n,
            min_abelian_index=None,
            witness_generators=tuple(gens),
            witness_order=n * n,
            witness_index=n,
            exhaustive=False,
            subgroups_scanned=0,
        )

    table, elems = group_table(group)
    index_of = {e: i for i, e in enumerate(elems)}
    lagr = frozenset(index_of[e] for e in lagrangian_lift(group))
    assert table.is_abelian_subset(lagr)

    found = table.abelian_subgroups(max_gens)
    best_members = lagr
    best = (order // len(lagr), tuple(sorted(lagr)))
    for members in found:
        candidate = (order // len(members), tuple(sorted(members)))
        if candidate < best:
            best = candidate
            best_members = members
    min_index = best[0]
    assert min_index >= n, "abelian subgroup beat the certified bound"

    gens = _witness_generators(table, best_members)
    return IndexReport(
        delta=group.delta,
        group_order=order,
        certified_lower_bound=n,
        min_abelian_index=min_index,
        witness_generators=tuple(elems[i] for i in gens),
        witness_order=len(best_members),
        witness_index=min_index,
        exhaustive=True,
        subgroups_scanned=len(found),
    )
