"""Galois orbits of character selections on rank-1 primary modules.

A complex structure on a rank-1 primary module picks one residue out of every
conjugate pair {j, m-j} of units mod m; the 2^(phi(m)/2) selections fall into
orbits under residuewise multiplication by units (global conjugation is the
unit -1, so it comes for free).  Orbits classify the rigid primary tori up to
isomorphism and complex conjugation; the canonical representative of an orbit
is its lexicographically minimal member.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cycnum import totient


@dataclass(frozen=True, order=True)
class CharacterTuple:
    """Strictly increasing residues in [1, m-1], coprime to m, no two summing to m."""

    m: int
    residues: tuple[int, ...]

    def __post_init__(self):
        m, res = self.m, self.residues
        if list(res) != sorted(set(res)):
            raise ValueError("residues must be strictly increasing")
        for j in res:
            if not (1 <= j <= m - 1):
                raise ValueError(f"residue {j} out of range")
            if gcd(j, m) != 1:
                raise ValueError(f"residue {j} not coprime to {m}")
        chosen = set(res)
        if any((m - j) % m in chosen for j in res):
            raise ValueError("a conjugate pair is doubly selected")

    def multiply(self, u: int) -> "CharacterTuple":
        if gcd(u, self.m) != 1:
            raise ValueError("multiplier must be a unit")
        return CharacterTuple(self.m, tuple(sorted(u * j % self.m for j in self.residues)))

    def conjugate(self) -> "CharacterTuple":
        return self.multiply(self.m - 1)


def units(m: int) -> list[int]:
    return [u for u in range(1, m) if gcd(u, m) == 1]


def all_tuples(m: int) -> set[CharacterTuple]:
    """All selections of one residue per conjugate pair; 2^(phi(m)/2) of them."""
    if m < 3:
        raise ValueError("all_tuples expects m >= 3")
    pairs = [(j, m - j) for j in range(1, m) if gcd(j, m) == 1 and j < m - j]
    return {CharacterTuple(m, tuple(sorted(pick)))
            for pick in itertools.product(*pairs)}


@dataclass(frozen=True)
class Orbit:
    """One Galois orbit with its lexicographically minimal representative."""

    representative: CharacterTuple
    members: frozenset[CharacterTuple]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class OrbitSet:
    """All orbits for a modulus, sorted by representative."""

    m: int
    orbits: tuple[Orbit, ...]

    def __len__(self):
        return len(self.orbits)

    def index_of(self, t: CharacterTuple) -> int:
        for i, o in enumerate(self.orbits):
            if t in o.members:
                return i
        raise KeyError(f"{t} is not a selection tuple for m={self.m}")

    def representatives(self) -> list[tuple[int, ...]]:
        return [o.representative.residues for o in self.orbits]


def _expand_orbit(t: CharacterTuple) -> frozenset[CharacterTuple]:
    seen = {t}
    frontier = [t]
    us = units(t.m)
    while frontier:
        cur = frontier.pop()
        for u in us:
            nt = cur.multiply(u)
            if nt not in seen:
                seen.add(nt)
                frontier.append(nt)
    return frozenset(seen)


@lru_cache(maxsize=None)
def galois_orbits(m: int) -> OrbitSet:
    """Partition all_tuples(m) into orbits under unit multiplication.

    Conjugation is multiplication by m-1, hence already included.
    """
    todo = set(all_tuples(m))
    orbits = []
    while todo:
        rep = min(todo)
        members = _expand_orbit(rep)
        orbits.append(Orbit(representative=min(members), members=members))
        todo -= members
    orbits.sort(key=lambda o: o.representative)
    total = sum(len(o) for o in orbits)
    assert total == 2 ** (totient(m) // 2)
    return OrbitSet(m=m, orbits=tuple(orbits))


def orbit_of(t: CharacterTuple) -> CharacterTuple:
    """Canonical (lex-minimal) representative of the orbit of t."""
    return min(_expand_orbit(t))


def orbit_index(m: int, residues) -> int:
    """Index of the orbit containing the given residues in galois_orbits(m)."""
    return galois_orbits(m).index_of(CharacterTuple(m, tuple(sorted(r % m for r in residues))))


def paired_odd_tuple(m: int, residues) -> tuple[int, ...]:
    """For even m = 2k with k odd, the residues of the order-k automorphism
    obtained by negating: eps_m^j = -eps_k^((j+k)/2 mod k)."""
    if m % 2 or (m // 2) % 2 == 0:
        raise ValueError("expects m = 2k with k odd")
    k = m // 2
    return tuple(sorted(((j + k) // 2) % k for j in residues))


def paired_even_tuple(k: int, residues) -> tuple[int, ...]:
    """Inverse of paired_odd_tuple: lift residues mod odd k to mod 2k."""
    if k % 2 == 0:
        raise ValueError("expects odd k")
    return tuple(sorted((2 * j + k) % (2 * k) for j in residues))
