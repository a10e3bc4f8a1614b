"""Families of complex tori with a finite-order automorphism and finite fixed locus.

A family is a product of irreducible components, one of three kinds:

* the eigenvalue -1 part, an arbitrary s-dimensional torus with its involution
  (never split further: every complex structure is compatible with -1, so the
  whole Siegel space is one family);
* a rank-1 primary factor for an order k >= 3, labelled by its Galois orbit;
* an unsplit factor of module rank r >= 2 for an order k >= 3 whose character
  distribution is genuinely mixed (some pair has 0 < nu < r), labelled by the
  class of its nu-vector under the Galois action and conjugation.  Pure
  nu-vectors are excluded here because those tori split into rank-1 factors
  and are therefore counted as products.

Enumerating all cyclotomic modules of a given rank and expanding each order-k
part into component products reproduces the published dimension-2/3 tables and
the primary dimension-4 table row for row; display labels follow the published
naming so reports are cross-readable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cycnum import totient
from .intlattice import FiniteAbelianGroup
from .orbits import CharacterTuple, galois_orbits, orbit_of, paired_odd_tuple, units
from .torus import ComplexStructure, LatticeAutomorphism, PairChoice, fixed_locus, lcm

# the published label bases for each eigenvalue order (ad hoc: the curve pairs
# {3,6}, {5,10}, {15,30} are named by one canonical member each)
_LABEL_BASE = {3: 6, 6: 6, 4: 4, 5: 10, 10: 10, 8: 8, 12: 12, 7: 7, 14: 7,
               9: 9, 18: 9, 15: 30, 30: 30, 16: 16, 20: 20, 24: 24, 11: 11, 22: 11}

_MINUS_LABEL = {1: "E", 2: "S", 3: "T", 4: "T4", 5: "T5"}


def _canonical_orbit_index(k: int, i: int) -> int:
    """Orbit index in the canonical labelling: an order 2k' with k' odd names
    its families after the order-k' classification (negate the automorphism),
    and the lex order of orbits need not be preserved by that bijection."""
    if k % 2 == 0 and (k // 2) % 2 == 1 and k > 6:
        half = k // 2
        rep = galois_orbits(k).orbits[i].representative.residues
        mapped = paired_odd_tuple(k, rep)
        return galois_orbits(half).index_of(CharacterTuple(half, mapped))
    return i


@dataclass(frozen=True, order=True)
class Component:
    """One irreducible factor: kind in {'minus', 'orbit', 'nu'}.

    minus: data = (s,);  orbit: data = (k, orbit_index);
    nu: data = (k, r, nu_class) with nu_class the canonical nu-vector.
    """

    kind: str
    data: tuple

    @property
    def order(self) -> int:
        return 2 if self.kind == "minus" else self.data[0]

    @property
    def dim(self) -> int:
        if self.kind == "minus":
            return self.data[0]
        if self.kind == "orbit":
            return totient(self.data[0]) // 2
        k, r, _ = self.data
        return r * totient(k) // 2

    @property
    def module(self) -> tuple[int, int]:
        """(k, multiplicity) contribution to the lattice module."""
        if self.kind == "minus":
            return (2, 2 * self.data[0])
        if self.kind == "orbit":
            return (self.data[0], 1)
        return (self.data[0], self.data[1])

    @property
    def moduli(self) -> int:
        if self.kind == "minus":
            s = self.data[0]
            return s * (s + 1) // 2
        if self.kind == "orbit":
            return 0
        _, r, cls = self.data
        return sum(2 * v * (r - v) for v in cls)

    def pair_choices(self) -> list[PairChoice]:
        """Hodge data of the component; empty for the -1 part (real character)."""
        if self.kind == "minus":
            return []
        if self.kind == "orbit":
            k = self.data[0]
            return [PairChoice(k=k, r=1, nu=1, pair_index=i)
                    for i in range(totient(k) // 2)]
        k, r, cls = self.data
        return [PairChoice(k=k, r=r, nu=v, pair_index=i) for i, v in enumerate(cls)]

    def label(self) -> str:
        if self.kind == "minus":
            return _MINUS_LABEL.get(self.data[0], f"T{self.data[0]}")
        if self.kind == "orbit":
            k, i = self.data
            if k in (3, 6):
                return "E_rho"
            if k == 4:
                return "E_iota"
            b = _LABEL_BASE.get(k, k)
            ph = totient(k)
            idx = _canonical_orbit_index(k, i)
            if ph == 4:
                if k in (5, 10):
                    return "S_10"
                return f"S_{b}'" if idx == 0 else f"S_{b}''"
            if ph == 6:
                return f"A_{b}'" if idx == 0 else f"A_{b}''"
            return f"X_{b}^({idx + 1})"
        k, r, _ = self.data
        b = _LABEL_BASE.get(k, k)
        p = self.moduli
        if totient(k) == 2:
            if r == 2:
                return f"S_{b}"
            if r == 3:
                return f"A_{b}"
            if r == 4:
                return f"X_{b}^{p}"
        elif totient(k) == 4 and r == 2:
            return f"X_{b}^{p}"
        return f"X_{b}[r={r}]^{p}"


@lru_cache(maxsize=None)
def nu_vector_classes(k: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Canonical representatives of mixed nu-vectors over the primitive pairs
    of k, modulo the unit action on pairs and global conjugation.

    A unit u sends the pair of j to the pair of u*j, flipping nu to r-nu when
    the canonical pair representative crosses m/2.
    """
    reps = [j for j in range(1, k) if gcd(j, k) == 1 and j < k - j]
    idx = {j: i for i, j in enumerate(reps)}
    n = len(reps)
    mixed = [v for v in itertools.product(range(r + 1), repeat=n)
             if any(0 < x < r for x in v)]

    def act(v, u):
        out = [0] * n
        for i, j in enumerate(reps):
            jj = (u * j) % k
            if jj < k - jj:
                out[idx[jj]] = v[i]
            else:
                out[idx[k - jj]] = r - v[i]
        return tuple(out)

    classes = []
    todo = set(mixed)
    while todo:
        t = min(todo)
        seen = {t}
        frontier = [t]
        while frontier:
            cur = frontier.pop()
            for u in units(k):
                nt = act(cur, u)
                if nt not in seen:
                    seen.add(nt)
                    frontier.append(nt)
            conj = tuple(r - x for x in cur)
            if conj not in seen:
                seen.add(conj)
                frontier.append(conj)
        classes.append(min(seen))
        todo -= seen
    return tuple(sorted(classes))


def _multiset_partitions(r: int) -> list[tuple[int, ...]]:
    out = set()

    def rec(rem, maxp, cur):
        if rem == 0:
            out.add(tuple(sorted(cur)))
            return
        for p in range(min(rem, maxp), 0, -1):
            rec(rem - p, p, cur + [p])

    rec(r, r, [])
    return sorted(out)


def component_products(k: int, r: int) -> list[tuple[Component, ...]]:
    """All ways the order-k part of multiplicity r splits into components."""
    if k == 2:
        if r % 2:
            raise ValueError("the -1 part needs even multiplicity")
        return [(Component("minus", (r // 2,)),)]
    outs = set()
    for part in _multiset_partitions(r):
        per_part = []
        for p in part:
            if p == 1:
                per_part.append([Component("orbit", (k, i))
                                 for i in range(len(galois_orbits(k)))])
            else:
                per_part.append([Component("nu", (k, p, cls))
                                 for cls in nu_vector_classes(k, p)])
        for combo in itertools.product(*per_part):
            outs.add(tuple(sorted(combo)))
    return sorted(outs)


@dataclass(frozen=True)
class TorusFamily:
    """A family of (torus, automorphism) pairs: product of components with an
    automorphism of order m acting with the components' eigenvalue orders."""

    m: int
    components: tuple[Component, ...]

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    @property
    def module(self) -> tuple[tuple[int, int], ...]:
        agg: dict[int, int] = {}
        for c in self.components:
            k, r = c.module
            agg[k] = agg.get(k, 0) + r
        return tuple(sorted(agg.items()))

    @property
    def moduli(self) -> int:
        return sum(c.moduli for c in self.components)

    @property
    def types(self) -> tuple[int, ...]:
        return tuple(sorted(c.order for c in self.components))

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(c.label() for c in self.components))

    def label_type_pairs(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted((c.label(), c.order) for c in self.components))

    def automorphism(self) -> LatticeAutomorphism:
        return LatticeAutomorphism.from_module(self.module)

    def fix(self) -> FiniteAbelianGroup:
        return fixed_locus(self.automorphism())

    def complex_structure(self) -> ComplexStructure:
        s = 0
        pairs: list[PairChoice] = []
        for c in self.components:
            if c.kind == "minus":
                s += c.data[0]
            else:
                pairs.extend(c.pair_choices())
        return ComplexStructure(pairs=tuple(pairs), s=s)

    def is_rigid(self) -> bool:
        return self.moduli == 0

    def display(self) -> str:
        return " x ".join(c.label() for c in sorted(self.components, key=lambda c: (c.label(), c.order)))


def _modules_of_rank(rank: int) -> list[tuple[tuple[int, int], ...]]:
    """All module maps {k >= 2 -> r_k} with sum r_k*phi(k) = rank, r_2 even."""
    ks = [k for k in range(2, 2 * rank * rank + 3) if totient(k) <= rank]
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(i, rem, cur):
        if rem == 0:
            out.append(tuple(sorted(cur)))
            return
        if i >= len(ks):
            return
        rec(i + 1, rem, cur)
        k = ks[i]
        ph = totient(k)
        step = 2 if k == 2 else 1
        r = step
        while r * ph <= rem:
            rec(i + 1, rem - r * ph, cur + [(k, r)])
            r += step

    rec(0, rank, [])
    return [mod for mod in out if mod]


PAPER_SCOPE = "paper"


def torus_families(n: int, max_phi: int | str | None = PAPER_SCOPE) -> list[TorusFamily]:
    """All dimension-n families, sorted by (m, labels, types).

    By default the automorphism order m is restricted to phi(m) <= 2n, which
    is the scope of the published tables (the bound is forced for primary
    families and adopted for mixed ones); pass max_phi=None to lift it.
    """
    if max_phi == PAPER_SCOPE:
        max_phi = 2 * n
    fams = set()
    for mod in _modules_of_rank(2 * n):
        m = 1
        for k, _ in mod:
            m = lcm(m, k)
        if max_phi is not None and totient(m) > max_phi:
            continue
        per = [component_products(k, r) for k, r in mod]
        for combo in itertools.product(*per):
            comps = tuple(sorted(c for group in combo for c in group))
            fams.add(TorusFamily(m=m, components=comps))
    return sorted(fams, key=lambda f: (f.m, f.labels(), f.types))


def primary_families(d: int, m: int) -> list[TorusFamily]:
    """Families of d-dimensional tori whose automorphism of order m acts with
    only order-m eigenvalues: the module is (m, r) with r = 2d/phi(m)."""
    ph = totient(m)
    if (2 * d) % ph:
        return []
    r = 2 * d // ph
    if m == 2:
        return [TorusFamily(m=2, components=(Component("minus", (d,)),))]
    return sorted((TorusFamily(m=m, components=comps) for comps in component_products(m, r)),
                  key=lambda f: (f.labels(), f.types))


def primary_table(n: int) -> list[TorusFamily]:
    """The dimension-n primary classification (single eigenvalue order)."""
    out = []
    for m in sorted({k for k in range(2, 8 * n * n + 3) if totient(k) <= 2 * n}):
        out.extend(primary_families(n, m))
    return sorted(out, key=lambda f: (f.m, f.labels(), f.types))


def odd_order_alias(m: int, residues: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Canonical (order, orbit-rep) key identifying a rank-1 family across the
    odd/doubled order pair: order 2k with k odd is renamed through negation."""
    if m % 2 == 0 and (m // 2) % 2 == 1 and m > 2:
        k = m // 2
        mapped = paired_odd_tuple(m, residues)
        return k, orbit_of(CharacterTuple(k, mapped)).residues
    return m, orbit_of(CharacterTuple(m, residues)).residues
