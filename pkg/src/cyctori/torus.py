"""Lattices with a finite-order automorphism and their Hodge-theoretic data.

A lattice automorphism is stored through its cyclotomic module decomposition:
a list of (k, r_k) pairs meaning the rational representation is a direct sum
of r_k companion blocks of the k-th cyclotomic polynomial.  On top of that, a
complex structure records, for every conjugate character pair, how much of the
pair's multiplicity lands in H^{1,0}; for the eigenvalue -1 part only the half
dimension s matters.

From these the discrete invariants fall out: fixed loci as lattice cokernels,
moduli counts as sums of Grassmannian dimensions, rigidity as purity of the
character distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cycnum import CyclotomicNumber, cyclotomic_poly, quotient_poly, totient
from .intlattice import (FiniteAbelianGroup, InfiniteCokernelError, IntMatrix,
                         char_poly, cokernel, companion, matrix_order)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class CyclotomicModule:
    """Multiset of eigenvalue orders with multiplicities: ((k, r_k), ...)."""

    components: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ks = [k for k, _ in self.components]
        if len(set(ks)) != len(ks):
            raise ValueError("duplicate eigenvalue order")
        if any(k < 1 or r < 1 for k, r in self.components):
            raise ValueError("orders and multiplicities must be positive")
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @property
    def rank(self) -> int:
        return sum(r * totient(k) for k, r in self.components)

    @property
    def order(self) -> int:
        out = 1
        for k, _ in self.components:
            out = lcm(out, k)
        return out


@dataclass(frozen=True)
class LatticeAutomorphism:
    """A free Z-module of finite rank with a finite-order automorphism.

    `rep` is the block-diagonal of companion matrices of phi_k, one block per
    module copy.  Eigenvalue order 1 would force a positive-dimensional fixed
    locus, so it is rejected unless explicitly allowed.
    """

    module: CyclotomicModule
    rep: IntMatrix = field(compare=False)
    m: int

    @classmethod
    def from_module(cls, components, allow_unit_eigenvalue: bool = False) -> "LatticeAutomorphism":
        mod = CyclotomicModule(tuple((int(k), int(r)) for k, r in components))
        if not allow_unit_eigenvalue and any(k == 1 for k, _ in mod.components):
            raise ValueError("eigenvalue order 1 not allowed (fixed locus would be positive-dimensional)")
        blocks = []
        for k, r in mod.components:
            blk = companion(cyclotomic_poly(k))
            blocks.extend([blk] * r)
        return cls(module=mod, rep=IntMatrix.block_diag(blocks), m=mod.order)


def character_multiplicities(M: IntMatrix, order_bound: int = 10000) -> dict[int, int]:
    """Factor the characteristic polynomial of a finite-order integer matrix
    into cyclotomic polynomials; returns {eigenvalue order k: multiplicity}."""
    N = matrix_order(M, bound=order_bound)  # raises if not finite order
    p = char_poly(M)
    out: dict[int, int] = {}
    for k in range(1, N + 1):
        if N % k:
            continue
        phi = cyclotomic_poly(k)
        while True:
            q, rem = p.divmod_exact(phi)
            if rem:
                break
            p = q
            out[k] = out.get(k, 0) + 1
            if p.degree == 0:
                break
    if p.degree != 0:
        raise AssertionError("char poly of a finite-order matrix must split into cyclotomics")
    return out


def fixed_locus(aut: LatticeAutomorphism) -> FiniteAbelianGroup:
    """Fixed points of the induced torus automorphism, as Lambda/(rep - 1)Lambda."""
    if any(k == 1 for k, _ in aut.module.components):
        raise InfiniteCokernelError("eigenvalue 1 present: positive-dimensional fixed locus")
    return cokernel(aut.rep - IntMatrix.identity(aut.rep.rows))


def admissible_orders(n: int) -> list[int]:
    """All m >= 2 with phi(m) <= 2(n-1): the group orders that can act on the
    linear part of an n-dimensional quotient with a translation factor left over."""
    if n < 1:
        raise ValueError("admissible_orders expects n >= 1")
    bound = 2 * (n - 1)
    if bound <= 0:
        return []
    # phi(m) >= sqrt(m/2), so m <= 2*bound^2 exhausts phi(m) <= bound
    return [m for m in range(2, 2 * bound * bound + 2) if totient(m) <= bound]


# ---------------------------------------------------------------------------
# complex structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairChoice:
    """One conjugate character pair: eigenvalue order k, pair multiplicity r,
    and the multiplicity nu assigned to the canonical character of the pair."""

    k: int
    r: int
    nu: int
    pair_index: int = 0

    def __post_init__(self):
        if not (0 <= self.nu <= self.r):
            raise ValueError("nu out of range")

    @property
    def is_pure(self) -> bool:
        return self.nu in (0, self.r)

    @property
    def grassmannian_dim(self) -> int:
        return 2 * self.nu * (self.r - self.nu)


@dataclass(frozen=True)
class ComplexStructure:
    """Hodge datum of a lattice automorphism: nu per non-real conjugate pair
    plus the half-dimension s of the eigenvalue -1 part.  For rank-1 primary
    modules the explicit tuple of chosen residues mod m may be attached."""

    pairs: tuple[PairChoice, ...]
    s: int = 0
    m: int | None = None
    residues: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if self.residues is not None:
            if self.m is None:
                raise ValueError("residues need the modulus m")
            seen = set()
            for j in self.residues:
                if gcd(j, self.m) != 1:
                    raise ValueError(f"residue {j} not coprime to {self.m}")
                if (self.m - j) % self.m in seen:
                    raise ValueError("a residue and its conjugate are both chosen")
                seen.add(j % self.m)

    @classmethod
    def rank_one_primary(cls, m: int, residues) -> "ComplexStructure":
        res = tuple(sorted(j % m for j in residues))
        pairs = tuple(PairChoice(k=m, r=1, nu=1, pair_index=i) for i in range(len(res)))
        return cls(pairs=pairs, s=0, m=m, residues=res)

    def conjugate(self) -> "ComplexStructure":
        pairs = tuple(PairChoice(p.k, p.r, p.r - p.nu, p.pair_index) for p in self.pairs)
        res = None
        if self.residues is not None:
            res = tuple(sorted((self.m - j) % self.m for j in self.residues))
        return ComplexStructure(pairs=pairs, s=self.s, m=self.m, residues=res)


def moduli_dimension(cs: ComplexStructure) -> int:
    """Sum of 2*nu*(r-nu) over non-real pairs plus s(s+1)/2 for the -1 part."""
    return sum(p.grassmannian_dim for p in cs.pairs) + cs.s * (cs.s + 1) // 2


def is_rigid(cs: ComplexStructure) -> bool:
    """Rigid iff every character appears in only one of H^{1,0}, H^{0,1}:
    all pairs pure and no eigenvalue -1 part."""
    return cs.s == 0 and all(p.is_pure for p in cs.pairs)


# ---------------------------------------------------------------------------
# eigenvectors on the reduced lattice
# ---------------------------------------------------------------------------

def reduced_rank(m: int) -> int:
    """Rank of R' = Z[X]/(q_m): m-1 for odd m, m-2 for even m."""
    return m - 1 if m % 2 else m - 2


def reduced_residues(m: int) -> list[int]:
    """Residues j whose character survives on R': eigenvalue order > 1 (odd m)
    resp. > 2 (even m)."""
    out = []
    for j in range(1, m):
        order = m // gcd(j, m)
        if order > (2 if m % 2 == 0 else 1):
            out.append(j)
    return out


def multiplication_matrix(m: int) -> IntMatrix:
    """Multiplication by X on R', i.e. the companion matrix of q_m."""
    return companion(quotient_poly(m))


def eigenvector_full(m: int, j: int) -> list[CyclotomicNumber]:
    """v_j = sum_i eps^{-ji} X^i on the full basis of Z[X]/(X^m - 1)."""
    return [CyclotomicNumber.root_of_unity(m, (-j * i) % m) for i in range(m)]


def eigenvector_reduced(m: int, j: int) -> list[CyclotomicNumber]:
    """Image of v_j under the projection to R', in the power basis of R'.

    Top powers are rewritten through the quotient relation: for odd m,
    X^{m-1} = -(1 + X + ... + X^{m-2}); for even m, X^{m-2} and X^{m-1}
    fold onto the even resp. odd lower powers with sign -1.
    """
    d = reduced_rank(m)
    full = eigenvector_full(m, j)
    out = full[:d]
    if m % 2:
        for i in range(d):
            out[i] = out[i] - full[m - 1]
    else:
        for i in range(0, d, 2):
            out[i] = out[i] - full[m - 2]
        for i in range(1, d, 2):
            out[i] = out[i] - full[m - 1]
    return out


@dataclass(frozen=True)
class EigenvectorBasis:
    """Exact eigenvectors v_j of multiplication by X on R', indexed by residue."""

    m: int
    vectors: dict[int, list[CyclotomicNumber]] = field(compare=False)


def eigenvector_basis(m: int, residues) -> EigenvectorBasis:
    """Eigenvector for each chosen residue; residues must be coprime to m.

    Internal callers that need non-primitive residues use eigenvector_reduced
    directly; this public form matches the rank-1 primary use."""
    vecs = {}
    for j in residues:
        if gcd(j, m) != 1:
            raise ValueError(f"residue {j} not coprime to {m}")
        vecs[j % m] = eigenvector_reduced(m, j % m)
    return EigenvectorBasis(m=m, vectors=vecs)
