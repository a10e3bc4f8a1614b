"""Exact linear algebra over Z: Smith normal form, companion matrices,
characteristic polynomials, determinants, cokernels, finite abelian groups.

Everything works on arbitrary-precision integers; the matrices that arise in
this package have rank <= 24, so simple cubic/quartic algorithms with a
smallest-pivot heuristic are entirely adequate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycnum import IntPolynomial, factorize


class IntMatrix:
    """Dense integer matrix; treat instances as immutable (ops return copies)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        rows = [list(map(int, r)) for r in data]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        self.rows = len(rows)
        self.cols = len(rows[0])
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged rows")
        self.data = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def block_diag(cls, blocks: list["IntMatrix"]) -> "IntMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        ro = co = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[ro + i][co + j] = b.data[i][j]
            ro += b.rows
            co += b.cols
        return cls(out)

    def copy(self) -> "IntMatrix":
        return IntMatrix([row[:] for row in self.data])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot.data]
                          for row in self.data])

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.data])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(tuple(map(tuple, self.data)))

    def apply(self, vec):
        """Matrix * column vector; works for any ring elements on the right."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.data:
            acc = None
            for a, x in zip(row, vec):
                if a == 0:
                    continue
                term = x * a
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else vec[0] * 0)
        return out

    def __repr__(self):
        return "IntMatrix(" + ", ".join(str(r) for r in self.data) + ")"


def companion(p: IntPolynomial) -> IntMatrix:
    """Companion matrix of a monic polynomial (multiplication by X on Z[X]/(p))."""
    if not p.is_monic() or p.degree < 1:
        raise ValueError("companion expects a monic polynomial of degree >= 1")
    n = p.degree
    out = [[0] * n for _ in range(n)]
    for i in range(1, n):
        out[i][i - 1] = 1
    for i in range(n):
        out[i][n - 1] = -p.coeffs[i]
    return IntMatrix(out)


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination with sign tracking."""
    if not M.is_square():
        raise ValueError("det expects a square matrix")
    a = [row[:] for row in M.data]
    n = M.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly(M: IntMatrix) -> IntPolynomial:
    """Monic characteristic polynomial det(X*I - M) via Faddeev-LeVerrier.

    The intermediate divisions by k are exact for integer matrices.
    """
    if not M.is_square():
        raise ValueError("char_poly expects a square matrix")
    n = M.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = IntMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ Mk
        tr = sum(Mk.data[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
        if k < n:
            for i in range(n):
                Mk.data[i][i] += c
    return IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNFDecomposition:
    """U * M * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...), d_i >= 0."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.data[i][i] for i in range(n))


def smith_normal_form(M: IntMatrix) -> SNFDecomposition:
    """Smith normal form with smallest-nonzero-pivot selection.

    Row operations accumulate into U, column operations into V; the diagonal
    is normalized to be nonnegative with the divisibility chain d_i | d_{i+1}.
    """
    a = [row[:] for row in M.data]
    n, m = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for t in range(m):
            a[i][t] -= q * a[j][t]
        for t in range(n):
            U[i][t] -= q * U[j][t]

    def col_op(i, j, q):  # col_i -= q * col_j
        for t in range(n):
            a[t][i] -= q * a[t][j]
        for t in range(m):
            V[t][i] -= q * V[t][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for t in range(n):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(m):
            V[t][i], V[t][j] = V[t][j], V[t][i]

    def negate_row(i):
        for t in range(m):
            a[i][t] = -a[i][t]
        for t in range(n):
            U[i][t] = -U[i][t]

    r = min(n, m)
    for k in range(r):
        while True:
            # smallest-magnitude nonzero pivot in the trailing block
            best = None
            for i in range(k, n):
                for j in range(k, m):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != k:
                swap_rows(k, bi)
            if bj != k:
                swap_cols(k, bj)
            if a[k][k] < 0:
                negate_row(k)
            dirty = False
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    row_op(i, k, q)
                    if a[i][k] != 0:
                        dirty = True
            for j in range(k + 1, m):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    col_op(j, k, q)
                    if a[k][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block for the chain to work out
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, m):
                    if a[i][j] % a[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(k, offender, -1)  # fold the offending row in and re-reduce

    return SNFDecomposition(IntMatrix(U), IntMatrix(a), IntMatrix(V))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group as an invariant-factor chain d_1 | d_2 | ..., d_i >= 2.

    The trivial group is the empty chain and renders as "0".
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("divisibility chain violated")

    @classmethod
    def from_cyclic_orders(cls, orders) -> "FiniteAbelianGroup":
        """Normalize an arbitrary direct sum of cyclic groups."""
        primary: dict[int, list[int]] = {}
        for c in orders:
            c = int(c)
            if c == 0:
                raise ValueError("infinite cyclic factor")
            for p, e in factorize(c).items():
                primary.setdefault(p, []).append(p ** e)
        for p in primary:
            primary[p].sort(reverse=True)
        depth = max((len(v) for v in primary.values()), default=0)
        invf = []
        for i in range(depth):
            d = 1
            for v in primary.values():
                if i < len(v):
                    d *= v[i]
            invf.append(d)
        return cls(tuple(sorted(invf)))

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def primary_partitions(self) -> dict[int, tuple[int, ...]]:
        """prime -> descending exponent partition of the p-primary part."""
        out: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in factorize(d).items():
                out.setdefault(p, []).append(e)
        return {p: tuple(sorted(v, reverse=True)) for p, v in out.items()}

    def rank_at(self, q: int) -> int:
        """Minimal generator count of the q-primary part."""
        return sum(1 for d in self.invariant_factors if d % q == 0)

    def embeds_in(self, other: "FiniteAbelianGroup") -> bool:
        """Subgroup test: for each prime the exponent partitions must dominate
        componentwise (largest against largest)."""
        mine = self.primary_partitions()
        theirs = other.primary_partitions()
        for p, mu in mine.items():
            lam = theirs.get(p, ())
            if len(mu) > len(lam) or any(mu[i] > lam[i] for i in range(len(mu))):
                return False
        return True

    def subgroup_classes(self) -> list["FiniteAbelianGroup"]:
        """Isomorphism classes of subgroups, smallest order first."""
        per_prime = []
        for p, lam in sorted(self.primary_partitions().items()):
            opts = set()
            for mu in itertools.product(*[range(e + 1) for e in lam]):
                ms = tuple(sorted((x for x in mu if x > 0), reverse=True))
                if all(ms[i] <= lam[i] for i in range(len(ms))):
                    opts.add(ms)
            per_prime.append((p, sorted(opts)))
        out = set()
        for combo in itertools.product(*[opts for _, opts in per_prime]) if per_prime else [()]:
            cyclics = []
            for (p, _), mu in zip(per_prime, combo):
                cyclics += [p ** e for e in mu]
            out.add(FiniteAbelianGroup.from_cyclic_orders(cyclics))
        return sorted(out, key=lambda g: (g.order, g.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z{d}" for d in self.invariant_factors)

    def __lt__(self, other):
        return (self.order, self.invariant_factors) < (other.order, other.invariant_factors)


class InfiniteCokernelError(ValueError):
    """Raised when the cokernel is not finite (the matrix is singular)."""


def cokernel(M: IntMatrix) -> FiniteAbelianGroup:
    """Invariant factors of Z^n / M Z^n, dropping trivial factors."""
    if not M.is_square():
        raise ValueError("cokernel expects a square matrix")
    if det(M) == 0:
        raise InfiniteCokernelError("matrix is singular: infinite cokernel")
    diag = smith_normal_form(M).diagonal
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


def kernel_basis(M: IntMatrix) -> list[list[int]]:
    """Primitive integer basis of ker(M) over Q (a saturated sublattice).

    Columns of V matching zero diagonal entries of the SNF give the basis.
    """
    snf = smith_normal_form(M)
    diag = snf.diagonal
    basis = []
    for j in range(M.cols):
        if j >= len(diag) or diag[j] == 0:
            basis.append([snf.V.data[i][j] for i in range(M.cols)])
    return basis


def matrix_order(M: IntMatrix, bound: int = 10000) -> int:
    """Multiplicative order of M, or raise if it exceeds `bound`."""
    if not M.is_square():
        raise ValueError("matrix_order expects a square matrix")
    ident = IntMatrix.identity(M.rows)
    P = M.copy()
    for k in range(1, bound + 1):
        if P == ident:
            return k
        P = P @ M
    raise ValueError(f"matrix has no order <= {bound}")
