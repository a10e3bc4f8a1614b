"""Invariant alternating forms on cyclic-group lattices and their Riemann checks.

A lambda-vector (lambda_1, ..., lambda_floor(m/2)) determines the unique
G-invariant alternating form on Z[X]/(X^m - 1) with E(X^i, X^j) = lambda_(j-i)
for j > i (indices mod m, lambda_(m-t) = -lambda_t, lambda_(m/2) = 0 for even
m).  The form descends to the reduced lattice R' = Z[X]/(q_m) because the
kernel of the projection is killed by every such form; on the power basis of
R' the descended matrix is simply the leading principal block.

Verification works in two layers.  First Riemann relation: E(v_h, v_k) = 0 in
exact cyclotomic arithmetic for all chosen eigenvector pairs.  Positivity: the
Hermitian Gram matrix is diagonal in the eigenvector basis (off-diagonal
entries vanish identically, which is asserted exactly), and the diagonal
values -i*E(v_k, conj v_k) are certified by interval refinement, doubling the
bit budget until every sign is decided or a cap is reached ("inconclusive",
never a guess).

For a lambda-vector the signs of the diagonal determine which residue of each
conjugate pair must be placed in H^{1,0} for the form to polarize; a published
(orbit, lambda) row is accepted when that forced selection lands in the stated
Galois orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .cycnum import (CyclotomicNumber, RealInterval, _root_boxes,
                     cyclotomic_poly, embed, quotient_poly, totient)
from .intlattice import IntMatrix, companion, det, kernel_basis, smith_normal_form
from .orbits import CharacterTuple, _expand_orbit
from .torus import eigenvector_full, eigenvector_reduced, reduced_rank, reduced_residues


class InconclusiveError(ArithmeticError):
    """A certified sign decision could not be reached within the bit cap."""


class DegenerateFormError(ArithmeticError):
    """The form vanishes identically on some character pair (exact, not a
    precision issue): it can never be a polarization."""


# ---------------------------------------------------------------------------
# lambda vectors and forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaVector:
    """Integers lambda_1 ... lambda_floor(m/2); for even m the last one is 0."""

    m: int
    lambdas: tuple[int, ...]

    def __post_init__(self):
        half = self.m // 2
        lam = tuple(int(x) for x in self.lambdas)
        if len(lam) == half - 1 and self.m % 2 == 0:
            lam = lam + (0,)  # the forced lambda_(m/2) may be omitted on input
        if len(lam) != half:
            raise ValueError(f"m={self.m} needs {half} entries (or {half - 1} for even m), got {len(self.lambdas)}")
        if self.m % 2 == 0 and lam[-1] != 0:
            raise ValueError("lambda_(m/2) is forced to 0 for even m")
        if not any(lam):
            raise ValueError("lambda-vector must not be identically zero")
        object.__setattr__(self, "lambdas", lam)

    def full(self) -> list[int]:
        """lambda_t for t = 0..m-1 with lambda_0 = 0 and lambda_(m-t) = -lambda_t."""
        out = [0] * self.m
        for t, v in enumerate(self.lambdas, start=1):
            out[t] = v
            if v:
                out[self.m - t] = -v
        return out

    def sign_normalized(self) -> "LambdaVector":
        """Flip so the first nonzero entry is positive (E and -E are conjugate data)."""
        for v in self.lambdas:
            if v:
                return self if v > 0 else LambdaVector(self.m, tuple(-x for x in self.lambdas))
        raise AssertionError


def parse_lambda_shorthand(text: str) -> tuple[int, ...]:
    """Expand the a^k repeat notation: "(-1)^3,0,1" -> (-1, -1, -1, 0, 1)."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        # strip only a pair of parentheses wrapping the whole vector
        depth = 0
        wraps = True
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(text) - 1:
                wraps = False
                break
        if wraps:
            text = text[1:-1]
    out: list[int] = []
    for raw in text.split(","):
        tok = raw.strip()
        if not tok:
            continue
        reps = 1
        if "^" in tok:
            base, _, exp = tok.partition("^")
            tok, reps = base.strip(), int(exp.strip())
        tok = tok.strip()
        if tok.startswith("(") and tok.endswith(")"):
            tok = tok[1:-1].strip()
        out.extend([int(tok)] * reps)
    return tuple(out)


@dataclass(frozen=True)
class AlternatingFormData:
    """Skew matrix of a lambda-form on the full or restricted basis."""

    m: int
    basis: str  # "full" | "restricted"
    matrix: IntMatrix = field(compare=False)
    lam: LambdaVector | None = None

    def automorphism_matrix(self) -> IntMatrix:
        """Multiplication by X on the lattice carrying the form."""
        if self.basis == "full":
            cyc = [[0] * self.m for _ in range(self.m)]
            for i in range(self.m):
                cyc[(i + 1) % self.m][i] = 1
            return IntMatrix(cyc)
        return companion(quotient_poly(self.m))


def build_form(lv: LambdaVector, basis: str = "restricted") -> AlternatingFormData:
    """Assemble the circulant skew matrix; the restricted form is the leading
    d x d block (the quotient projection kills nothing the form sees)."""
    m = lv.m
    lamf = lv.full()
    full = [[lamf[(j - i) % m] for j in range(m)] for i in range(m)]
    if basis == "full":
        return AlternatingFormData(m=m, basis="full", matrix=IntMatrix(full), lam=lv)
    if basis != "restricted":
        raise ValueError("basis must be 'full' or 'restricted'")
    d = reduced_rank(m)
    block = [row[:d] for row in full[:d]]
    return AlternatingFormData(m=m, basis="restricted", matrix=IntMatrix(block), lam=lv)


def check_invariance(f: AlternatingFormData, aut: IntMatrix | None = None) -> bool:
    """True iff aut^T * E * aut == E exactly (default aut: multiplication by X)."""
    A = aut if aut is not None else f.automorphism_matrix()
    if A.rows != f.matrix.rows:
        raise ValueError("rank mismatch between form and automorphism")
    return (A.transpose() @ f.matrix) @ A == f.matrix


def kernel_rank(f: AlternatingFormData) -> tuple[int, list[list[int]]]:
    """Rank deficiency over Q with primitive integer generators of the kernel."""
    basis = kernel_basis(f.matrix)
    return len(basis), basis


# ---------------------------------------------------------------------------
# complex structures on R'
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedStructure:
    """A choice of one residue per surviving conjugate pair of R'."""

    m: int
    chosen: tuple[int, ...]

    def __post_init__(self):
        m = self.m
        survivors = set(reduced_residues(m))
        chosen = tuple(sorted(j % m for j in self.chosen))
        if len(set(chosen)) != len(chosen):
            raise ValueError("repeated residue")
        for j in chosen:
            if j not in survivors:
                raise ValueError(f"residue {j} does not survive on R' for m={m}")
            if (m - j) in chosen:
                raise ValueError(f"residues {j} and {m - j} are conjugate")
        if 2 * len(chosen) != len(survivors):
            raise ValueError("must choose exactly one residue per pair")
        object.__setattr__(self, "chosen", chosen)

    @property
    def primitive(self) -> tuple[int, ...]:
        return tuple(j for j in self.chosen if gcd(j, self.m) == 1)

    def conjugate(self) -> "ReducedStructure":
        return ReducedStructure(self.m, tuple((self.m - j) % self.m for j in self.chosen))


def standard_structure(m: int) -> ReducedStructure:
    """The choice taking every residue below m/2 (the reference decomposition)."""
    return ReducedStructure(m, tuple(j for j in reduced_residues(m) if j < m - j))


def structure_with_primitive(m: int, primitive_residues) -> ReducedStructure:
    """Primitive part as given, everything non-primitive at the standard choice."""
    prim = tuple(sorted(j % m for j in primitive_residues))
    rest = tuple(j for j in reduced_residues(m) if gcd(j, m) != 1 and j < m - j)
    return ReducedStructure(m, prim + rest)


# ---------------------------------------------------------------------------
# exact pairing values
# ---------------------------------------------------------------------------

def pairing_closed(lv: LambdaVector, h: int, k: int) -> CyclotomicNumber:
    """E(v_h, v_k) on the full lattice, via the factored double sum:
    (sum_t lambda_t zeta^{-kt}) * (sum_i zeta^{-(h+k)i}).  Exact; both factors
    are summed explicitly rather than assuming character orthogonality."""
    m = lv.m
    lamf = lv.full()
    factor1 = CyclotomicNumber.zero(m)
    for t in range(1, m):
        if lamf[t]:
            factor1 = factor1 + lamf[t] * CyclotomicNumber.root_of_unity(m, (-k * t) % m)
    geom = CyclotomicNumber.zero(m)
    for i in range(m):
        geom = geom + CyclotomicNumber.root_of_unity(m, (-(h + k) * i) % m)
    return factor1 * geom


def pairing_literal(f: AlternatingFormData, h: int, k: int) -> CyclotomicNumber:
    """E(v_h, v_k) by the literal matrix-vector product on the form's basis."""
    m = f.m
    if f.basis == "full":
        vh, vk = eigenvector_full(m, h), eigenvector_full(m, k)
    else:
        vh, vk = eigenvector_reduced(m, h), eigenvector_reduced(m, k)
    Evk = f.matrix.apply(vk)
    acc = CyclotomicNumber.zero(m)
    for a, b in zip(vh, Evk):
        acc = acc + a * b
    return acc


def first_riemann(f: AlternatingFormData, cs: ReducedStructure) -> bool:
    """E vanishes on H^{1,0} x H^{1,0}: checked exactly on the eigenvector basis."""
    if f.m != cs.m:
        raise ValueError("modulus mismatch")
    if f.basis != "restricted":
        raise ValueError("first Riemann relation is checked on the reduced lattice")
    lv = f.lam
    if lv is None:
        raise ValueError("form carries no lambda-vector")
    chosen = cs.chosen
    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            if not pairing_closed(lv, chosen[a], chosen[b]).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# Gram matrix and positivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolarizationReport:
    invariant: bool
    riemann1: bool
    posdef: str  # "yes" | "no" | "inconclusive"
    type: tuple[int, ...] | None
    gram_diagonal: tuple[RealInterval, ...]
    chosen: tuple[int, ...]
    bits_used: int

    @property
    def principal(self) -> bool:
        return self.type is not None and all(d == 1 for d in self.type)


def gram_off_diagonal_zero(lv: LambdaVector, cs: ReducedStructure) -> bool:
    """The Hermitian Gram entries G_hk = E(-i v_h, conj v_k) vanish exactly for
    h != k; asserting this justifies deciding minors from the diagonal alone."""
    m = lv.m
    ch = cs.chosen
    for a in range(len(ch)):
        for b in range(len(ch)):
            if a == b:
                continue
            if not pairing_closed(lv, ch[a], (m - ch[b]) % m).is_zero():
                return False
    return True


def gram_diagonal_exact(lv: LambdaVector, k: int) -> CyclotomicNumber:
    """E(v_k, conj v_k): purely imaginary element of Q(zeta_m)."""
    val = pairing_closed(lv, k, (lv.m - k) % lv.m)
    assert (val + val.conj()).is_zero(), "Gram diagonal must be purely imaginary"
    return val


def _diag_intervals(lv: LambdaVector, chosen, bits: int) -> list[RealInterval]:
    """-i * E(v_k, conj v_k) as real intervals (the imaginary part of the box)."""
    out = []
    for k in chosen:
        box = embed(gram_diagonal_exact(lv, k), bits)
        rotated = box.mul_minus_i()
        if not rotated.im.contains(0):
            raise AssertionError("rotated Gram diagonal must be real")
        out.append(rotated.re)
    return out


def gram_and_posdef(f: AlternatingFormData, cs: ReducedStructure,
                    bits: int = 128, max_bits: int = 4096) -> PolarizationReport:
    """Decide positive definiteness of the Hermitian form by leading principal
    minors of the Gram matrix, with precision doubling up to max_bits."""
    lv = f.lam
    if lv is None or f.basis != "restricted":
        raise ValueError("needs a restricted lambda-form")
    if f.m != cs.m:
        raise ValueError("modulus mismatch")
    invariant = check_invariance(f)
    riemann1 = first_riemann(f, cs)
    diagonal_only = gram_off_diagonal_zero(lv, cs)
    assert diagonal_only, "Gram matrix must be diagonal in the eigenvector basis"

    verdict = "inconclusive"
    cur_bits = bits
    diag = _diag_intervals(lv, cs.chosen, cur_bits)
    if any(gram_diagonal_exact(lv, k).is_zero() for k in cs.chosen):
        # H(v, v) = 0 on an eigenvector: semi-definite at best, exactly "no"
        return PolarizationReport(invariant=invariant, riemann1=riemann1, posdef="no",
                                  type=None, gram_diagonal=tuple(diag),
                                  chosen=cs.chosen, bits_used=cur_bits)
    while True:
        minors: list[RealInterval] = []
        acc = RealInterval.point(1)
        for g in diag:
            acc = acc * g
            minors.append(acc)
        if all(mi.is_positive() for mi in minors):
            verdict = "yes"
            break
        if any(mi.is_negative() for mi in minors):
            # a definitely-negative leading minor rules positivity out
            verdict = "no"
            break
        if cur_bits >= max_bits:
            verdict = "inconclusive"
            break
        cur_bits *= 2
        refined = _diag_intervals(lv, cs.chosen, cur_bits)
        diag = [a.intersect(b) for a, b in zip(diag, refined)]

    ptype: tuple[int, ...] | None = None
    if invariant and riemann1 and verdict == "yes":
        ptype = polarization_type(f)
    return PolarizationReport(invariant=invariant, riemann1=riemann1, posdef=verdict,
                              type=ptype, gram_diagonal=tuple(diag),
                              chosen=cs.chosen, bits_used=cur_bits)


def polarization_type(f: AlternatingFormData) -> tuple[int, ...]:
    """Elementary divisors d_1 | ... | d_g of the form (each SNF divisor of a
    non-degenerate skew form appears twice; the distinct values are reported)."""
    if det(f.matrix) == 0:
        raise ValueError("degenerate form has no polarization type")
    diag = smith_normal_form(f.matrix).diagonal
    assert len(diag) % 2 == 0
    out = []
    for i in range(0, len(diag), 2):
        if diag[i] != diag[i + 1]:
            raise AssertionError("skew form divisors must pair up")
        out.append(diag[i])
    return tuple(out)


# ---------------------------------------------------------------------------
# block decomposition over the cyclotomic factors
# ---------------------------------------------------------------------------

def split_blocks(f: AlternatingFormData) -> dict[int, IntMatrix]:
    """Diagonal blocks of the restricted form on the saturated sublattices
    ker(phi_k(X-action)) = (R' tensor Q)_k intersect R', one per order k.

    Cross blocks are checked to vanish identically before returning.
    """
    if f.basis != "restricted":
        raise ValueError("split_blocks expects the restricted basis")
    m = f.m
    Mx = f.automorphism_matrix()
    present = sorted({m // gcd(j, m) for j in reduced_residues(m)})
    bases: dict[int, list[list[int]]] = {}
    for k in present:
        phi = cyclotomic_poly(k)
        # evaluate phi_k at the multiplication matrix
        acc = IntMatrix.zero(Mx.rows, Mx.cols)
        power = IntMatrix.identity(Mx.rows)
        for c in phi.coeffs:
            if c:
                acc = acc + IntMatrix([[c * x for x in row] for row in power.data])
            power = power @ Mx
        basis = kernel_basis(acc)
        if len(basis) != totient(k):
            raise AssertionError(f"block of order {k} has unexpected rank")
        bases[k] = basis
    blocks: dict[int, IntMatrix] = {}
    for k, bas in bases.items():
        B = IntMatrix(bas).transpose()
        blocks[k] = (B.transpose() @ f.matrix) @ B
    for k1 in present:
        for k2 in present:
            if k1 >= k2:
                continue
            B1 = IntMatrix(bases[k1]).transpose()
            B2 = IntMatrix(bases[k2]).transpose()
            cross = (B1.transpose() @ f.matrix) @ B2
            if any(any(x != 0 for x in row) for row in cross.data):
                raise AssertionError(f"cross block ({k1},{k2}) does not vanish")
    return blocks


# ---------------------------------------------------------------------------
# structure forced by a lambda-vector; search
# ---------------------------------------------------------------------------

def structure_from_lambda(lv: LambdaVector, bits: int = 128, max_bits: int = 4096) -> ReducedStructure:
    """The unique residue choice per pair for which the form is positive, read
    off from the certified signs of the Gram diagonal.  Raises
    DegenerateFormError when a diagonal vanishes exactly (no choice can work)
    and InconclusiveError when a nonzero sign is still undecided at the cap."""
    m = lv.m
    reps = [j for j in reduced_residues(m) if j < m - j]
    chosen = []
    for j in reps:
        exact = gram_diagonal_exact(lv, j)
        if exact.is_zero():
            raise DegenerateFormError(f"form is degenerate on the character pair ({j}, {m - j})")
        cur = bits
        box = embed(exact, cur).mul_minus_i().re
        while not (box.is_positive() or box.is_negative()):
            if cur >= max_bits:
                raise InconclusiveError(f"sign of Gram diagonal at k={j} undecided at {max_bits} bits")
            cur *= 2
            box = box.intersect(embed(exact, cur).mul_minus_i().re)
        chosen.append(j if box.is_positive() else m - j)
    return ReducedStructure(m, tuple(sorted(chosen)))


def _diag_coordinates(m: int, half_lambdas: list[int], k: int) -> tuple[int, ...]:
    """Integer power-basis coordinates of sum_t lambda_t zeta^{kt} over the
    full skew-extended lambda (lambda_(m-t) = -lambda_t); its vanishing is
    exactly the vanishing of the Gram diagonal at k."""
    from .cycnum import _reduction_rows
    rows = _reduction_rows(m)
    deg = totient(m)
    half = len(half_lambdas)
    out = [0] * deg
    for t in range(1, m):
        if t <= half:
            v = half_lambdas[t - 1]
        elif m - t <= half:
            v = -half_lambdas[m - t - 1]
        else:
            v = 0
        if v:
            row = rows[(k * t) % m]
            for i in range(deg):
                if row[i]:
                    out[i] += v * row[i]
    return tuple(out)


def search_lambda(m: int, target, bound: int = 1,
                  limit: int | None = None) -> list[LambdaVector]:
    """All lambda-vectors with entries in [-bound, bound] whose forms are
    G-invariant, non-degenerate on R', satisfy the first Riemann relation and
    are positive definite for a structure compatible with `target`.

    `target` is either a ReducedStructure (positivity for exactly that choice)
    or an iterable of primitive residues naming a Galois orbit (positivity for
    some member of the orbit, non-primitive pairs free).  Results are
    deduplicated up to overall sign and sorted lexicographically.

    The sign of each Gram diagonal is prefiltered in floating point against
    midpoints of certified sine enclosures: with |lambda_t| <= 3 and at most
    m/2 terms the accumulated error is provably below 1e-10, so |s| > 1e-9
    certifies the sign.  Smaller values fall back to the exact zero test and,
    for genuinely tiny nonzero values, to interval refinement.
    """
    if bound < 1 or bound > 3:
        raise ValueError("bound must be between 1 and 3")
    half = m // 2
    nfree = half - 1 if m % 2 == 0 else half
    reps = [j for j in reduced_residues(m) if j < m - j]

    fixed_structure: ReducedStructure | None = None
    orbit_members: frozenset | None = None
    if isinstance(target, ReducedStructure):
        fixed_structure = target
    else:
        rep_tuple = CharacterTuple(m, tuple(sorted(j % m for j in target)))
        orbit_members = frozenset(t.residues for t in _expand_orbit(rep_tuple))

    boxes = _root_boxes(m, 64)
    sin_mid = [float((b.im.lo + b.im.hi) / 2) for b in boxes]
    # per pair representative, the sine midpoints aligned with lambda_1..:
    # s(j) = sum_t lambda_t * (sin(2 pi j t / m) - sin(2 pi j (m - t) / m))
    # collapses to the plain sum over t <= m/2 because lambda_(m-t) = -lambda_t
    tables = [[sin_mid[(j * t) % m] - (sin_mid[(j * (m - t)) % m] if t < m - t else 0.0)
               for t in range(1, half + 1)] for j in reps]
    threshold = 1e-9

    found: list[LambdaVector] = []
    for lam in itertools.product(range(-bound, bound + 1), repeat=nfree):
        first_nonzero = next((v for v in lam if v), None)
        if first_nonzero is None or first_nonzero < 0:
            continue  # skip zero and dedupe E ~ -E by sign normalization
        full = list(lam) + ([0] if m % 2 == 0 else [])
        ok = True
        chosen = []
        for idx, j in enumerate(reps):
            tab = tables[idx]
            s = 0.0
            for t, v in enumerate(full):
                if v:
                    s += v * tab[t]
            if s > threshold:
                chosen.append(j)
            elif s < -threshold:
                chosen.append(m - j)
            else:
                coords = _diag_coordinates(m, full, j)
                if not any(coords):
                    ok = False  # degenerate on this pair
                    break
                sign = _certified_sign(m, coords)
                if sign == 0:
                    ok = False  # undecided at the cap: skip conservatively
                    break
                chosen.append(j if sign > 0 else m - j)
        if not ok:
            continue
        chosen_t = tuple(sorted(chosen))
        if fixed_structure is not None:
            if chosen_t != fixed_structure.chosen:
                continue
        else:
            prim = tuple(j for j in chosen_t if gcd(j, m) == 1)
            if prim not in orbit_members:
                continue
        found.append(LambdaVector(m, tuple(full)))
        if limit is not None and len(found) >= limit:
            break
    found.sort(key=lambda lv: lv.lambdas)
    return found


def _certified_sign(m: int, coords, bits: int = 128, max_bits: int = 4096) -> int:
    """Certified sign of the imaginary part of a cyclotomic integer given by
    power-basis coordinates; 0 when undecided at the cap."""
    z = CyclotomicNumber(m, coords)
    cur = bits
    box = embed(z, cur).im
    while not (box.is_positive() or box.is_negative()):
        if cur >= max_bits:
            return 0
        cur *= 2
        box = box.intersect(embed(z, cur).im)
    return 1 if box.is_positive() else -1
