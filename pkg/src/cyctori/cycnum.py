"""Exact arithmetic in cyclotomic fields, plus certified complex enclosures.

Elements of Q(zeta_m) are held in the power basis 1, zeta, ..., zeta^(phi(m)-1)
of Z[X]/(phi_m(X)) tensor Q, with Fraction coefficients.  All arithmetic is
exact; products are reduced by division with remainder by phi_m after every
multiplication so coefficient growth stays bounded per operation.

Numeric images under zeta_m -> exp(2*pi*i/m) are produced as ComplexInterval
boxes with dyadic endpoints.  The enclosures for cos/sin come from mpmath's
interval context; everything downstream (sums, products, rotations, sign
decisions) is done here so that containment is preserved by construction.

Also provides the elementary number theory the rest of the package leans on
(totient, Moebius, cyclotomic polynomials) and the two order-counting
routines: the printed closed form for the number of elements of order m in
(Z/m)^r, and an inclusion-exclusion oracle.  The two disagree for composite
non-prime-power m (e.g. m=6, r=2 gives 20 vs 24); both are exposed and the
divergence is surfaced, never silently repaired.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

Rational = Fraction


# ---------------------------------------------------------------------------
# elementary number theory
# ---------------------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(m: int) -> int:
    """Euler's phi: the number of units mod m."""
    if m < 1:
        raise ValueError("totient expects m >= 1")
    out = m
    for p in factorize(m):
        out = out // p * (p - 1)
    return out


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius expects d >= 1")
    fac = factorize(d)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def order_count_paper(m: int, r: int) -> int:
    """Printed closed form for #{elements of order exactly m in (Z/m)^r}.

    Evaluated literally: sum_{k=0}^{r-1} phi(m) * (m - phi(m))^k * m^(r-k-1).
    Correct for prime powers; for composite non-prime-power m it disagrees
    with `order_count_oracle` (the stated domain of validity is unclear, so
    the literal value is reported rather than fixed).
    """
    if m < 2 or r < 1:
        raise ValueError("order_count_paper expects m >= 2, r >= 1")
    ph = totient(m)
    return sum(ph * (m - ph) ** k * m ** (r - k - 1) for k in range(r))


def order_count_oracle(m: int, r: int) -> int:
    """#{elements of order exactly m in (Z/m)^r} by inclusion-exclusion.

    An element has order dividing d iff it lies in (d*Z/m)^r, so the count of
    elements of order exactly m is sum_{d|m} mu(d) * (m/d)^r.
    """
    if m < 2 or r < 1:
        raise ValueError("order_count_oracle expects m >= 2, r >= 1")
    return sum(mobius(d) * (m // d) ** r for d in divisors(m))


def order_count_brute(m: int, r: int) -> int:
    """Brute-force count over all m^r tuples; only sensible for small m*r."""
    # order of v is m / gcd(m, v_1, ..., v_r), so order m means the gcd is 1
    return sum(1 for v in itertools.product(range(m), repeat=r) if gcd(m, *v) == 1)


# ---------------------------------------------------------------------------
# integer polynomials and cyclotomic polynomials
# ---------------------------------------------------------------------------

class IntPolynomial:
    """Univariate integer polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(x) for x in c)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                              for i in range(n)])

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                              for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntPolynomial(out)

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division with remainder by a monic divisor; stays in Z[X]."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            quot[i - d] = c
            for j, dc in enumerate(divisor.coeffs):
                rem[i - d + j] -= c * dc
        return IntPolynomial(quot), IntPolynomial(rem)

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        if not self.coeffs:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "X" if i == 1 else f"X^{i}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def monomial(degree: int, coeff: int = 1) -> "IntPolynomial":
        return IntPolynomial([0] * degree + [coeff])


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> IntPolynomial:
    """The k-th cyclotomic polynomial, via (X^k - 1) / prod_{d|k, d<k} phi_d."""
    if k < 1:
        raise ValueError("cyclotomic_poly expects k >= 1")
    num = IntPolynomial([-1] + [0] * (k - 1) + [1])
    for d in divisors(k):
        if d < k:
            num, rem = num.divmod_exact(cyclotomic_poly(d))
            assert not rem
    return num


def quotient_poly(m: int) -> IntPolynomial:
    """Defining polynomial of the reduced lattice R' inside Z[X]/(X^m - 1).

    (X^m-1)/(X-1) for odd m (all eigenvalue orders > 1 survive) and
    (X^m-1)/(X^2-1) for even m (orders > 2 survive).
    """
    if m < 3:
        raise ValueError("quotient_poly expects m >= 3")
    num = IntPolynomial([-1] + [0] * (m - 1) + [1])
    den = IntPolynomial([-1, 1]) if m % 2 else IntPolynomial([-1, 0, 1])
    q, rem = num.divmod_exact(den)
    assert not rem
    return q


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e expresses X^e mod phi_m in the power basis; covers every exponent
    a product of two reduced elements can reach (2*phi(m)-2) as well as e < m."""
    phi = cyclotomic_poly(m)
    deg = phi.degree
    rows = []
    for e in range(max(m, 2 * deg - 1)):
        rem = IntPolynomial.monomial(e).divmod_exact(phi)[1]
        rows.append(tuple(rem.coeffs[i] if i < len(rem.coeffs) else 0 for i in range(deg)))
    return tuple(rows)


class CyclotomicNumber:
    """Exact element of Q(zeta_m) in the power basis; carries its level m."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        self.level = level
        deg = totient(level)
        c = [Fraction(x) for x in coeffs]
        if len(c) != deg:
            raise ValueError(f"level {level} needs {deg} coefficients, got {len(c)}")
        self.coeffs = tuple(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, level: int) -> "CyclotomicNumber":
        return cls(level, [0] * totient(level))

    @classmethod
    def from_rational(cls, level: int, value) -> "CyclotomicNumber":
        c = [Fraction(0)] * totient(level)
        c[0] = Fraction(value)
        return cls(level, c)

    @classmethod
    def root_of_unity(cls, level: int, power: int) -> "CyclotomicNumber":
        """zeta_m^power as an element of Q(zeta_m)."""
        row = _reduction_rows(level)[power % level]
        return cls(level, row)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "CyclotomicNumber"):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other):
        self._check(other)
        return CyclotomicNumber(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CyclotomicNumber(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicNumber(self.level, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.level, [a * other for a in self.coeffs])
        self._check(other)
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        # reduce mod phi_m: degrees >= deg rewritten through the table
        rows = _reduction_rows(self.level)
        out = list(prod[:deg])
        for e in range(deg, 2 * deg - 1):
            c = prod[e]
            if c:
                row = rows[e]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return CyclotomicNumber(self.level, out)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta^j -> zeta^(m-j)."""
        m = self.level
        out = CyclotomicNumber.zero(m)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * CyclotomicNumber.root_of_unity(m, (m - i) % m)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return (isinstance(other, CyclotomicNumber) and self.level == other.level
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber(m={self.level}, {list(self.coeffs)})"


def cyc_arith(a: CyclotomicNumber, b: CyclotomicNumber | None, op: str) -> CyclotomicNumber:
    """Dispatch wrapper: op in {'add', 'sub', 'mul', 'conj'} (conj ignores b)."""
    if op == "conj":
        return a.conj()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# certified interval arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] with dyadic rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, x) -> "RealInterval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other):
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return RealInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q >= 0:
                return RealInterval(self.lo * q, self.hi * q)
            return RealInterval(self.hi * q, self.lo * q)
        cands = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RealInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RealInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def round_out(self, bits: int) -> "RealInterval":
        """Outward rounding to endpoints with denominator 2^bits."""
        scale = 1 << bits
        lo = Fraction((self.lo * scale).__floor__(), scale)
        hi = Fraction(-((-self.hi * scale).__floor__()), scale)
        return RealInterval(lo, hi)


@dataclass(frozen=True)
class ComplexInterval:
    """Axis-aligned box certified to contain a complex value."""

    re: RealInterval
    im: RealInterval

    @classmethod
    def point(cls, re, im=0) -> "ComplexInterval":
        return cls(RealInterval.point(re), RealInterval.point(im))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def __add__(self, other):
        return ComplexInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexInterval(self.re * other, self.im * other)
        return ComplexInterval(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def mul_minus_i(self) -> "ComplexInterval":
        """Multiplication by -i: (a + bi) -> (b - ai); exact rotation."""
        return ComplexInterval(self.im, -self.re)

    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def contains_interval(self, other: "ComplexInterval") -> bool:
        return self.re.contains_interval(other.re) and self.im.contains_interval(other.im)

    def intersect(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.re.intersect(other.re), self.im.intersect(other.im))


def _mpf_tuple_to_fraction(t) -> Fraction:
    # raw mpf tuples are (sign, mantissa, exp, bc): exact dyadic values
    sign, man, exp, _ = t
    man = int(man)
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** int(exp)
    return -v if sign else v


def _mpf_to_fraction(x) -> Fraction:
    return _mpf_tuple_to_fraction(mpmath.mpf(x)._mpf_)


_IV_LOCK = threading.Lock()


@lru_cache(maxsize=None)
def _root_boxes(m: int, bits: int) -> tuple[ComplexInterval, ...]:
    """Certified boxes for zeta_m^j, j = 0..m-1, at roughly `bits` precision.

    The mpmath interval context is process-global, so its precision bump is
    serialized; everything else in this module is pure and freely shareable.
    """
    iv = mpmath.iv
    with _IV_LOCK:
        old = iv.prec
        try:
            iv.prec = bits + 16
            out = []
            for j in range(m):
                theta = 2 * iv.pi * j / m
                c, s = iv.cos(theta), iv.sin(theta)
                # endpoints via the raw tuples: converting through mpf() would
                # re-round to the global working precision and lose containment
                clo, chi = c._mpi_
                slo, shi = s._mpi_
                out.append(ComplexInterval(
                    RealInterval(_mpf_tuple_to_fraction(clo), _mpf_tuple_to_fraction(chi)),
                    RealInterval(_mpf_tuple_to_fraction(slo), _mpf_tuple_to_fraction(shi)),
                ))
            return tuple(out)
        finally:
            iv.prec = old


def embed(z: CyclotomicNumber, bits: int = 64) -> ComplexInterval:
    """Certified box containing the image of z under zeta_m -> exp(2*pi*i/m)."""
    if bits < 32:
        raise ValueError("embed expects bits >= 32")
    if z.is_zero():
        return ComplexInterval.point(0)
    boxes = _root_boxes(z.level, bits)
    acc = ComplexInterval.point(0)
    for j, c in enumerate(z.coeffs):
        if c:
            acc = acc + boxes[j] * c
    return ComplexInterval(acc.re.round_out(bits + 8), acc.im.round_out(bits + 8))


def embed_refined(z: CyclotomicNumber, bits: int, previous: ComplexInterval | None = None) -> ComplexInterval:
    """Re-embed at higher precision; intersecting with the previous box keeps
    refinement monotone (both contain the true value)."""
    box = embed(z, bits)
    return box if previous is None else box.intersect(previous)
