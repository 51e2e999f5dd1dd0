"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are stored in the power basis modulo the L-th cyclotomic
polynomial, as an integer numerator vector over one positive common
denominator.  The pair is kept reduced (content of the numerators is coprime
to the denominator), so two elements over the same conductor are equal iff
their stored data is equal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

GUARD_BITS = 32


class ConductorMismatch(ValueError):
    """Raised when two elements over different conductors are combined."""


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den monic; remainder must vanish
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(L: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the L-th cyclotomic polynomial.

    Computed by exact division of x^L - 1 by the product of Phi_d over the
    proper divisors d of L.
    """
    if L < 1:
        raise ValueError(f"conductor must be positive, got {L}")
    if L == 1:
        return (-1, 1)
    num = [-1] + [0] * (L - 1) + [1]
    den = [1]
    for d in divisors(L)[:-1]:
        den = _poly_mul(den, cyclotomic_poly(d))
    phi = _poly_exact_div(num, den)
    if phi[-1] != 1:
        raise ArithmeticError(f"Phi_{L} is not monic")
    return tuple(phi)


def euler_phi(L: int) -> int:
    return len(cyclotomic_poly(L)) - 1


def _reduce(vec: list[int], L: int) -> list[int]:
    """Reduce an integer polynomial (in place) modulo Phi_L; returns phi(L) coefficients."""
    phi = cyclotomic_poly(L)
    n = len(phi) - 1
    for k in range(len(vec) - 1, n - 1, -1):
        c = vec[k]
        if c:
            base = k - n
            for j in range(n):
                if phi[j]:
                    vec[base + j] -= c * phi[j]
            vec[k] = 0
    if len(vec) < n:
        vec.extend([0] * (n - len(vec)))
    return vec[:n]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


class CycElem:
    """An element of Q(zeta_L), immutable."""

    __slots__ = ("conductor", "_nums", "_den")

    def __init__(self, conductor: int, coeffs: Iterable):
        coeffs = [_to_fraction(c) for c in coeffs]
        n = euler_phi(conductor)
        if len(coeffs) != n:
            raise ValueError(
                f"conductor {conductor} needs {n} coefficients, got {len(coeffs)}"
            )
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        self._set(conductor, [c.numerator * (den // c.denominator) for c in coeffs], den)

    def _set(self, conductor: int, nums: list[int], den: int) -> None:
        if den < 0:
            nums, den = [-x for x in nums], -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "_nums", tuple(nums))
        object.__setattr__(self, "_den", den)

    @classmethod
    def _raw(cls, conductor: int, nums: list[int], den: int) -> CycElem:
        self = object.__new__(cls)
        self._set(conductor, nums, den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CycElem is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, value, conductor: int = 1) -> CycElem:
        r = _to_fraction(value)
        nums = [0] * euler_phi(conductor)
        nums[0] = r.numerator
        return cls._raw(conductor, nums, r.denominator)

    @classmethod
    def zero(cls, conductor: int = 1) -> CycElem:
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> CycElem:
        return cls.rational(1, conductor)

    @classmethod
    def root_of_unity(cls, conductor: int, k: int = 1) -> CycElem:
        """zeta_L^k, with zeta_L = exp(2 pi i / L)."""
        return _root_table(conductor)[k % conductor]

    # -- accessors ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._nums[0], self._den)

    def l1_norm(self) -> Fraction:
        """Sum of absolute coefficients; an upper bound for the complex modulus."""
        return Fraction(sum(abs(x) for x in self._nums), self._den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CycElem):
            return (
                self.conductor == other.conductor
                and self._den == other._den
                and self._nums == other._nums
            )
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.conductor, self._nums, self._den))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"({c})*z^{k}")
        return f"CycElem[{self.conductor}]({' + '.join(terms) or '0'})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> CycElem:
        if isinstance(other, CycElem):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors {self.conductor} and {other.conductor} differ; lift first"
                )
            return other
        if isinstance(other, (int, Rational)):
            return CycElem.rational(other, self.conductor)
        return NotImplemented

    def _addsub(self, other, sign: int) -> CycElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self._den, other._den
        den = d1 * d2 // math.gcd(d1, d2)
        s1, s2 = den // d1, sign * (den // d2)
        nums = [a * s1 + b * s2 for a, b in zip(self._nums, other._nums)]
        return CycElem._raw(self.conductor, nums, den)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __radd__(self, other):
        return self._addsub(other, 1)

    def __rsub__(self, other):
        return (-self)._addsub(other, 1)

    def __neg__(self) -> CycElem:
        return CycElem._raw(self.conductor, [-x for x in self._nums], self._den)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycElem):
            r = Fraction(other)
            return CycElem._raw(
                self.conductor, [x * r.numerator for x in self._nums], self._den * r.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod = _reduce(_poly_mul(self._nums, other._nums), self.conductor)
        return CycElem._raw(self.conductor, prod, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycElem):
            r = Fraction(other)
            if r == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / r)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * invert(other)

    def __rtruediv__(self, other):
        return invert(self) * other

    def __pow__(self, n: int) -> CycElem:
        if n < 0:
            return invert(self) ** (-n)
        result = CycElem.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def field_arith(a: CycElem, b: CycElem, op: str) -> CycElem:
    """Exact add/sub/mul of two elements over the same conductor."""
    if a.conductor != b.conductor:
        raise ConductorMismatch(f"conductors {a.conductor} and {b.conductor} differ; lift first")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def _root_table(L: int) -> tuple[CycElem, ...]:
    n = euler_phi(L)
    table = []
    for k in range(L):
        vec = [0] * max(L, n)
        vec[k] = 1
        table.append(CycElem._raw(L, _reduce(vec, L), 1))
    return tuple(table)


def rotation_sum(L: int, terms: Iterable[tuple[CycElem, int]]) -> CycElem:
    """Sum of a_i * zeta_L^{m_i} over (a_i, m_i) pairs, all a_i over conductor L.

    Multiplication by a root of unity is a cyclic shift modulo x^L - 1, so the
    whole sum is accumulated there and reduced modulo Phi_L once.
    """
    terms = list(terms)
    den = 1
    for a, _ in terms:
        if a.conductor != L:
            raise ConductorMismatch(f"term over conductor {a.conductor}, expected {L}")
        den = den * a._den // math.gcd(den, a._den)
    acc = [0] * L
    for a, m in terms:
        scale = den // a._den
        for k, c in enumerate(a._nums):
            if c:
                acc[(k + m) % L] += c * scale
    return CycElem._raw(L, _reduce(acc, L), den)


# -- inversion ---------------------------------------------------------------


def _itrim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pseudo_divmod(a: list[int], b: list[int]) -> tuple[int, list[int], list[int]]:
    """lc(b)^k * a = q*b + r with integer q, r and k = deg a - deg b + 1."""
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    k = len(a) - db
    q = [0] * max(k, 1)
    for shift in range(k - 1, -1, -1):
        # scale everything so far by lead, then cancel the top coefficient
        c = a[shift + db]
        a = [x * lead for x in a]
        q = [x * lead for x in q]
        q[shift] += c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
    return lead**k, q, _itrim(a[:db])


def invert(a: CycElem) -> CycElem:
    """Multiplicative inverse via the extended Euclidean algorithm on (a, Phi_L).

    Runs fraction-free: pseudo-remainders with the common content of each
    (remainder, cofactor) pair divided out, keeping s_i * A = r_i mod Phi_L for
    the integer numerator polynomial A of a.
    """
    if a.is_zero():
        raise ZeroDivisionError("cannot invert zero in cyclotomic field")
    L = a.conductor
    if a.is_rational():
        return CycElem.rational(1 / a.as_rational(), L)
    r0, r1 = list(cyclotomic_poly(L)), _itrim(list(a._nums))
    s0: list[int] = [0]
    s1 = [1]
    while len(r1) > 1:
        scale, q, rem = _pseudo_divmod(r0, r1)
        qs = _poly_mul(q, s1)
        s2 = [scale * x for x in s0] + [0] * max(0, len(qs) - len(s0))
        for i, v in enumerate(qs):
            s2[i] -= v
        s2 = _itrim(s2) or [0]
        if not rem:
            raise ArithmeticError("element shares a factor with Phi_L")
        g = math.gcd(*rem, *s2)
        if rem[-1] < 0:
            g = -g
        r0, r1 = r1, [x // g for x in rem]
        s0, s1 = s1, [x // g for x in s2]
    # s1 * A = r1[0] (mod Phi_L), and a = A / den
    n = euler_phi(L)
    vec = [x * a._den for x in s1] + [0] * n
    return CycElem._raw(L, _reduce(vec, L), r1[0])


def conjugate(a: CycElem) -> CycElem:
    """Image of a under zeta_L -> zeta_L^{-1} (complex conjugation)."""
    L = a.conductor
    acc = [0] * max(L, 1)
    for k, c in enumerate(a._nums):
        if c:
            acc[(-k) % L] += c
    return CycElem._raw(L, _reduce(acc, L), a._den)


def lift_conductor(a: CycElem, L_new: int) -> CycElem:
    """Re-express a over conductor L_new, using zeta_L = zeta_{L_new}^{L_new/L}."""
    L = a.conductor
    if L_new % L:
        raise ValueError(f"conductor {L} does not divide {L_new}")
    if L_new == L:
        return a
    m = L_new // L
    acc = [0] * L_new
    for k, c in enumerate(a._nums):
        if c:
            acc[(k * m) % L_new] += c
    return CycElem._raw(L_new, _reduce(acc, L_new), a._den)


def common_conductor(elems: Iterable[CycElem], base: int = 1) -> int:
    L = base
    for e in elems:
        L = math.lcm(L, e.conductor)
    return L


def to_complex(a: CycElem, P: int = 256) -> mpmath.mpc:
    """Numeric embedding sum_k c_k exp(2 pi i k / L).

    Works at P + GUARD_BITS bits; see ``embedding_error_bound`` for the bound
    claimed on the result.
    """
    if P < 64:
        raise ValueError("precision must be at least 64 bits")
    if a.is_zero():
        return mpmath.mpc(0)
    L = a.conductor
    with mpmath.workprec(P + GUARD_BITS):
        re = mpmath.mpf(0)
        im = mpmath.mpf(0)
        for k, c in enumerate(a._nums):
            if c:
                cs, sn = _unit_circle(L, k, P + GUARD_BITS)
                re += c * cs
                im += c * sn
        return mpmath.mpc(re / a._den, im / a._den)


@lru_cache(maxsize=4096)
def _unit_circle(L: int, k: int, prec: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    with mpmath.workprec(prec):
        t = mpmath.mpf(2 * k) / L
        return mpmath.cospi(t), mpmath.sinpi(t)


def embedding_error_bound(a: CycElem, P: int) -> mpmath.mpf:
    """Claimed bound 2^-P * (1 + sum |c_k|) on |to_complex(a, P) - a|."""
    if a.is_zero():
        return mpmath.mpf(0)
    with mpmath.workprec(64):
        norm = a.l1_norm()
        return mpmath.ldexp(1 + mpmath.mpf(norm.numerator) / norm.denominator, -P)
