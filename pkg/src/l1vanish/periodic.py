"""Periodic functions with cyclotomic values, parity split and exact finite Fourier transform.

Residues are indexed 1..q; index q stands for residue 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

from .field import CycElem, lift_conductor, rotation_sum


class DomainError(ValueError):
    """An input violates the precondition of a criterion."""


class DivergentSeriesError(DomainError):
    """The period sum of f is nonzero, so L(1, f) does not exist."""


def _as_elem(v, conductor: int) -> CycElem:
    if isinstance(v, CycElem):
        return lift_conductor(v, conductor)
    return CycElem.rational(v, conductor)


class PeriodicFunction:
    """f: Z -> Q(zeta_L) with period q, stored as (f(1), ..., f(q))."""

    __slots__ = ("q", "conductor", "values")

    def __init__(self, values: Iterable, conductor: int | None = None):
        values = list(values)
        if not values:
            raise ValueError("a periodic function needs at least one value")
        L = conductor or 1
        for v in values:
            if isinstance(v, CycElem):
                L = math.lcm(L, v.conductor)
        if conductor is not None and L != conductor:
            raise ValueError(f"value conductors do not divide conductor {conductor}")
        object.__setattr__(self, "q", len(values))
        object.__setattr__(self, "conductor", L)
        object.__setattr__(self, "values", tuple(_as_elem(v, L) for v in values))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __call__(self, n: int) -> CycElem:
        return self.values[(n - 1) % self.q]

    def __iter__(self) -> Iterator[CycElem]:
        return iter(self.values)

    def __len__(self) -> int:
        return self.q

    def __eq__(self, other) -> bool:
        """Value equality as functions into C; conductors are lifted to a common one."""
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        if type(self) is not type(other) or self.q != other.q:
            return False
        a, b = self._same_shape(other)
        return a.values == b.values

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.q))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(q={self.q}, conductor={self.conductor}, values={list(self.values)!r})"

    def _same_shape(self, other: PeriodicFunction) -> tuple[PeriodicFunction, PeriodicFunction]:
        if self.q != other.q:
            raise ValueError(f"periods differ: {self.q} vs {other.q}")
        L = math.lcm(self.conductor, other.conductor)
        return self.lift(L), other.lift(L)

    def __add__(self, other: PeriodicFunction) -> PeriodicFunction:
        a, b = self._same_shape(other)
        return type(self)([x + y for x, y in zip(a, b)], a.conductor)

    def __sub__(self, other: PeriodicFunction) -> PeriodicFunction:
        a, b = self._same_shape(other)
        return type(self)([x - y for x, y in zip(a, b)], a.conductor)

    def scale(self, lam) -> PeriodicFunction:
        if isinstance(lam, CycElem):
            L = math.lcm(self.conductor, lam.conductor)
            f, lam = self.lift(L), lift_conductor(lam, L)
            return type(self)([lam * v for v in f], L)
        return type(self)([v * Fraction(lam) for v in self], self.conductor)

    def lift(self, L: int) -> PeriodicFunction:
        if L == self.conductor:
            return self
        return type(self)([lift_conductor(v, L) for v in self], L)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)

    @classmethod
    def zero(cls, q: int, conductor: int = 1) -> PeriodicFunction:
        return cls([CycElem.zero(conductor)] * q, conductor)


class SpectralFunction(PeriodicFunction):
    """Fourier transform values (g(1), ..., g(q)); g(q) is the DC component."""

    __slots__ = ()


def period_sum(f: PeriodicFunction) -> CycElem:
    total = CycElem.zero(f.conductor)
    for v in f:
        total = total + v
    return total


def mean_is_zero(f: PeriodicFunction) -> bool:
    return period_sum(f).is_zero()


def reflect(f: PeriodicFunction) -> PeriodicFunction:
    """n -> f(-n)."""
    return type(f)([f(-a) for a in range(1, f.q + 1)], f.conductor)


def parity_decompose(f: PeriodicFunction) -> tuple[PeriodicFunction, PeriodicFunction]:
    """Split f into its odd and even parts, f_o(a) = (f(a) - f(-a))/2, f_e(a) = (f(a) + f(-a))/2."""
    half = Fraction(1, 2)
    odd = [(f(a) - f(-a)) * half for a in range(1, f.q + 1)]
    even = [(f(a) + f(-a)) * half for a in range(1, f.q + 1)]
    return type(f)(odd, f.conductor), type(f)(even, f.conductor)


def parity_of(f: PeriodicFunction) -> str:
    """One of 'zero', 'odd', 'even', 'neither'."""
    if f.is_zero():
        return "zero"
    q = f.q
    if all(f(q - a) == -f(a) for a in range(1, q + 1)):
        return "odd"
    if all(f(q - a) == f(a) for a in range(1, q + 1)):
        return "even"
    return "neither"


def _transform(values: tuple[CycElem, ...], q: int, L: int, sign: int) -> list[CycElem]:
    W = math.lcm(L, q)
    vals = [lift_conductor(v, W) for v in values]
    step = W // q
    out = []
    for x in range(1, q + 1):
        terms = [(v, sign * a * x * step) for a, v in zip(range(1, q + 1), vals) if v]
        out.append(rotation_sum(W, terms) if terms else CycElem.zero(W))
    return out


def dft(f: PeriodicFunction) -> SpectralFunction:
    """f_hat(x) = (1/q) sum_{a=1}^q f(a) zeta_q^{-a x}, over conductor lcm(L, q)."""
    q = f.q
    out = _transform(f.values, q, f.conductor, -1)
    return SpectralFunction([v / q for v in out], math.lcm(f.conductor, q))


def idft(g: PeriodicFunction) -> PeriodicFunction:
    """f(n) = sum_{x=1}^q g(x) zeta_q^{x n}."""
    q = g.q
    out = _transform(g.values, q, g.conductor, 1)
    return PeriodicFunction(out, math.lcm(g.conductor, q))
