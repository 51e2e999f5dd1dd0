"""Top-level decision for L(1, f) = 0 and generators for test corpora."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from sympy import isprime

from .even import (
    BlockIndex,
    EvenCertificate,
    combine_blocks,
    decide_even,
    enumerate_blocks,
)
from .field import CycElem
from .numeric import DEFAULT_BITS, NumericResult, coherence, evaluate
from .odd import InvariantError, OddCertificate, decide_odd
from .periodic import (
    DivergentSeriesError,
    PeriodicFunction,
    SpectralFunction,
    idft,
    mean_is_zero,
    parity_decompose,
)


class CoherenceError(InvariantError):
    """The numeric value contradicts the exact verdict."""


class GeneratorError(ValueError):
    """Parameters admit no function of the requested kind."""


@dataclass(frozen=True)
class Verdict:
    vanishes: bool
    odd_certificate: OddCertificate
    even_certificate: EvenCertificate
    numeric: tuple[NumericResult, ...]
    function: PeriodicFunction


def decide(
    f: PeriodicFunction,
    P: int = DEFAULT_BITS,
    routes: tuple[str, ...] = ("fourier",),
    periods: int = 2**12,
) -> Verdict:
    """L(1,f) = 0 iff L(1,f_o) = 0 and L(1,f_e) = 0; each part is decided exactly.

    Every requested numeric route is checked against the exact verdict and a
    contradiction raises CoherenceError.  Pass ``routes=()`` to skip numerics.
    """
    if not mean_is_zero(f):
        raise DivergentSeriesError("period sum is nonzero; L(1,f) diverges")
    f_o, f_e = parity_decompose(f)
    odd = decide_odd(f_o)
    even = decide_even(f_e)
    vanishes = odd.vanishes and even.member
    results = []
    for route in routes:
        res = evaluate(f, route, P, periods)
        if not coherence(vanishes, res):
            raise CoherenceError(
                f"exact verdict vanishes={vanishes} but |L(1,f)| = "
                f"{mpmath_str(abs(res.value))} with bound {mpmath_str(res.error_bound)} ({route})"
            )
        results.append(res)
    return Verdict(vanishes, odd, even, tuple(results), f)


def mpmath_str(x) -> str:
    return mpmath.nstr(x, 8)


# -- generators -------------------------------------------------------------


def _rng(q: int, seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([q, seed])))


def _small_rational(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    while True:
        num = int(rng.integers(-10, 11))
        if num or not nonzero:
            return Fraction(num, int(rng.integers(1, 11)))


def random_element(rng: np.random.Generator, conductor: int, nonzero: bool = False) -> CycElem:
    """A small rational, or for conductor > 2 a sum of one or two rational multiples of roots of unity."""
    while True:
        if conductor <= 2:
            v = CycElem.rational(_small_rational(rng), conductor)
        else:
            terms = int(rng.integers(1, 3))
            v = CycElem.zero(conductor)
            for _ in range(terms):
                k = int(rng.integers(0, conductor))
                v = v + CycElem.root_of_unity(conductor, k) * _small_rational(rng)
        if v or not nonzero:
            return v


def _working_conductor(q: int, conductor: Optional[int]) -> int:
    return math.lcm(q, conductor or 1)


def example_paper(p: int) -> PeriodicFunction:
    """The period-p^2 function with L(s, f) = (1 - p^{1-s})^2 zeta(s).

    f(n) = 1 if p does not divide n, 1 - 2p if p || n, (p - 1)^2 if p^2 | n.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    vals = []
    for n in range(1, p * p + 1):
        if n % p:
            vals.append(1)
        elif n % (p * p):
            vals.append(1 - 2 * p)
        else:
            vals.append((p - 1) ** 2)
    return PeriodicFunction(vals)


def gen_character(q: int) -> PeriodicFunction:
    """Quadratic character mod an odd prime q, via Euler's criterion."""
    if q == 2 or not isprime(q):
        raise ValueError(f"{q} is not an odd prime")
    vals = []
    for n in range(1, q + 1):
        if n % q == 0:
            vals.append(0)
        else:
            vals.append(1 if pow(n, (q - 1) // 2, q) == 1 else -1)
    return PeriodicFunction(vals)


def gen_even_vanishing(
    q: int,
    seed: int = 0,
    conductor: Optional[int] = None,
    coefficients: Optional[dict] = None,
) -> PeriodicFunction:
    """Even f with L(1,f) = 0, built as the inverse transform of sum lambda_{d,c} F_{d,c}.

    Coefficients satisfy lambda_{d,c} = lambda_{d,d-c} so the combination is even.
    """
    blocks = enumerate_blocks(q)
    if not blocks:
        raise GeneratorError(
            f"q={q} has no divisor d with 1 < d < q, so no nonzero even function "
            f"of period {q} has L(1,f) = 0"
        )
    W = _working_conductor(q, conductor)
    if coefficients is not None:
        g = combine_blocks(q, {BlockIndex(*k): v for k, v in coefficients.items()}, W)
        return idft(g)
    rng = _rng(q, seed)
    while True:
        lam = {}
        for d, c in blocks:
            if c <= d - c:
                lam[BlockIndex(d, c)] = lam[BlockIndex(d, d - c)] = random_element(rng, W, nonzero=True)
        g = combine_blocks(q, lam, W)
        if not g.is_zero():
            return idft(g)


def gen_odd_vanishing(q: int, seed: int = 0, conductor: Optional[int] = None) -> PeriodicFunction:
    """Odd nonzero f with L(1,f) = 0.

    Spectral values f_hat(x) = -f_hat(q-x) are drawn for 2 <= x < q/2 and f_hat(1)
    is solved from sum_x x f_hat(x) = 0, i.e. sum_{x<q/2} (2x - q) f_hat(x) = 0.
    """
    free = (q - 1) // 2
    if free < 2:
        raise GeneratorError(f"odd functions of period {q} with L(1,f) = 0 are all zero")
    W = _working_conductor(q, conductor)
    rng = _rng(q, seed)
    spectrum = [CycElem.zero(W) for _ in range(q)]
    rest = CycElem.zero(W)
    for x in range(2, free + 1):
        v = random_element(rng, W, nonzero=True)
        spectrum[x - 1] = v
        spectrum[q - x - 1] = -v
        rest = rest + v * (2 * x - q)
    first = -rest / (2 - q)
    spectrum[0] = first
    spectrum[q - 2] = -first
    return idft(SpectralFunction(spectrum, W))


def gen_mean_zero(
    q: int,
    seed: int = 0,
    conductor: Optional[int] = None,
    parity: Optional[str] = None,
) -> PeriodicFunction:
    """Random nonzero mean-zero function; parity may be None, 'odd' or 'even'.

    Values are rational when conductor is None or 1.
    """
    L = conductor or 1
    if q < 2 or (parity == "odd" and q < 3):
        raise GeneratorError(f"every {parity or ''} mean-zero function of period {q} is zero")
    rng = _rng(q, seed)
    while True:
        vals = [CycElem.zero(L) for _ in range(q)]
        if parity == "odd":
            for x in range(1, (q - 1) // 2 + 1):
                v = random_element(rng, L)
                vals[x - 1], vals[q - x - 1] = v, -v
        elif parity == "even":
            for x in range(1, q // 2 + 1):
                v = random_element(rng, L)
                vals[x - 1] = vals[q - x - 1] = v
            vals[q - 1] = -sum(vals[: q - 1], CycElem.zero(L))
        elif parity is None:
            for x in range(1, q):
                vals[x - 1] = random_element(rng, L)
            vals[q - 1] = -sum(vals[: q - 1], CycElem.zero(L))
        else:
            raise ValueError(f"unknown parity {parity!r}")
        f = PeriodicFunction(vals, L)
        if not f.is_zero():
            return f
