"""Exact vanishing test for L(1, f) with f odd.

Two equivalent quantities are computed: the weighted spectral sum
sum_{x<q} x f_hat(x) and the direct form sum_{n<q} f(n) / (1 - zeta_q^n).
For odd f they are in fact equal as field elements, which is asserted on
every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .field import CycElem, invert, lift_conductor
from .periodic import (
    DivergentSeriesError,
    DomainError,
    PeriodicFunction,
    dft,
    mean_is_zero,
    parity_of,
)


class InvariantError(AssertionError):
    """Internal inconsistency between redundant exact computations (a bug)."""


@dataclass(frozen=True)
class OddCertificate:
    weighted_sum: CycElem
    cotangent_form: CycElem
    vanishes: bool


def _check_odd(f: PeriodicFunction) -> None:
    if parity_of(f) not in ("odd", "zero"):
        raise DomainError("odd criterion needs an odd function")
    if not mean_is_zero(f):
        raise DivergentSeriesError("period sum is nonzero; L(1,f) diverges")


def weighted_sum_test(f: PeriodicFunction) -> CycElem:
    """sum_{x=1}^{q-1} x * f_hat(x)."""
    _check_odd(f)
    g = dft(f)
    total = CycElem.zero(g.conductor)
    for x in range(1, f.q):
        if g(x):
            total = total + g(x) * x
    return total


@lru_cache(maxsize=4096)
def inverse_one_minus_root(q: int, n: int, W: int) -> CycElem:
    """1 / (1 - zeta_q^n) over conductor W (q | W, q does not divide n)."""
    return invert(CycElem.one(W) - CycElem.root_of_unity(W, n * (W // q)))


def cotangent_form_test(f: PeriodicFunction) -> CycElem:
    """sum_{n=1}^{q-1} f(n) / (1 - zeta_q^n)."""
    _check_odd(f)
    q = f.q
    W = math.lcm(f.conductor, q)
    total = CycElem.zero(W)
    for n in range(1, q):
        if f(n):
            total = total + lift_conductor(f(n), W) * inverse_one_minus_root(q, n, W)
    return total


def decide_odd(f: PeriodicFunction) -> OddCertificate:
    ws = weighted_sum_test(f)
    cf = cotangent_form_test(f)
    if ws != cf:
        raise InvariantError(f"weighted sum {ws!r} and cotangent form {cf!r} disagree")
    return OddCertificate(ws, cf, ws.is_zero())


def cotangent(q: int, n: int) -> CycElem:
    """cot(n pi / q) as the exact element i (zeta_q^n + 1) / (zeta_q^n - 1) of Q(zeta_lcm(4, q))."""
    if n % q == 0:
        raise ValueError("cot(n pi / q) is undefined when q divides n")
    W = math.lcm(4, q)
    z = CycElem.root_of_unity(W, n * (W // q))
    i = CycElem.root_of_unity(W, W // 4)
    return i * (z + 1) / (z - 1)
