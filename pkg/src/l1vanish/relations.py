"""Additive relations among a_x = log|1 - zeta_q^x|, checked as exact field identities."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .field import GUARD_BITS, CycElem, conjugate, divisors


@dataclass(frozen=True)
class RelationVector:
    """sum_x coeffs[x-1] * a_x = 0 for x = 1..q-1."""

    q: int
    coeffs: tuple[int, ...]
    kind: str  # "R1" or "R2"
    params: tuple[int, ...]  # (x,) for R1, (d, c) for R2


def _one_minus_root(q: int, k: int) -> CycElem:
    return CycElem.one(q) - CycElem.root_of_unity(q, k)


def verify_R1(q: int, x: int) -> bool:
    """conj(1 - zeta_q^x) == 1 - zeta_q^{q-x}, so |1 - zeta_q^x| = |1 - zeta_q^{q-x}|."""
    if not 1 <= x <= (q - 1) // 2:
        raise ValueError(f"x={x} outside 1..{(q - 1) // 2} for q={q}")
    return conjugate(_one_minus_root(q, x)) == _one_minus_root(q, q - x)


def verify_R2(q: int, d: int, c: int) -> bool:
    """prod_{j=0}^{q/d-1} (1 - zeta_q^{c+dj}) == 1 - zeta_d^c."""
    if not (1 < d < q and q % d == 0 and 1 <= c <= d - 1):
        raise ValueError(f"invalid parameters (d={d}, c={c}) for q={q}")
    prod = CycElem.one(q)
    for j in range(q // d):
        prod = prod * _one_minus_root(q, c + d * j)
    return prod == _one_minus_root(q, (q // d) * c)


def relation_vectors(q: int) -> list[RelationVector]:
    """R1 vectors for 1 <= x <= (q-1)/2, then R2 vectors ordered by (d, c)."""
    if q < 2:
        raise ValueError("relations need q >= 2")
    out = []
    for x in range(1, (q - 1) // 2 + 1):
        C = [0] * (q - 1)
        C[x - 1] += 1
        C[q - x - 1] -= 1
        out.append(RelationVector(q, tuple(C), "R1", (x,)))
    for d in divisors(q):
        if not 1 < d < q:
            continue
        for c in range(1, d):
            C = [0] * (q - 1)
            C[(q // d) * c - 1] += 1
            for j in range(q // d):
                C[(c + d * j) % q - 1] -= 1
            out.append(RelationVector(q, tuple(C), "R2", (d, c)))
    return out


def verify_relation(rv: RelationVector) -> bool:
    if rv.kind == "R1":
        return verify_R1(rv.q, *rv.params)
    return verify_R2(rv.q, *rv.params)


def relation_residual(rv: RelationVector, P: int = 256) -> mpmath.mpf:
    """|sum_x C_x log|1 - exp(2 pi i x / q)|| computed numerically at P + guard bits."""
    with mpmath.workprec(P + GUARD_BITS):
        total = mpmath.mpf(0)
        for x, c in enumerate(rv.coeffs, start=1):
            if c:
                total += c * mpmath.log(2 * mpmath.sinpi(mpmath.mpf(x) / rv.q))
        return abs(total)
