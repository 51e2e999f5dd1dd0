"""Building blocks F_{d,c} and the exact membership test for even functions.

For even mean-zero f, L(1, f) = 0 exactly when f_hat lies in the span of the
rational blocks F_{d,c}.  Because the blocks are rational, membership over
Q(zeta_W) splits into one rational linear system per power-basis coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .field import CycElem, divisors
from .periodic import (
    DivergentSeriesError,
    DomainError,
    PeriodicFunction,
    SpectralFunction,
    dft,
    mean_is_zero,
    parity_of,
)

HALF = Fraction(1, 2)


class BlockIndex(NamedTuple):
    d: int
    c: int


@dataclass(frozen=True)
class BlockFunction:
    q: int
    index: BlockIndex
    values: tuple[Fraction, ...]  # values[x-1] = F_{d,c}(x)

    def __call__(self, x: int) -> Fraction:
        return self.values[(x - 1) % self.q]

    def as_periodic(self) -> PeriodicFunction:
        return PeriodicFunction(self.values)


@dataclass(frozen=True)
class EvenCertificate:
    member: bool
    coefficients: dict  # BlockIndex -> CycElem; empty when not a member
    residual: tuple  # g - sum(lambda F); all zero iff member

    @property
    def vanishes(self) -> bool:
        return self.member


def enumerate_blocks(q: int) -> list[BlockIndex]:
    """All (d, c) with d | q, 1 < d < q, 1 <= c <= d - 1, ordered by d then c."""
    return [BlockIndex(d, c) for d in divisors(q) if 1 < d < q for c in range(1, d)]


def _check_index(q: int, idx: BlockIndex) -> None:
    d, c = idx
    if not (1 < d < q and q % d == 0 and 1 <= c <= d - 1):
        raise ValueError(f"invalid block index {tuple(idx)} for q={q}")


def block_F(q: int, idx: BlockIndex) -> BlockFunction:
    """F_{d,c} = 1/2 on x = c (mod d), minus 1/2 at x = (q/d) c (mod q); overlaps add."""
    idx = BlockIndex(*idx)
    _check_index(q, idx)
    d, c = idx
    vals = [Fraction(0)] * q
    for j in range(q // d):
        vals[(c + d * j - 1) % q] += HALF
    vals[((q // d) * c - 1) % q] -= HALF
    return BlockFunction(q, idx, tuple(vals))


def block_F_hat(q: int, idx: BlockIndex) -> SpectralFunction:
    """Closed-form Fourier transform of F_{d,c}, over conductor q."""
    idx = BlockIndex(*idx)
    _check_index(q, idx)
    d, c = idx
    m = q // d
    out = []
    for y in range(1, q + 1):
        # zeta_d^{-cy} = zeta_q^{-m c y}
        v = -CycElem.root_of_unity(q, -m * c * y) / (2 * q)
        if y % m == 0:
            v = v + CycElem.root_of_unity(q, -c * y) / (2 * d)
        out.append(v)
    return SpectralFunction(out, q)


def all_blocks(q: int) -> list[BlockFunction]:
    return [block_F(q, idx) for idx in enumerate_blocks(q)]


def _row_reduce(
    A: list[list[Fraction]], rhs: list[list[Fraction]]
) -> tuple[list[int], int]:
    """In-place reduced row echelon form of A, applying the same operations to rhs.

    Pivot is the first nonzero entry in each column.  Returns (pivot columns, rank).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if A[i][col] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / A[r][col]
        if inv != 1:
            A[r] = [v * inv for v in A[r]]
            rhs[r] = [v * inv for v in rhs[r]]
        for i in range(rows):
            if i != r and A[i][col] != 0:
                fac = A[i][col]
                A[i] = [a - fac * b for a, b in zip(A[i], A[r])]
                rhs[i] = [a - fac * b for a, b in zip(rhs[i], rhs[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return pivots, r


def membership(g: PeriodicFunction, blocks: Sequence[BlockFunction]) -> EvenCertificate:
    """Decide whether g is a Q(zeta_W)-linear combination of the given rational blocks."""
    q, W = g.q, g.conductor
    for b in blocks:
        if b.q != q:
            raise ValueError(f"block {tuple(b.index)} has period {b.q}, target has {q}")
    n = len(g.values[0].numerators)
    # one rational right-hand side per power-basis coordinate
    A = [[b.values[x] for b in blocks] for x in range(q)]
    rhs = [list(v.coeffs) for v in g.values]
    if blocks:
        pivots, rank = _row_reduce(A, rhs)
    else:
        pivots, rank = [], 0
    lam = [[Fraction(0)] * n for _ in blocks]
    for r, col in enumerate(pivots):
        lam[col] = rhs[r]
    coefficients = {b.index: CycElem(W, lam[j]) for j, b in enumerate(blocks)}
    residual = []
    for x in range(q):
        acc = g.values[x]
        for j, b in enumerate(blocks):
            if b.values[x] and coefficients[b.index]:
                acc = acc - coefficients[b.index] * b.values[x]
        residual.append(acc)
    member = all(v.is_zero() for v in residual)
    # inconsistency shows up as a nonzero rhs on a zero row
    if member != all(not any(rhs[r]) for r in range(rank, q)):
        raise ArithmeticError("row reduction and reconstruction disagree")
    return EvenCertificate(member, coefficients if member else {}, tuple(residual))


def decide_even(f: PeriodicFunction) -> EvenCertificate:
    if parity_of(f) not in ("even", "zero"):
        raise DomainError("even criterion needs an even function")
    if not mean_is_zero(f):
        raise DivergentSeriesError("period sum is nonzero; L(1,f) diverges")
    return membership(dft(f), all_blocks(f.q))


def combine_blocks(q: int, coefficients: dict, conductor: int) -> SpectralFunction:
    """sum lambda_{d,c} F_{d,c} as a spectral function over the given conductor."""
    out = [CycElem.zero(conductor) for _ in range(q)]
    for idx, lam in coefficients.items():
        if not isinstance(lam, CycElem):
            lam = CycElem.rational(lam, conductor)
        b = block_F(q, idx)
        for x in range(q):
            if b.values[x]:
                out[x] = out[x] + lam * b.values[x]
    return SpectralFunction(out, conductor)
