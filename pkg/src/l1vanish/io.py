"""JSON documents (schema version 1) for functions, verdicts, blocks and relations.

Rationals travel as strings ("a/b" or "a"); numeric values as decimal strings
with an explicit error bound, never as bare floats.
"""

from __future__ import annotations

import json
import math
from decimal import ROUND_CEILING, Decimal, localcontext
from fractions import Fraction
from typing import Any

import mpmath

from .decision import Verdict
from .even import (
    BlockFunction,
    BlockIndex,
    EvenCertificate,
    block_F,
    block_F_hat,
    enumerate_blocks,
)
from .field import CycElem, euler_phi, lift_conductor
from .numeric import NumericResult
from .odd import OddCertificate
from .periodic import PeriodicFunction, SpectralFunction, dft
from .relations import RelationVector, relation_vectors, verify_relation

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field."""


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- scalars ---------------------------------------------------------------


def encode_rational(r: Fraction) -> str:
    return str(r)


def parse_rational(s: Any, where: str) -> Fraction:
    if isinstance(s, bool):
        raise DocumentError(f"{where}: expected a rational, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            r = Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"{where}: cannot parse rational {s!r}") from None
        if "." in s or "e" in s.lower():
            raise DocumentError(f"{where}: rationals must be written as a/b, got {s!r}")
        return r
    raise DocumentError(f"{where}: expected a rational string or integer, got {s!r}")


def encode_elem(a: CycElem) -> Any:
    """Rational elements become bare strings; others a {"conductor", "coeffs"} object."""
    if a.is_rational():
        return encode_rational(a.as_rational())
    return {"conductor": a.conductor, "coeffs": [encode_rational(c) for c in a.coeffs]}


def encode_elem_full(a: CycElem) -> dict:
    return {"conductor": a.conductor, "coeffs": [encode_rational(c) for c in a.coeffs]}


def parse_elem(obj: Any, where: str) -> CycElem:
    if isinstance(obj, dict):
        L = obj.get("conductor")
        coeffs = obj.get("coeffs")
        if not isinstance(L, int) or isinstance(L, bool) or L < 1:
            raise DocumentError(f"{where}.conductor: expected a positive integer, got {L!r}")
        if not isinstance(coeffs, list):
            raise DocumentError(f"{where}.coeffs: expected a list")
        if len(coeffs) != euler_phi(L):
            raise DocumentError(
                f"{where}.coeffs: conductor {L} needs {euler_phi(L)} coefficients, got {len(coeffs)}"
            )
        return CycElem(L, [parse_rational(c, f"{where}.coeffs[{k}]") for k, c in enumerate(coeffs)])
    return CycElem.rational(parse_rational(obj, where))


# -- functions ---------------------------------------------------------------


def encode_function(f: PeriodicFunction) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "kind": "spectral" if isinstance(f, SpectralFunction) else "function",
        "q": f.q,
        "conductor": f.conductor,
        "values": [encode_elem(v) for v in f],
    }


def parse_function(doc: Any) -> PeriodicFunction:
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    v = doc.get("v", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise DocumentError(f"v: unsupported schema version {v!r}")
    q = doc.get("q")
    values = doc.get("values")
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise DocumentError(f"q: expected a positive integer, got {q!r}")
    if not isinstance(values, list):
        raise DocumentError("values: expected a list")
    if len(values) != q:
        raise DocumentError(f"values: expected {q} entries, got {len(values)}")
    elems = [parse_elem(x, f"values[{i}]") for i, x in enumerate(values)]
    L = doc.get("conductor")
    if L is None:
        L = 1
        for e in elems:
            L = math.lcm(L, e.conductor)
    elif not isinstance(L, int) or isinstance(L, bool) or L < 1:
        raise DocumentError(f"conductor: expected a positive integer, got {L!r}")
    lifted = []
    for i, e in enumerate(elems):
        if e.is_rational():
            lifted.append(CycElem.rational(e.as_rational(), L))
        elif L % e.conductor:
            raise DocumentError(
                f"values[{i}]: conductor {e.conductor} does not divide document conductor {L}"
            )
        else:
            lifted.append(lift_conductor(e, L))
    cls = SpectralFunction if doc.get("kind") == "spectral" else PeriodicFunction
    return cls(lifted, L)


def load_function(text: str) -> PeriodicFunction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_function(doc)


# -- certificates and numerics ------------------------------------------------


def _decimal(x, P: int) -> str:
    digits = max(20, int(P * 0.30103) + 2)
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-5, max_fixed=5)


def _bound_str(x) -> str:
    # six significant digits, rounded toward +infinity so printing never shrinks the bound
    if x == 0:
        return "0"
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    man, exp = x.man_exp  # exact; converting again would round to the ambient precision
    exact = Fraction(int(man)) * Fraction(2) ** int(exp)
    with localcontext() as ctx:
        ctx.prec = 6
        ctx.rounding = ROUND_CEILING
        d = +(Decimal(exact.numerator) / Decimal(exact.denominator))
    return f"{d:E}"


def _parse_bound(s: Any, where: str) -> mpmath.mpf:
    try:
        exact = Fraction(Decimal(s))
    except (ArithmeticError, ValueError, TypeError):
        raise DocumentError(f"{where}: cannot parse error bound {s!r}") from None
    if exact < 0 or not isinstance(s, str):
        raise DocumentError(f"{where}: expected a nonnegative decimal string, got {s!r}")
    if exact == 0:
        return mpmath.mpf(0)
    # 64-bit binary value rounded down, so re-encoding reproduces the same string
    shift = 64 - (exact.numerator.bit_length() - exact.denominator.bit_length())
    man = (exact.numerator << max(shift, 0)) // (exact.denominator << max(-shift, 0))
    with mpmath.workprec(man.bit_length() + 1):
        return mpmath.mpf((man, -shift))


def _parse_decimal(s: Any, where: str, P: int) -> mpmath.mpf:
    if not isinstance(s, str):
        raise DocumentError(f"{where}: expected a decimal string, got {s!r}")
    try:
        with mpmath.workprec(P + 32):
            return mpmath.mpf(s)
    except (ValueError, TypeError):
        raise DocumentError(f"{where}: cannot parse decimal {s!r}") from None


def encode_numeric(r: NumericResult) -> dict:
    return {
        "route": r.route,
        "precision_bits": r.precision_bits,
        "value_re": _decimal(r.value.real, r.precision_bits),
        "value_im": _decimal(r.value.imag, r.precision_bits),
        "error_bound": _bound_str(r.error_bound),
    }


def parse_numeric(doc: Any, where: str = "numeric") -> NumericResult:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected an object")
    P = doc.get("precision_bits")
    if not isinstance(P, int) or P < 64:
        raise DocumentError(f"{where}.precision_bits: expected an integer >= 64")
    re = _parse_decimal(doc.get("value_re"), f"{where}.value_re", P)
    im = _parse_decimal(doc.get("value_im"), f"{where}.value_im", P)
    with mpmath.workprec(P + 32):
        value = mpmath.mpc(re, im)
    bound = _parse_bound(doc.get("error_bound"), f"{where}.error_bound")
    return NumericResult(value, P, bound, str(doc.get("route")))


def encode_odd(c: OddCertificate) -> dict:
    return {
        "vanishes": c.vanishes,
        "weighted_sum": encode_elem(c.weighted_sum),
        "cotangent_form": encode_elem(c.cotangent_form),
    }


def encode_even(c: EvenCertificate) -> dict:
    return {
        "member": c.member,
        "coefficients": [
            {"d": idx.d, "c": idx.c, "value": encode_elem(lam)}
            for idx, lam in sorted(c.coefficients.items())
            if lam
        ],
        "residual": [encode_elem(v) for v in c.residual],
    }


def parse_verdict(doc: Any) -> Verdict:
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    try:
        odd = doc["odd"]
        even = doc["even"]
        odd_cert = OddCertificate(
            parse_elem(odd["weighted_sum"], "odd.weighted_sum"),
            parse_elem(odd["cotangent_form"], "odd.cotangent_form"),
            bool(odd["vanishes"]),
        )
        coefficients = {
            BlockIndex(int(e["d"]), int(e["c"])): parse_elem(e["value"], f"even.coefficients[{i}]")
            for i, e in enumerate(even["coefficients"])
        }
        residual = tuple(parse_elem(r, f"even.residual[{i}]") for i, r in enumerate(even["residual"]))
        even_cert = EvenCertificate(bool(even["member"]), coefficients, residual)
        numeric = tuple(parse_numeric(r, f"numeric[{i}]") for i, r in enumerate(doc["numeric"]))
        return Verdict(bool(doc["vanishes"]), odd_cert, even_cert, numeric, parse_function(doc["input"]))
    except KeyError as exc:
        raise DocumentError(f"missing field {exc.args[0]!r}") from None


def encode_verdict(v: Verdict) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "vanishes": v.vanishes,
        "odd": encode_odd(v.odd_certificate),
        "even": encode_even(v.even_certificate),
        "numeric": [encode_numeric(r) for r in v.numeric],
        "input": encode_function(v.function),
    }


# -- listings -------------------------------------------------------------------


def encode_blocks(q: int, entries: list[tuple[BlockFunction, SpectralFunction, bool]]) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "q": q,
        "blocks": [
            {
                "d": b.index.d,
                "c": b.index.c,
                "values": [encode_rational(x) for x in b.values],
                "transform": [encode_elem_full(y) for y in hat],
                "verified": ok,
            }
            for b, hat, ok in entries
        ],
    }


def parse_blocks(doc: dict) -> tuple[int, list[tuple[BlockFunction, SpectralFunction, bool]]]:
    try:
        q = doc["q"]
        entries = []
        for i, e in enumerate(doc["blocks"]):
            idx = BlockIndex(e["d"], e["c"])
            vals = tuple(parse_rational(x, f"blocks[{i}].values") for x in e["values"])
            hat = [parse_elem(y, f"blocks[{i}].transform") for y in e["transform"]]
            entries.append((BlockFunction(q, idx, vals), SpectralFunction(hat), bool(e["verified"])))
        return q, entries
    except KeyError as exc:
        raise DocumentError(f"missing field {exc.args[0]!r}") from None


def blocks_listing(q: int) -> dict:
    entries = []
    for idx in enumerate_blocks(q):
        b = block_F(q, idx)
        hat = block_F_hat(q, idx)
        entries.append((b, hat, hat == dft(b.as_periodic())))
    return encode_blocks(q, entries)


def encode_relations(q: int, entries: list[tuple[RelationVector, bool]]) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "q": q,
        "relations": [
            {"kind": rv.kind, "params": list(rv.params), "coeffs": list(rv.coeffs), "verified": ok}
            for rv, ok in entries
        ],
    }


def parse_relations(doc: dict) -> tuple[int, list[tuple[RelationVector, bool]]]:
    try:
        q = doc["q"]
        return q, [
            (RelationVector(q, tuple(e["coeffs"]), e["kind"], tuple(e["params"])), bool(e["verified"]))
            for e in doc["relations"]
        ]
    except KeyError as exc:
        raise DocumentError(f"missing field {exc.args[0]!r}") from None


def relations_listing(q: int) -> dict:
    return encode_relations(q, [(rv, verify_relation(rv)) for rv in relation_vectors(q)])
