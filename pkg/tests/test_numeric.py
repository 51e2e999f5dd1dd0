from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1vanish.decision import example_paper, gen_mean_zero
from l1vanish.field import to_complex
from l1vanish.numeric import (
    coherence,
    eval_L1_fourier,
    eval_L1_partial,
    eval_L1_split,
    evaluate,
    log_cyclotomic,
    tail_expansion,
)
from l1vanish.periodic import (
    DivergentSeriesError,
    PeriodicFunction,
    SpectralFunction,
    idft,
    parity_decompose,
)

from .strategies import cyc_elems

CHI4 = PeriodicFunction([1, 0, -1, 0])
CHI3 = PeriodicFunction([1, -1, 0])
P = 256


def digamma_oracle(f, prec=P + 40):
    """L(1,f) = -(1/q) sum_a f(a) psi(a/q) for mean-zero f (independent of every route)."""
    with mpmath.workprec(prec):
        q = f.q
        return -sum(to_complex(f(a), prec) * mpmath.digamma(mpmath.mpf(a) / q) for a in range(1, q + 1)) / q


@st.composite
def mean_zero_functions(draw, max_q=24, max_conductor=48):
    q = draw(st.integers(min_value=2, max_value=max_q))
    L = draw(st.sampled_from([1] + [m for m in range(2, max_conductor + 1) if m % q == 0 or q % m == 0]))
    vals = draw(st.lists(cyc_elems(conductor=L), min_size=q - 1, max_size=q - 1))
    total = sum(vals[1:], vals[0]) if len(vals) > 1 else vals[0]
    return PeriodicFunction(vals + [-total], L)


def close(a, b, tol):
    return abs(a - b) <= tol


def test_log_cyclotomic_examples():
    with mpmath.workprec(P):
        tol = mpmath.mpf(2) ** -(P - 4)
        assert close(log_cyclotomic(4, 2), mpmath.log(2), tol)
        assert close(log_cyclotomic(6, 1), mpmath.mpc(0, -mpmath.pi / 3), tol)
        assert close(log_cyclotomic(3, 1), mpmath.mpc(mpmath.log(mpmath.sqrt(3)), -mpmath.pi / 6), tol)
        for q in (5, 7, 12):
            for x in range(1, q):
                assert close(log_cyclotomic(q, x), mpmath.log(1 - mpmath.expjpi(mpmath.mpf(2 * x) / q)), tol)
    with pytest.raises(ValueError):
        log_cyclotomic(4, 4)


def test_fourier_examples():
    zero = eval_L1_fourier(PeriodicFunction.zero(5))
    assert zero.value == 0 and zero.error_bound == 0
    r = eval_L1_fourier(CHI4)
    with mpmath.workprec(P):
        assert abs(r.value - mpmath.pi / 4) <= r.error_bound
    assert r.error_bound < mpmath.mpf(2) ** -(P - 8)
    r = eval_L1_fourier(example_paper(2))
    assert abs(r.value) <= r.error_bound


def test_split_examples():
    r = eval_L1_split(PeriodicFunction.zero(4))
    assert r.value == 0
    r = eval_L1_split(CHI4)
    with mpmath.workprec(P):
        assert abs(r.value - mpmath.pi / 4) <= r.error_bound
    assert r.components["even"][0] == 0
    r = eval_L1_split(example_paper(2))
    assert r.components["odd"][0] == 0
    assert abs(r.components["even"][0]) <= r.components["even"][1]


def test_split_even_modulus_middle_term():
    # f_hat is concentrated at x = q/2, so the whole value sits in the unpaired term
    f = idft(SpectralFunction([0, 1, 0, 0]))
    with mpmath.workprec(P):
        expected = -mpmath.log(2)
        for route in (eval_L1_split, eval_L1_fourier):
            r = route(f)
            assert abs(r.value - expected) <= r.error_bound + mpmath.mpf(2) ** -(P - 8)


@pytest.mark.parametrize(
    "f, expected",
    [(CHI4, lambda: mpmath.pi / 4), (CHI3, lambda: mpmath.pi / mpmath.sqrt(27))],
    ids=["chi4", "chi3"],
)
def test_partial_examples(f, expected):
    r = eval_L1_partial(f, 10**4)
    with mpmath.workprec(P):
        assert abs(r.value - expected()) <= r.error_bound
    assert eval_L1_partial(PeriodicFunction.zero(3), 10).value == 0


@settings(max_examples=40, deadline=None)
@given(mean_zero_functions())
def test_routes_agree_with_digamma_oracle(f):
    oracle = digamma_oracle(f)
    slack = mpmath.mpf(2) ** -(P + 20) * (1 + sum(abs(to_complex(v, 64)) for v in f)) * 100
    a, b = eval_L1_fourier(f), eval_L1_split(f)
    with mpmath.workprec(P + 40):
        for r in (a, b):
            assert abs(r.value - oracle) <= r.error_bound + slack
        assert abs(a.value - b.value) <= a.error_bound + b.error_bound


@settings(max_examples=25, deadline=None)
@given(
    mean_zero_functions(max_q=12, max_conductor=24),
    st.sampled_from([1, 2, 7, 100, 1000]),
    st.integers(min_value=0, max_value=5),
)
def test_partial_bound_is_rigorous(f, M, order):
    oracle = digamma_oracle(f)
    r = eval_L1_partial(f, M, P, order=order)
    with mpmath.workprec(P + 40):
        assert abs(r.value - oracle) <= r.error_bound


def test_tail_bound_shrinks_with_order():
    N = 3 * 2**10
    bounds = [tail_expansion(CHI3, N, k)[1] for k in range(5)]
    assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))
    with pytest.raises(ValueError):
        tail_expansion(CHI3, 7)


def real_spectrum(q, rng_values, parity):
    g = [Fraction(0)] * q
    for x in range(1, (q - 1) // 2 + 1):
        v = rng_values[x - 1]
        g[x - 1] = v
        g[q - x - 1] = -v if parity == "odd" else v
    if parity == "even" and q % 2 == 0:
        g[q // 2 - 1] = rng_values[-1]
    return SpectralFunction(g)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=3, max_value=24),
    st.sampled_from(["odd", "even"]),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=12, max_size=12),
)
def test_parity_structure_for_real_spectrum(q, parity, values):
    # a real spectrum puts odd parts on the imaginary axis and even parts on the real axis
    f = idft(real_spectrum(q, values, parity))
    r = eval_L1_fourier(f)
    assert parity_decompose(f)[0 if parity == "odd" else 1] == f
    if parity == "odd":
        assert abs(r.value.real) <= r.error_bound
    else:
        assert abs(r.value.imag) <= r.error_bound


def test_real_valued_odd_function_has_real_value():
    # a real-valued odd function gives a real L(1,f), so the real part need not vanish
    r = eval_L1_fourier(CHI4)
    assert abs(r.value.imag) <= r.error_bound
    assert r.value.real > 0.7


@pytest.mark.parametrize("route", ["fourier", "split", "partial"])
def test_divergent_input_rejected(route):
    with pytest.raises(DivergentSeriesError):
        evaluate(PeriodicFunction([1, 1, 1]), route)


def test_unknown_route():
    with pytest.raises(ValueError):
        evaluate(CHI4, "taylor")


def test_coherence_rule():
    zero = eval_L1_fourier(example_paper(3))
    assert coherence(True, zero) and not coherence(False, zero)
    nonzero = eval_L1_fourier(CHI4)
    assert coherence(False, nonzero, separation=10) and not coherence(True, nonzero)


@pytest.mark.parametrize("q", [3, 4, 5, 8])
def test_parts_evaluate_consistently(q):
    f = gen_mean_zero(q, seed=q)
    f_o, f_e = parity_decompose(f)
    whole = eval_L1_fourier(f)
    parts = [eval_L1_fourier(f_o), eval_L1_fourier(f_e)]
    with mpmath.workprec(P):
        gap = abs(whole.value - parts[0].value - parts[1].value)
    assert gap <= whole.error_bound + sum(p.error_bound for p in parts)
