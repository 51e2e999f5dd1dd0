"""Exact decision engine and numeric verifier for L(1, f) = 0, f periodic with cyclotomic values."""

from .decision import (
    CoherenceError,
    GeneratorError,
    Verdict,
    decide,
    example_paper,
    gen_character,
    gen_even_vanishing,
    gen_mean_zero,
    gen_odd_vanishing,
)
from .even import (
    BlockFunction,
    BlockIndex,
    EvenCertificate,
    block_F,
    block_F_hat,
    decide_even,
    enumerate_blocks,
    membership,
)
from .field import (
    ConductorMismatch,
    CycElem,
    conjugate,
    cyclotomic_poly,
    field_arith,
    invert,
    lift_conductor,
    to_complex,
)
from .numeric import (
    NumericResult,
    eval_L1_fourier,
    eval_L1_partial,
    eval_L1_split,
    log_cyclotomic,
)
from .odd import OddCertificate, cotangent, cotangent_form_test, decide_odd, weighted_sum_test
from .periodic import (
    DivergentSeriesError,
    DomainError,
    PeriodicFunction,
    SpectralFunction,
    dft,
    idft,
    mean_is_zero,
    parity_decompose,
    parity_of,
)
from .relations import RelationVector, relation_vectors, verify_R1, verify_R2

__version__ = "0.1.0"
