"""Exact computations for Hilbert functions of maximal Cohen-Macaulay modules
over complete intersections.

Modules:

* :mod:`~mcmhilbert.exactla` exact fields and linear algebra
* :mod:`~mcmhilbert.locring` truncated power series, quotients, module Hilbert functions
* :mod:`~mcmhilbert.grmod` graded quotients, associated graded checks, regular sequences
* :mod:`~mcmhilbert.homalg` matrix factorizations, minimal resolutions, Betti numbers
* :mod:`~mcmhilbert.eisops` Eisenbud operators, Ext action, strict reduction
* :mod:`~mcmhilbert.numsgp` numerical semigroup rings
* :mod:`~mcmhilbert.cli` job files and reports
"""
from .exactla import EchelonBasis, ExactMatrix, FieldSpec, kernel_basis, rank, rref, solve_linear
from .locring import (
    HilbertVector,
    ModulePresentation,
    PrecisionExceeded,
    QuotientPresentation,
    RingSpec,
    TruncatedSeries,
    hilbert_function,
    initial_form,
    monotonicity_report,
    ord,
)
from .grmod import GradedQuotient, graded_hf, regular_sequence_test, socle_witness, verify_assoc_graded
from .homalg import (
    BettiTable,
    FreeComplex,
    MatrixFactorization,
    betti_table,
    complexity_estimate,
    mf_resolution,
    mf_verify,
    minimal_resolution,
    syzygy_step,
    vpd_formula,
)
from .eisops import (
    ExtModule,
    OperatorFamily,
    base_change_operators,
    ext_action,
    finite_generation_window,
    lift_complex,
    parameter_search,
    solve_operators,
    strict_reduction,
    transform_generators,
)
from .numsgp import monotonicity_scan, semigroup_closure, semigroup_hf, verify_presentation

__version__ = "0.1.0"
