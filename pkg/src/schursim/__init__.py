"""Strong classical simulation of Quantum Schur Sampling circuits.

Exact overlaps between computational and sequentially coupled basis states,
exact sampling of their output distributions, and Monte Carlo estimation of
permutational transition amplitudes.
"""

from .basis import (
    CouplingPath,
    SchurLabel,
    canonical_index,
    enumerate_paths,
    iter_labels,
    label_from_index,
    validate,
)
from .errors import *  # noqa: F401,F403
from .estimator import (
    AmplitudeEstimate,
    Permutation,
    PqcCircuit,
    estimate_transition,
    exhaustive_decomposition,
    sample_count,
)
from .exact import ExactComplex, SqrtRational, SqrtSum, round_to_float
from .oracle import dense_schur_matrix, exact_transition, yor_transposition_matrix
from .overlap import DiagonalPhase, overlap, overlap_with_phase
from .sampler import conditional_bias, sample, telescoping_marginal
from .spin import couple_range, is_triangle
from .wigner import clebsch_gordan, triangle_coeff, wigner3j

__version__ = "0.1.0"
