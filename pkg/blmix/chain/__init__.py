"""
Chain core: parameters, state spaces, kernels and stationary laws.
"""
from .kernel import (
    ProbVector,
    TransitionKernel,
    build_kernel,
    hypergeom_pmf,
    integer_kernel,
    stationary_pmf,
    transition_row,
)
from .params import Canonicalization, ChainParams, StateSpace

__all__ = [
    'Canonicalization',
    'ChainParams',
    'ProbVector',
    'StateSpace',
    'TransitionKernel',
    'build_kernel',
    'hypergeom_pmf',
    'integer_kernel',
    'stationary_pmf',
    'transition_row',
]
