"""
blmix - exact analysis of the generalized Bernoulli-Laplace urn chain.

Transition kernels, stationary laws, worst-case total-variation mixing
times, spectral cutoff predictors, label-coupling simulation and
discrete-normal local-limit comparisons.
"""

__version__ = "1.0.0"

from .chain import ChainParams, build_kernel, stationary_pmf, transition_row
from .cli import cli
from .mixing import worst_case_curve
from .spectral import eigen_data, q_n, t_n

__all__ = [
    'ChainParams',
    'build_kernel',
    'cli',
    'eigen_data',
    'q_n',
    'stationary_pmf',
    't_n',
    'transition_row',
    'worst_case_curve',
]
