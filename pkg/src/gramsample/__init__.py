"""Monte Carlo approximation of Gram products ``A A^T`` by column sampling.

Core pieces: spectral helpers (:mod:`.matcore`), sampling probabilities
(:mod:`.probmodel`), the sampler (:mod:`.sampler`), exact reconstruction
conditions (:mod:`.exactrep`) and sample-count bounds (:mod:`.bounds`).
"""

from .matcore import (
    SpectralSummary,
    ThinSVD,
    gram,
    relative_error_2norm,
    spectral_summary,
    summarize,
    thin_svd,
)
from .probmodel import (
    ProbabilityVector,
    ProbKind,
    effective_beta,
    leverage_probs,
    nearly_optimal_mix,
    optimal_probs,
    uniform_probs,
)
from .rng import RandomStream
from .sampler import (
    SampleDraw,
    SamplingMatrix,
    approximate_gram,
    draw_uniform_without_replacement,
    draw_with_replacement,
    sampled_submatrix,
    sampling_matrix,
)

__version__ = "0.1.0"
