"""Multidimensional membership mixture (M3) models.

Each data point carries one mixture membership per dimension; the observation
density combines the components selected in every dimension. Three model
families are provided:

* :mod:`m3mix.infinite` -- two coupled Dirichlet-process mixtures sampled by a
  joint Chinese-restaurant rule (the 1-D special case is a standard DPMM),
* :mod:`m3mix.finite` -- a two-dimensional topic model trained by variational
  EM (the 1-D special case is LDA),
* :mod:`m3mix.hybrid` -- one DP dimension plus one finite dimension updated by
  maximum likelihood.

Supporting modules: :mod:`m3mix.counts` (membership bookkeeping),
:mod:`m3mix.gaussian` (Normal-inverse-Wishart machinery), :mod:`m3mix.optim`
(L-BFGS and the quadratic-penalty driver), :mod:`m3mix.evaluation` (NMI,
perplexity, density grids), :mod:`m3mix.dataio` (corpora, point clouds,
generators, serialization) and :mod:`m3mix.cli` (batch front end).
"""

from m3mix.counts import Assignment2D, Concentration, JointCounts, ShareWeights
from m3mix.gaussian import GaussianComponent, NIWPrior

__version__ = "0.1.0"

__all__ = [
    "Assignment2D",
    "Concentration",
    "GaussianComponent",
    "JointCounts",
    "NIWPrior",
    "ShareWeights",
    "__version__",
]
