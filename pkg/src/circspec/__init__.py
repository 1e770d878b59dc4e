"""Spectral conjugacy and equivalence analysis for weight-matrix ensembles.

The pipeline: parse weight tensors from a neutral binary container,
square the selected tensors into a mixed ensemble of Gram matrices,
sample an order-matched circular-unitary ensemble, pool eigenvalues
from both sides, and compare their spectral densities on a fixed grid.
Two architectures are equivalent when both densities match the
circular conjugate over the tail of the spectrum and the variances of
their difference curves agree within a chosen threshold.
"""

__version__ = "0.1.0"

from .circular_ensemble import (
    build_conjugate_ensemble,
    hermitian_eig,
    modulus_matrix,
    sample_cue_unitary,
    sample_gue_hermitian,
)
from .ensembles import MixedMatrixEnsemble
from .equivalence import (
    CsdCurve,
    CsdReport,
    EquivalenceVerdict,
    GridMismatchError,
    check_conjugacy,
    check_equivalence,
    csd,
    csd_variance,
    cumulative_csd,
    make_csd_report,
)
from .layer_ensemble import build_layer_ensemble, gram_square, stack_tensor
from .rng import RngState
from .spectra import (
    DensityHistogram,
    EigenSolverError,
    PooledSpectrum,
    SpectralGrid,
    eig_general,
    eig_symmetric,
    pool_spectrum,
    spectral_density,
)
from .tensor_ingest import (
    DEFAULT_NAME_EXCLUDES,
    SelectionPolicy,
    TensorFormatError,
    WeightCollection,
    WeightTensor,
    parse_tensor_file,
    select_weight_tensors,
)

__all__ = [
    "__version__",
    "RngState",
    "MixedMatrixEnsemble",
    "WeightTensor",
    "WeightCollection",
    "SelectionPolicy",
    "TensorFormatError",
    "DEFAULT_NAME_EXCLUDES",
    "parse_tensor_file",
    "select_weight_tensors",
    "stack_tensor",
    "gram_square",
    "build_layer_ensemble",
    "sample_gue_hermitian",
    "hermitian_eig",
    "sample_cue_unitary",
    "modulus_matrix",
    "build_conjugate_ensemble",
    "SpectralGrid",
    "PooledSpectrum",
    "DensityHistogram",
    "EigenSolverError",
    "eig_symmetric",
    "eig_general",
    "pool_spectrum",
    "spectral_density",
    "CsdCurve",
    "CsdReport",
    "EquivalenceVerdict",
    "GridMismatchError",
    "csd",
    "cumulative_csd",
    "csd_variance",
    "make_csd_report",
    "check_conjugacy",
    "check_equivalence",
]
