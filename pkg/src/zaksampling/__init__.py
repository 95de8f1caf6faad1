"""Zak transform, Poisson summation, sampling reconstructions and coherent-state lattices on a periodic grid."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BandOutOfRange,
    BandwidthTooLarge,
    ConventionMismatch,
    EpsilonTooLarge,
    GridMismatch,
    IllConditioned,
    LatticeSpecError,
    NonCommensurateDisplacement,
    NonCommensurateOffset,
    NonvanishingViolated,
    OutOfRectangle,
    SnapWarning,
    WindowTooSmall,
    ZakSamplingError,
)
from .grid import (  # noqa: E402
    GridSpec,
    MomentumSignal,
    PhasePoint,
    Signal,
    displace,
    displace_indices,
    fourier_forward,
    fourier_inverse,
    snap_to_grid,
)
from .lattice import (  # noqa: E402
    FiducialVector,
    GCSLattice,
    GramReport,
    LatticeSpec,
    build_lattice,
    factorization_residual,
    gram_analysis,
    orthonormality_test,
    projected_inner_products,
    projected_reconstruct,
    smoothing_apply,
    st_equivalence_check,
    totality_test,
)
from .sampling import (  # noqa: E402
    BandSpec,
    SampleSet,
    bandlimit_project,
    consistency_residual,
    dependence_residual,
    extract_samples,
    poisson_residual,
    reconstruct_cauchy,
    reconstruct_sinc,
)
from .wigner import WignerArray, comb_wigner_check, marginals, wigner_transform  # noqa: E402
from .zak import (  # noqa: E402
    Convention,
    ZakArray,
    ZeroReport,
    locate_zero,
    quasiperiodicity_residual,
    zak_displace,
    zak_forward,
    zak_forward_round,
    zak_inverse_momentum,
    zak_inverse_position,
    zak_to_signal,
)
